#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dragfield/diffusion.hpp"
#include "dragfield/drag_pairs.hpp"
#include "dragfield/grid.hpp"
#include "dragfield/partition.hpp"
#include "dragfield/warp.hpp"

namespace dragfield {

/// Everything that controls an edit besides the input rasters.
struct EditParams {
  FieldParams field;
  AggregationStrategy strategy = AggregationStrategy::ConflictFreePartition;
  double eta = 0.0;
  std::uint64_t seed = 0;

  /// Service/CLI policy bounds: alpha in [0,5], beta in (0,5],
  /// gamma_scale in [0,5], eta in [0,1].
  void validate() const;
};

struct EditInputs {
  ImageGrid image;
  /// Larger-is-farther depth; a uniform grid is used when absent.
  std::optional<FloatGrid> depth;
  Mask mask;
  DragSet pairs;
};

struct EditOutcome {
  DisplacementField field;
  WarpResult warp;
  ImageGrid output;
  ConflictDiagnostics conflict;
};

/// Schedule used by the desk-scale refinement of interpolated cells.
DiffusionSchedule refinement_schedule(double eta);

/// Re-noises the interpolated region with one masked stochastic step and
/// maps it back to image space. Cells outside `interpolated` (and every
/// cell when eta == 0) pass through unchanged.
ImageGrid refine_interpolated(const ImageGrid& image, const Mask& interpolated, double eta,
                              std::uint64_t seed);

/// field -> forward warp -> hole fill -> refinement.
EditOutcome run_edit(const EditInputs& inputs, const EditParams& params);

/// Serialized outputs of an edit, byte-for-byte what the CLI writes and the
/// service stores.
struct EditArtifacts {
  std::string field_dx;   ///< FGRID
  std::string field_dy;   ///< FGRID
  std::string warped;     ///< PNG
  std::string field_vis;  ///< PNG
  std::string report;     ///< JSON
};

EditArtifacts render_artifacts(const EditOutcome& outcome, const EditInputs& inputs,
                               const EditParams& params);

}  // namespace dragfield

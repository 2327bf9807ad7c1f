#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dragfield/drag_pairs.hpp"
#include "dragfield/fusion.hpp"
#include "dragfield/geometry_field.hpp"
#include "dragfield/grid.hpp"
#include "dragfield/plane_field.hpp"

namespace dragfield {

/// Per-cell sub-region index: -1 outside the mask, [0, k) inside.
using RegionLabels = Grid<int>;

enum class AggregationStrategy {
  ConflictFreePartition,
  DirectlyAdd,
  PixelDistance,
  DragMagnitude,
};

/// Names used by the CLI and HTTP API: "partition", "add",
/// "pixel-distance", "drag-magnitude".
std::string_view strategy_name(AggregationStrategy strategy);
AggregationStrategy parse_strategy(std::string_view name);

struct FieldParams {
  GeometryParams geometry;
  PlaneParams plane;
  FusionParams fusion;

  void validate() const;
};

/// Nearest-handle assignment of every masked cell; ties go to the lowest
/// handle index.
RegionLabels partition_mask(const Mask& mask, std::span<const Point> handles);

/// Hybrid (geometry + plane) field of a single pair over `region`, using
/// influence_circle(region, handle) for the plane extent and gamma.
DisplacementField hybrid_field(const FloatGrid& depth, const Mask& region, const DragPair& pair,
                               const FieldParams& params = {});

struct MultiPointField {
  DisplacementField field;
  /// Per-pair terms that sum to `field`: restricted sub-fields for the
  /// partition strategy, weighted full-mask fields otherwise.
  std::vector<DisplacementField> contributions;
};

MultiPointField multi_point_field_detailed(const FloatGrid& depth, const Mask& mask,
                                           const DragSet& pairs, const FieldParams& params,
                                           AggregationStrategy strategy);

DisplacementField multi_point_field(const FloatGrid& depth, const Mask& mask,
                                    const DragSet& pairs, const FieldParams& params = {},
                                    AggregationStrategy strategy =
                                        AggregationStrategy::ConflictFreePartition);

struct ConflictDiagnostics {
  /// Mean over considered cells of |combined| / sum_i |f_i|; 1 means no
  /// cancellation anywhere.
  double score = 1.0;
  double min_ratio = 1.0;
  std::size_t cells_considered = 0;
};

ConflictDiagnostics conflict_score(const DragSet& pairs,
                                   std::span<const DisplacementField> field_per_pair,
                                   const DisplacementField& combined);

}  // namespace dragfield

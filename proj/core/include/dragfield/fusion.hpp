#pragma once

#include "dragfield/grid.hpp"

namespace dragfield {

struct FusionParams {
  /// gamma as a multiple of the influence circle's diameter, >= 0.
  double gamma_scale = 1.0;

  void validate() const;
  double gamma_for(const Circle& circle) const { return gamma_scale * 2.0 * circle.radius; }
};

/// lambda = P / (P + gamma). With gamma == 0 the limit is used: 1 where
/// P > 0 and 0 at P == 0.
double fusion_lambda(double distance, double gamma);

FloatGrid fusion_weights(const FloatGrid& distances, const Circle& circle,
                         const FusionParams& params = {});

/// f = (1 - lambda) * f_p + lambda * f_d, per component.
DisplacementField fuse_fields(const DisplacementField& plane, const DisplacementField& geometry,
                              const FloatGrid& lambda);

}  // namespace dragfield

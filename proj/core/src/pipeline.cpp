#include "dragfield/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "checks.hpp"
#include "dragfield/float_grid_io.hpp"
#include "dragfield/image_io.hpp"
#include "dragfield/visualize.hpp"
#include "json.hpp"

namespace dragfield {
namespace {

void require_range(double v, double lo, double hi, bool lo_open, const char* name) {
  const bool ok = std::isfinite(v) && (lo_open ? v > lo : v >= lo) && v <= hi;
  if (!ok) {
    std::ostringstream msg;
    msg << name << " must lie in " << (lo_open ? "(" : "[") << lo << ", " << hi << "], got " << v;
    throw ValidationError(msg.str());
  }
}

constexpr std::uint64_t kStepNoiseSalt = 0xd1b54a32d192ed03ULL;

}  // namespace

void EditParams::validate() const {
  field.validate();
  require_range(field.geometry.alpha, 0.0, 5.0, false, "alpha");
  require_range(field.plane.beta, 0.0, 5.0, true, "beta");
  require_range(field.fusion.gamma_scale, 0.0, 5.0, false, "gamma");
  require_range(eta, 0.0, 1.0, false, "eta");
}

DiffusionSchedule refinement_schedule(double eta) { return {{0.95, 0.90}, eta}; }

ImageGrid refine_interpolated(const ImageGrid& image, const Mask& interpolated, double eta,
                              std::uint64_t seed) {
  detail::require_same_shape(image, interpolated, "refine_interpolated");
  if (eta == 0.0 || !interpolated.any()) return image;

  const DiffusionSchedule schedule = refinement_schedule(eta);
  const double a_t = schedule.alphabar[1];
  const double a_prev = schedule.alphabar[0];

  // Forward-noise the image to step t, then let an oracle predictor recover
  // the injected noise; the masked step re-noises only the interpolated cells.
  NoiseSource forward(seed);
  const ChannelGrid eps0 = forward.normal_grid(image.width(), image.height(), image.channels());
  ChannelGrid z_t(image.width(), image.height(), image.channels(), 0.0);
  {
    auto out = z_t.values();
    auto x0 = image.values();
    auto e = eps0.values();
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::sqrt(a_t) * x0[i] + std::sqrt(1.0 - a_t) * e[i];
    }
  }
  const NoisePredictor oracle = [&image, a_t](const ChannelGrid& z, int) {
    ChannelGrid eps(z.width(), z.height(), z.channels(), 0.0);
    auto out = eps.values();
    auto zv = z.values();
    auto x0 = image.values();
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = (zv[i] - std::sqrt(a_t) * x0[i]) / std::sqrt(1.0 - a_t);
    }
    return eps;
  };

  NoiseSource step_noise(seed ^ kStepNoiseSalt);
  const ChannelGrid z_prev =
      masked_stochastic_step(z_t, image, oracle, schedule, 1, interpolated, step_noise);
  const ChannelGrid eps_theta = oracle(z_t, 1);

  ChannelGrid out = image;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!interpolated.test(x, y)) continue;
      for (int c = 0; c < image.channels(); ++c) {
        out(x, y, c) =
            (z_prev(x, y, c) - std::sqrt(1.0 - a_prev) * eps_theta(x, y, c)) / std::sqrt(a_prev);
      }
    }
  }
  return ImageGrid::clamped(std::move(out));
}

EditOutcome run_edit(const EditInputs& inputs, const EditParams& params) {
  params.validate();
  detail::require_same_shape(inputs.image, inputs.mask, "run_edit");
  if (!inputs.mask.any()) throw ValidationError("run_edit: mask is empty");
  if (inputs.depth) detail::require_same_shape(*inputs.depth, inputs.mask, "run_edit");

  const FloatGrid depth =
      inputs.depth ? *inputs.depth : FloatGrid(inputs.mask.width(), inputs.mask.height(), 1.0);

  MultiPointField mp = multi_point_field_detailed(depth, inputs.mask, inputs.pairs, params.field,
                                                  params.strategy);
  EditOutcome outcome;
  outcome.conflict = conflict_score(inputs.pairs, mp.contributions, mp.field);
  outcome.warp = fill_holes(forward_warp(inputs.image, mp.field, inputs.mask, &depth));
  outcome.output = refine_interpolated(ImageGrid::clamped(outcome.warp.grid),
                                       outcome.warp.interpolated, params.eta, params.seed);
  outcome.field = std::move(mp.field);
  return outcome;
}

EditArtifacts render_artifacts(const EditOutcome& outcome, const EditInputs& inputs,
                               const EditParams& params) {
  EditArtifacts art;
  art.field_dx = encode_float_grid(outcome.field.dx());
  art.field_dy = encode_float_grid(outcome.field.dy());
  art.warped = encode_png(outcome.output);
  art.field_vis = encode_png(visualize_field(outcome.field));

  nlohmann::json pairs = nlohmann::json::array();
  for (const DragPair& p : inputs.pairs) {
    pairs.push_back({{"handle", {p.handle.x, p.handle.y}}, {"target", {p.target.x, p.target.y}}});
  }
  nlohmann::json report = {
      {"holes", outcome.warp.holes_before_fill},
      {"collisions", outcome.warp.collisions},
      {"conflict_score", outcome.conflict.score},
      {"zero_field", outcome.field.max_magnitude() == 0.0},
      {"params_echo",
       {{"alpha", params.field.geometry.alpha},
        {"beta", params.field.plane.beta},
        {"gamma", params.field.fusion.gamma_scale},
        {"ratio_cap", params.field.geometry.ratio_cap},
        {"strategy", std::string(strategy_name(params.strategy))},
        {"eta", params.eta},
        {"seed", params.seed},
        {"depth", inputs.depth ? "provided" : "uniform"},
        {"pairs", pairs}}},
  };
  art.report = report.dump(2) + "\n";
  return art;
}

}  // namespace dragfield

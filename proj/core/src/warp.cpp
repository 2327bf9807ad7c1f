#include "dragfield/warp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "checks.hpp"

namespace dragfield {
namespace {

constexpr std::size_t kUnclaimed = std::numeric_limits<std::size_t>::max();

}  // namespace

WarpResult forward_warp_ordered(const ChannelGrid& grid, const DisplacementField& field,
                                const Mask& mask, const FloatGrid* depth,
                                std::span<const std::size_t> source_order) {
  detail::require_same_shape(grid, mask, "forward_warp");
  detail::require_same_shape(field, mask, "forward_warp");
  if (depth) detail::require_same_shape(*depth, mask, "forward_warp");
  if (!field.all_finite()) throw ValidationError("forward_warp: field is not finite");

  const int w = mask.width(), h = mask.height();
  const double limit = static_cast<double>(w) + static_cast<double>(h);
  WarpResult result;
  result.grid = grid;
  result.holes = mask;
  result.interpolated = Mask(w, h, 0);

  // Winner per destination: smallest (depth, raster index).
  std::vector<std::size_t> winner(mask.size(), kUnclaimed);
  auto beats = [&](std::size_t a, std::size_t b) {
    if (depth && (*depth)[a] != (*depth)[b]) return (*depth)[a] < (*depth)[b];
    return a < b;
  };

  for (std::size_t src : source_order) {
    if (src >= mask.size() || !mask[src]) {
      throw ValidationError("forward_warp: source order references an unmasked cell");
    }
    const int sx = static_cast<int>(src % static_cast<std::size_t>(w));
    const int sy = static_cast<int>(src / static_cast<std::size_t>(w));
    const Displacement d = field.at(src);
    const double rx = std::round(d.dx), ry = std::round(d.dy);
    if (std::abs(rx) > limit || std::abs(ry) > limit) {
      ++result.dropped;
      continue;
    }
    const int tx = sx + static_cast<int>(rx);
    const int ty = sy + static_cast<int>(ry);
    if (!mask.contains(tx, ty)) {
      ++result.dropped;
      continue;
    }
    const std::size_t dst = mask.index(tx, ty);
    if (winner[dst] == kUnclaimed) {
      winner[dst] = src;
    } else {
      ++result.collisions;
      if (beats(src, winner[dst])) winner[dst] = src;
    }
  }

  const int channels = grid.channels();
  auto in = grid.values();
  auto out = result.grid.values();
  for (std::size_t dst = 0; dst < winner.size(); ++dst) {
    if (winner[dst] == kUnclaimed) continue;
    const std::size_t from = winner[dst] * static_cast<std::size_t>(channels);
    const std::size_t to = dst * static_cast<std::size_t>(channels);
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(from), channels,
                out.begin() + static_cast<std::ptrdiff_t>(to));
    result.holes[dst] = 0;
  }
  result.holes_before_fill = result.holes.count();
  return result;
}

WarpResult forward_warp(const ChannelGrid& grid, const DisplacementField& field, const Mask& mask,
                        const FloatGrid* depth) {
  std::vector<std::size_t> order;
  order.reserve(mask.count());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) order.push_back(i);
  }
  return forward_warp_ordered(grid, field, mask, depth, order);
}

WarpResult fill_holes(WarpResult result, const HoleFillOptions& options) {
  if (options.neighbors <= 0) throw ValidationError("fill_holes: neighbors must be positive");
  if (!(options.power > 0.0)) throw ValidationError("fill_holes: power must be positive");
  const Mask& holes = result.holes;
  if (!holes.any()) return result;
  if (holes.count() == holes.size()) {
    throw ValidationError("fill_holes: every cell is a hole, nothing to interpolate from");
  }

  const int w = holes.width(), h = holes.height();
  const int channels = result.grid.channels();
  const std::size_t k = static_cast<std::size_t>(options.neighbors);
  const int max_ring = std::max(w, h);
  const ChannelGrid source = result.grid;

  struct Candidate {
    long long d2;
    std::size_t index;
    bool operator<(const Candidate& o) const {
      return d2 != o.d2 ? d2 < o.d2 : index < o.index;
    }
  };
  std::vector<Candidate> found;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!holes.test(x, y)) continue;
      found.clear();
      auto visit = [&](int cx, int cy) {
        if (cx < 0 || cy < 0 || cx >= w || cy >= h || holes.test(cx, cy)) return;
        const long long ddx = cx - x, ddy = cy - y;
        found.push_back({ddx * ddx + ddy * ddy, holes.index(cx, cy)});
      };
      for (int ring = 1; ring <= max_ring; ++ring) {
        for (int i = -ring; i <= ring; ++i) {
          visit(x + i, y - ring);
          visit(x + i, y + ring);
        }
        for (int i = -ring + 1; i <= ring - 1; ++i) {
          visit(x - ring, y + i);
          visit(x + ring, y + i);
        }
        if (found.size() >= k) {
          std::nth_element(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(k - 1),
                           found.end());
          const long long next = static_cast<long long>(ring + 1) * (ring + 1);
          if (found[k - 1].d2 < next) break;
        }
      }
      const std::size_t take = std::min(k, found.size());
      std::partial_sort(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(take),
                        found.end());

      std::vector<double> acc(static_cast<std::size_t>(channels), 0.0);
      double weight_sum = 0.0;
      for (std::size_t n = 0; n < take; ++n) {
        const double d2 = static_cast<double>(found[n].d2);
        const double wgt = options.power == 2.0 ? 1.0 / d2 : 1.0 / std::pow(d2, options.power / 2.0);
        const int cx = static_cast<int>(found[n].index % static_cast<std::size_t>(w));
        const int cy = static_cast<int>(found[n].index / static_cast<std::size_t>(w));
        for (int c = 0; c < channels; ++c) acc[static_cast<std::size_t>(c)] += wgt * source(cx, cy, c);
        weight_sum += wgt;
      }
      for (int c = 0; c < channels; ++c) {
        result.grid(x, y, c) = acc[static_cast<std::size_t>(c)] / weight_sum;
      }
      result.interpolated.set(x, y);
    }
  }
  result.holes = Mask(w, h, 0);
  return result;
}

}  // namespace dragfield

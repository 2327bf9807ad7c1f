#include "dragfield/partition.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "checks.hpp"
#include "dragfield/geometry.hpp"

namespace dragfield {
namespace {

void require_distinct_cells(std::span<const Point> handles) {
  std::set<std::pair<int, int>> seen;
  for (const Point& h : handles) {
    const Cell c = cell_of(h);
    if (!seen.insert({c.x, c.y}).second) {
      throw ValidationError("coincident handles at cell (" + std::to_string(c.x) + ", " +
                            std::to_string(c.y) + ")");
    }
  }
}

void require_positive_depth(const FloatGrid& depth, const Mask& mask) {
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] && !(depth[i] > 0.0)) {
      throw ValidationError("depth must be positive inside the mask");
    }
  }
}

// Writes the hybrid field of `pair` into `out` for every cell of `region`.
// Mirrors geometry_field / plane_field / fuse_fields cell by cell.
void hybrid_field_into(const FloatGrid& depth, const Mask& region, const DragPair& pair,
                       const FieldParams& params, DisplacementField& out) {
  const Point h = pair.handle;
  const Point d = pair.drag();
  const double handle_depth = sample_bilinear(depth, h);
  if (!(handle_depth > 0.0)) {
    throw ValidationError("depth sampled at the handle is not positive");
  }
  const Circle circle = influence_circle(region, h);
  const double gamma = params.fusion.gamma_for(circle);
  const double at_handle = handle_extent(h, circle);

  for (int y = 0; y < region.height(); ++y) {
    for (int x = 0; x < region.width(); ++x) {
      if (!region.test(x, y)) continue;
      const Point offset{x - h.x, y - h.y};
      const double distance = std::hypot(offset.x, offset.y);
      const double extent = distance == 0.0
                                ? at_handle
                                : ray_circle_distance(h, circle, (1.0 / distance) * offset);
      const double w = plane_weight(distance, extent, params.plane.beta);
      const double s = geometry_scale(handle_depth, depth(x, y), params.geometry);
      const double l = fusion_lambda(distance, gamma);
      const double px = w * d.x, py = w * d.y;
      const double gx = s * d.x, gy = s * d.y;
      out.set(x, y, {(1.0 - l) * px + l * gx, (1.0 - l) * py + l * gy});
    }
  }
}

MultiPointField aggregate(const FloatGrid& depth, const Mask& mask, const DragSet& pairs,
                          const FieldParams& params, AggregationStrategy strategy,
                          bool want_contributions) {
  params.validate();
  if (pairs.empty()) throw ValidationError("at least one drag pair is required");
  detail::require_same_shape(depth, mask, "multi_point_field");
  std::vector<Point> handles;
  for (const DragPair& p : pairs) {
    detail::require_handle_in_mask(mask, p.handle, "multi_point_field");
    handles.push_back(p.handle);
  }
  require_distinct_cells(handles);
  require_positive_depth(depth, mask);

  const int w = mask.width(), h = mask.height();
  MultiPointField result{DisplacementField(w, h), {}};

  if (pairs.size() == 1) {
    hybrid_field_into(depth, mask, pairs[0], params, result.field);
    if (want_contributions) result.contributions.push_back(result.field);
    return result;
  }

  if (strategy == AggregationStrategy::ConflictFreePartition) {
    const RegionLabels labels = partition_mask(mask, handles);
    std::vector<Mask> regions(pairs.size(), Mask(w, h, 0));
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] >= 0) regions[static_cast<std::size_t>(labels[i])][i] = 1;
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (!regions[k].any()) {
        if (want_contributions) result.contributions.emplace_back(w, h);
        continue;
      }
      hybrid_field_into(depth, regions[k], pairs[k], params, result.field);
      if (want_contributions) {
        DisplacementField part(w, h);
        for (std::size_t i = 0; i < regions[k].size(); ++i) {
          if (regions[k][i]) part.set(i, result.field.at(i));
        }
        result.contributions.push_back(std::move(part));
      }
    }
    return result;
  }

  std::vector<DisplacementField> fields;
  fields.reserve(pairs.size());
  for (const DragPair& p : pairs) {
    DisplacementField f(w, h);
    hybrid_field_into(depth, mask, p, params, f);
    fields.push_back(std::move(f));
  }

  std::vector<double> magnitudes;
  double magnitude_sum = 0.0;
  for (const DragPair& p : pairs) {
    magnitudes.push_back(norm(p.drag()));
    magnitude_sum += magnitudes.back();
  }

  const std::size_t k = pairs.size();
  std::vector<double> weights(k, 0.0);
  if (want_contributions) result.contributions.assign(k, DisplacementField(w, h));

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.test(x, y)) continue;
      switch (strategy) {
        case AggregationStrategy::DirectlyAdd:
          std::fill(weights.begin(), weights.end(), 1.0);
          break;
        case AggregationStrategy::PixelDistance: {
          double inv_sum = 0.0;
          std::size_t exact = k;
          for (std::size_t i = 0; i < k; ++i) {
            const double pd = std::hypot(x - handles[i].x, y - handles[i].y);
            if (pd == 0.0) {
              exact = i;
              break;
            }
            weights[i] = 1.0 / pd;
            inv_sum += weights[i];
          }
          if (exact < k) {
            std::fill(weights.begin(), weights.end(), 0.0);
            weights[exact] = 1.0;
          } else {
            for (double& wt : weights) wt /= inv_sum;
          }
          break;
        }
        case AggregationStrategy::DragMagnitude:
          for (std::size_t i = 0; i < k; ++i) {
            weights[i] = magnitude_sum > 0.0 ? magnitudes[i] / magnitude_sum : 0.0;
          }
          break;
        case AggregationStrategy::ConflictFreePartition:
          break;
      }
      double fx = 0.0, fy = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const Displacement fi = fields[i].at(x, y);
        const double cx = weights[i] * fi.dx, cy = weights[i] * fi.dy;
        fx += cx;
        fy += cy;
        if (want_contributions) result.contributions[i].set(x, y, {cx, cy});
      }
      result.field.set(x, y, {fx, fy});
    }
  }
  return result;
}

}  // namespace

std::string_view strategy_name(AggregationStrategy strategy) {
  switch (strategy) {
    case AggregationStrategy::ConflictFreePartition: return "partition";
    case AggregationStrategy::DirectlyAdd: return "add";
    case AggregationStrategy::PixelDistance: return "pixel-distance";
    case AggregationStrategy::DragMagnitude: return "drag-magnitude";
  }
  return "partition";
}

AggregationStrategy parse_strategy(std::string_view name) {
  for (auto s : {AggregationStrategy::ConflictFreePartition, AggregationStrategy::DirectlyAdd,
                 AggregationStrategy::PixelDistance, AggregationStrategy::DragMagnitude}) {
    if (strategy_name(s) == name) return s;
  }
  throw ValidationError("unknown strategy '" + std::string(name) +
                        "' (expected partition, add, pixel-distance or drag-magnitude)");
}

void FieldParams::validate() const {
  geometry.validate();
  plane.validate();
  fusion.validate();
}

RegionLabels partition_mask(const Mask& mask, std::span<const Point> handles) {
  if (handles.empty()) throw ValidationError("partition_mask: no handles");
  for (const Point& h : handles) detail::require_handle_in_mask(mask, h, "partition_mask");
  require_distinct_cells(handles);

  RegionLabels labels(mask.width(), mask.height(), -1);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.test(x, y)) continue;
      int best = 0;
      double best_d2 = squared_norm(Point{x - handles[0].x, y - handles[0].y});
      for (std::size_t j = 1; j < handles.size(); ++j) {
        const double d2 = squared_norm(Point{x - handles[j].x, y - handles[j].y});
        if (d2 < best_d2) {
          best_d2 = d2;
          best = static_cast<int>(j);
        }
      }
      labels(x, y) = best;
    }
  }
  return labels;
}

DisplacementField hybrid_field(const FloatGrid& depth, const Mask& region, const DragPair& pair,
                               const FieldParams& params) {
  params.validate();
  detail::require_same_shape(depth, region, "hybrid_field");
  detail::require_handle_in_mask(region, pair.handle, "hybrid_field");
  require_positive_depth(depth, region);
  DisplacementField out(region.width(), region.height());
  hybrid_field_into(depth, region, pair, params, out);
  return out;
}

MultiPointField multi_point_field_detailed(const FloatGrid& depth, const Mask& mask,
                                           const DragSet& pairs, const FieldParams& params,
                                           AggregationStrategy strategy) {
  return aggregate(depth, mask, pairs, params, strategy, true);
}

DisplacementField multi_point_field(const FloatGrid& depth, const Mask& mask,
                                    const DragSet& pairs, const FieldParams& params,
                                    AggregationStrategy strategy) {
  return aggregate(depth, mask, pairs, params, strategy, false).field;
}

ConflictDiagnostics conflict_score(const DragSet& pairs,
                                   std::span<const DisplacementField> field_per_pair,
                                   const DisplacementField& combined) {
  if (field_per_pair.size() != pairs.size()) {
    throw ValidationError("conflict_score: one field per pair is required");
  }
  for (const DisplacementField& f : field_per_pair) {
    detail::require_same_shape(f, combined, "conflict_score");
  }
  constexpr double kEps = 1e-12;
  ConflictDiagnostics diag;
  double sum = 0.0;
  const std::size_t cells = combined.dx().size();
  for (std::size_t i = 0; i < cells; ++i) {
    double total = 0.0;
    for (const DisplacementField& f : field_per_pair) {
      const Displacement d = f.at(i);
      total += std::hypot(d.dx, d.dy);
    }
    if (total <= kEps) continue;
    const Displacement c = combined.at(i);
    const double ratio = std::min(std::hypot(c.dx, c.dy) / total, 1.0);
    sum += ratio;
    diag.min_ratio = std::min(diag.min_ratio, ratio);
    ++diag.cells_considered;
  }
  if (diag.cells_considered > 0) diag.score = sum / static_cast<double>(diag.cells_considered);
  return diag;
}

}  // namespace dragfield

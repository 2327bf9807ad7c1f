#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dragfield/geometry_field.hpp"
#include "dragfield/synthetic.hpp"
#include "oracles/oracles.hpp"

namespace dragfield {
namespace {

TEST(GeometryFieldTest, UniformDepthGivesDragEverywhereOnMask) {
  const Mask mask = synthetic::rectangle_mask(8, 8, 2, 2, 5, 5);
  const DragPair pair{{3, 3}, {7, 1}};
  for (double alpha : {0.0, 0.5, 1.0, 3.0}) {
    const DisplacementField f = geometry_field(FloatGrid(8, 8, 2.5), mask, pair, {alpha, 10.0});
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 8; ++x) {
        const Displacement d = f.at(x, y);
        if (mask.test(x, y)) {
          EXPECT_EQ(d.dx, 4.0);
          EXPECT_EQ(d.dy, -2.0);
        } else {
          EXPECT_EQ(d.dx, 0.0);
          EXPECT_EQ(d.dy, 0.0);
        }
      }
    }
  }
}

TEST(GeometryFieldTest, HandEvaluatedDepthRatio) {
  FloatGrid depth(4, 1, 2.0);
  depth(3, 0) = 4.0;
  const Mask mask(4, 1, 1);
  const DisplacementField f = geometry_field(depth, mask, {{0, 0}, {10, 0}}, {1.0, 10.0});
  EXPECT_EQ(f.at(3, 0).dx, 5.0);
  EXPECT_EQ(f.at(3, 0).dy, 0.0);
}

TEST(GeometryFieldTest, SquaredRatioWithinCap) {
  FloatGrid depth(2, 1, 2.0);
  depth(1, 0) = 1.0;
  const DisplacementField f = geometry_field(depth, Mask(2, 1, 1), {{0, 0}, {3, 0}}, {2.0, 10.0});
  EXPECT_EQ(f.at(1, 0).dx, 12.0);
}

TEST(GeometryFieldTest, AlphaZeroIgnoresDepth) {
  const FloatGrid depth = synthetic::ramp_depth(9, 5, 0.3, 7.0);
  const DisplacementField f = geometry_field(depth, Mask(9, 5, 1), {{4, 2}, {1, 4}}, {0.0, 10.0});
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 9; ++x) {
      EXPECT_EQ(f.at(x, y).dx, -3.0);
      EXPECT_EQ(f.at(x, y).dy, 2.0);
    }
  }
}

TEST(GeometryFieldTest, RatioIsClamped) {
  FloatGrid depth(3, 1, 1.0);
  depth(1, 0) = 0.001;
  depth(2, 0) = 1000.0;
  const DisplacementField f = geometry_field(depth, Mask(3, 1, 1), {{0, 0}, {1, 0}}, {1.0, 10.0});
  EXPECT_DOUBLE_EQ(f.at(1, 0).dx, 10.0);
  EXPECT_DOUBLE_EQ(f.at(2, 0).dx, 0.1);
}

TEST(GeometryFieldTest, ZeroDragYieldsZeroField) {
  const DisplacementField f =
      geometry_field(synthetic::ramp_depth(5, 5, 1, 3), Mask(5, 5, 1), {{2, 2}, {2, 2}});
  EXPECT_EQ(f.max_magnitude(), 0.0);
}

TEST(GeometryFieldTest, Errors) {
  const Mask mask = synthetic::rectangle_mask(5, 5, 1, 1, 3, 3);
  const FloatGrid depth(5, 5, 1.0);
  EXPECT_THROW(geometry_field(depth, mask, {{0, 0}, {1, 1}}), ValidationError);   // outside mask
  EXPECT_THROW(geometry_field(depth, mask, {{9, 9}, {1, 1}}), ValidationError);   // outside image
  FloatGrid bad = depth;
  bad(2, 3) = 0.0;
  EXPECT_THROW(geometry_field(bad, mask, {{2, 2}, {3, 3}}), ValidationError);
  EXPECT_THROW(geometry_field(FloatGrid(4, 5, 1.0), mask, {{2, 2}, {3, 3}}), ValidationError);
  EXPECT_THROW(geometry_field(depth, mask, {{2, 2}, {3, 3}}, {-1.0, 10.0}), ValidationError);
  EXPECT_THROW(geometry_field(depth, mask, {{2, 2}, {3, 3}}, {1.0, 1.0}), ValidationError);
}

TEST(GeometryFieldTest, HandleBilinearSampling) {
  FloatGrid depth(2, 1, 1.0);
  depth(1, 0) = 3.0;
  // zeta_h at x = 0.25 is 1.5; cell (1,0) scale = 1.5 / 3.
  const DisplacementField f =
      geometry_field(depth, Mask(2, 1, 1), {{0.25, 0}, {2.25, 0}}, {1.0, 10.0});
  EXPECT_DOUBLE_EQ(f.at(1, 0).dx, 1.0);
  EXPECT_DOUBLE_EQ(f.at(0, 0).dx, 3.0);
}

class GeometryPropertyTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng{99};
};

TEST_F(GeometryPropertyTest, HandleExactDirectionAndDepthMonotonicity) {
  std::uniform_real_distribution<double> depth_dist(0.5, 5.0), drag(-15, 15), alpha(0.1, 3.0);
  std::uniform_int_distribution<int> cell(0, 15);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> values(16 * 16);
    for (double& v : values) v = depth_dist(rng);
    const FloatGrid depth(16, 16, values);
    const Point h{double(cell(rng)), double(cell(rng))};
    const DragPair pair{h, {h.x + drag(rng), h.y + drag(rng)}};
    const GeometryParams params{alpha(rng), 10.0};
    const DisplacementField f = geometry_field(depth, Mask(16, 16, 1), pair, params);
    const Point d = pair.drag();

    const Displacement at_h = f.at(int(h.x), int(h.y));
    ASSERT_EQ(at_h.dx, d.x);
    ASSERT_EQ(at_h.dy, d.y);

    std::vector<std::pair<double, double>> depth_vs_mag;
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x < 16; ++x) {
        const Displacement v = f.at(x, y);
        // Non-negative multiple of d: cross product ~0, dot >= 0.
        ASSERT_NEAR(v.dx * d.y - v.dy * d.x, 0.0, 1e-9 * (1 + squared_norm(d)));
        ASSERT_GE(v.dx * d.x + v.dy * d.y, 0.0);
        depth_vs_mag.push_back({depth(x, y), std::hypot(v.dx, v.dy)});
      }
    }
    std::sort(depth_vs_mag.begin(), depth_vs_mag.end());
    for (std::size_t i = 1; i < depth_vs_mag.size(); ++i) {
      ASSERT_LE(depth_vs_mag[i].second, depth_vs_mag[i - 1].second + 1e-12);
    }
  }
}

TEST_F(GeometryPropertyTest, AlphaMonotonicity) {
  FloatGrid depth(3, 1, 2.0);
  depth(1, 0) = 3.0;  // farther than the handle
  depth(2, 0) = 1.2;  // closer than the handle
  const Mask mask(3, 1, 1);
  const DragPair pair{{0, 0}, {4, 0}};
  double prev_far = INFINITY, prev_near = 0.0;
  for (double alpha = 0.0; alpha <= 5.0; alpha += 0.25) {
    const DisplacementField f = geometry_field(depth, mask, pair, {alpha, 10.0});
    EXPECT_LE(f.at(1, 0).dx, prev_far);
    EXPECT_GE(f.at(2, 0).dx, prev_near);
    prev_far = f.at(1, 0).dx;
    prev_near = f.at(2, 0).dx;
  }
  EXPECT_DOUBLE_EQ(prev_near, 40.0);  // (2/1.2)^5 > cap
}

TEST_F(GeometryPropertyTest, MatchesOracle) {
  std::uniform_real_distribution<double> depth_dist(0.2, 9.0), alpha(0.0, 2.5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> values(12 * 10);
    for (double& v : values) v = depth_dist(rng);
    const FloatGrid depth(12, 10, values);
    const DragPair pair{{5, 4}, {9, -2}};
    const double a = alpha(rng);
    const DisplacementField f = geometry_field(depth, Mask(12, 10, 1), pair, {a, 10.0});
    for (int y = 0; y < 10; ++y) {
      for (int x = 0; x < 12; ++x) {
        const double s = oracle::depth_ratio_scale(depth(5, 4), depth(x, y), a, 10.0);
        ASSERT_NEAR(f.at(x, y).dx, s * 4.0, 1e-12 * std::max(1.0, std::abs(s * 4.0)));
        ASSERT_NEAR(f.at(x, y).dy, s * -6.0, 1e-12 * std::max(1.0, std::abs(s * 6.0)));
      }
    }
  }
}

}  // namespace
}  // namespace dragfield

#include <gtest/gtest.h>

#include "dragfield/pipeline.hpp"
#include "dragfield/synthetic.hpp"
#include "json.hpp"

namespace dragfield {
namespace {

EditInputs scene(DragSet pairs) {
  return {synthetic::gradient_image(40, 30), synthetic::sphere_depth(40, 30, {20, 15}, 10, 3.0, 1.5),
          synthetic::rectangle_mask(40, 30, 4, 4, 35, 25), std::move(pairs)};
}

TEST(RunEditTest, ZeroDragIsIdentity) {
  const EditInputs in = scene({{{12, 14}, {12, 14}}});
  EditParams params;
  params.eta = 0.7;
  const EditOutcome out = run_edit(in, params);
  EXPECT_EQ(out.output, in.image);
  EXPECT_EQ(out.field.max_magnitude(), 0.0);
  EXPECT_FALSE(out.warp.interpolated.any());
}

TEST(RunEditTest, EtaZeroIsWarpPlusFill) {
  const EditInputs in = scene({{{12, 14}, {17, 12}}, {{28, 16}, {26, 20}}});
  const EditParams params;
  const EditOutcome out = run_edit(in, params);
  const MultiPointField mp = multi_point_field_detailed(*in.depth, in.mask, in.pairs, params.field,
                                                            params.strategy);
  const WarpResult expected = fill_holes(forward_warp(in.image, mp.field, in.mask, &*in.depth));
  EXPECT_EQ(out.field, mp.field);
  EXPECT_EQ(static_cast<const ChannelGrid&>(out.output), expected.grid);
  EXPECT_GT(out.warp.holes_before_fill, 0u);
}

TEST(RunEditTest, RefinementTouchesOnlyInterpolatedCells) {
  const EditInputs in = scene({{{12, 14}, {18, 14}}});
  EditParams params;
  const EditOutcome base = run_edit(in, params);
  params.eta = 1.0;
  params.seed = 42;
  const EditOutcome a = run_edit(in, params);
  const EditOutcome b = run_edit(in, params);
  params.seed = 43;
  const EditOutcome c = run_edit(in, params);
  EXPECT_EQ(a.output, b.output);
  ASSERT_TRUE(a.warp.interpolated.any());
  bool any_diff = false;
  for (int y = 0; y < in.image.height(); ++y) {
    for (int x = 0; x < in.image.width(); ++x) {
      for (int ch = 0; ch < in.image.channels(); ++ch) {
        if (!a.warp.interpolated.test(x, y)) {
          ASSERT_EQ(a.output(x, y, ch), base.output(x, y, ch));
        } else if (a.output(x, y, ch) != c.output(x, y, ch)) {
          any_diff = true;
        }
        ASSERT_GE(a.output(x, y, ch), 0.0);
        ASSERT_LE(a.output(x, y, ch), 1.0);
      }
    }
  }
  EXPECT_TRUE(any_diff);
}

TEST(RunEditTest, Validation) {
  const EditInputs in = scene({{{12, 14}, {18, 14}}});
  EditParams p;
  p.field.geometry.alpha = 5.0;
  EXPECT_NO_THROW(run_edit(in, p));
  p.field.geometry.alpha = 5.1;
  EXPECT_THROW(run_edit(in, p), ValidationError);
  p = {};
  p.field.plane.beta = 0.0;
  EXPECT_THROW(run_edit(in, p), ValidationError);
  p = {};
  p.field.fusion.gamma_scale = -0.1;
  EXPECT_THROW(run_edit(in, p), ValidationError);
  p = {};
  p.eta = 1.5;
  EXPECT_THROW(run_edit(in, p), ValidationError);

  EditInputs bad = in;
  bad.depth = FloatGrid(10, 10, 1.0);
  EXPECT_THROW(run_edit(bad, {}), ValidationError);
  bad = in;
  bad.mask = Mask(40, 30, 0);
  EXPECT_THROW(run_edit(bad, {}), ValidationError);
  bad = in;
  bad.pairs = {{{1, 1}, {3, 3}}};
  EXPECT_THROW(run_edit(bad, {}), ValidationError);
}

TEST(RenderArtifactsTest, ReportCarriesFrozenKeys) {
  const EditInputs in = scene({{{12, 14}, {18, 14}}});
  const EditParams params;
  const EditOutcome out = run_edit(in, params);
  const auto report = nlohmann::json::parse(render_artifacts(out, in, params).report);
  for (const char* key : {"holes", "collisions", "conflict_score", "params_echo"}) {
    EXPECT_TRUE(report.contains(key)) << key;
  }
  EXPECT_EQ(report["holes"].get<std::size_t>(), out.warp.holes_before_fill);
  EXPECT_EQ(report["params_echo"]["strategy"], "partition");
  EXPECT_EQ(report["params_echo"]["depth"], "provided");
  EXPECT_EQ(report["zero_field"], false);
}

TEST(RenderArtifactsTest, SinglePairStrategiesAreByteIdentical) {
  const EditInputs in = scene({{{12, 14}, {18, 11}}});
  EditParams partition;
  EditParams add;
  add.strategy = AggregationStrategy::DirectlyAdd;
  const EditArtifacts a = render_artifacts(run_edit(in, partition), in, partition);
  const EditArtifacts b = render_artifacts(run_edit(in, add), in, add);
  EXPECT_EQ(a.field_dx, b.field_dx);
  EXPECT_EQ(a.field_dy, b.field_dy);
  EXPECT_EQ(a.warped, b.warped);
  EXPECT_EQ(a.field_vis, b.field_vis);
}

TEST(RefineInterpolatedTest, PassThroughCases) {
  const ImageGrid img = synthetic::gradient_image(8, 6);
  Mask m(8, 6, 0);
  EXPECT_EQ(refine_interpolated(img, m, 1.0, 3), img);
  m.set(2, 2);
  EXPECT_EQ(refine_interpolated(img, m, 0.0, 3), img);
  const ImageGrid r = refine_interpolated(img, m, 1.0, 3);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 8; ++x)
      if (!(x == 2 && y == 2))
        for (int c = 0; c < img.channels(); ++c) EXPECT_EQ(r(x, y, c), img(x, y, c));
}

}  // namespace
}  // namespace dragfield

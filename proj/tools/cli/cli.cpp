#include "cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dragfield/error.hpp"
#include "dragfield/float_grid_io.hpp"
#include "dragfield/image_io.hpp"
#include "dragfield/pipeline.hpp"
#include "service/service.hpp"

namespace dragfield::cli {
namespace {

namespace fs = std::filesystem;

struct FieldOptions {
  std::string image;
  std::string mask;
  std::optional<std::string> depth;
  std::string pairs;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  std::string strategy = "partition";
  double eta = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string state_dir;
};

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

int run_field(const FieldOptions& opt, std::ostream& out) {
  EditParams params;
  params.field.geometry.alpha = opt.alpha;
  params.field.plane.beta = opt.beta;
  params.field.fusion.gamma_scale = opt.gamma;
  params.strategy = parse_strategy(opt.strategy);
  params.eta = opt.eta;
  params.seed = opt.seed;
  params.validate();

  EditInputs inputs{load_image(opt.image), std::nullopt, load_mask(opt.mask),
                    load_drag_pairs(opt.pairs)};
  if (opt.depth) inputs.depth = read_float_grid(*opt.depth);

  const EditOutcome outcome = run_edit(inputs, params);
  const EditArtifacts art = render_artifacts(outcome, inputs, params);

  const fs::path dir(opt.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "field_dx.fgrd", art.field_dx);
  write_file(dir / "field_dy.fgrd", art.field_dy);
  write_file(dir / "warped.png", art.warped);
  write_file(dir / "field_vis.png", art.field_vis);
  write_file(dir / "report.json", art.report);

  out << "wrote " << dir.string() << " (holes " << outcome.warp.holes_before_fill
      << ", collisions " << outcome.warp.collisions << ", conflict score "
      << outcome.conflict.score << ")\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Depth-aware drag editing: displacement fields, warping, artifacts"};
  app.require_subcommand(1);

  FieldOptions field;
  CLI::App* field_cmd = app.add_subcommand("field", "Compute a drag edit and write its artifacts");
  field_cmd->add_option("--image", field.image, "Input PNG")->required();
  field_cmd->add_option("--mask", field.mask, "Editable-region PNG (channel 0 >= 0.5)")->required();
  field_cmd->add_option("--depth", field.depth, "Depth FGRID, larger is farther (uniform when omitted)");
  field_cmd->add_option("--pairs", field.pairs, "JSON list of {handle:[x,y], target:[x,y]}")->required();
  field_cmd->add_option("--alpha", field.alpha, "Depth-ratio exponent")->capture_default_str();
  field_cmd->add_option("--beta", field.beta, "Plane falloff exponent")->capture_default_str();
  field_cmd->add_option("--gamma", field.gamma, "Fusion scale, relative to the influence diameter")
      ->capture_default_str();
  field_cmd->add_option("--strategy", field.strategy, "Multi-pair aggregation")
      ->check(CLI::IsMember({"partition", "add", "pixel-distance", "drag-magnitude"}))
      ->capture_default_str();
  field_cmd->add_option("--eta", field.eta, "Stochasticity of hole refinement")->capture_default_str();
  field_cmd->add_option("--seed", field.seed, "Noise seed")->capture_default_str();
  field_cmd->add_option("--out", field.out, "Output directory")->required();

  ServeOptions serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port)->check(CLI::Range(1, 65535))->capture_default_str();
  serve_cmd->add_option("--state-dir", serve.state_dir, "Session and artifact storage")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (*field_cmd) return run_field(field, out);
    return service::serve(serve.state_dir, serve.host, serve.port);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }
}

}  // namespace dragfield::cli

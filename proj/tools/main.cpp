// cvoam: command-line front end for the OAM-multiplexed CV entanglement toolkit.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "app/config.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;
constexpr const char* kVersion = "0.1.0";

struct Overrides {
  std::string config_path;
  std::string preset;
  std::optional<double> v;
  std::optional<double> vp;
  std::optional<std::vector<double>> delta;
  std::optional<double> eta_start;
  std::optional<double> eta_stop;
  std::optional<double> eta_step;
  std::optional<std::vector<int>> charges;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<std::string> out;
  std::optional<double> astigmatism;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--preset", o.preset, "Parameter preset")->check(CLI::IsMember({"loss", "noise", "steering"}));
  cmd->add_option("--v", o.v, "Squeezed variance V (all charges)");
  cmd->add_option("--vp", o.vp, "Anti-squeezed variance V' (all charges)");
  cmd->add_option("--delta", o.delta, "Excess-noise values")->delimiter(',');
  cmd->add_option("--eta-start", o.eta_start, "First transmission efficiency");
  cmd->add_option("--eta-stop", o.eta_stop, "Last transmission efficiency");
  cmd->add_option("--eta-step", o.eta_step, "Efficiency step");
  cmd->add_option("--charges", o.charges, "Topological charges")->delimiter(',');
  cmd->add_option("--seed", o.seed, "Master RNG seed");
  cmd->add_option("--n", o.n, "Samples per homodyne setting");
  cmd->add_option("--out", o.out, "Output file (directory for 'modes')");
}

cvoam::app::SweepConfig resolve(const Overrides& o) {
  using namespace cvoam::app;
  SweepConfig c = o.preset.empty() ? SweepConfig{} : preset(o.preset);
  if (!o.config_path.empty()) {
    std::ifstream is(o.config_path);
    if (!is) {
      throw IoError("cannot read config '" + o.config_path + "'");
    }
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config '" + o.config_path + "' is not valid JSON: " + e.what());
    }
    c = config_from_json(j, c);
  }
  if (o.v || o.vp) {
    try {
      c.spec = cvoam::SqueezingSpec::from_variances(o.v.value_or(c.spec.V), o.vp.value_or(c.spec.Vp));
    } catch (const cvoam::InputError& e) {
      throw ConfigError(e.what());
    }
    c.specs.clear();
  }
  if (o.delta) c.delta = *o.delta;
  if (o.eta_start) c.eta.start = *o.eta_start;
  if (o.eta_stop) c.eta.stop = *o.eta_stop;
  if (o.eta_step) c.eta.step = *o.eta_step;
  if (o.charges) c.charges = *o.charges;
  if (o.seed) c.seed = *o.seed;
  if (o.n) c.n_per_setting = *o.n;
  if (o.out) c.output = *o.out;
  if (o.astigmatism) c.astigmatism = *o.astigmatism;
  c.check();
  return c;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

} // namespace

int main(int argc, char** argv) {
  using namespace cvoam::app;

  CLI::App app{"Gaussian-state toolkit for OAM-multiplexed two-mode entanglement and steering"};
  app.set_version_flag("--version", std::string("cvoam ") + kVersion);
  app.require_subcommand(1);

  Overrides o;
  std::string samples_dir;
  int depth_bits = 8;

  auto* state = app.add_subcommand("state", "Build the multiplexed source and its channel outputs (JSON)");
  auto* sweep = app.add_subcommand("sweep", "PPT and steering over the (l, delta, eta) grid (CSV)");
  auto* thresholds = app.add_subcommand("thresholds", "Entanglement/steering death points per delta (JSON)");
  auto* tomo = app.add_subcommand("tomo", "Simulated six-setting homodyne tomography (JSON)");
  auto* modes = app.add_subcommand("modes", "Laguerre-Gaussian beam and tilted-lens images (PGM + JSON)");
  for (auto* cmd : {state, sweep, thresholds, tomo, modes}) {
    add_common(cmd, o);
  }
  tomo->add_option("--samples-dir", samples_dir, "Write raw sample batches as CSV here");
  modes->add_option("--astigmatism", o.astigmatism, "Tilted-lens astigmatism strength");
  modes->add_option("--depth", depth_bits, "PGM bit depth")->check(CLI::IsMember({8, 16}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const SweepConfig config = resolve(o);
    if (*state) {
      write_output(config.output, dump(run_state(config)));
    } else if (*sweep) {
      write_output(config.output, sweep_csv(run_sweep(config)));
    } else if (*thresholds) {
      write_output(config.output, dump(run_thresholds(config)));
    } else if (*tomo) {
      write_output(config.output, dump(run_tomo(config, samples_dir)));
    } else if (*modes) {
      const auto depth = depth_bits == 16 ? cvoam::PgmDepth::Bits16 : cvoam::PgmDepth::Bits8;
      const std::string dir = config.output.empty() ? "." : config.output;
      const ModesResult result = run_modes(config, dir, depth);
      write_output("", dump(result.report));
      if (!result.all_match) {
        std::cerr << "error: stripe count does not match |l| for every charge\n";
        return kExitNumerical;
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const cvoam::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const cvoam::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

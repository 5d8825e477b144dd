#include "app/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "cvoam/channel.hpp"
#include "cvoam/format.hpp"
#include "cvoam/serialization.hpp"
#include "cvoam/tomography.hpp"

namespace cvoam::app {

namespace {

struct GridPoint {
  int l;
  double delta;
  double eta;
};

// Sorted by (l, delta, eta).
std::vector<GridPoint> grid_points(const SweepConfig& config) {
  std::vector<int> charges = config.charges;
  std::sort(charges.begin(), charges.end());
  std::vector<double> deltas = config.delta;
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  const std::vector<double> etas = config.eta.points();

  std::vector<GridPoint> out;
  for (int l : charges) {
    for (double d : deltas) {
      for (double e : etas) {
        out.push_back({l, d, e});
      }
    }
  }
  return out;
}

nlohmann::json matrix_json(const Eigen::Matrix4d& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    rows.push_back({m(r, 0), m(r, 1), m(r, 2), m(r, 3)});
  }
  return rows;
}

nlohmann::json optional_json(const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  os << content;
  os.flush();
  if (!os) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create directory '" + dir.string() + "'");
  }
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.check();
  const std::vector<GridPoint> points = grid_points(config);
  std::vector<SweepRow> rows(points.size());

  // One task per charge; each writes only its own slice of `rows`.
  std::vector<std::future<void>> jobs;
  std::size_t begin = 0;
  while (begin < points.size()) {
    std::size_t end = begin;
    while (end < points.size() && points[end].l == points[begin].l) {
      ++end;
    }
    jobs.push_back(std::async(std::launch::async, [&, begin, end] {
      const CovarianceMatrix source = make_tmss(config.spec_for(points[begin].l));
      for (std::size_t i = begin; i < end; ++i) {
        const GridPoint& p = points[i];
        rows[i] = {p.l, p.eta, p.delta, classify(apply_channel(source, ChannelParams{p.eta, p.delta}))};
      }
    }));
    begin = end;
  }
  for (auto& job : jobs) {
    job.get();
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    os << r.l << ',' << format_double(r.eta) << ',' << format_double(r.delta) << ',' << format_double(r.report.nu)
       << ',' << (r.report.entangled ? "true" : "false") << ',' << format_double(r.report.gAB) << ','
       << format_double(r.report.gBA) << ',' << to_string(r.report.steering_class) << '\n';
  }
  return os.str();
}

nlohmann::json run_thresholds(const SweepConfig& config) {
  config.check();
  std::vector<int> charges = config.charges;
  std::sort(charges.begin(), charges.end());
  std::vector<double> deltas = config.delta;
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());

  nlohmann::json list = nlohmann::json::array();
  for (int l : charges) {
    const SqueezingSpec spec = config.spec_for(l);
    for (double d : deltas) {
      list.push_back({{"l", l},
                      {"delta", d},
                      {"entanglement", optional_json(entanglement_death_eta(spec, d))},
                      {"AB", optional_json(steering_death_eta(spec, d, SteeringDirection::AToB))},
                      {"BA", optional_json(steering_death_eta(spec, d, SteeringDirection::BToA))}});
    }
  }
  return {{"thresholds", list}};
}

nlohmann::json run_tomo(const SweepConfig& config, const std::filesystem::path& samples_dir) {
  config.check();
  if (!samples_dir.empty()) {
    ensure_directory(samples_dir);
  }
  const std::vector<GridPoint> points = grid_points(config);
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const GridPoint& p = points[k];
    const std::uint64_t seed = config.seed + k;
    const CovarianceMatrix truth = apply_channel(make_tmss(config.spec_for(p.l)), ChannelParams{p.eta, p.delta});
    const auto batches = simulate_measurements(truth, config.n_per_setting, seed);
    if (!samples_dir.empty()) {
      for (const SampleBatch& b : batches) {
        std::ostringstream name;
        name << "samples_l" << p.l << "_eta" << format_double(p.eta) << "_delta" << format_double(p.delta) << '_'
             << to_string(b.setting) << "_seed" << b.seed << ".csv";
        std::ostringstream body;
        write_batch_csv(body, b);
        write_file(samples_dir / name.str(), body.str());
      }
    }
    const VarianceSet vs = variances_from_batches(batches);
    const Reconstruction rec = reconstruct_cm(vs);
    const CertifiedReport cert = certify(vs);

    nlohmann::json batch_seeds = nlohmann::json::object();
    for (const SampleBatch& b : batches) {
      batch_seeds[std::string(to_string(b.setting))] = b.seed;
    }
    list.push_back({{"l", p.l},
                    {"eta", p.eta},
                    {"delta", p.delta},
                    {"seed", seed},
                    {"batch_seeds", batch_seeds},
                    {"n_per_setting", config.n_per_setting},
                    {"variances", vs},
                    {"covariance_true", truth},
                    {"covariance_reconstructed", rec.cm},
                    {"covariance_stderr", matrix_json(rec.stderr_matrix)},
                    {"entry_error", matrix_json(rec.cm.matrix() - truth.matrix())},
                    {"true", classify(truth)},
                    {"reconstructed", cert.estimate},
                    {"certified",
                     {{"sigmas", cert.sigmas},
                      {"nu_stderr", cert.nu_stderr},
                      {"gAB_stderr", cert.gAB_stderr},
                      {"gBA_stderr", cert.gBA_stderr},
                      {"entangled", cert.entangled},
                      {"class", std::string(to_string(cert.steering_class))}}},
                    {"warnings", rec.warnings}});
  }
  return {{"points", list}};
}

nlohmann::json run_state(const SweepConfig& config) {
  config.check();
  std::vector<std::pair<int, SqueezingSpec>> specs;
  for (int l : config.charges) {
    specs.emplace_back(l, config.spec_for(l));
  }
  const MultiplexedState source = make_multiplexed(specs);
  std::vector<double> deltas = config.delta;
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());

  nlohmann::json channels = nlohmann::json::array();
  for (double d : deltas) {
    for (double e : config.eta.points()) {
      channels.push_back({{"eta", e}, {"delta", d}, {"state", apply_channel(source, ChannelParams{e, d})}});
    }
  }
  return {{"source", source}, {"channels", channels}};
}

ModesResult run_modes(const SweepConfig& config, const std::filesystem::path& out_dir, PgmDepth depth,
                      const GridSpec& grid) {
  config.check();
  ensure_directory(out_dir);
  ModesResult result;
  nlohmann::json modes = nlohmann::json::array();
  for (int l : config.charges) {
    const FieldGrid field = lg_field(LGModeSpec{l, 1.0}, grid);
    const IntensityGrid beam = intensity(field);
    const IntensityGrid tilted = tilted_lens_pattern(field, config.astigmatism);
    const StripeCount stripes = count_dark_stripes(tilted);

    nlohmann::json files = nlohmann::json::array();
    for (const auto& [stage, img] : {std::pair{"beam", &beam}, std::pair{"tilted", &tilted}}) {
      std::ostringstream body;
      write_pgm(body, *img, depth);
      const std::string name = pgm_filename(l, stage);
      write_file(out_dir / name, body.str());
      files.push_back(name);
    }
    const bool match = !stripes.indeterminate && stripes.count == std::abs(l);
    result.all_match = result.all_match && match;
    modes.push_back({{"l", l},
                     {"stripes", stripes.count},
                     {"expected", std::abs(l)},
                     {"orientation", stripes.orientation},
                     {"indeterminate", stripes.indeterminate},
                     {"files", files}});
  }
  result.report = {{"astigmatism", config.astigmatism}, {"modes", modes}};
  return result;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) {
      throw IoError("failed writing to stdout");
    }
    return;
  }
  write_file(path, content);
}

} // namespace cvoam::app

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "app/config.hpp"
#include "cvoam/criteria.hpp"
#include "cvoam/modes.hpp"

namespace cvoam::app {

inline constexpr const char* kSweepHeader = "l,eta,delta,nu,entangled,gAB,gBA,class";

struct SweepRow {
  int l = 0;
  double eta = 0.0;
  double delta = 0.0;
  CriteriaReport report;
};

/// One row per (l, delta, eta), sorted in that order.
std::vector<SweepRow> run_sweep(const SweepConfig& config);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Entanglement and steering death points per (l, delta); null where the
/// quantity never dies.
nlohmann::json run_thresholds(const SweepConfig& config);

/// Simulated homodyne tomography at every (l, delta, eta) grid point. Point k
/// (in sorted order) is sampled with seed `config.seed + k`. When
/// `samples_dir` is non-empty the raw batches are written there as one-column
/// CSV files.
nlohmann::json run_tomo(const SweepConfig& config, const std::filesystem::path& samples_dir = {});

/// Channel outputs of the multiplexed source at every (delta, eta).
nlohmann::json run_state(const SweepConfig& config);

struct ModesResult {
  nlohmann::json report;
  bool all_match = true; ///< every stripe count equals |l|
};

/// Writes mode_l{l}_beam.pgm and mode_l{l}_tilted.pgm into `out_dir`.
ModesResult run_modes(const SweepConfig& config, const std::filesystem::path& out_dir,
                      PgmDepth depth = PgmDepth::Bits8, const GridSpec& grid = {});

/// Writes `content` to `path`, or stdout when `path` is empty. IoError on failure.
void write_output(const std::string& path, const std::string& content);

} // namespace cvoam::app

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvoam/error.hpp"
#include "cvoam/gaussian.hpp"

namespace cvoam::app {

class ConfigError : public InputError {
public:
  using InputError::InputError;
};

class IoError : public Error {
public:
  using Error::Error;
};

struct EtaGrid {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.01;

  /// start, start + step, ... up to stop (inclusive within 1e-9 steps),
  /// rounded to 12 decimals so printed grids read cleanly.
  std::vector<double> points() const;

  friend bool operator==(const EtaGrid&, const EtaGrid&) = default;
};

/// Everything the sweep, threshold, tomography and mode commands consume.
/// JSON field names match the member names.
struct SweepConfig {
  SqueezingSpec spec = SqueezingSpec{0.47, 4.11};
  /// Per-charge overrides of `spec`.
  std::map<int, SqueezingSpec> specs;
  std::vector<double> delta{0.0};
  EtaGrid eta;
  std::vector<int> charges{0, 1, 2};
  std::string output;
  std::uint64_t seed = 1;
  std::size_t n_per_setting = 100000;
  double astigmatism = 2.0;

  SqueezingSpec spec_for(int l) const;
  /// Throws ConfigError on an empty charge list, duplicate charges, an eta
  /// grid outside [0, 1], a non-positive step, negative excess noise, or
  /// fewer than 2 samples per setting.
  void check() const;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

nlohmann::json to_json(const SweepConfig& config);
/// Missing fields keep the values already in `base`.
SweepConfig config_from_json(const nlohmann::json& j, SweepConfig base = {});

/// Parameter sets of the loss sweep ("loss"), the noisy-channel sweeps
/// ("noise") and the steering sweeps ("steering").
SweepConfig preset(std::string_view name);

} // namespace cvoam::app

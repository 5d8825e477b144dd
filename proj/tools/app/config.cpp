#include "app/config.hpp"

#include <cmath>
#include <set>

#include "cvoam/serialization.hpp"

namespace cvoam::app {

std::vector<double> EtaGrid::points() const {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(std::max(0L, count)));
  for (long k = 0; k < count; ++k) {
    const double eta = start + static_cast<double>(k) * step;
    out.push_back(std::min(1.0, std::round(eta * 1e12) / 1e12));
  }
  return out;
}

SqueezingSpec SweepConfig::spec_for(int l) const {
  auto it = specs.find(l);
  return it == specs.end() ? spec : it->second;
}

void SweepConfig::check() const {
  if (charges.empty()) {
    throw ConfigError("charge list is empty");
  }
  if (std::set<int>(charges.begin(), charges.end()).size() != charges.size()) {
    throw ConfigError("charge list has duplicates");
  }
  if (!(std::isfinite(eta.step) && eta.step > 0.0)) {
    throw ConfigError("eta step must be > 0");
  }
  if (!(eta.start >= 0.0 && eta.stop <= 1.0 && eta.start <= eta.stop)) {
    throw ConfigError("eta grid must satisfy 0 <= start <= stop <= 1");
  }
  if (delta.empty()) {
    throw ConfigError("excess-noise list is empty");
  }
  for (double d : delta) {
    if (!(std::isfinite(d) && d >= 0.0)) {
      throw ConfigError("excess noise must be finite and >= 0");
    }
  }
  if (n_per_setting < 2) {
    throw ConfigError("n_per_setting must be >= 2");
  }
  if (!(std::isfinite(astigmatism) && astigmatism > 0.0)) {
    throw ConfigError("astigmatism must be > 0");
  }
  try {
    make_tmss(spec);
    for (const auto& [l, s] : specs) {
      make_tmss(s);
    }
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json to_json(const SweepConfig& c) {
  nlohmann::json specs = nlohmann::json::object();
  for (const auto& [l, s] : c.specs) {
    specs[std::to_string(l)] = s;
  }
  return {{"spec", c.spec},
          {"specs", specs},
          {"delta", c.delta},
          {"eta", {{"start", c.eta.start}, {"stop", c.eta.stop}, {"step", c.eta.step}}},
          {"charges", c.charges},
          {"output", c.output},
          {"seed", c.seed},
          {"n_per_setting", c.n_per_setting},
          {"astigmatism", c.astigmatism}};
}

SweepConfig config_from_json(const nlohmann::json& j, SweepConfig c) {
  static const std::set<std::string> known{"spec",   "specs", "delta", "eta",          "charges",
                                           "output", "seed",  "n_per_setting", "astigmatism"};
  try {
    if (!j.is_object()) {
      throw ConfigError("config must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) {
        throw ConfigError("unknown config field '" + key + "'");
      }
    }
    if (j.contains("spec")) {
      c.spec = j["spec"].get<SqueezingSpec>();
    }
    if (j.contains("specs")) {
      c.specs.clear();
      for (const auto& [key, value] : j["specs"].items()) {
        std::size_t used = 0;
        const int l = std::stoi(key, &used);
        if (used != key.size()) {
          throw ConfigError("spec key '" + key + "' is not an integer charge");
        }
        c.specs[l] = value.get<SqueezingSpec>();
      }
    }
    if (j.contains("delta")) {
      c.delta = j["delta"].get<std::vector<double>>();
    }
    if (j.contains("eta")) {
      const auto& e = j["eta"];
      c.eta.start = e.value("start", c.eta.start);
      c.eta.stop = e.value("stop", c.eta.stop);
      c.eta.step = e.value("step", c.eta.step);
    }
    if (j.contains("charges")) {
      c.charges = j["charges"].get<std::vector<int>>();
    }
    if (j.contains("output")) {
      c.output = j["output"].get<std::string>();
    }
    if (j.contains("seed")) {
      c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("n_per_setting")) {
      c.n_per_setting = j["n_per_setting"].get<std::size_t>();
    }
    if (j.contains("astigmatism")) {
      c.astigmatism = j["astigmatism"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad integer key in config");
  } catch (const std::out_of_range&) {
    throw ConfigError("integer key out of range in config");
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

SweepConfig preset(std::string_view name) {
  SweepConfig c;
  if (name == "loss") {
    c.delta = {0.0};
  } else if (name == "noise") {
    c.delta = {0.15, 0.5, 1.0};
  } else if (name == "steering") {
    c.delta = {0.0, 0.15};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected loss, noise or steering)");
  }
  return c;
}

} // namespace cvoam::app

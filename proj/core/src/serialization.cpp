#include "cvoam/serialization.hpp"

#include <string>

namespace cvoam {

namespace {

const nlohmann::json kOrder = {"Xc", "Yc", "Xp", "Yp"};

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

} // namespace

void to_json(nlohmann::json& j, const CovarianceMatrix& cm) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    rows.push_back({cm(r, 0), cm(r, 1), cm(r, 2), cm(r, 3)});
  }
  j = {{"order", kOrder}, {"matrix", rows}};
}

void from_json(const nlohmann::json& j, CovarianceMatrix& cm) {
  guarded([&] {
    if (j.at("order") != kOrder) {
      throw InputError("covariance JSON must use order [\"Xc\",\"Yc\",\"Xp\",\"Yp\"]");
    }
    const auto& rows = j.at("matrix");
    if (!rows.is_array() || rows.size() != 4) {
      throw InputError("covariance JSON needs a 4x4 matrix");
    }
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r) {
      if (!rows[r].is_array() || rows[r].size() != 4) {
        throw InputError("covariance JSON needs a 4x4 matrix");
      }
      for (int c = 0; c < 4; ++c) {
        m(r, c) = rows[r][c].get<double>();
      }
    }
    cm = CovarianceMatrix(m);
    return 0;
  });
}

void to_json(nlohmann::json& j, const SqueezingSpec& spec) { j = {{"V", spec.V}, {"Vp", spec.Vp}}; }

void from_json(const nlohmann::json& j, SqueezingSpec& spec) {
  spec = guarded([&] {
    if (j.contains("r")) {
      if (j.contains("V") || j.contains("Vp")) {
        throw InputError("give either r or (V, Vp), not both");
      }
      return SqueezingSpec::from_squeezing(j.at("r").get<double>());
    }
    return SqueezingSpec::from_variances(j.at("V").get<double>(), j.at("Vp").get<double>());
  });
}

void to_json(nlohmann::json& j, const MultiplexedState& state) {
  nlohmann::json pairs = nlohmann::json::object();
  for (const auto& [l, pair] : state.pairs) {
    pairs[std::to_string(l)] = {{"spec", pair.spec}, {"covariance", pair.cm}};
  }
  j = {{"pairs", pairs}};
}

void from_json(const nlohmann::json& j, MultiplexedState& state) {
  guarded([&] {
    MultiplexedState out;
    for (const auto& [key, value] : j.at("pairs").items()) {
      std::size_t used = 0;
      int l = 0;
      try {
        l = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || key.empty()) {
        throw InputError("pair key '" + key + "' is not an integer charge");
      }
      ModePair pair{value.at("spec").get<SqueezingSpec>(), value.at("covariance").get<CovarianceMatrix>()};
      if (!out.pairs.emplace(l, pair).second) {
        throw InputError("duplicate topological charge " + key);
      }
    }
    state = std::move(out);
    return 0;
  });
}

void to_json(nlohmann::json& j, const CriteriaReport& report) {
  j = {{"nu", report.nu},
       {"entangled", report.entangled},
       {"gAB", report.gAB},
       {"gBA", report.gBA},
       {"class", std::string(to_string(report.steering_class))}};
}

void from_json(const nlohmann::json& j, CriteriaReport& report) {
  guarded([&] {
    report.nu = j.at("nu").get<double>();
    report.entangled = j.at("entangled").get<bool>();
    report.gAB = j.at("gAB").get<double>();
    report.gBA = j.at("gBA").get<double>();
    report.steering_class = steering_class_from_string(j.at("class").get<std::string>());
    return 0;
  });
}

void to_json(nlohmann::json& j, const VarianceSet& vs) {
  j = nlohmann::json::object();
  for (Setting s : kAllSettings) {
    nlohmann::json entry = {{"db", vs.get(s)}};
    if (vs.stderr_db) {
      entry["stderr_db"] = (*vs.stderr_db)[static_cast<int>(s)];
    }
    j[std::string(to_string(s))] = entry;
  }
}

} // namespace cvoam

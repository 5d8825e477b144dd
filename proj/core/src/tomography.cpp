#include "cvoam/tomography.hpp"

#include <cmath>
#include <future>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "cvoam/format.hpp"

namespace cvoam {

namespace {

constexpr double kDbPerNeper = 10.0 / std::numbers::ln10;

int index_of(Setting s) { return static_cast<int>(s); }

// Covariance matrix assembled from absolute variances in canonical order.
Eigen::Matrix4d assemble(const std::array<double, 6>& v) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int q = 0; q < 4; ++q) {
    m(q, q) = v[q];
  }
  const double cxx = covariance_from_difference(v[index_of(Setting::Xdiff)], v[Xp], v[Xc]);
  const double cyy = covariance_from_sum(v[index_of(Setting::Ysum)], v[Yp], v[Yc]);
  m(Xc, Xp) = m(Xp, Xc) = cxx;
  m(Yc, Yp) = m(Yp, Yc) = cyy;
  return m;
}

std::array<double, 6> linear_values(const VarianceSet& vs) {
  std::array<double, 6> v{};
  for (Setting s : kAllSettings) {
    v[index_of(s)] = vs.linear(s);
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == sep) {
    out.emplace_back();
  }
  return out;
}

} // namespace

std::string_view to_string(Setting s) {
  switch (s) {
  case Setting::Xc:
    return "Xc";
  case Setting::Yc:
    return "Yc";
  case Setting::Xp:
    return "Xp";
  case Setting::Yp:
    return "Yp";
  case Setting::Xdiff:
    return "Xdiff";
  case Setting::Ysum:
    return "Ysum";
  }
  return "?";
}

Setting setting_from_string(std::string_view s) {
  for (Setting candidate : kAllSettings) {
    if (to_string(candidate) == s) {
      return candidate;
    }
  }
  throw InputError("unknown measurement setting '" + std::string(s) + "'");
}

bool is_joint(Setting s) { return s == Setting::Xdiff || s == Setting::Ysum; }

double shot_noise_level(Setting s) { return is_joint(s) ? 2.0 : 1.0; }

double setting_variance(const CovarianceMatrix& cm, Setting s) {
  switch (s) {
  case Setting::Xc:
    return cm(Xc, Xc);
  case Setting::Yc:
    return cm(Yc, Yc);
  case Setting::Xp:
    return cm(Xp, Xp);
  case Setting::Yp:
    return cm(Yp, Yp);
  case Setting::Xdiff:
    return cm(Xp, Xp) + cm(Xc, Xc) - 2.0 * cm(Xp, Xc);
  case Setting::Ysum:
    return cm(Yp, Yp) + cm(Yc, Yc) + 2.0 * cm(Yp, Yc);
  }
  throw InputError("unknown measurement setting");
}

std::uint64_t derive_seed(std::uint64_t master, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

SampleBatch simulate_batch(Setting s, double variance, std::size_t n, std::uint64_t seed) {
  if (n < 2) {
    throw InputError("need at least 2 samples per setting");
  }
  if (!std::isfinite(variance) || variance < 0.0) {
    throw InputError("sampling variance must be finite and >= 0");
  }
  SampleBatch batch{s, std::vector<double>(n), seed};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(variance));
  for (double& x : batch.samples) {
    x = normal(rng);
  }
  return batch;
}

std::array<SampleBatch, 6> simulate_measurements(const CovarianceMatrix& cm, std::size_t n, std::uint64_t seed) {
  require_physical(cm);
  if (n < 2) {
    throw InputError("need at least 2 samples per setting");
  }
  std::array<std::future<SampleBatch>, 6> jobs;
  for (Setting s : kAllSettings) {
    const int i = index_of(s);
    jobs[i] = std::async(std::launch::async, simulate_batch, s, setting_variance(cm, s), n, derive_seed(seed, i));
  }
  std::array<SampleBatch, 6> out;
  for (int i = 0; i < 6; ++i) {
    out[i] = jobs[i].get();
  }
  return out;
}

double VarianceSet::linear(Setting s) const { return shot_noise_level(s) * db_to_linear(Decibel{get(s)}); }

double VarianceSet::linear_stderr(Setting s) const {
  if (!stderr_db) {
    return 0.0;
  }
  return linear(s) * (*stderr_db)[index_of(s)] / kDbPerNeper;
}

void VarianceSet::check() const {
  for (double x : db) {
    if (!std::isfinite(x)) {
      throw InputError("variance set has non-finite dB values");
    }
  }
  if (stderr_db) {
    for (double e : *stderr_db) {
      if (!std::isfinite(e) || e < 0.0) {
        throw InputError("variance set has invalid standard errors");
      }
    }
  }
}

VarianceSet variances_from_batches(std::span<const SampleBatch> batches) {
  std::array<const SampleBatch*, 6> by_setting{};
  for (const SampleBatch& b : batches) {
    auto& slot = by_setting[index_of(b.setting)];
    if (slot != nullptr) {
      throw InputError("setting " + std::string(to_string(b.setting)) + " appears twice");
    }
    slot = &b;
  }
  VarianceSet vs;
  vs.stderr_db.emplace();
  for (Setting s : kAllSettings) {
    const SampleBatch* b = by_setting[index_of(s)];
    if (b == nullptr) {
      throw InputError("missing setting " + std::string(to_string(s)));
    }
    const std::size_t n = b->samples.size();
    if (n < 2) {
      throw InputError("batch " + std::string(to_string(s)) + " has fewer than 2 samples");
    }
    double mean = 0.0;
    for (double x : b->samples) {
      mean += x;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : b->samples) {
      ss += (x - mean) * (x - mean);
    }
    const double var = ss / static_cast<double>(n - 1);
    if (!std::isfinite(var) || var <= 0.0) {
      throw DegenerateBatchError("degenerate batch for setting " + std::string(to_string(s)));
    }
    vs.db[index_of(s)] = linear_to_db(var / shot_noise_level(s)).value;
    (*vs.stderr_db)[index_of(s)] = kDbPerNeper * std::sqrt(2.0 / static_cast<double>(n - 1));
  }
  return vs;
}

VarianceSet analytic_variances(const CovarianceMatrix& cm) {
  VarianceSet vs;
  for (Setting s : kAllSettings) {
    vs.db[index_of(s)] = linear_to_db(setting_variance(cm, s) / shot_noise_level(s)).value;
  }
  return vs;
}

double covariance_from_sum(double var_sum, double var_i, double var_j) { return 0.5 * (var_sum - var_i - var_j); }

double covariance_from_difference(double var_diff, double var_i, double var_j) {
  return -0.5 * (var_diff - var_i - var_j);
}

Reconstruction reconstruct_cm(const VarianceSet& vs) {
  vs.check();
  Reconstruction r;
  r.cm = CovarianceMatrix(assemble(linear_values(vs)));
  auto se = [&](Setting s) { return vs.linear_stderr(s); };
  for (int q = 0; q < 4; ++q) {
    r.stderr_matrix(q, q) = se(static_cast<Setting>(q));
  }
  const double sxx = 0.5 * std::hypot(se(Setting::Xdiff), se(Setting::Xp), se(Setting::Xc));
  const double syy = 0.5 * std::hypot(se(Setting::Ysum), se(Setting::Yp), se(Setting::Yc));
  r.stderr_matrix(Xc, Xp) = r.stderr_matrix(Xp, Xc) = sxx;
  r.stderr_matrix(Yc, Yp) = r.stderr_matrix(Yp, Yc) = syy;

  r.validity = validate(r.cm);
  if (!r.validity.positive_definite) {
    r.warnings.emplace_back("reconstructed matrix is not positive definite");
  } else if (!r.validity.physical) {
    r.warnings.emplace_back("reconstructed matrix is unphysical (min symplectic eigenvalue " +
                            format_double(r.validity.min_symplectic_eigenvalue) + ")");
  }
  return r;
}

CertifiedReport certify(const VarianceSet& vs, double sigmas) {
  const Reconstruction rec = reconstruct_cm(vs);
  CertifiedReport out;
  out.sigmas = sigmas;
  out.estimate = classify(rec.cm);

  const std::array<double, 6> v = linear_values(vs);
  auto measures = [](const std::array<double, 6>& x) {
    const CovarianceMatrix cm(assemble(x));
    const Steerability g = steering_raw(cm);
    return Eigen::Vector3d(ppt_nu(cm), g.a_to_b, g.b_to_a);
  };
  Eigen::Vector3d var = Eigen::Vector3d::Zero();
  for (Setting s : kAllSettings) {
    const double se = vs.linear_stderr(s);
    if (se == 0.0) {
      continue;
    }
    const int i = index_of(s);
    const double h = 1e-6 * std::max(1.0, std::abs(v[i]));
    std::array<double, 6> up = v;
    std::array<double, 6> down = v;
    up[i] += h;
    down[i] -= h;
    const Eigen::Vector3d grad = (measures(up) - measures(down)) / (2.0 * h);
    var += (grad * se).cwiseAbs2();
  }
  const Eigen::Vector3d se = var.cwiseSqrt();
  out.nu_stderr = se(0);
  out.gAB_stderr = se(1);
  out.gBA_stderr = se(2);

  out.entangled = out.estimate.nu < 1.0 - std::max(tol::decision, sigmas * out.nu_stderr);
  const bool ab = out.estimate.gAB > std::max(tol::decision, sigmas * out.gAB_stderr);
  const bool ba = out.estimate.gBA > std::max(tol::decision, sigmas * out.gBA_stderr);
  out.steering_class = ab && ba ? SteeringClass::TwoWay
                       : ab     ? SteeringClass::OneWayAB
                       : ba     ? SteeringClass::OneWayBA
                                : SteeringClass::None;
  return out;
}

void write_variance_csv(std::ostream& os, const VarianceSet& vs) {
  os << "setting,db,stderr_db\n";
  for (Setting s : kAllSettings) {
    os << to_string(s) << ',' << format_double(vs.get(s)) << ',';
    if (vs.stderr_db) {
      os << format_double((*vs.stderr_db)[index_of(s)]);
    }
    os << '\n';
  }
}

VarianceSet read_variance_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || (line != "setting,db,stderr_db" && line != "setting,db,stderr_db\r")) {
    throw InputError("variance CSV must start with header 'setting,db,stderr_db'");
  }
  VarianceSet vs;
  std::array<bool, 6> seen{};
  std::array<double, 6> errors{};
  int with_error = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw InputError("variance CSV row needs 3 fields: '" + line + "'");
    }
    const Setting s = setting_from_string(fields[0]);
    const int i = index_of(s);
    if (seen[i]) {
      throw InputError("variance CSV repeats setting " + fields[0]);
    }
    seen[i] = true;
    vs.db[i] = parse_double(fields[1]);
    if (!fields[2].empty()) {
      errors[i] = parse_double(fields[2]);
      ++with_error;
    }
  }
  for (Setting s : kAllSettings) {
    if (!seen[index_of(s)]) {
      throw InputError("variance CSV is missing setting " + std::string(to_string(s)));
    }
  }
  if (with_error == 6) {
    vs.stderr_db = errors;
  } else if (with_error != 0) {
    throw InputError("variance CSV gives standard errors for some settings only");
  }
  vs.check();
  return vs;
}

void write_batch_csv(std::ostream& os, const SampleBatch& batch) {
  os << to_string(batch.setting) << '\n';
  for (double x : batch.samples) {
    os << format_double(x) << '\n';
  }
}

} // namespace cvoam

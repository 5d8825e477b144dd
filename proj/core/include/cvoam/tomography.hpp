#pragma once

// Six-setting balanced-homodyne tomography: Monte Carlo sampling of the
// measured quadrature combinations, variance estimation in dB relative to the
// shot-noise level, and covariance-matrix reconstruction.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvoam/criteria.hpp"
#include "cvoam/gaussian.hpp"

namespace cvoam {

/// Measurement settings, in canonical order. Xdiff is X_P - X_C and Ysum is
/// Y_P + Y_C; both are referenced to the two-mode shot-noise level of 2.
enum class Setting : int { Xc = 0, Yc, Xp, Yp, Xdiff, Ysum };

inline constexpr std::array<Setting, 6> kAllSettings{Setting::Xc, Setting::Yc,    Setting::Xp,
                                                     Setting::Yp, Setting::Xdiff, Setting::Ysum};

std::string_view to_string(Setting s);
Setting setting_from_string(std::string_view s);
bool is_joint(Setting s);
/// Absolute variance of the vacuum for this setting: 1 or 2.
double shot_noise_level(Setting s);

/// True (absolute) variance of the observable measured in setting s.
double setting_variance(const CovarianceMatrix& cm, Setting s);

struct SampleBatch {
  Setting setting = Setting::Xc;
  std::vector<double> samples;
  std::uint64_t seed = 0;
};

/// Per-setting seed derived from the master seed; batch i of a run always
/// uses derive_seed(master, i).
std::uint64_t derive_seed(std::uint64_t master, int index);

/// n zero-mean normal draws with the given variance. Deterministic in seed.
SampleBatch simulate_batch(Setting s, double variance, std::size_t n, std::uint64_t seed);

/// Six independent batches in canonical setting order. Requires a physical
/// cm and n >= 2.
std::array<SampleBatch, 6> simulate_measurements(const CovarianceMatrix& cm, std::size_t n, std::uint64_t seed);

/// Noise variances in dB relative to each setting's shot-noise level, with
/// optional standard errors (dB).
struct VarianceSet {
  std::array<double, 6> db{};
  std::optional<std::array<double, 6>> stderr_db;

  double get(Setting s) const { return db[static_cast<int>(s)]; }
  /// Absolute variance, i.e. dB de-normalized by the setting's SNL.
  double linear(Setting s) const;
  /// Standard error of linear(s); 0 when no errors are attached.
  double linear_stderr(Setting s) const;

  /// Throws InputError on non-finite entries or negative errors.
  void check() const;
};

/// Unbiased sample variances converted to dB. Standard errors follow from
/// Var(s^2) = 2 sigma^4 / (n - 1). Needs each setting exactly once, n >= 2
/// per batch (InputError), and non-zero spread (DegenerateBatchError).
VarianceSet variances_from_batches(std::span<const SampleBatch> batches);

/// Exact variances of cm, no errors attached.
VarianceSet analytic_variances(const CovarianceMatrix& cm);

/// Cov(i, j) from the variance of the sum: 1/2 [Var(i + j) - Var(i) - Var(j)].
double covariance_from_sum(double var_sum, double var_i, double var_j);
/// Cov(i, j) from the variance of the difference: -1/2 [Var(i - j) - Var(i) - Var(j)].
double covariance_from_difference(double var_diff, double var_i, double var_j);

struct Reconstruction {
  CovarianceMatrix cm;
  /// Entrywise standard errors propagated from the variance errors.
  Eigen::Matrix4d stderr_matrix = Eigen::Matrix4d::Zero();
  ValidityReport validity;
  std::vector<std::string> warnings;
};

/// Rebuilds the covariance matrix: diagonal from the single-mode variances,
/// X-X and Y-Y correlations from the joint settings, X-Y terms zero. A result
/// that fails validate() is returned with a warning rather than thrown.
Reconstruction reconstruct_cm(const VarianceSet& vs);

/// Criteria of a reconstructed state together with their delta-method
/// standard errors and decisions that require significance at `sigmas`
/// standard errors.
struct CertifiedReport {
  CriteriaReport estimate;
  double nu_stderr = 0.0;
  double gAB_stderr = 0.0;
  double gBA_stderr = 0.0;
  double sigmas = 3.0;
  bool entangled = false;
  SteeringClass steering_class = SteeringClass::None;
};

CertifiedReport certify(const VarianceSet& vs, double sigmas = 3.0);

/// CSV with header `setting,db,stderr_db`; stderr_db is empty when absent.
void write_variance_csv(std::ostream& os, const VarianceSet& vs);
VarianceSet read_variance_csv(std::istream& is);

/// One-column CSV: header line with the setting name, then one sample per line.
void write_batch_csv(std::ostream& os, const SampleBatch& batch);

} // namespace cvoam

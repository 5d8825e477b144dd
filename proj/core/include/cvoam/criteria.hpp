#pragma once

// Entanglement (PPT) and Gaussian steering measures for two-mode states, and
// the threshold solvers that locate where they vanish along a channel sweep.

#include <optional>
#include <string>
#include <string_view>

#include "cvoam/channel.hpp"
#include "cvoam/gaussian.hpp"

namespace cvoam {

/// Smallest symplectic eigenvalue of the partially transposed matrix
/// P sigma P with P = diag(1, 1, 1, -1), from the closed form
///   nu^2 = (D - sqrt(D^2 - 4 det sigma)) / 2,  D = det A + det B - 2 det C.
/// Requires a positive definite matrix. A slightly negative discriminant is
/// clamped to 0; below -tol it raises NumericalError.
double ppt_nu(const CovarianceMatrix& cm);

/// Same quantity from the eigen-decomposition of the partial transpose. Kept
/// as an independent route for cross-checking ppt_nu.
double ppt_nu_spectral(const CovarianceMatrix& cm);

/// Gaussian steerabilities in nats.
struct Steerability {
  double a_to_b = 0.0; ///< Alice (Conj) steers Bob (Pr).
  double b_to_a = 0.0; ///< Bob steers Alice.
};

/// max{0, 1/2 ln(det sigma_A / det sigma_AB)} and the B counterpart.
/// Throws InputError when det sigma_AB <= 0.
Steerability steering(const CovarianceMatrix& cm);

/// Unclamped logarithms 1/2 ln(det sigma_X / det sigma_AB); positive exactly
/// when the corresponding direction steers.
Steerability steering_raw(const CovarianceMatrix& cm);

enum class SteeringClass { TwoWay, OneWayAB, OneWayBA, None };

/// "two-way", "one-way-AB", "one-way-BA" or "none".
std::string_view to_string(SteeringClass c);
SteeringClass steering_class_from_string(std::string_view s);

struct CriteriaReport {
  double nu = 1.0;
  bool entangled = false;
  double gAB = 0.0;
  double gBA = 0.0;
  SteeringClass steering_class = SteeringClass::None;

  friend bool operator==(const CriteriaReport&, const CriteriaReport&) = default;
};

/// Bundles ppt_nu and steering. Strict inequalities use tol::decision.
CriteriaReport classify(const CovarianceMatrix& cm);

/// One-line human readable summary. Values of nu within tol::decision of 1
/// are described as "boundary" (and classified not entangled).
std::string describe(const CriteriaReport& report);

enum class SteeringDirection { AToB, BToA };

struct BisectionOptions {
  double lo = 1e-6;
  double hi = 1.0;
  double eta_tolerance = 1e-6;
  int max_iterations = 200;
};

/// Smallest eta at which the channel output of make_tmss(spec) stops being
/// entangled. nullopt when entanglement survives down to the bracket floor
/// (the pure-loss case). Returns the bracket top when the source itself is
/// not entangled.
std::optional<double> entanglement_death_eta(const SqueezingSpec& spec, double delta,
                                             const BisectionOptions& opt = {});

/// Same for one steering direction.
std::optional<double> steering_death_eta(const SqueezingSpec& spec, double delta, SteeringDirection direction,
                                         const BisectionOptions& opt = {});

/// Lossy-channel B->A boundary for the symmetric source:
/// (V + Vp - 2) / (2 (1 - V)(Vp - 1)).
double lossy_b_to_a_death_eta(const SqueezingSpec& spec);

} // namespace cvoam

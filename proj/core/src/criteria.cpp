#include "cvoam/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace cvoam {

namespace {

void require_positive_definite(const CovarianceMatrix& cm) {
  Eigen::LLT<Eigen::Matrix4d> llt(cm.matrix());
  if (llt.info() != Eigen::Success) {
    throw InputError("criteria need a positive definite covariance matrix");
  }
}

struct Invariants {
  double det_a;
  double det_b;
  double det_c;
  double det;
};

Invariants invariants(const CovarianceMatrix& cm) {
  return {cm.conj_block().determinant(), cm.pr_block().determinant(), cm.cross_block().determinant(),
          cm.matrix().determinant()};
}

// D - det - 1 for the partial transpose: positive iff the smallest
// symplectic eigenvalue is below 1.
double entanglement_margin(const CovarianceMatrix& cm) {
  const Invariants s = invariants(cm);
  return s.det_a + s.det_b - 2.0 * s.det_c - s.det - 1.0;
}

CovarianceMatrix channel_output(const SqueezingSpec& spec, double eta, double delta) {
  return apply_channel(make_tmss(spec), ChannelParams{eta, delta});
}

// Bisects the boundary between dead(lo) and alive(hi).
std::optional<double> death_point(const std::function<bool(double)>& alive, const BisectionOptions& opt) {
  double lo = opt.lo;
  double hi = opt.hi;
  if (!alive(hi)) {
    return hi;
  }
  if (alive(lo)) {
    return std::nullopt;
  }
  for (int i = 0; i < opt.max_iterations && hi - lo > opt.eta_tolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    (alive(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

void check_delta(double delta) {
  if (!std::isfinite(delta) || delta < 0.0) {
    throw InputError("excess noise must be finite and >= 0");
  }
}

} // namespace

double ppt_nu(const CovarianceMatrix& cm) {
  require_positive_definite(cm);
  const Invariants s = invariants(cm);
  const double delta_pt = s.det_a + s.det_b - 2.0 * s.det_c;
  double disc = delta_pt * delta_pt - 4.0 * s.det;
  if (disc < 0.0) {
    if (disc < -tol::decision * std::max(1.0, delta_pt * delta_pt)) {
      throw NumericalError("negative discriminant in partial-transpose spectrum");
    }
    disc = 0.0;
  }
  // (D - sqrt(disc)) / 2 written as 2 det / (D + sqrt(disc)) to avoid cancellation.
  return std::sqrt(2.0 * s.det / (delta_pt + std::sqrt(disc)));
}

double ppt_nu_spectral(const CovarianceMatrix& cm) {
  require_positive_definite(cm);
  const Eigen::Matrix4d flip = Eigen::Vector4d(1.0, 1.0, 1.0, -1.0).asDiagonal();
  return symplectic_eigenvalues(flip * cm.matrix() * flip)[0];
}

Steerability steering_raw(const CovarianceMatrix& cm) {
  const Invariants s = invariants(cm);
  if (!(s.det > 0.0)) {
    throw InputError("steering needs det sigma_AB > 0");
  }
  if (!(s.det_a > 0.0) || !(s.det_b > 0.0)) {
    throw InputError("steering needs positive reduced determinants");
  }
  return {0.5 * std::log(s.det_a / s.det), 0.5 * std::log(s.det_b / s.det)};
}

Steerability steering(const CovarianceMatrix& cm) {
  const Steerability raw = steering_raw(cm);
  return {std::max(0.0, raw.a_to_b), std::max(0.0, raw.b_to_a)};
}

std::string_view to_string(SteeringClass c) {
  switch (c) {
  case SteeringClass::TwoWay:
    return "two-way";
  case SteeringClass::OneWayAB:
    return "one-way-AB";
  case SteeringClass::OneWayBA:
    return "one-way-BA";
  case SteeringClass::None:
    return "none";
  }
  return "none";
}

SteeringClass steering_class_from_string(std::string_view s) {
  for (auto c : {SteeringClass::TwoWay, SteeringClass::OneWayAB, SteeringClass::OneWayBA, SteeringClass::None}) {
    if (to_string(c) == s) {
      return c;
    }
  }
  throw InputError("unknown steering class '" + std::string(s) + "'");
}

CriteriaReport classify(const CovarianceMatrix& cm) {
  CriteriaReport r;
  r.nu = ppt_nu(cm);
  r.entangled = r.nu < 1.0 - tol::decision;
  const Steerability g = steering(cm);
  r.gAB = g.a_to_b;
  r.gBA = g.b_to_a;
  const bool ab = r.gAB > tol::decision;
  const bool ba = r.gBA > tol::decision;
  r.steering_class = ab && ba ? SteeringClass::TwoWay
                     : ab     ? SteeringClass::OneWayAB
                     : ba     ? SteeringClass::OneWayBA
                              : SteeringClass::None;
  return r;
}

std::string describe(const CriteriaReport& r) {
  std::ostringstream os;
  os << "nu=" << r.nu << ' ';
  if (std::abs(r.nu - 1.0) <= tol::decision) {
    os << "(boundary)";
  } else {
    os << (r.entangled ? "(entangled)" : "(separable)");
  }
  os << " gAB=" << r.gAB << " gBA=" << r.gBA << " steering=" << to_string(r.steering_class);
  return os.str();
}

std::optional<double> entanglement_death_eta(const SqueezingSpec& spec, double delta, const BisectionOptions& opt) {
  check_delta(delta);
  return death_point([&](double eta) { return entanglement_margin(channel_output(spec, eta, delta)) > 0.0; }, opt);
}

std::optional<double> steering_death_eta(const SqueezingSpec& spec, double delta, SteeringDirection direction,
                                         const BisectionOptions& opt) {
  check_delta(delta);
  return death_point(
      [&](double eta) {
        const Steerability g = steering_raw(channel_output(spec, eta, delta));
        return (direction == SteeringDirection::AToB ? g.a_to_b : g.b_to_a) > 0.0;
      },
      opt);
}

double lossy_b_to_a_death_eta(const SqueezingSpec& spec) {
  if (!(spec.V < 1.0) || !(spec.Vp > 1.0)) {
    throw InputError("closed-form steering boundary needs V < 1 < Vp");
  }
  return (spec.V + spec.Vp - 2.0) / (2.0 * (1.0 - spec.V) * (spec.Vp - 1.0));
}

} // namespace cvoam

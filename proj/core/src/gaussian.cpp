#include "cvoam/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace cvoam {

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

CovarianceMatrix::CovarianceMatrix(const Matrix& m) {
  if (!m.allFinite()) {
    throw InputError("covariance matrix has non-finite entries");
  }
  const double defect = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (defect > tol::symmetry) {
    throw InputError("covariance matrix is not symmetric (defect " + std::to_string(defect) + ")");
  }
  m_ = (m + m.transpose()) / 2.0;
}

CovarianceMatrix CovarianceMatrix::from_blocks(const Eigen::Matrix2d& conj, const Eigen::Matrix2d& pr,
                                               const Eigen::Matrix2d& cross) {
  Matrix m;
  m << conj, cross, cross.transpose(), pr;
  return CovarianceMatrix(m);
}

std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& m) {
  Eigen::LLT<Eigen::Matrix4d> llt(m);
  if (llt.info() != Eigen::Success) {
    throw InputError("symplectic spectrum needs a positive definite matrix");
  }
  const Eigen::Matrix4d lower = llt.matrixL();
  const Eigen::Matrix4d core = lower.transpose() * symplectic_form() * lower;
  const Eigen::Matrix4cd hermitian = std::complex<double>(0.0, 1.0) * core.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(hermitian, Eigen::EigenvaluesOnly);
  // Spectrum is {-nu2, -nu1, nu1, nu2}; take the positive half.
  const Eigen::Vector4d ev = solver.eigenvalues();
  std::array<double, 2> nu{(ev(2) - ev(1)) / 2.0, (ev(3) - ev(0)) / 2.0};
  std::sort(nu.begin(), nu.end());
  return nu;
}

ValidityReport validate(const Eigen::Matrix4d& m) {
  ValidityReport r;
  r.finite = m.allFinite();
  if (!r.finite) {
    r.symmetric = r.positive_definite = r.physical = r.above_vacuum = false;
    r.symmetry_defect = r.min_diagonal = std::nan("");
    return r;
  }
  r.symmetry_defect = (m - m.transpose()).cwiseAbs().maxCoeff();
  r.symmetric = r.symmetry_defect <= tol::symmetry;
  r.min_diagonal = m.diagonal().minCoeff();
  r.above_vacuum = r.min_diagonal >= 1.0 - tol::physical;

  const Eigen::Matrix4d sym = (m + m.transpose()) / 2.0;
  Eigen::LLT<Eigen::Matrix4d> llt(sym);
  r.positive_definite = llt.info() == Eigen::Success;
  if (!r.positive_definite) {
    r.min_symplectic_eigenvalue = 0.0;
    r.physical = false;
    return r;
  }
  r.min_symplectic_eigenvalue = symplectic_eigenvalues(sym)[0];
  r.physical = r.min_symplectic_eigenvalue >= 1.0 - tol::physical;
  return r;
}

ValidityReport validate(const CovarianceMatrix& cm) { return validate(cm.matrix()); }

void require_physical(const CovarianceMatrix& cm) {
  const ValidityReport r = validate(cm);
  if (!r.positive_definite) {
    throw InputError("covariance matrix is not positive definite");
  }
  if (!r.physical) {
    throw UnphysicalStateError("covariance matrix violates the uncertainty principle (min symplectic eigenvalue " +
                               std::to_string(r.min_symplectic_eigenvalue) + ")");
  }
}

namespace {

void check_spec(const SqueezingSpec& spec) {
  if (!std::isfinite(spec.V) || !std::isfinite(spec.Vp) || spec.V <= 0.0 || spec.Vp <= 0.0) {
    throw InputError("squeezing variances must be finite and positive");
  }
  if (spec.V * spec.Vp < 1.0 - tol::physical) {
    throw UnphysicalStateError("unphysical source: V*Vp = " + std::to_string(spec.V * spec.Vp) + " < 1");
  }
}

} // namespace

SqueezingSpec SqueezingSpec::from_variances(double v, double vp) {
  SqueezingSpec s{std::min(v, vp), std::max(v, vp)};
  check_spec(s);
  return s;
}

SqueezingSpec SqueezingSpec::from_squeezing(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw InputError("squeezing parameter must be finite and >= 0");
  }
  return SqueezingSpec{std::exp(-2.0 * r), std::exp(2.0 * r)};
}

double SqueezingSpec::strength() const { return std::log(Vp / V) / 4.0; }

CovarianceMatrix make_tmss(const SqueezingSpec& spec) {
  check_spec(spec);
  const double v = std::min(spec.V, spec.Vp);
  const double vp = std::max(spec.V, spec.Vp);
  const double diag = (v + vp) / 2.0;
  const double corr = (vp - v) / 2.0;
  const Eigen::Matrix2d z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  return CovarianceMatrix::from_blocks(diag * Eigen::Matrix2d::Identity(), diag * Eigen::Matrix2d::Identity(),
                                       corr * z);
}

double db_to_linear(Decibel x) { return std::pow(10.0, x.value / 10.0); }

Decibel linear_to_db(double v) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw InputError("decibel conversion needs a finite positive value");
  }
  return Decibel{10.0 * std::log10(v)};
}

const ModePair& MultiplexedState::at(int l) const {
  auto it = pairs.find(l);
  if (it == pairs.end()) {
    throw InputError("no mode pair with charge " + std::to_string(l));
  }
  return it->second;
}

MultiplexedState make_multiplexed(std::span<const std::pair<int, SqueezingSpec>> specs) {
  MultiplexedState out;
  for (const auto& [l, spec] : specs) {
    auto [it, inserted] = out.pairs.emplace(l, ModePair{spec, make_tmss(spec)});
    if (!inserted) {
      throw InputError("duplicate topological charge " + std::to_string(l));
    }
  }
  return out;
}

MultiplexedState make_multiplexed(std::initializer_list<std::pair<int, SqueezingSpec>> specs) {
  const std::vector<std::pair<int, SqueezingSpec>> v(specs);
  return make_multiplexed(std::span<const std::pair<int, SqueezingSpec>>(v));
}

} // namespace cvoam

#pragma once

// Two-mode Gaussian states in the covariance-matrix picture.
//
// Quadratures are X = a + a^dag and Y = (a - a^dag)/i, so the vacuum variance
// (shot-noise level) of a single mode is 1. Mode order inside every 4x4 matrix
// is fixed: (X_Conj, Y_Conj, X_Pr, Y_Pr). The conjugate beam stays with Alice,
// the probe beam is sent to Bob.

#include <array>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>

#include <Eigen/Dense>

#include "cvoam/error.hpp"

namespace cvoam {

namespace tol {
inline constexpr double symmetry = 1e-9;
inline constexpr double physical = 1e-6;
inline constexpr double decision = 1e-9;
} // namespace tol

enum Quadrature : int { Xc = 0, Yc = 1, Xp = 2, Yp = 3 };

/// Block-diagonal two-mode symplectic form, each block [[0, 1], [-1, 0]].
Eigen::Matrix4d symplectic_form();

/// Symmetric 4x4 covariance matrix of a two-mode Gaussian state.
///
/// Construction rejects non-finite entries and asymmetry above tol::symmetry,
/// then stores the exactly symmetrized matrix. Physicality is not enforced
/// here because reconstructed experimental matrices may be marginally
/// unphysical; use validate() for that.
class CovarianceMatrix {
public:
  using Matrix = Eigen::Matrix4d;

  /// Two-mode vacuum.
  CovarianceMatrix() : m_(Matrix::Identity()) {}
  explicit CovarianceMatrix(const Matrix& m);

  /// Assembles [[conj, cross], [cross^T, pr]].
  static CovarianceMatrix from_blocks(const Eigen::Matrix2d& conj, const Eigen::Matrix2d& pr,
                                      const Eigen::Matrix2d& cross);

  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  Eigen::Matrix2d conj_block() const { return m_.topLeftCorner<2, 2>(); }
  Eigen::Matrix2d pr_block() const { return m_.bottomRightCorner<2, 2>(); }
  /// Rows are Conj quadratures, columns are Pr quadratures.
  Eigen::Matrix2d cross_block() const { return m_.topRightCorner<2, 2>(); }

  friend bool operator==(const CovarianceMatrix& a, const CovarianceMatrix& b) {
    return a.m_ == b.m_;
  }

private:
  Matrix m_;
};

struct ValidityReport {
  double symmetry_defect = 0.0;
  /// Smallest symplectic eigenvalue; 0 when the matrix is not positive definite.
  double min_symplectic_eigenvalue = 0.0;
  double min_diagonal = 0.0;
  bool finite = true;
  bool symmetric = true;
  bool positive_definite = true;
  bool physical = true;
  /// Diagonal entries at or above vacuum level. Informational only: a single
  /// squeezed quadrature is physical but sits below 1.
  bool above_vacuum = true;

  bool passed() const { return finite && symmetric && physical; }
};

/// Checks symmetry (tol::symmetry) and sigma + i*Omega >= 0 via the
/// symplectic spectrum (tol::physical). Never throws.
ValidityReport validate(const Eigen::Matrix4d& m);
ValidityReport validate(const CovarianceMatrix& cm);

/// Throws UnphysicalStateError (or InputError for non-positive matrices)
/// unless validate(cm).passed().
void require_physical(const CovarianceMatrix& cm);

/// Both symplectic eigenvalues in ascending order, from the spectrum of the
/// Hermitian matrix i L^T Omega L where sigma = L L^T. Requires a positive
/// definite argument (InputError otherwise).
std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& m);

/// Per-OAM-pair source parameters: squeezed variance V and anti-squeezed
/// variance Vp of the joint quadratures. The four-wave-mixing interaction
/// strength of the pair enters only through these two numbers.
struct SqueezingSpec {
  double V = 1.0;
  double Vp = 1.0;

  /// Orders the pair so that V <= Vp. Rejects V*Vp < 1 - tol::physical.
  static SqueezingSpec from_variances(double v, double vp);
  /// Pure two-mode squeezed vacuum: V = exp(-2r), Vp = exp(2r).
  static SqueezingSpec from_squeezing(double r);

  /// Effective squeezing parameter ln(Vp/V)/4; equals r for pure states.
  double strength() const;

  friend bool operator==(const SqueezingSpec&, const SqueezingSpec&) = default;
};

/// Covariance matrix of the two-mode squeezed state with pump phase 0:
/// diagonal blocks (V+Vp)/2 * I, off-diagonal blocks (Vp-V)/2 * Z.
CovarianceMatrix make_tmss(const SqueezingSpec& spec);

struct Decibel {
  double value = 0.0;
  friend bool operator==(const Decibel&, const Decibel&) = default;
};

double db_to_linear(Decibel x);
/// Throws InputError for v <= 0 or non-finite v.
Decibel linear_to_db(double v);

struct ModePair {
  SqueezingSpec spec;
  CovarianceMatrix cm;

  friend bool operator==(const ModePair&, const ModePair&) = default;
};

/// Independent two-mode states keyed by topological charge l. The Pr mode of
/// entry l carries charge l and its Conj partner carries -l.
struct MultiplexedState {
  std::map<int, ModePair> pairs;

  bool empty() const { return pairs.empty(); }
  std::size_t size() const { return pairs.size(); }
  const ModePair& at(int l) const;

  friend bool operator==(const MultiplexedState&, const MultiplexedState&) = default;
};

/// Throws InputError on a repeated charge.
MultiplexedState make_multiplexed(std::span<const std::pair<int, SqueezingSpec>> specs);
MultiplexedState make_multiplexed(std::initializer_list<std::pair<int, SqueezingSpec>> specs);

} // namespace cvoam

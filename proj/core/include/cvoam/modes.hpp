#pragma once

// Laguerre-Gaussian (p = 0) beam synthesis and the tilted-lens diagnostic
// that turns an OAM beam into a row of lobes separated by |l| dark stripes.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "cvoam/error.hpp"

namespace cvoam {

inline constexpr int kMaxCharge = 16;
inline constexpr double kMinPixelsPerWaist = 8.0;
inline constexpr double kDefaultAstigmatism = 2.0;

struct LGModeSpec {
  int l = 0;
  double waist = 1.0;

  /// Throws InputError unless |l| <= kMaxCharge and waist > 0.
  void check() const;
};

/// Sampling grid. `extent` is the half-width along x in units of the waist;
/// pixels are square and the pixel at (width/2, height/2) sits on the axis.
struct GridSpec {
  int width = 512;
  int height = 512;
  double extent = 6.0;
};

/// Complex field on a square-pixel grid. values(row, col) is the amplitude at
/// x = (col - width/2) * pixel, y = (row - height/2) * pixel, coordinates in
/// waist units.
struct FieldGrid {
  int width = 0;
  int height = 0;
  double extent = 0.0;
  double waist = 1.0;
  Eigen::MatrixXcd values;

  double pixel() const { return 2.0 * extent / width; }
  double x(int col) const { return (col - width / 2) * pixel(); }
  double y(int row) const { return (row - height / 2) * pixel(); }
  /// sum |a|^2 times the physical pixel area.
  double power() const;
};

/// Intensity samples. For far-field patterns `extent` is in units of the
/// spatial frequency 1/waist.
struct IntensityGrid {
  int width = 0;
  int height = 0;
  double extent = 0.0;
  Eigen::MatrixXd values;

  double peak() const { return values.size() == 0 ? 0.0 : values.maxCoeff(); }
};

/// Amplitude C (sqrt(2) r / w)^|l| exp(-r^2 / w^2) exp(i l phi) with C chosen
/// for unit power in the continuum. Throws ResolutionError below
/// kMinPixelsPerWaist.
FieldGrid lg_field(const LGModeSpec& spec, const GridSpec& grid = {});

IntensityGrid intensity(const FieldGrid& field);

/// Applies the astigmatic phase exp(i a (x^2 - y^2) / w^2) and returns the
/// far-field intensity. The far field is sampled by a scaled DFT whose pixel
/// tracks the Gaussian far-field radius sqrt(1 + a^2) / (pi w), so the output
/// grid resolves the pattern for any a.
IntensityGrid tilted_lens_pattern(const FieldGrid& field, double astigmatism = kDefaultAstigmatism);

struct StripeCount {
  int count = 0;
  /// +1 when the lobe row runs along the main diagonal (x = y), -1 for the
  /// anti-diagonal, 0 for a round pattern. Opposite charges give opposite signs.
  int orientation = 0;
  /// Set when some minimum is neither a clear stripe nor a shallow ripple.
  bool indeterminate = false;
};

/// Counts minima below 5% of the peak on the intensity profile taken through
/// the centroid along the principal (long) axis of the pattern. A minimum
/// whose contrast against its neighbouring lobes is under 2:1 but not dark
/// enough to be a stripe marks the result indeterminate.
StripeCount count_dark_stripes(const IntensityGrid& grid);

enum class PgmDepth { Bits8, Bits16 };

/// Binary PGM (P5), intensity mapped linearly from [0, peak] to [0, maxval].
/// Rows are written with +y at the top.
void write_pgm(std::ostream& os, const IntensityGrid& grid, PgmDepth depth = PgmDepth::Bits8);

/// `mode_l{l}_{stage}.pgm`
std::string pgm_filename(int l, std::string_view stage);

} // namespace cvoam

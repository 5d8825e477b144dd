#include "cvoam/modes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace cvoam {

namespace {

using cd = std::complex<double>;

void check_grid(int width, int height, double extent) {
  if (width < 2 || height < 2 || !std::isfinite(extent) || extent <= 0.0) {
    throw InputError("grid needs at least 2x2 pixels and a positive extent");
  }
  const double pixels_per_waist = width / (2.0 * extent);
  if (pixels_per_waist < kMinPixelsPerWaist) {
    throw ResolutionError("grid resolves only " + std::to_string(pixels_per_waist) + " pixels per waist (need " +
                          std::to_string(kMinPixelsPerWaist) + ")");
  }
}

// Matrix of exp(-2 pi i k_r x_c) for output frequencies k and input positions x.
Eigen::MatrixXcd dft_kernel(int n, double dx, double dk) {
  Eigen::MatrixXcd kernel(n, n);
  for (int r = 0; r < n; ++r) {
    const double k = (r - n / 2) * dk;
    for (int c = 0; c < n; ++c) {
      const double x = (c - n / 2) * dx;
      kernel(r, c) = std::polar(1.0, -2.0 * std::numbers::pi * k * x);
    }
  }
  return kernel;
}

double bilinear(const Eigen::MatrixXd& img, double col, double row) {
  const int c0 = static_cast<int>(std::floor(col));
  const int r0 = static_cast<int>(std::floor(row));
  if (c0 < 0 || r0 < 0 || c0 + 1 >= img.cols() || r0 + 1 >= img.rows()) {
    return 0.0;
  }
  const double fc = col - c0;
  const double fr = row - r0;
  return img(r0, c0) * (1 - fc) * (1 - fr) + img(r0, c0 + 1) * fc * (1 - fr) + img(r0 + 1, c0) * (1 - fc) * fr +
         img(r0 + 1, c0 + 1) * fc * fr;
}

} // namespace

void LGModeSpec::check() const {
  if (std::abs(l) > kMaxCharge) {
    throw InputError("topological charge |l| must not exceed " + std::to_string(kMaxCharge));
  }
  if (!std::isfinite(waist) || waist <= 0.0) {
    throw InputError("beam waist must be positive");
  }
}

double FieldGrid::power() const {
  const double area = pixel() * waist * pixel() * waist;
  return values.cwiseAbs2().sum() * area;
}

FieldGrid lg_field(const LGModeSpec& spec, const GridSpec& grid) {
  spec.check();
  check_grid(grid.width, grid.height, grid.extent);
  const int order = std::abs(spec.l);
  const double norm =
      std::sqrt(2.0 / (std::numbers::pi * spec.waist * spec.waist * std::tgamma(order + 1.0)));

  FieldGrid f{grid.width, grid.height, grid.extent, spec.waist, Eigen::MatrixXcd(grid.height, grid.width)};
  for (int row = 0; row < grid.height; ++row) {
    const double y = f.y(row);
    for (int col = 0; col < grid.width; ++col) {
      const double x = f.x(col);
      const double r2 = x * x + y * y;
      const double radial = norm * std::pow(std::sqrt(2.0 * r2), order) * std::exp(-r2);
      f.values(row, col) = order == 0 ? cd(radial, 0.0) : std::polar(radial, spec.l * std::atan2(y, x));
    }
  }
  return f;
}

IntensityGrid intensity(const FieldGrid& field) {
  return {field.width, field.height, field.extent, field.values.cwiseAbs2()};
}

IntensityGrid tilted_lens_pattern(const FieldGrid& field, double astigmatism) {
  if (!std::isfinite(astigmatism) || astigmatism <= 0.0) {
    throw InputError("astigmatism strength must be positive");
  }
  check_grid(field.width, field.height, field.extent);
  if (field.values.rows() != field.height || field.values.cols() != field.width) {
    throw InputError("field values do not match the grid dimensions");
  }

  Eigen::MatrixXcd lensed(field.height, field.width);
  for (int row = 0; row < field.height; ++row) {
    const double y = field.y(row);
    for (int col = 0; col < field.width; ++col) {
      const double x = field.x(col);
      lensed(row, col) = field.values(row, col) * std::polar(1.0, astigmatism * (x * x - y * y));
    }
  }

  const double dx = field.pixel();
  const double far_radius = std::sqrt(1.0 + astigmatism * astigmatism) / std::numbers::pi;
  const double dk = dx * far_radius;
  const Eigen::MatrixXcd kx = dft_kernel(field.width, dx, dk);
  const Eigen::MatrixXcd ky = dft_kernel(field.height, dx, dk);
  const Eigen::MatrixXcd far = ky * lensed * kx.transpose();

  return {field.width, field.height, field.extent * far_radius, far.cwiseAbs2()};
}

StripeCount count_dark_stripes(const IntensityGrid& grid) {
  StripeCount out;
  const Eigen::MatrixXd& img = grid.values;
  const double total = img.sum();
  if (!(total > 0.0) || !img.allFinite()) {
    out.indeterminate = true;
    return out;
  }

  double cx = 0.0;
  double cy = 0.0;
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      cx += img(r, c) * c;
      cy += img(r, c) * r;
    }
  }
  cx /= total;
  cy /= total;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      const double w = img(r, c) / total;
      sxx += w * (c - cx) * (c - cx);
      syy += w * (r - cy) * (r - cy);
      sxy += w * (c - cx) * (r - cy);
    }
  }

  const double spread = std::hypot(sxx - syy, 2.0 * sxy);
  const double major = 0.5 * (sxx + syy + spread);
  double angle = 0.0;
  if (spread < 0.05 * major) {
    // Round pattern; probe along the anti-diagonal.
    angle = -std::numbers::pi / 4;
  } else {
    angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    out.orientation = sxy > 0.0 ? 1 : (sxy < 0.0 ? -1 : 0);
  }

  const double reach = std::hypot(img.rows(), img.cols()) / 2.0;
  const double step = 0.5;
  const int samples = static_cast<int>(2.0 * reach / step) + 1;
  std::vector<double> profile(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = -reach + i * step;
    profile[i] = bilinear(img, cx + t * std::cos(angle), cy + t * std::sin(angle));
  }
  const double peak = *std::max_element(profile.begin(), profile.end());
  if (!(peak > 0.0)) {
    out.indeterminate = true;
    return out;
  }
  for (double& p : profile) {
    p /= peak;
  }

  std::vector<int> minima;
  for (int i = 1; i + 1 < samples; ++i) {
    if (profile[i] < profile[i - 1] && profile[i] <= profile[i + 1]) {
      minima.push_back(i);
    }
  }
  for (std::size_t k = 0; k < minima.size(); ++k) {
    const int i = minima[k];
    const int left_start = k == 0 ? 0 : minima[k - 1];
    const int right_end = k + 1 == minima.size() ? samples - 1 : minima[k + 1];
    const double left = *std::max_element(profile.begin() + left_start, profile.begin() + i + 1);
    const double right = *std::max_element(profile.begin() + i, profile.begin() + right_end + 1);
    const double lobe = std::min(left, right);
    if (lobe < 0.1) {
      continue; // tail ripple, not between two lobes
    }
    const double depth = profile[i] / lobe;
    if (profile[i] < 0.05 && depth < 0.05) {
      ++out.count;
    } else if (depth < 0.5) {
      out.indeterminate = true;
    }
  }
  return out;
}

void write_pgm(std::ostream& os, const IntensityGrid& grid, PgmDepth depth) {
  const int maxval = depth == PgmDepth::Bits8 ? 255 : 65535;
  os << "P5\n" << grid.width << ' ' << grid.height << '\n' << maxval << '\n';
  const double peak = grid.peak();
  std::vector<char> row_bytes;
  row_bytes.reserve(static_cast<std::size_t>(grid.width) * 2);
  for (int row = grid.height - 1; row >= 0; --row) {
    row_bytes.clear();
    for (int col = 0; col < grid.width; ++col) {
      const double scaled = peak > 0.0 ? std::clamp(grid.values(row, col) / peak, 0.0, 1.0) : 0.0;
      const auto level = static_cast<unsigned>(std::lround(scaled * maxval));
      if (depth == PgmDepth::Bits16) {
        row_bytes.push_back(static_cast<char>((level >> 8) & 0xFF));
      }
      row_bytes.push_back(static_cast<char>(level & 0xFF));
    }
    os.write(row_bytes.data(), static_cast<std::streamsize>(row_bytes.size()));
  }
}

std::string pgm_filename(int l, std::string_view stage) {
  return "mode_l" + std::to_string(l) + "_" + std::string(stage) + ".pgm";
}

} // namespace cvoam

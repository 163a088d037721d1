#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace bremsbec {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

/// Periodic 1-D lattice covering [-L/2, L/2) with n uniformly spaced points.
///
/// Wavenumbers are stored in FFT output order: k_j = 2*pi*j/L for j < n/2,
/// the Nyquist entry j = n/2 carries +pi*n/L, and j > n/2 maps to
/// 2*pi*(j - n)/L. Odd-order spectral derivatives zero the Nyquist mode so
/// real input gives real output.
///
/// A Grid is an immutable handle; copies share the coordinate tables and the
/// FFT plans, and every member function may be called concurrently.
class Grid {
 public:
  Grid(std::size_t n_points, double box_length);

  std::size_t size() const noexcept;
  double box_length() const noexcept;
  double dx() const noexcept;
  /// Largest representable angular wavenumber, pi/dx.
  double k_max() const noexcept;
  std::size_t nyquist_index() const noexcept { return size() / 2; }

  std::span<const double> positions() const noexcept;
  std::span<const double> wavenumbers() const noexcept;

  /// Unnormalized forward DFT, F_j = sum_n f_n exp(-2*pi*i*j*n/N).
  void forward(std::span<const Complex> in, std::span<Complex> out) const;
  /// Inverse DFT including the 1/N factor.
  void inverse(std::span<const Complex> in, std::span<Complex> out) const;
  void forward_in_place(std::span<Complex> data) const;
  void inverse_in_place(std::span<Complex> data) const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.size() == b.size() && a.box_length() == b.box_length();
  }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

Grid make_grid(std::size_t n_points, double box_length);

/// d/dx via forward transform, multiplication by i*k (Nyquist zeroed), inverse.
ComplexVector spectral_derivative(const Grid& grid, std::span<const Complex> f);
RealVector real_spectral_derivative(const Grid& grid, std::span<const double> f);

/// d^2/dx^2 via multiplication by -k^2 (Nyquist kept).
ComplexVector spectral_second_derivative(const Grid& grid, std::span<const Complex> f);

/// dx * sum conj(f) g.
Complex inner_product(const Grid& grid, std::span<const Complex> f, std::span<const Complex> g);

}  // namespace bremsbec

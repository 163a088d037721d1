#include "bremsbec/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "bremsbec/errors.hpp"

namespace bremsbec {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

void require_size(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw ValidationError(std::string(what) + ": length " + std::to_string(got) +
                          " does not match grid size " + std::to_string(expected));
  }
}

}  // namespace

struct Grid::Impl {
  std::size_t n;
  double length;
  double dx;
  RealVector x;
  RealVector k;
  fftw_plan forward_plan = nullptr;
  fftw_plan backward_plan = nullptr;

  Impl(std::size_t n_points, double box_length)
      : n(n_points), length(box_length), dx(box_length / static_cast<double>(n_points)),
        x(n_points), k(n_points) {
    const double two_pi_over_l = 2.0 * std::numbers::pi / length;
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = -0.5 * length + static_cast<double>(j) * dx;
      auto index = static_cast<std::ptrdiff_t>(j);
      if (index > half) index -= static_cast<std::ptrdiff_t>(n);
      k[j] = two_pi_over_l * static_cast<double>(index);
    }

    std::lock_guard lock(planner_mutex());
    auto* scratch = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_plan = fftw_plan_dft_1d(len, scratch, scratch, FFTW_FORWARD, flags);
    backward_plan = fftw_plan_dft_1d(len, scratch, scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_plan);
    fftw_destroy_plan(backward_plan);
  }

  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;
};

Grid::Grid(std::size_t n_points, double box_length) {
  if (n_points < 8 || (n_points & (n_points - 1)) != 0) {
    throw ValidationError("n_points must be a power of two >= 8 (got " +
                          std::to_string(n_points) + ")");
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw ValidationError("box_length must be positive and finite (got " +
                          std::to_string(box_length) + ")");
  }
  impl_ = std::make_shared<const Impl>(n_points, box_length);
}

std::size_t Grid::size() const noexcept { return impl_->n; }
double Grid::box_length() const noexcept { return impl_->length; }
double Grid::dx() const noexcept { return impl_->dx; }
double Grid::k_max() const noexcept { return std::numbers::pi / impl_->dx; }
std::span<const double> Grid::positions() const noexcept { return impl_->x; }
std::span<const double> Grid::wavenumbers() const noexcept { return impl_->k; }

void Grid::forward(std::span<const Complex> in, std::span<Complex> out) const {
  require_size(size(), in.size(), "forward transform input");
  require_size(size(), out.size(), "forward transform output");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  forward_in_place(out);
}

void Grid::inverse(std::span<const Complex> in, std::span<Complex> out) const {
  require_size(size(), in.size(), "inverse transform input");
  require_size(size(), out.size(), "inverse transform output");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  inverse_in_place(out);
}

void Grid::forward_in_place(std::span<Complex> data) const {
  require_size(size(), data.size(), "forward transform");
  fftw_execute_dft(impl_->forward_plan, as_fftw(data.data()), as_fftw(data.data()));
}

void Grid::inverse_in_place(std::span<Complex> data) const {
  require_size(size(), data.size(), "inverse transform");
  fftw_execute_dft(impl_->backward_plan, as_fftw(data.data()), as_fftw(data.data()));
  const double scale = 1.0 / static_cast<double>(size());
  for (auto& v : data) v *= scale;
}

Grid make_grid(std::size_t n_points, double box_length) { return Grid(n_points, box_length); }

ComplexVector spectral_derivative(const Grid& grid, std::span<const Complex> f) {
  require_size(grid.size(), f.size(), "spectral_derivative");
  ComplexVector out(f.begin(), f.end());
  grid.forward_in_place(out);
  const auto k = grid.wavenumbers();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= Complex(0.0, k[j]);
  out[grid.nyquist_index()] = 0.0;
  grid.inverse_in_place(out);
  return out;
}

RealVector real_spectral_derivative(const Grid& grid, std::span<const double> f) {
  require_size(grid.size(), f.size(), "real_spectral_derivative");
  ComplexVector buf(f.begin(), f.end());
  const auto d = spectral_derivative(grid, buf);
  RealVector out(d.size());
  std::transform(d.begin(), d.end(), out.begin(), [](Complex c) { return c.real(); });
  return out;
}

ComplexVector spectral_second_derivative(const Grid& grid, std::span<const Complex> f) {
  require_size(grid.size(), f.size(), "spectral_second_derivative");
  ComplexVector out(f.begin(), f.end());
  grid.forward_in_place(out);
  const auto k = grid.wavenumbers();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= -k[j] * k[j];
  grid.inverse_in_place(out);
  return out;
}

Complex inner_product(const Grid& grid, std::span<const Complex> f, std::span<const Complex> g) {
  require_size(grid.size(), f.size(), "inner_product lhs");
  require_size(grid.size(), g.size(), "inner_product rhs");
  Complex acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += std::conj(f[j]) * g[j];
  return acc * grid.dx();
}

}  // namespace bremsbec

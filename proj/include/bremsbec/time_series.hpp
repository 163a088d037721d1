#pragma once

#include <cstddef>

#include "bremsbec/grid.hpp"
#include "bremsbec/state.hpp"

namespace bremsbec {

/// Observable samples along a trajectory, one column per quantity.
struct TimeSeries {
  RealVector times;
  RealVector norm2;
  RealVector x_mean;
  RealVector v_mean;
  RealVector a_mean;
  RealVector a2_mean;

  std::size_t size() const noexcept { return times.size(); }
  void push_back(double t, const Observables& o);

  /// Checks equal column lengths (>= 2), strictly increasing times, and
  /// a2_mean >= a_mean^2 up to a 1e-10 relative slack. Throws ValidationError.
  void validate() const;
};

}  // namespace bremsbec

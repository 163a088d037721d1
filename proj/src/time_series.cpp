#include "bremsbec/time_series.hpp"

#include <cmath>
#include <string>

#include "bremsbec/errors.hpp"

namespace bremsbec {

void TimeSeries::push_back(double t, const Observables& o) {
  times.push_back(t);
  norm2.push_back(o.norm2);
  x_mean.push_back(o.x_mean);
  v_mean.push_back(o.v_mean);
  a_mean.push_back(o.a_mean);
  a2_mean.push_back(o.a2_mean);
}

void TimeSeries::validate() const {
  const std::size_t n = times.size();
  if (norm2.size() != n || x_mean.size() != n || v_mean.size() != n || a_mean.size() != n ||
      a2_mean.size() != n) {
    throw ValidationError("time series columns have mismatched lengths");
  }
  if (n < 2) throw ValidationError("time series needs at least 2 samples");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(times[i + 1] > times[i])) {
      throw ValidationError("time series times are not strictly increasing at index " +
                            std::to_string(i + 1));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = a_mean[i] * a_mean[i];
    if (a2_mean[i] < a2 - 1e-10 * std::max(1.0, std::abs(a2_mean[i]))) {
      throw ValidationError("time series violates <a^2> >= <a>^2 at index " + std::to_string(i));
    }
  }
}

}  // namespace bremsbec

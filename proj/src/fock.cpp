#include "bremsbec/fock.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bremsbec/errors.hpp"

namespace bremsbec {

namespace {

// Appends every occupation of `modes` modes with exactly `total` quanta,
// first mode descending.
void enumerate_sector(int modes, int total, Occupation& prefix, std::vector<Occupation>& out) {
  if (modes == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = total; first >= 0; --first) {
    prefix.push_back(first);
    enumerate_sector(modes - 1, total - first, prefix, out);
    prefix.pop_back();
  }
}

FockVector vacuum(const FockSpace& space) {
  FockVector v = FockVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  v(0) = 1.0;
  return v;
}

// (sum_k phi_k b_k^dagger) v, dropping amplitude pushed past n_max.
FockVector apply_creation(const FockSpace& space, const FockVector& phi, const FockVector& v) {
  FockVector out = FockVector::Zero(v.size());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const Complex c = v(static_cast<Eigen::Index>(i));
    if (c == Complex(0.0)) continue;
    const auto& occ = space.occupation(i);
    for (int k = 0; k < space.n_modes(); ++k) {
      const std::size_t target = space.raised(i, k);
      if (target == FockSpace::npos) continue;
      out(static_cast<Eigen::Index>(target)) += phi(k) * std::sqrt(occ[k] + 1.0) * c;
    }
  }
  return out;
}

FockVector apply_annihilation(const FockSpace& space, int mode, const FockVector& v) {
  FockVector out = FockVector::Zero(v.size());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const std::size_t target = space.lowered(i, mode);
    if (target == FockSpace::npos) continue;
    out(static_cast<Eigen::Index>(target)) +=
        std::sqrt(static_cast<double>(space.occupation(i)[mode])) * v(static_cast<Eigen::Index>(i));
  }
  return out;
}

void require_operator_shape(const FockSpace& space, const OneBodyOperator& op) {
  if (op.matrix.rows() != space.n_modes() || op.matrix.cols() != space.n_modes()) {
    throw ValidationError("one-body operator must be n_modes x n_modes");
  }
}

// sum_{k,k'} O_kk' b_k^dagger b_k' from explicit ladder matrices.
FockMatrix one_body_from_ladders(const std::vector<LadderPair>& ladders, const FockMatrix& o) {
  const auto dim = ladders.front().creation.rows();
  FockMatrix out = FockMatrix::Zero(dim, dim);
  const auto modes = static_cast<Eigen::Index>(ladders.size());
  for (Eigen::Index k = 0; k < modes; ++k) {
    for (Eigen::Index kp = 0; kp < modes; ++kp) {
      if (o(k, kp) == Complex(0.0)) continue;
      out.noalias() += o(k, kp) * (ladders[k].creation * ladders[kp].annihilation);
    }
  }
  return out;
}

std::vector<Eigen::Index> to_eigen_indices(const std::vector<std::size_t>& idx) {
  return {idx.begin(), idx.end()};
}

}  // namespace

FockSpace::FockSpace(int n_modes, int n_max) : n_modes_(n_modes), n_max_(n_max) {
  if (n_modes < 1) throw ValidationError("n_modes must be >= 1");
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  Occupation prefix;
  for (int total = 0; total <= n_max; ++total) {
    enumerate_sector(n_modes, total, prefix, basis_);
  }
  totals_.reserve(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    index_.emplace(basis_[i], i);
    int t = 0;
    for (int n : basis_[i]) t += n;
    totals_.push_back(t);
  }

  const auto modes = static_cast<std::size_t>(n_modes);
  raise_.assign(basis_.size() * modes, npos);
  lower_.assign(basis_.size() * modes, npos);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t k = 0; k < modes; ++k) {
      Occupation occ = basis_[i];
      if (totals_[i] < n_max) {
        ++occ[k];
        raise_[i * modes + k] = index_.at(occ);
        --occ[k];
      }
      if (occ[k] > 0) {
        --occ[k];
        lower_[i * modes + k] = index_.at(occ);
      }
    }
  }
}

std::optional<std::size_t> FockSpace::index_of(const Occupation& occ) const {
  const auto it = index_.find(occ);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FockSpace::raised(std::size_t index, int mode) const noexcept {
  return raise_[index * static_cast<std::size_t>(n_modes_) + static_cast<std::size_t>(mode)];
}

std::size_t FockSpace::lowered(std::size_t index, int mode) const noexcept {
  return lower_[index * static_cast<std::size_t>(n_modes_) + static_cast<std::size_t>(mode)];
}

std::vector<std::size_t> FockSpace::indices_with_total_at_most(int max_total) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < totals_.size(); ++i) {
    if (totals_[i] <= max_total) out.push_back(i);
  }
  return out;
}

std::size_t FockSpace::expected_dimension(int n_modes, int n_max) {
  // C(n_max + n_modes, n_modes), exact in integers
  std::size_t result = 1;
  for (int i = 1; i <= n_modes; ++i) {
    result = result * static_cast<std::size_t>(n_max + i) / static_cast<std::size_t>(i);
  }
  return result;
}

void ModeAmplitudes::validate(int n_modes) const {
  if (phi.size() != n_modes) {
    throw ValidationError("mode amplitudes have " + std::to_string(phi.size()) +
                          " entries, space has " + std::to_string(n_modes) + " modes");
  }
  if (std::abs(phi.squaredNorm() - 1.0) > 1e-12) {
    throw ValidationError("mode amplitudes are not normalized: sum |phi|^2 = " +
                          std::to_string(phi.squaredNorm()));
  }
}

bool OneBodyOperator::is_hermitian(double tol) const {
  if (matrix.rows() != matrix.cols()) return false;
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() < tol;
}

std::vector<LadderPair> build_ladder_operators(const FockSpace& space) {
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  std::vector<LadderPair> out;
  out.reserve(static_cast<std::size_t>(space.n_modes()));
  for (int k = 0; k < space.n_modes(); ++k) {
    FockMatrix b = FockMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < space.dimension(); ++i) {
      const std::size_t target = space.lowered(i, k);
      if (target == FockSpace::npos) continue;
      b(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(i)) =
          std::sqrt(static_cast<double>(space.occupation(i)[k]));
    }
    FockMatrix bdag = b.adjoint();
    out.push_back(LadderPair{std::move(b), std::move(bdag)});
  }
  return out;
}

double coherent_mean_limit(int n_max) {
  const double m = n_max + 1.0;
  return std::exp((std::log(1e-14) + std::lgamma(m + 1.0)) / m);
}

bool coherent_truncation_ok(double n_mean, int n_max) {
  if (n_mean <= 0.0) return true;
  const double m = n_max + 1.0;
  return m * std::log(n_mean) - std::lgamma(m + 1.0) < std::log(1e-14);
}

double poisson_tail(double n_mean, int n_max) {
  if (n_mean <= 0.0) return 0.0;
  double term = std::exp(-n_mean + (n_max + 1.0) * std::log(n_mean) - std::lgamma(n_max + 2.0));
  double tail = 0.0;
  for (int n = n_max + 1; n < n_max + 10000; ++n) {
    tail += term;
    term *= n_mean / (n + 1.0);
    if (term <= 1e-18 * tail) break;
  }
  return tail;
}

FockVector coherent_state(const FockSpace& space, const ModeAmplitudes& amps) {
  amps.validate(space.n_modes());
  if (!coherent_truncation_ok(amps.mean_number(), space.n_max())) {
    throw ValidationError("coherent state truncation guard violated: |z|^2 = " +
                          std::to_string(amps.mean_number()) + " needs more than n_max = " +
                          std::to_string(space.n_max()) + " quanta (limit " +
                          std::to_string(coherent_mean_limit(space.n_max())) + ")");
  }
  FockVector term = vacuum(space);
  FockVector psi = term;
  for (int n = 1; n <= space.n_max(); ++n) {
    term = (amps.z / static_cast<double>(n)) * apply_creation(space, amps.phi, term);
    psi += term;
  }
  return std::exp(-0.5 * amps.mean_number()) * psi;
}

FockVector fock_state(const FockSpace& space, const ModeAmplitudes& amps, int n) {
  amps.validate(space.n_modes());
  if (n < 0 || n > space.n_max()) {
    throw ValidationError("fock_state: n = " + std::to_string(n) + " outside [0, n_max = " +
                          std::to_string(space.n_max()) + "]");
  }
  FockVector psi = vacuum(space);
  for (int m = 1; m <= n; ++m) {
    psi = apply_creation(space, amps.phi, psi) / std::sqrt(static_cast<double>(m));
  }
  return psi;
}

FockMatrix second_quantize(const FockSpace& space, const OneBodyOperator& op) {
  require_operator_shape(space, op);
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  FockMatrix out = FockMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const auto& occ = space.occupation(i);
    for (int kp = 0; kp < space.n_modes(); ++kp) {
      const std::size_t mid = space.lowered(i, kp);
      if (mid == FockSpace::npos) continue;
      const double lower_amp = std::sqrt(static_cast<double>(occ[kp]));
      const auto& mid_occ = space.occupation(mid);
      for (int k = 0; k < space.n_modes(); ++k) {
        const std::size_t target = space.raised(mid, k);
        // the number-conserving diagonal term is exactly occ[k]
        const double amp = k == kp ? static_cast<double>(occ[k]) : lower_amp * std::sqrt(mid_occ[k] + 1.0);
        out(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(i)) += op.matrix(k, kp) * amp;
      }
    }
  }
  return out;
}

double verify_ordering_identity(const FockSpace& space, const OneBodyOperator& op_i,
                                const OneBodyOperator& op_j) {
  require_operator_shape(space, op_i);
  require_operator_shape(space, op_j);
  const auto ladders = build_ladder_operators(space);
  const int modes = space.n_modes();
  const auto dim = static_cast<Eigen::Index>(space.dimension());

  const FockMatrix lhs =
      one_body_from_ladders(ladders, op_i.matrix) * one_body_from_ladders(ladders, op_j.matrix);

  // sum_{i,k} b_i^+ b_k^+ ( sum_{j,l} O_ij O'_kl b_j b_l )
  std::vector<FockMatrix> pair_lower;
  pair_lower.reserve(static_cast<std::size_t>(modes * modes));
  for (int j = 0; j < modes; ++j) {
    for (int l = 0; l < modes; ++l) {
      pair_lower.push_back(ladders[j].annihilation * ladders[l].annihilation);
    }
  }
  FockMatrix normal_ordered = FockMatrix::Zero(dim, dim);
  for (int i = 0; i < modes; ++i) {
    for (int k = 0; k < modes; ++k) {
      FockMatrix inner = FockMatrix::Zero(dim, dim);
      for (int j = 0; j < modes; ++j) {
        for (int l = 0; l < modes; ++l) {
          inner += op_i.matrix(i, j) * op_j.matrix(k, l) * pair_lower[j * modes + l];
        }
      }
      normal_ordered.noalias() += ladders[i].creation * ladders[k].creation * inner;
    }
  }

  const FockMatrix contraction = one_body_from_ladders(ladders, op_i.matrix * op_j.matrix);
  const FockMatrix diff = lhs - normal_ordered - contraction;

  const auto safe = to_eigen_indices(space.indices_with_total_at_most(space.n_max() - 2));
  double worst = 0.0;
  for (auto r : safe) {
    for (auto c : safe) worst = std::max(worst, std::abs(diff(r, c)));
  }
  return worst;
}

TwoTermCheck verify_two_term_reduction(const FockSpace& space, const ModeAmplitudes& amps,
                                       const OneBodyOperator& op) {
  require_operator_shape(space, op);
  const FockVector psi = coherent_state(space, amps);
  const FockMatrix big = second_quantize(space, op);
  const FockVector once = big * psi;
  const FockVector twice = big * once;

  const Complex first_moment = amps.phi.dot(op.matrix * amps.phi);
  const Complex second_moment = amps.phi.dot(op.matrix * (op.matrix * amps.phi));
  const double n = amps.mean_number();

  TwoTermCheck check;
  check.lhs = psi.dot(twice);
  check.rhs = n * n * first_moment * first_moment + n * second_moment;
  check.residual = std::abs(check.lhs - check.rhs);
  return check;
}

TwoTermCheck verify_fock_reduction(const FockSpace& space, const ModeAmplitudes& amps, int n,
                                   const OneBodyOperator& op) {
  require_operator_shape(space, op);
  const FockVector psi = fock_state(space, amps, n);
  const FockMatrix big = second_quantize(space, op);
  const FockVector twice = big * (big * psi);

  const Complex first_moment = amps.phi.dot(op.matrix * amps.phi);
  const Complex second_moment = amps.phi.dot(op.matrix * (op.matrix * amps.phi));
  const double nn = n;

  TwoTermCheck check;
  check.lhs = psi.dot(twice);
  check.rhs = nn * (nn - 1.0) * first_moment * first_moment + nn * second_moment;
  check.residual = std::abs(check.lhs - check.rhs);
  return check;
}

double coherent_eigen_residual(const FockSpace& space, const ModeAmplitudes& amps,
                               const FockVector& psi) {
  const auto safe = to_eigen_indices(space.indices_with_total_at_most(space.n_max() - 1));
  double worst = 0.0;
  for (int k = 0; k < space.n_modes(); ++k) {
    const FockVector lowered = apply_annihilation(space, k, psi);
    const Complex eigenvalue = amps.z * amps.phi(k);
    for (auto i : safe) worst = std::max(worst, std::abs(lowered(i) - eigenvalue * psi(i)));
  }
  return worst;
}

double OracleReport::max_residual() const noexcept {
  return std::max({two_term_max_residual, large_mean_two_term_max_residual, ordering_max_residual,
                   coherent_eigen_max_residual, coherent_norm_max_excess, number_mean_max_residual,
                   fock_counterpart_max_residual, one_particle_sector_max_residual});
}

OracleReport run_oracle_suite(const OracleSuiteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const auto random_hermitian = [&](int m) {
    FockMatrix a(m, m);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
    }
    return OneBodyOperator{0.5 * (a + a.adjoint())};
  };
  const auto random_amplitudes = [&](int m, double mean_lo, double mean_hi) {
    ModeAmplitudes amps;
    amps.phi.resize(m);
    for (int k = 0; k < m; ++k) amps.phi(k) = Complex(gauss(rng), gauss(rng));
    amps.phi.normalize();
    const double mean = mean_lo + (mean_hi - mean_lo) * uniform(rng);
    amps.z = std::polar(std::sqrt(mean), 2.0 * std::numbers::pi * uniform(rng));
    return amps;
  };

  OracleReport report;
  report.config = cfg;

  // two-term reduction at the requested cutoff, |z|^2 inside the truncation guard
  {
    const FockSpace space(cfg.n_modes, cfg.n_max);
    const double hi = std::min(1.0, coherent_mean_limit(cfg.n_max) * (1.0 - 1e-9));
    const double lo = std::min(0.01, 0.5 * hi);
    report.two_term_mean_range[0] = lo;
    report.two_term_mean_range[1] = hi;
    for (int trial = 0; trial < cfg.n_operators; ++trial) {
      const auto op = random_hermitian(cfg.n_modes);
      const auto amps = random_amplitudes(cfg.n_modes, lo, hi);
      const auto check = verify_two_term_reduction(space, amps, op);
      report.two_term_max_residual = std::max(report.two_term_max_residual, check.residual);
      report.two_term_max_abs_lhs = std::max(report.two_term_max_abs_lhs, std::abs(check.lhs));
    }
  }

  // remainder of the |z|^2 <= 1 range with a guard-consistent cutoff
  {
    const FockSpace space(cfg.n_modes, cfg.large_mean_n_max);
    const double hi = std::min(1.0, coherent_mean_limit(cfg.large_mean_n_max) * (1.0 - 1e-9));
    const double lo = std::min(hi, coherent_mean_limit(cfg.n_max));
    report.large_mean_range[0] = lo;
    report.large_mean_range[1] = hi;
    const FockMatrix number = second_quantize(space, OneBodyOperator{FockMatrix::Identity(cfg.n_modes, cfg.n_modes)});
    for (int trial = 0; trial < cfg.n_operators; ++trial) {
      const auto op = random_hermitian(cfg.n_modes);
      const auto amps = random_amplitudes(cfg.n_modes, lo, hi);
      const auto check = verify_two_term_reduction(space, amps, op);
      report.large_mean_two_term_max_residual =
          std::max(report.large_mean_two_term_max_residual, check.residual);

      const FockVector psi = coherent_state(space, amps);
      report.coherent_eigen_max_residual =
          std::max(report.coherent_eigen_max_residual, coherent_eigen_residual(space, amps, psi));
      const double norm_dev = std::abs(1.0 - psi.squaredNorm());
      const double bound = poisson_tail(amps.mean_number(), space.n_max());
      report.coherent_norm_max_excess =
          std::max(report.coherent_norm_max_excess, std::max(0.0, norm_dev - bound - 1e-14));
      const double mean_number = psi.dot(number * psi).real();
      report.number_mean_max_residual =
          std::max(report.number_mean_max_residual, std::abs(mean_number - amps.mean_number()));
    }
  }

  // operator ordering on the safely truncated sectors
  {
    const FockSpace space(cfg.n_modes, cfg.ordering_n_max);
    for (int trial = 0; trial < cfg.ordering_pairs; ++trial) {
      const auto a = random_hermitian(cfg.n_modes);
      const auto b = random_hermitian(cfg.n_modes);
      report.ordering_max_residual =
          std::max(report.ordering_max_residual, verify_ordering_identity(space, a, b));
    }
    const FockSpace single(1, cfg.n_max);
    for (int trial = 0; trial < 5; ++trial) {
      report.ordering_max_residual =
          std::max(report.ordering_max_residual,
                   verify_ordering_identity(single, random_hermitian(1), random_hermitian(1)));
    }
  }

  // Fock-state counterpart and the one-particle sector isomorphism
  {
    const FockSpace space(cfg.n_modes, cfg.n_max);
    for (int trial = 0; trial < 10; ++trial) {
      const auto op = random_hermitian(cfg.n_modes);
      const auto amps = random_amplitudes(cfg.n_modes, 0.0, 0.0);
      for (int n = 0; n <= cfg.n_max; ++n) {
        report.fock_counterpart_max_residual =
            std::max(report.fock_counterpart_max_residual,
                     verify_fock_reduction(space, amps, n, op).residual);
      }
      const FockMatrix big = second_quantize(space, op);
      for (int k = 0; k < cfg.n_modes; ++k) {
        for (int kp = 0; kp < cfg.n_modes; ++kp) {
          // one-particle states sit at indices 1..n_modes in graded order
          report.one_particle_sector_max_residual =
              std::max(report.one_particle_sector_max_residual,
                       std::abs(big(1 + k, 1 + kp) - op.matrix(k, kp)));
        }
      }
    }
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace bremsbec

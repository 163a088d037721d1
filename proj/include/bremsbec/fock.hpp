#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bremsbec/grid.hpp"

namespace bremsbec {

using Occupation = std::vector<int>;
using FockMatrix = Eigen::MatrixXcd;
using FockVector = Eigen::VectorXcd;

/// Truncated multimode boson Fock space: all occupation tuples of `n_modes`
/// modes whose total occupation is at most `n_max`.
///
/// Basis order is graded lexicographic: by total occupation first, then
/// lexicographically descending within a sector, e.g. for two modes
/// (0,0) (1,0) (0,1) (2,0) (1,1) (0,2) ...
class FockSpace {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  FockSpace(int n_modes, int n_max);

  int n_modes() const noexcept { return n_modes_; }
  int n_max() const noexcept { return n_max_; }
  std::size_t dimension() const noexcept { return basis_.size(); }

  const Occupation& occupation(std::size_t index) const { return basis_.at(index); }
  int total(std::size_t index) const { return totals_.at(index); }
  std::optional<std::size_t> index_of(const Occupation& occ) const;

  /// Index of the state with one more quantum in `mode`, or npos when that
  /// state is truncated away.
  std::size_t raised(std::size_t index, int mode) const noexcept;
  /// Index of the state with one fewer quantum in `mode`, or npos if empty.
  std::size_t lowered(std::size_t index, int mode) const noexcept;

  std::vector<std::size_t> indices_with_total_at_most(int max_total) const;

  /// Number of multisets, C(n_max + n_modes, n_modes).
  static std::size_t expected_dimension(int n_modes, int n_max);

 private:
  int n_modes_;
  int n_max_;
  std::vector<Occupation> basis_;
  std::vector<int> totals_;
  std::map<Occupation, std::size_t> index_;
  std::vector<std::size_t> raise_;
  std::vector<std::size_t> lower_;
};

/// Single-particle mode amplitudes phi_k and coherent amplitude z.
struct ModeAmplitudes {
  FockVector phi;
  Complex z{0.0, 0.0};

  double mean_number() const noexcept { return std::norm(z); }
  /// Requires phi.size() == n_modes and sum |phi_k|^2 = 1 within 1e-12.
  void validate(int n_modes) const;
};

/// Mode-space matrix of a single-particle operator.
struct OneBodyOperator {
  FockMatrix matrix;

  bool is_hermitian(double tol = 1e-12) const;
};

struct LadderPair {
  FockMatrix annihilation;
  FockMatrix creation;
};

/// Dense b_k and b_k^dagger for each mode, with sqrt(n) amplitudes.
std::vector<LadderPair> build_ladder_operators(const FockSpace& space);

/// Largest |z|^2 for which |z|^(2(n_max+1)) / (n_max+1)! < 1e-14.
double coherent_mean_limit(int n_max);
bool coherent_truncation_ok(double n_mean, int n_max);
/// Poisson probability mass beyond n_max, sum_{n > n_max} e^-m m^n / n!.
double poisson_tail(double n_mean, int n_max);

/// exp(-|z|^2/2) exp(z sum_k phi_k b_k^dagger)|0>, by its power series.
/// Throws ValidationError when the truncation guard fails.
FockVector coherent_state(const FockSpace& space, const ModeAmplitudes& amps);

/// (1/sqrt(n!)) (sum_k phi_k b_k^dagger)^n |0>; amps.z is ignored.
FockVector fock_state(const FockSpace& space, const ModeAmplitudes& amps, int n);

/// sum_{k,k'} O_kk' b_k^dagger b_k', built directly from the basis tables.
FockMatrix second_quantize(const FockSpace& space, const OneBodyOperator& op);

/// Checks (b^+ O b)(b^+ O' b) = sum b^+_i b^+_k O_ij O'_kl b_j b_l + b^+ (O O') b
/// using ladder-matrix products. Returns the largest matrix-element residual
/// on the sectors with total occupation <= n_max - 2.
double verify_ordering_identity(const FockSpace& space, const OneBodyOperator& op_i,
                                const OneBodyOperator& op_j);

struct TwoTermCheck {
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
};

/// lhs = <psi_c| O_hat^2 |psi_c> by direct matrices;
/// rhs = n^2 (phi^+ O phi)^2 + n (phi^+ O^2 phi) with n = |z|^2.
TwoTermCheck verify_two_term_reduction(const FockSpace& space, const ModeAmplitudes& amps,
                                       const OneBodyOperator& op);

/// Fock-state counterpart: <n| O_hat^2 |n> against
/// n(n-1) (phi^+ O phi)^2 + n (phi^+ O^2 phi).
TwoTermCheck verify_fock_reduction(const FockSpace& space, const ModeAmplitudes& amps, int n,
                                   const OneBodyOperator& op);

/// max_k max | b_k psi - z phi_k psi | over sectors with total <= n_max - 1.
double coherent_eigen_residual(const FockSpace& space, const ModeAmplitudes& amps,
                               const FockVector& psi);

struct OracleSuiteConfig {
  std::uint64_t seed = 20040501;
  int n_modes = 3;
  int n_max = 8;
  int n_operators = 50;
  int ordering_n_max = 6;
  int ordering_pairs = 20;
  /// Sector cutoff used for the |z|^2 <= 1 sweep (guard-consistent).
  int large_mean_n_max = 16;
};

struct OracleReport {
  OracleSuiteConfig config;
  double two_term_max_residual = 0.0;
  double two_term_max_abs_lhs = 0.0;
  double two_term_mean_range[2] = {0.0, 0.0};
  double large_mean_two_term_max_residual = 0.0;
  double large_mean_range[2] = {0.0, 0.0};
  double ordering_max_residual = 0.0;
  double coherent_eigen_max_residual = 0.0;
  double coherent_norm_max_excess = 0.0;
  double number_mean_max_residual = 0.0;
  double fock_counterpart_max_residual = 0.0;
  double one_particle_sector_max_residual = 0.0;
  double elapsed_seconds = 0.0;

  /// Largest of all residual fields above.
  double max_residual() const noexcept;
};

/// Runs every oracle check with seeded random Hermitian operators and
/// normalized amplitudes.
OracleReport run_oracle_suite(const OracleSuiteConfig& cfg);

}  // namespace bremsbec

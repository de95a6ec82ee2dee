// Interpretations as points on an affine line, certain interpretations as
// Kronecker deltas over the N minterms, and the finite-order argument that
// rules out any displacement-indexed permutation algorithm.
#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace coherence_lab::interpretation {

/// I(k) = 1 for k == true_index, 0 otherwise; k and true_index are 1-based.
class CertainInterpretation {
 public:
  CertainInterpretation(std::size_t true_index, std::size_t size);

  std::size_t size() const noexcept { return size_; }
  std::size_t true_index() const noexcept { return true_index_; }
  int operator()(std::size_t k) const;

  friend bool operator==(const CertainInterpretation&, const CertainInterpretation&) = default;

 private:
  std::size_t true_index_;
  std::size_t size_;
};

CertainInterpretation certain(std::size_t true_index, std::size_t size);

/// A point of the interpretation line. The coordinate has no distinguished
/// origin; only displacements between points are meaningful.
struct InterpretationPoint {
  double s;
  std::size_t size;
};

/// theta = to.s - from.s
double displacement(const InterpretationPoint& from, const InterpretationPoint& to);

InterpretationPoint shifted(const InterpretationPoint& point, double offset);

struct ThetaInterval {
  double theta_min = -std::numbers::pi;
  double theta_max = std::numbers::pi;

  ThetaInterval() = default;
  ThetaInterval(double lo, double hi);

  bool contains(double theta) const noexcept { return theta >= theta_min && theta <= theta_max; }
  /// Endpoint of largest magnitude; zero only for the degenerate [0, 0].
  double widest() const noexcept;
};

/// Bijection on {1..N}. Stored 0-based; every public index is 1-based.
class Permutation {
 public:
  static Permutation identity(std::size_t size);
  /// `images[i]` is the 1-based image of i+1.
  static Permutation from_images(const std::vector<std::size_t>& images);
  /// All N! permutations in lexicographic order of their image arrays.
  static std::vector<Permutation> all(std::size_t size);

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t operator()(std::size_t k) const;
  std::vector<std::size_t> images() const;

  /// (this * rhs)(k) = this(rhs(k))
  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const noexcept;
  /// Least m >= 1 with p^m = identity: lcm of the cycle lengths.
  std::uint64_t order() const;

  /// "[2 1 3]"
  std::string to_one_line() const;
  /// "[2,1,3]"
  std::string to_json() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {}
  std::vector<std::size_t> map_;
};

CertainInterpretation apply_permutation(const CertainInterpretation& interp, const Permutation& perm);

/// perm composed with itself `exponent` times, reduced modulo the order.
Permutation permutation_power(const Permutation& perm, std::uint64_t exponent);

/// Reference implementation by repeated multiplication.
Permutation permutation_power_literal(const Permutation& perm, std::uint64_t exponent);

std::uint64_t factorial(std::size_t n);

/// Size of each of the N! equal steps that compose a displacement theta.
double step_for(double theta, std::size_t size);

struct ContradictionWitness {
  std::size_t size;
  Permutation step;
  Permutation target;
  Permutation step_power;   // step^(N!)
  bool reaches_target;      // step_power == target
  bool contradiction;       // target differs from what N! equal steps produce
};

/// Takes `step` as the permutation a hypothetical algorithm assigns to each
/// displacement theta/N! and `target` as the permutation relating I(0) to a
/// non-identical I(theta). N! equal steps always return to the start, so
/// any non-identity target is unreachable.
ContradictionWitness theorem1_contradiction_witness(std::size_t size, const Permutation& step,
                                                    const Permutation& target);

struct AlgorithmSearchReport {
  std::size_t size;
  std::uint64_t candidates;           // |S_N| step permutations tried
  std::uint64_t targets;              // non-identity targets, |S_N| - 1
  std::uint64_t consistent_pairs;     // (step, target) with step^(N!) == target
  std::uint64_t consistent_candidates;
  std::uint64_t identity_returns;     // steps with step^(N!) == identity
};

inline constexpr std::size_t kMaxSearchSize = 5;

/// Every assignment of one fixed permutation to the step theta/N!, checked
/// against every non-identity target. Valid for 2 <= N <= 5.
AlgorithmSearchReport exhaustive_algorithm_search(std::size_t size);

}  // namespace coherence_lab::interpretation

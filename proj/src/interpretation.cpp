#include "coherence_lab/interpretation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coherence_lab::interpretation {

namespace {

void check_size(std::size_t size) {
  if (size < 2) throw std::out_of_range("interpretation size must be at least 2, got " + std::to_string(size));
}

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b)
    throw std::invalid_argument("size mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

CertainInterpretation::CertainInterpretation(std::size_t true_index, std::size_t size)
    : true_index_(true_index), size_(size) {
  check_size(size);
  if (true_index < 1 || true_index > size)
    throw std::out_of_range("true index " + std::to_string(true_index) + " outside 1.." + std::to_string(size));
}

int CertainInterpretation::operator()(std::size_t k) const {
  if (k < 1 || k > size_) throw std::out_of_range("statement index " + std::to_string(k) + " out of range");
  return k == true_index_ ? 1 : 0;
}

CertainInterpretation certain(std::size_t true_index, std::size_t size) {
  return CertainInterpretation(true_index, size);
}

double displacement(const InterpretationPoint& from, const InterpretationPoint& to) {
  check_same_size(from.size, to.size);
  return to.s - from.s;
}

InterpretationPoint shifted(const InterpretationPoint& point, double offset) {
  return {point.s + offset, point.size};
}

ThetaInterval::ThetaInterval(double lo, double hi) : theta_min(lo), theta_max(hi) {
  if (!(lo <= hi)) throw std::invalid_argument("theta interval requires theta_min <= theta_max");
}

double ThetaInterval::widest() const noexcept {
  return std::abs(theta_max) >= std::abs(theta_min) ? theta_max : theta_min;
}

Permutation Permutation::identity(std::size_t size) {
  std::vector<std::size_t> map(size);
  std::iota(map.begin(), map.end(), std::size_t{0});
  return Permutation(std::move(map));
}

Permutation Permutation::from_images(const std::vector<std::size_t>& images) {
  std::vector<std::size_t> map(images.size());
  std::vector<bool> hit(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::size_t image = images[i];
    if (image < 1 || image > images.size())
      throw std::invalid_argument("permutation image " + std::to_string(image) + " out of range");
    if (hit[image - 1]) throw std::invalid_argument("permutation image " + std::to_string(image) + " repeated");
    hit[image - 1] = true;
    map[i] = image - 1;
  }
  return Permutation(std::move(map));
}

std::vector<Permutation> Permutation::all(std::size_t size) {
  std::vector<Permutation> out;
  Permutation p = identity(size);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.map_.begin(), p.map_.end()));
  return out;
}

std::size_t Permutation::operator()(std::size_t k) const {
  if (k < 1 || k > map_.size()) throw std::out_of_range("permutation argument " + std::to_string(k) + " out of range");
  return map_[k - 1] + 1;
}

std::vector<std::size_t> Permutation::images() const {
  std::vector<std::size_t> out(map_.size());
  std::transform(map_.begin(), map_.end(), out.begin(), [](std::size_t v) { return v + 1; });
  return out;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  check_same_size(size(), rhs.size());
  std::vector<std::size_t> map(size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = map_[rhs.map_[i]];
  return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> map(size());
  for (std::size_t i = 0; i < map.size(); ++i) map[map_[i]] = i;
  return Permutation(std::move(map));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

std::uint64_t Permutation::order() const {
  std::uint64_t result = 1;
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t start = 0; start < map_.size(); ++start) {
    if (seen[start]) continue;
    std::uint64_t length = 0;
    for (std::size_t i = start; !seen[i]; i = map_[i]) {
      seen[i] = true;
      ++length;
    }
    result = std::lcm(result, length);
  }
  return result;
}

std::string Permutation::to_one_line() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < map_.size(); ++i) os << (i ? " " : "") << map_[i] + 1;
  os << ']';
  return os.str();
}

std::string Permutation::to_json() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < map_.size(); ++i) os << (i ? "," : "") << map_[i] + 1;
  os << ']';
  return os.str();
}

CertainInterpretation apply_permutation(const CertainInterpretation& interp, const Permutation& perm) {
  check_same_size(interp.size(), perm.size());
  return CertainInterpretation(perm(interp.true_index()), interp.size());
}

Permutation permutation_power_literal(const Permutation& perm, std::uint64_t exponent) {
  Permutation out = Permutation::identity(perm.size());
  for (std::uint64_t i = 0; i < exponent; ++i) out = perm * out;
  return out;
}

Permutation permutation_power(const Permutation& perm, std::uint64_t exponent) {
  std::uint64_t remaining = exponent % perm.order();
  Permutation base = perm;
  Permutation out = Permutation::identity(perm.size());
  while (remaining) {
    if (remaining & 1u) out = base * out;
    base = base * base;
    remaining >>= 1;
  }
  return out;
}

std::uint64_t factorial(std::size_t n) {
  if (n > 20) throw std::overflow_error("factorial of " + std::to_string(n) + " exceeds 64 bits");
  std::uint64_t out = 1;
  for (std::size_t i = 2; i <= n; ++i) out *= i;
  return out;
}

double step_for(double theta, std::size_t size) {
  check_size(size);
  return theta / static_cast<double>(factorial(size));
}

ContradictionWitness theorem1_contradiction_witness(std::size_t size, const Permutation& step,
                                                    const Permutation& target) {
  check_size(size);
  check_same_size(size, step.size());
  check_same_size(size, target.size());
  Permutation power = permutation_power(step, factorial(size));
  const bool reaches = power == target;
  return ContradictionWitness{size, step, target, std::move(power), reaches, !reaches};
}

AlgorithmSearchReport exhaustive_algorithm_search(std::size_t size) {
  if (size < 2 || size > kMaxSearchSize)
    throw std::out_of_range("exhaustive search supports 2 <= N <= " + std::to_string(kMaxSearchSize) + ", got " +
                            std::to_string(size));
  const std::vector<Permutation> group = Permutation::all(size);
  AlgorithmSearchReport report{size, group.size(), group.size() - 1, 0, 0, 0};
  for (const Permutation& step : group) {
    bool consistent = false;
    for (const Permutation& target : group) {
      if (target.is_identity()) continue;
      if (theorem1_contradiction_witness(size, step, target).reaches_target) {
        ++report.consistent_pairs;
        consistent = true;
      }
    }
    if (consistent) ++report.consistent_candidates;
    if (permutation_power(step, factorial(size)).is_identity()) ++report.identity_returns;
  }
  return report;
}

}  // namespace coherence_lab::interpretation

// Answer probabilities between two-statement interpretations separated by a
// displacement theta, the classical two-path composition rule, and the
// interference correction that makes composition consistent with
//
//   p(theta + vartheta) = cos^2(a (theta + vartheta)).
//
// With a = 1/2 this is the overlap rule of a spin 1/2 confined to a plane.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coherence_lab/interpretation.hpp"

namespace coherence_lab::probability {

template <typename Scalar>
inline constexpr Scalar kIdentityTolerance = Scalar(1e-12);

template <typename Scalar>
inline constexpr Scalar kGridTolerance = Scalar(1e-9);

/// A probability in [0, 1]. Raw values within kIdentityTolerance of the
/// interval are clamped; anything further out is rejected.
template <typename Scalar = double>
class AnswerProbability {
 public:
  explicit AnswerProbability(Scalar raw) {
    const Scalar tol = kIdentityTolerance<Scalar>;
    if (!(raw >= -tol && raw <= Scalar(1) + tol))
      throw std::domain_error("probability " + std::to_string(static_cast<double>(raw)) + " outside [0, 1]");
    value_ = std::clamp(raw, Scalar(0), Scalar(1));
  }
  Scalar value() const noexcept { return value_; }
  operator Scalar() const noexcept { return value_; }

 private:
  Scalar value_;
};

/// The free phase rate `a` of f(theta) = a * theta. The symmetry
/// p(0, theta) = p(theta, 0) is built in: p depends on theta only via cos^2.
template <typename Scalar = double>
struct CoherenceModel {
  Scalar a = Scalar(0.5);

  explicit CoherenceModel(Scalar rate = Scalar(0.5)) : a(rate) {
    if (!std::isfinite(static_cast<double>(rate))) throw std::invalid_argument("coherence rate a must be finite");
  }
};

template <typename Scalar>
AnswerProbability<Scalar> p(const CoherenceModel<Scalar>& model, Scalar theta) {
  const Scalar c = std::cos(model.a * theta);
  return AnswerProbability<Scalar>(c * c);
}

/// Probability between two interpretation points; only their displacement enters.
template <typename Scalar>
AnswerProbability<Scalar> p(const CoherenceModel<Scalar>& model, const interpretation::InterpretationPoint& from,
                            const interpretation::InterpretationPoint& to) {
  return p(model, static_cast<Scalar>(interpretation::displacement(from, to)));
}

template <typename Scalar>
struct ComplementRelations {
  Scalar yes_yes;  // p(s, r)
  Scalar yes_no;   // p(s, r-bar) = 1 - p(s, r)
  Scalar no_yes;   // p(s-bar, r) = 1 - p(s, r)
  Scalar no_no;    // p(s-bar, r-bar) = p(s, r)
};

template <typename Scalar>
ComplementRelations<Scalar> complement_relations(const CoherenceModel<Scalar>& model, Scalar theta) {
  const Scalar pr = p(model, theta).value();
  return {pr, Scalar(1) - pr, Scalar(1) - pr, pr};
}

/// p_theta * p_vartheta + (1 - p_theta)(1 - p_vartheta)
template <typename Scalar>
Scalar classical_compose(Scalar p_theta, Scalar p_vartheta) {
  if (!(p_theta >= 0 && p_theta <= 1) || !(p_vartheta >= 0 && p_vartheta <= 1))
    throw std::domain_error("classical_compose expects probabilities in [0, 1]");
  return p_theta * p_vartheta + (Scalar(1) - p_theta) * (Scalar(1) - p_vartheta);
}

/// Interference correction for a general phase function f.
template <typename Scalar>
Scalar interference_term_for(Scalar phase_theta, Scalar phase_vartheta) {
  return Scalar(-2) * std::sin(phase_theta) * std::sin(phase_vartheta) * std::cos(phase_theta) *
         std::cos(phase_vartheta);
}

/// -2 sin(a theta) sin(a vartheta) cos(a theta) cos(a vartheta), bounded by 1/2.
template <typename Scalar>
Scalar interference_term(const CoherenceModel<Scalar>& model, Scalar theta, Scalar vartheta) {
  return interference_term_for(model.a * theta, model.a * vartheta);
}

/// Classical composition plus interference; equals p(theta + vartheta).
template <typename Scalar>
Scalar compose(const CoherenceModel<Scalar>& model, Scalar theta, Scalar vartheta) {
  return classical_compose(p(model, theta).value(), p(model, vartheta).value()) +
         interference_term(model, theta, vartheta);
}

template <typename Scalar>
struct CompositionRow {
  Scalar theta, vartheta;
  Scalar p_theta, p_vartheta;
  Scalar classical, interference, composed, exact;
  Scalar abs_error;
};

template <typename Scalar>
CompositionRow<Scalar> composition_row(const CoherenceModel<Scalar>& model, Scalar theta, Scalar vartheta) {
  CompositionRow<Scalar> row{};
  row.theta = theta;
  row.vartheta = vartheta;
  row.p_theta = p(model, theta).value();
  row.p_vartheta = p(model, vartheta).value();
  row.classical = classical_compose(row.p_theta, row.p_vartheta);
  row.interference = interference_term(model, theta, vartheta);
  row.composed = row.classical + row.interference;
  row.exact = p(model, theta + vartheta).value();
  row.abs_error = std::abs(row.composed - row.exact);
  return row;
}

template <typename Scalar>
struct ViolationWitness {
  Scalar theta;             // = vartheta, where a * theta = pi/4
  Scalar p_theta;           // 1/2
  Scalar classical;         // p^2 + (1 - p)^2 = 1/2
  Scalar required;          // p(2 theta) = 0
  Scalar interference;      // -1/2
  Scalar gap;               // classical - required
  Scalar classical_infimum; // min over p in [0,1] of p^2 + (1 - p)^2
  Scalar infimum_at;
};

/// At a*theta = a*vartheta = pi/4 the two intermediate answers are equally
/// likely, so the classical rule cannot produce less than 1/2, while
/// theta + vartheta is the fully inverted interpretation with p = 0.
/// p^2 + (1-p)^2 = 1/2 + 2 (p - 1/2)^2 has its minimum 1/2 at p = 1/2.
template <typename Scalar>
ViolationWitness<Scalar> classical_violation_witness(const CoherenceModel<Scalar>& model) {
  if (model.a == Scalar(0))
    throw std::domain_error("a = 0 makes every interpretation identical; no violation exists");
  ViolationWitness<Scalar> w{};
  w.theta = std::numbers::pi_v<Scalar> / (Scalar(4) * model.a);
  w.p_theta = p(model, w.theta).value();
  w.classical = classical_compose(w.p_theta, w.p_theta);
  w.required = p(model, Scalar(2) * w.theta).value();
  w.interference = interference_term(model, w.theta, w.theta);
  w.gap = w.classical - w.required;
  w.classical_infimum = Scalar(0.5);
  w.infimum_at = Scalar(0.5);
  return w;
}

/// Phase function f with p(theta) = cos^2 f(theta).
template <typename Scalar>
using PhaseFunction = std::function<Scalar(Scalar)>;

template <typename Scalar>
struct ConstraintCheck {
  Scalar inverse_max_error = 0;  // max over grid |total(theta, -theta) - 1|
  Scalar inverted_error = 0;     // |total(t*, t*) - 0| at a t* = pi/4
  bool inverse_passes = false;
  bool inverted_passes = false;
  bool passes() const noexcept { return inverse_passes && inverted_passes; }
};

/// Checks a candidate phase function against the two cases the
/// composition law must reproduce: returning to the start (vartheta =
/// -theta, total 1) and two quarter-turns landing on the inverted
/// interpretation (a theta = a vartheta = pi/4, total 0).
template <typename Scalar>
ConstraintCheck<Scalar> check_phase_constraints(const CoherenceModel<Scalar>& model, const PhaseFunction<Scalar>& f,
                                                std::span<const Scalar> theta_grid) {
  if (theta_grid.empty()) throw std::invalid_argument("constraint grid is empty");
  if (model.a == Scalar(0)) throw std::domain_error("a = 0 has no quarter-turn point");
  auto total = [&](Scalar t, Scalar v) {
    const Scalar ct = std::cos(f(t)), cv = std::cos(f(v));
    return classical_compose(ct * ct, cv * cv) + interference_term_for(f(t), f(v));
  };
  ConstraintCheck<Scalar> out;
  for (Scalar t : theta_grid) out.inverse_max_error = std::max(out.inverse_max_error, std::abs(total(t, -t) - 1));
  const Scalar quarter = std::numbers::pi_v<Scalar> / (Scalar(4) * model.a);
  out.inverted_error = std::abs(total(quarter, quarter));
  out.inverse_passes = out.inverse_max_error < kGridTolerance<Scalar>;
  out.inverted_passes = out.inverted_error < kGridTolerance<Scalar>;
  return out;
}

template <typename Scalar>
struct LinearPhaseReport {
  Scalar deviation_epsilon;
  ConstraintCheck<Scalar> linear;     // f = a theta
  ConstraintCheck<Scalar> deviation;  // f = a theta + eps theta^2
  bool linear_passes() const noexcept { return linear.passes(); }
  bool deviation_fails() const noexcept { return !deviation.passes(); }
};

template <typename Scalar>
LinearPhaseReport<Scalar> verify_f_linear(const CoherenceModel<Scalar>& model, std::span<const Scalar> theta_grid,
                                          Scalar epsilon = Scalar(0.1)) {
  if (epsilon == Scalar(0)) throw std::invalid_argument("deviation epsilon must be nonzero");
  const Scalar a = model.a;
  const PhaseFunction<Scalar> linear = [a](Scalar t) { return a * t; };
  const PhaseFunction<Scalar> deviated = [a, epsilon](Scalar t) { return a * t + epsilon * t * t; };
  return {epsilon, check_phase_constraints(model, linear, theta_grid),
          check_phase_constraints(model, deviated, theta_grid)};
}

/// `steps + 1` evenly spaced points on [lo, hi].
template <typename Scalar>
std::vector<Scalar> linspace(Scalar lo, Scalar hi, std::size_t steps) {
  if (steps == 0) return {lo};
  std::vector<Scalar> out(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) out[i] = lo + (hi - lo) * Scalar(i) / Scalar(steps);
  out.back() = hi;
  return out;
}

}  // namespace coherence_lab::probability

// Statement matrices on a periodic lattice of L sites.
//
// A momentum statement of mode k is the circulant projector
//
//   M(q', q) = exp(2 pi i k (q' - q) / L) / L,
//
// i.e. the outer product of the plane wave psi_k(q) = exp(2 pi i k q / L)
// with itself, divided by L. A position statement at site q0 is
// K e_{q0} e_{q0}^T. Sums over sites take the place of integrals over q.
#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace coherence_lab::lattice {

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
struct LatticeConfig {
  std::size_t sites;
  Scalar weight = Scalar(1);  // K

  LatticeConfig(std::size_t L, Scalar K = Scalar(1)) : sites(L), weight(K) {
    if (L < 2) throw std::invalid_argument("lattice needs at least 2 sites, got " + std::to_string(L));
    if (!(K > Scalar(0))) throw std::invalid_argument("position weight K must be positive");
  }

  friend bool operator==(const LatticeConfig&, const LatticeConfig&) = default;
};

template <typename Scalar = double>
struct MomentumStatement {
  LatticeConfig<Scalar> config;
  std::size_t mode;
  ComplexMatrix<Scalar> matrix;
};

template <typename Scalar = double>
struct PositionStatement {
  LatticeConfig<Scalar> config;
  std::size_t site;
  ComplexMatrix<Scalar> matrix;
};

namespace detail {

inline std::size_t wrap(long long value, std::size_t L) {
  const long long m = static_cast<long long>(L);
  return static_cast<std::size_t>(((value % m) + m) % m);
}

/// exp(2 pi i m / L), m reduced mod L first so large products lose no accuracy.
template <typename Scalar>
std::complex<Scalar> root_of_unity(long long m, std::size_t L) {
  const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(wrap(m, L)) / Scalar(L);
  return std::polar(Scalar(1), angle);
}

template <typename Scalar>
void require_same(const LatticeConfig<Scalar>& a, const LatticeConfig<Scalar>& b) {
  if (!(a == b)) throw std::invalid_argument("statements built on different lattice configurations");
}

/// out(q', q) = in(q' + shift, q + shift), indices mod L.
template <typename Scalar>
ComplexMatrix<Scalar> relabel(const ComplexMatrix<Scalar>& in, long long shift) {
  const std::size_t L = static_cast<std::size_t>(in.rows());
  ComplexMatrix<Scalar> out(in.rows(), in.cols());
  for (std::size_t c = 0; c < L; ++c)
    for (std::size_t r = 0; r < L; ++r)
      out(r, c) = in(wrap(static_cast<long long>(r) + shift, L), wrap(static_cast<long long>(c) + shift, L));
  return out;
}

}  // namespace detail

/// psi_k(q) = exp(2 pi i k q / L), unnormalized.
template <typename Scalar = double>
ComplexVector<Scalar> mode_vector(std::size_t L, std::size_t k) {
  ComplexVector<Scalar> psi(static_cast<Eigen::Index>(L));
  for (std::size_t q = 0; q < L; ++q)
    psi(static_cast<Eigen::Index>(q)) =
        detail::root_of_unity<Scalar>(static_cast<long long>(k) * static_cast<long long>(q), L);
  return psi;
}

/// e_q
template <typename Scalar = double>
ComplexVector<Scalar> site_vector(std::size_t L, std::size_t q) {
  ComplexVector<Scalar> e = ComplexVector<Scalar>::Zero(static_cast<Eigen::Index>(L));
  e(static_cast<Eigen::Index>(q)) = Scalar(1);
  return e;
}

template <typename Scalar>
MomentumStatement<Scalar> build_momentum_statement(const LatticeConfig<Scalar>& config, std::size_t k) {
  const std::size_t L = config.sites;
  if (k >= L) throw std::out_of_range("mode " + std::to_string(k) + " outside 0.." + std::to_string(L - 1));
  const auto n = static_cast<Eigen::Index>(L);
  ComplexMatrix<Scalar> m(n, n);
  const Scalar inv_l = Scalar(1) / Scalar(L);
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index qp = 0; qp < n; ++qp)
      m(qp, q) = inv_l * detail::root_of_unity<Scalar>(static_cast<long long>(k) * (qp - q), L);
  return {config, k, std::move(m)};
}

template <typename Scalar>
PositionStatement<Scalar> build_position_statement(const LatticeConfig<Scalar>& config, std::size_t q0) {
  const std::size_t L = config.sites;
  if (q0 >= L) throw std::out_of_range("site " + std::to_string(q0) + " outside 0.." + std::to_string(L - 1));
  const auto n = static_cast<Eigen::Index>(L);
  ComplexMatrix<Scalar> m = ComplexMatrix<Scalar>::Zero(n, n);
  m(static_cast<Eigen::Index>(q0), static_cast<Eigen::Index>(q0)) = config.weight;
  return {config, q0, std::move(m)};
}

/// Entrywise max |A(i, j)|.
template <typename Derived>
typename Derived::RealScalar max_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? typename Derived::RealScalar(0) : a.cwiseAbs().maxCoeff();
}

/// max |M M - M|: conjunction of a statement with itself is the statement.
template <typename Scalar>
Scalar verify_idempotent(const MomentumStatement<Scalar>& statement) {
  const auto& m = statement.matrix;
  ComplexMatrix<Scalar> square = m * m;
  return max_norm(square - m);
}

template <typename Scalar>
struct EigenvectorReport {
  Scalar fixed_deviation;      // max |M psi_k - psi_k|
  Scalar annihilated_deviation;  // max over j != k of max |M psi_j|
  Scalar max_deviation() const noexcept { return std::max(fixed_deviation, annihilated_deviation); }
};

template <typename Scalar>
EigenvectorReport<Scalar> eigenvector_check(const MomentumStatement<Scalar>& statement) {
  const std::size_t L = statement.config.sites;
  EigenvectorReport<Scalar> report{Scalar(0), Scalar(0)};
  for (std::size_t j = 0; j < L; ++j) {
    const ComplexVector<Scalar> psi = mode_vector<Scalar>(L, j);
    const ComplexVector<Scalar> image = statement.matrix * psi;
    if (j == statement.mode)
      report.fixed_deviation = max_norm(image - psi);
    else
      report.annihilated_deviation = std::max(report.annihilated_deviation, max_norm(image));
  }
  return report;
}

/// max |A B - B A| for any two square matrices of equal size.
template <typename DerivedA, typename DerivedB>
auto commutator_norm(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("commutator of mismatched matrices");
  return max_norm((a * b - b * a).eval());
}

/// With P = K e e^T the commutator is K (M e e^T - e e^T M): column q0 of M
/// and minus row q0 of M, cancelling on the diagonal. O(L) instead of O(L^3).
template <typename Scalar>
Scalar commutator_norm(const MomentumStatement<Scalar>& momentum, const PositionStatement<Scalar>& position) {
  detail::require_same(momentum.config, position.config);
  const auto& m = momentum.matrix;
  const auto q0 = static_cast<Eigen::Index>(position.site);
  Scalar worst(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i == q0) continue;
    worst = std::max({worst, std::abs(m(i, q0)), std::abs(m(q0, i))});
  }
  return position.config.weight * worst;
}

template <typename Scalar>
Scalar commutator_norm(const MomentumStatement<Scalar>& lhs, const MomentumStatement<Scalar>& rhs) {
  detail::require_same(lhs.config, rhs.config);
  return commutator_norm(lhs.matrix, rhs.matrix);
}

/// sum_{q, q'} A(q, q') B(q', q) = tr(A B), real part.
template <typename Scalar>
Scalar trace_product(const ComplexMatrix<Scalar>& a, const ComplexMatrix<Scalar>& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) throw std::invalid_argument("trace of mismatched product");
  std::complex<Scalar> sum(0);
  for (Eigen::Index q = 0; q < a.rows(); ++q)
    for (Eigen::Index qp = 0; qp < a.cols(); ++qp) sum += a(q, qp) * b(qp, q);
  return sum.real();
}

/// Probability that the momentum and position statements hold together: K / L.
template <typename Scalar>
Scalar joint_probability(const MomentumStatement<Scalar>& momentum, const PositionStatement<Scalar>& position) {
  detail::require_same(momentum.config, position.config);
  return trace_product(momentum.matrix, position.matrix);
}

/// Same quantity with the factors in the opposite order.
template <typename Scalar>
Scalar joint_probability(const PositionStatement<Scalar>& position, const MomentumStatement<Scalar>& momentum) {
  detail::require_same(momentum.config, position.config);
  return trace_product(position.matrix, momentum.matrix);
}

/// Relabels sites q -> q + shift (mod L). Circulant matrices come back unchanged.
template <typename Scalar>
MomentumStatement<Scalar> translate(const MomentumStatement<Scalar>& statement, long long shift) {
  return {statement.config, statement.mode, detail::relabel(statement.matrix, -shift)};
}

template <typename Scalar>
PositionStatement<Scalar> translate(const PositionStatement<Scalar>& statement, long long shift) {
  const std::size_t site = detail::wrap(static_cast<long long>(statement.site) + shift, statement.config.sites);
  return {statement.config, site, detail::relabel(statement.matrix, -shift)};
}

}  // namespace coherence_lab::lattice

#include "coherence_lab/lattice.hpp"

#include <gtest/gtest.h>

using namespace coherence_lab::lattice;
using cd = std::complex<double>;
using Matrix = ComplexMatrix<double>;

namespace {

constexpr double kTol = 1e-12;

Matrix hand_2x2(cd a, cd b, cd c, cd d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(LatticeConfigType, Validation) {
  EXPECT_THROW(LatticeConfig<double>(1), std::invalid_argument);
  EXPECT_THROW(LatticeConfig<double>(4, 0.0), std::invalid_argument);
  EXPECT_THROW(LatticeConfig<double>(4, -1.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(LatticeConfig<double>(4).weight, 1.0);
}

TEST(BuildMomentumStatement, ConstantPhaseForZeroMode) {
  const auto m = build_momentum_statement(LatticeConfig<double>(2), 0);
  EXPECT_LT(max_norm(m.matrix - hand_2x2(0.5, 0.5, 0.5, 0.5)), kTol);
}

TEST(BuildMomentumStatement, QuarterTurnPhases) {
  // M[q'][q] = i^((q'-q) mod 4) / 4
  const cd powers[] = {1.0, cd(0, 1), -1.0, cd(0, -1)};
  const auto m = build_momentum_statement(LatticeConfig<double>(4), 1);
  for (int qp = 0; qp < 4; ++qp)
    for (int q = 0; q < 4; ++q) EXPECT_LT(std::abs(m.matrix(qp, q) - powers[((qp - q) % 4 + 4) % 4] / 4.0), kTol);
}

TEST(BuildMomentumStatement, StructuralInvariants) {
  for (std::size_t L : {2u, 3u, 5u, 8u, 17u, 64u})
    for (std::size_t k = 0; k < L; ++k) {
      const auto m = build_momentum_statement(LatticeConfig<double>(L), k);
      EXPECT_NEAR(m.matrix.trace().real(), 1.0, kTol);
      EXPECT_NEAR(m.matrix.trace().imag(), 0.0, kTol);
      EXPECT_LT(max_norm(m.matrix - m.matrix.adjoint()), kTol);
      // Circulant: every entry depends only on (q' - q) mod L.
      for (std::size_t qp = 0; qp < L; ++qp)
        for (std::size_t q = 0; q < L; ++q)
          ASSERT_LT(std::abs(m.matrix(qp, q) - m.matrix((qp - q + L) % L, 0)), kTol);
      if (L <= 17) {
        Eigen::FullPivLU<Matrix> lu(m.matrix);
        lu.setThreshold(1e-9);
        EXPECT_EQ(lu.rank(), 1);
      }
    }
}

TEST(BuildMomentumStatement, ModeOutOfRange) {
  EXPECT_THROW(build_momentum_statement(LatticeConfig<double>(4), 4), std::out_of_range);
}

TEST(VerifyIdempotent, UniformProjectorIsExact) {
  EXPECT_EQ(verify_idempotent(build_momentum_statement(LatticeConfig<double>(2), 0)), 0.0);
}

TEST(VerifyIdempotent, SweepSmallLattices) {
  EXPECT_LT(verify_idempotent(build_momentum_statement(LatticeConfig<double>(8), 3)), 1e-10);
  for (std::size_t k = 0; k < 16; ++k)
    EXPECT_LT(verify_idempotent(build_momentum_statement(LatticeConfig<double>(16), k)), 1e-10);
}

TEST(VerifyIdempotent, SumOverSitesMatchesConvolution) {
  // Independent route: sum_s M(q'-s) M(s-q) evaluated from the closed form.
  const std::size_t L = 12, k = 5;
  const auto m = build_momentum_statement(LatticeConfig<double>(L), k);
  const double two_pi = 2 * std::numbers::pi;
  auto closed = [&](long d) { return std::polar(1.0 / L, two_pi * k * d / L); };
  for (long qp = 0; qp < static_cast<long>(L); ++qp)
    for (long q = 0; q < static_cast<long>(L); ++q) {
      cd sum = 0;
      for (long s = 0; s < static_cast<long>(L); ++s) sum += closed(qp - s) * closed(s - q);
      EXPECT_LT(std::abs(sum - m.matrix(qp, q)), kTol);
    }
}

TEST(EigenvectorCheck, TwoSiteUniform) {
  const auto m = build_momentum_statement(LatticeConfig<double>(2), 0);
  ComplexVector<double> plus(2), minus(2);
  plus << 1.0, 1.0;
  minus << 1.0, -1.0;
  EXPECT_LT(max_norm(m.matrix * plus - plus), kTol);
  EXPECT_LT(max_norm(m.matrix * minus), kTol);
  EXPECT_LT(eigenvector_check(m).max_deviation(), kTol);
}

TEST(EigenvectorCheck, ModeIsFixedOthersAnnihilated) {
  const auto m = build_momentum_statement(LatticeConfig<double>(4), 1);
  const auto report = eigenvector_check(m);
  EXPECT_LT(report.fixed_deviation, 1e-10);
  EXPECT_LT(report.annihilated_deviation, 1e-10);
  for (std::size_t L : {8u, 31u})
    for (std::size_t k = 0; k < L; ++k)
      EXPECT_LT(eigenvector_check(build_momentum_statement(LatticeConfig<double>(L), k)).max_deviation(), 1e-10);
}

TEST(ModeVector, Orthogonality) {
  const std::size_t L = 8;
  for (std::size_t j = 0; j < L; ++j)
    for (std::size_t k = 0; k < L; ++k) {
      const cd inner = mode_vector(L, j).dot(mode_vector(L, k));  // conjugates the left factor
      EXPECT_LT(std::abs(inner - (j == k ? cd(L) : cd(0))), 1e-12);
    }
}

TEST(BuildPositionStatement, TwoSite) {
  const auto p = build_position_statement(LatticeConfig<double>(2, 1.0), 0);
  EXPECT_LT(max_norm(p.matrix - hand_2x2(1, 0, 0, 0)), kTol);
}

TEST(BuildPositionStatement, EigenStructure) {
  const LatticeConfig<double> config(8, 2.5);
  const auto p = build_position_statement(config, 3);
  EXPECT_LT(max_norm(p.matrix * site_vector(8, 3) - 2.5 * site_vector(8, 3)), kTol);
  for (std::size_t q = 0; q < 8; ++q)
    if (q != 3) EXPECT_LT(max_norm(p.matrix * site_vector(8, q)), kTol);
  EXPECT_DOUBLE_EQ(p.matrix.trace().real(), 2.5);
  EXPECT_THROW(build_position_statement(config, 8), std::out_of_range);
}

TEST(CommutatorNorm, TwoByTwoHandComputation) {
  // M = [[1/2, 1/2], [1/2, 1/2]], P = diag(1, 0)
  // MP = [[1/2, 0], [1/2, 0]], PM = [[1/2, 1/2], [0, 0]], MP - PM = [[0, -1/2], [1/2, 0]]
  const Matrix m = hand_2x2(0.5, 0.5, 0.5, 0.5);
  const Matrix p = hand_2x2(1, 0, 0, 0);
  const Matrix expected = hand_2x2(0, -0.5, 0.5, 0);
  EXPECT_LT(max_norm((m * p - p * m) - expected), kTol);

  const LatticeConfig<double> config(2, 1.0);
  const auto lm = build_momentum_statement(config, 0);
  const auto lp = build_position_statement(config, 0);
  EXPECT_NEAR(commutator_norm(lm, lp), max_norm(expected), kTol);
  EXPECT_NEAR(commutator_norm(lm, lp), 0.5, kTol);
}

TEST(CommutatorNorm, StructuredPathMatchesFullProduct) {
  for (std::size_t L : {2u, 5u, 8u, 13u})
    for (double K : {0.5, 1.0, 2.0}) {
      const LatticeConfig<double> config(L, K);
      for (std::size_t k = 0; k < L; ++k)
        for (std::size_t q0 = 0; q0 < L; ++q0) {
          const auto m = build_momentum_statement(config, k);
          const auto p = build_position_statement(config, q0);
          EXPECT_NEAR(commutator_norm(m, p), commutator_norm(m.matrix, p.matrix), kTol);
        }
    }
}

TEST(CommutatorNorm, PositiveForAllPairs) {
  const LatticeConfig<double> config(8, 1.0);
  for (std::size_t k = 0; k < 8; ++k)
    for (std::size_t q0 = 0; q0 < 8; ++q0) {
      const double norm =
          commutator_norm(build_momentum_statement(config, k), build_position_statement(config, q0));
      EXPECT_GT(norm, 1e-6);
      // Every off-diagonal entry of M has modulus 1/L.
      EXPECT_NEAR(norm, 1.0 / 8, kTol);
    }
}

TEST(CommutatorNorm, SelfCommutatorVanishes) {
  const LatticeConfig<double> config(8);
  const auto m = build_momentum_statement(config, 3);
  EXPECT_EQ(commutator_norm(m, m), 0.0);
  EXPECT_LT(commutator_norm(m, build_momentum_statement(config, 5)), kTol);
}

TEST(CommutatorNorm, ConfigMismatch) {
  EXPECT_THROW(commutator_norm(build_momentum_statement(LatticeConfig<double>(4), 0),
                               build_position_statement(LatticeConfig<double>(4, 2.0), 0)),
               std::invalid_argument);
  EXPECT_THROW(commutator_norm(build_momentum_statement(LatticeConfig<double>(4), 0),
                               build_position_statement(LatticeConfig<double>(5), 0)),
               std::invalid_argument);
}

TEST(JointProbability, TwoSites) {
  const LatticeConfig<double> config(2, 1.0);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t q0 = 0; q0 < 2; ++q0)
      EXPECT_NEAR(joint_probability(build_momentum_statement(config, k), build_position_statement(config, q0)), 0.5,
                  kTol);
}

TEST(JointProbability, AllPairsSixteenSites) {
  const LatticeConfig<double> config(16, 1.0);
  for (std::size_t k = 0; k < 16; ++k)
    for (std::size_t q0 = 0; q0 < 16; ++q0) {
      const auto m = build_momentum_statement(config, k);
      const auto p = build_position_statement(config, q0);
      EXPECT_NEAR(joint_probability(m, p), 1.0 / 16, kTol);
      EXPECT_NEAR(joint_probability(p, m), joint_probability(m, p), kTol);
      EXPECT_NEAR(joint_probability(m, p), (m.matrix * p.matrix).trace().real(), kTol);
    }
}

TEST(JointProbability, ConfigMismatch) {
  EXPECT_THROW(joint_probability(build_momentum_statement(LatticeConfig<double>(4), 0),
                                 build_position_statement(LatticeConfig<double>(8), 0)),
               std::invalid_argument);
}

TEST(Translate, MomentumStatementIsInvariant) {
  const LatticeConfig<double> config(8);
  for (std::size_t k = 0; k < 8; ++k) {
    const auto m = build_momentum_statement(config, k);
    for (long long shift : {-9LL, -1LL, 0LL, 1LL, 5LL, 8LL, 13LL}) {
      const auto moved = translate(m, shift);
      EXPECT_LT(max_norm(moved.matrix - m.matrix), kTol);
      EXPECT_EQ(moved.mode, k);
    }
  }
}

TEST(Translate, PositionStatementMovesSite) {
  const LatticeConfig<double> config(8, 2.0);
  const auto p = build_position_statement(config, 6);
  EXPECT_EQ(translate(p, 0).matrix, p.matrix);
  const auto moved = translate(p, 3);
  EXPECT_EQ(moved.site, 1u);
  EXPECT_LT(max_norm(moved.matrix - build_position_statement(config, 1).matrix), kTol);
  EXPECT_EQ(translate(p, -7).site, 7u);
}

TEST(Translate, JointProbabilityInvariant) {
  const LatticeConfig<double> config(8, 1.0);
  for (std::size_t k = 0; k < 8; ++k)
    for (std::size_t q0 = 0; q0 < 8; ++q0) {
      const auto m = build_momentum_statement(config, k);
      const auto p = build_position_statement(config, q0);
      const double base = joint_probability(m, p);
      for (long long shift = 1; shift < 8; ++shift) {
        EXPECT_NEAR(joint_probability(m, translate(p, shift)), base, kTol);
        EXPECT_NEAR(joint_probability(translate(m, shift), translate(p, shift)), base, kTol);
      }
    }
}

TEST(Translate, PositionStatementsAreNotTranslationInvariant) {
  const auto p = build_position_statement(LatticeConfig<double>(8), 2);
  EXPECT_GT(max_norm(translate(p, 1).matrix - p.matrix), 0.5);
}

TEST(ScalarTemplate, LongDoubleLattice) {
  const LatticeConfig<long double> config(16, 1.0L);
  for (std::size_t k = 0; k < 16; ++k) {
    const auto m = build_momentum_statement(config, k);
    EXPECT_LT(static_cast<double>(verify_idempotent(m)), 1e-15);
    EXPECT_NEAR(static_cast<double>(joint_probability(m, build_position_statement(config, k))), 1.0 / 16, 1e-15);
  }
}

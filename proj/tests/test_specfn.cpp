#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dqho/specfn.hpp"
#include "dqho/states.hpp"
#include "oracles.hpp"

using namespace dqho;
using namespace dqho::specfn;

namespace {

double sgn_pow(int k) { return (k % 2) ? -1.0 : 1.0; }

// Max over the grid of |alpha^n_{n1,s} - sqrt(dxi) psi_n(xi(n1))|, oracle side
// evaluated by the explicit Hermite power sum.
double hermite_limit_deviation(int n, int s) {
  const double step = std::sqrt(2.0 / s);
  double worst = 0.0;
  for (int n1 = 0; n1 <= s; ++n1) {
    const double xi = (2.0 * n1 - s) / std::sqrt(2.0 * s);
    worst = std::max(worst, std::abs(kravchuk_wavefunction(n, n1, s) - std::sqrt(step) * oracle::hermite_function(n, xi)));
  }
  return worst;
}

}  // namespace

TEST(Hyp2f1, Examples) {
  EXPECT_EQ(hyp2f1_terminating(0, 5, 7, Rational(2)), Rational(1));
  for (int s = 0; s <= 10; ++s)
    for (int n1 = 0; n1 <= s; ++n1) EXPECT_EQ(hyp2f1_terminating(s, n1, s, Rational(2)), Rational(n1 % 2 ? -1 : 1));
  EXPECT_EQ(hyp2f1_terminating(1, 1, 2, Rational(2)), Rational(0));
}

TEST(Hyp2f1, AgainstDirectSum) {
  for (int N = 1; N <= 8; ++N)
    for (int n = 0; n <= N; ++n)
      for (int x = 0; x <= N; ++x) {
        const Rational z = make_rational(3, 2);
        Rational sum = 0, poch = 1;
        for (int k = 0; k <= n; ++k) {
          if (k > 0) poch *= Rational((k - 1 - n) * (k - 1 - x)) / Rational((k - 1 - N) * k);
          Rational zk = 1;
          for (int i = 0; i < k; ++i) zk *= z;
          sum += poch * zk;
        }
        EXPECT_EQ(hyp2f1_terminating(n, x, N, z), sum) << n << "," << x << "," << N;
      }
}

TEST(Hyp2f1, Errors) {
  EXPECT_THROW(hyp2f1_terminating(3, 1, 2, Rational(2)), pole_error);
  EXPECT_THROW(hyp2f1_terminating(-1, 1, 2, Rational(2)), domain_error);
}

TEST(Kravchuk, Examples) {
  const Rational half = make_rational(1, 2);
  for (int N = 1; N <= 6; ++N)
    for (int x = 0; x <= N; ++x) {
      EXPECT_EQ(kravchuk_polynomial(0, x, half, N), Rational(1));
      EXPECT_EQ(kravchuk_polynomial(1, x, half, N), Rational(x) - make_rational(N, 2));
    }
}

TEST(Kravchuk, ReflectionSymmetryAtHalf) {
  const Rational half = make_rational(1, 2);
  for (int N = 0; N <= 12; ++N)
    for (int n = 0; n <= N; ++n)
      for (int x = 0; x <= N; ++x) {
        const Rational a = kravchuk_polynomial(n, N - x, half, N);
        const Rational b = kravchuk_polynomial(n, x, half, N);
        EXPECT_EQ(a, n % 2 ? Rational(-b) : b);
      }
}

TEST(Kravchuk, DomainErrors) {
  EXPECT_THROW(kravchuk_polynomial(3, 0, make_rational(1, 2), 2), domain_error);
  EXPECT_THROW(kravchuk_polynomial(1, 0, Rational(1), 2), domain_error);
  EXPECT_THROW(kravchuk_wavefunction(0, 5, 4), domain_error);
  EXPECT_THROW(kravchuk_wavefunction(-1, 0, 4), domain_error);
}

TEST(KravchukWavefunction, Examples) {
  for (int s : {0, 1, 5, 12}) {
    for (int n1 = 0; n1 <= s; ++n1) {
      const double ground = std::pow(2.0, -0.5 * s) * std::sqrt(oracle::binomial(s, n1));
      EXPECT_NEAR(kravchuk_wavefunction(0, n1, s), ground, 1e-15);
      EXPECT_NEAR(kravchuk_wavefunction(s, n1, s), sgn_pow(s) * sgn_pow(n1) * ground, 1e-15);
    }
  }
}

TEST(KravchukWavefunction, OrthonormalUpTo60) {
  for (int s : {1, 7, 30, 60}) {
    Eigen::MatrixXd k(s + 1, s + 1);
    for (int n = 0; n <= s; ++n)
      for (int n1 = 0; n1 <= s; ++n1) k(n1, n) = kravchuk_wavefunction(n, n1, s);
    EXPECT_LT((k.transpose() * k - Eigen::MatrixXd::Identity(s + 1, s + 1)).cwiseAbs().maxCoeff(), 1e-12) << s;
  }
}

TEST(KravchukWavefunction, FloatingBranchAgreesNearTheLimit) {
  // s = 61 takes the log-gamma path; compare against the eigenvectors of H.
  const int s = 61;
  const Eigen::MatrixXd w = wavefunction_matrix(s);
  double worst = 0.0;
  for (int n : {0, 1, 2, 5}) {
    for (int n1 = 0; n1 <= s; ++n1) worst = std::max(worst, std::abs(kravchuk_wavefunction(n, n1, s) - w(n1, n)));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Wigner, Examples) {
  EXPECT_DOUBLE_EQ(wigner_little_d_halfpi(0, 0, 0), 1.0);
  EXPECT_DOUBLE_EQ(wigner_little_d_halfpi(2, 0, 0), 0.0);
  EXPECT_THROW(wigner_little_d_halfpi(2, 1, 0), domain_error);
  EXPECT_THROW(wigner_little_d_halfpi(2, 4, 0), domain_error);
}

TEST(Wigner, MatchesKravchukUpTo20) {
  for (int s = 0; s <= 20; ++s)
    for (int n = 0; n <= s; ++n)
      for (int n1 = 0; n1 <= s; ++n1)
        EXPECT_EQ(wigner_little_d_halfpi(s, s - 2 * n, 2 * n1 - s), kravchuk_wavefunction(n, n1, s));
}

TEST(Wigner, AgreesWithExplicitRotationSum) {
  // The Kravchuk route equals (-1)^n d^{s/2}_{m',m}(pi/2) in the explicit-sum
  // convention, where m = s/2 - n and m' = n1 - s/2.
  double worst = 0.0;
  for (int s = 0; s <= 16; ++s)
    for (int m2 = -s; m2 <= s; m2 += 2)
      for (int mp2 = -s; mp2 <= s; mp2 += 2) {
        const int n = (s - m2) / 2;
        const double ours = wigner_little_d_halfpi(s, m2, mp2);
        worst = std::max(worst, std::abs(ours - sgn_pow(n) * oracle::wigner_d(s, mp2, m2, std::numbers::pi / 2)));
        EXPECT_NEAR(std::abs(ours), std::abs(oracle::wigner_d(s, m2, mp2, std::numbers::pi / 2)), 1e-12);
      }
  EXPECT_LT(worst, 1e-12);
}

TEST(Hermite, Examples) {
  EXPECT_DOUBLE_EQ(hermite_function(0, 0.0), std::pow(std::numbers::pi, -0.25));
  EXPECT_DOUBLE_EQ(hermite_function(1, 0.0), 0.0);
  EXPECT_THROW(hermite_function(21, 0.0), domain_error);
  EXPECT_THROW(hermite_function(-1, 0.0), domain_error);
}

TEST(Hermite, MatchesExplicitPolynomial) {
  for (int n = 0; n <= kHermiteMaxOrder; ++n)
    for (double xi = -6.0; xi <= 6.0; xi += 0.37)
      EXPECT_NEAR(hermite_function(n, xi), oracle::hermite_function(n, xi), 1e-9 * (1 + std::abs(oracle::hermite_function(n, xi))))
          << n << " " << xi;
}

TEST(Hermite, OrthonormalByQuadrature) {
  const double h = 1e-3;
  for (int m : {0, 1, 4, 10}) {
    for (int n : {0, 1, 4, 10}) {
      double sum = 0.0;
      for (int i = -12000; i <= 12000; ++i) {
        const double xi = i * h;
        const double w = (i == -12000 || i == 12000) ? 0.5 : 1.0;
        sum += w * hermite_function(m, xi) * hermite_function(n, xi);
      }
      EXPECT_NEAR(sum * h, m == n ? 1.0 : 0.0, 1e-8) << m << "," << n;
    }
  }
}

TEST(Hermite, GridHelpers) {
  EXPECT_DOUBLE_EQ(hermite_grid_xi(5, 10), 0.0);
  EXPECT_DOUBLE_EQ(hermite_grid_xi(10, 10), 10.0 / std::sqrt(20.0));
  EXPECT_DOUBLE_EQ(hermite_grid_step(8), 0.5);
}

TEST(HermiteLimit, LowOrdersConvergeAtS400) {
  for (int n : {0, 1, 2}) EXPECT_LE(hermite_limit_deviation(n, 400), 0.01) << n;
}

TEST(HermiteLimit, DeviationShrinksWithResolution) {
  EXPECT_LT(hermite_limit_deviation(1, 400), hermite_limit_deviation(1, 100));
  EXPECT_LT(hermite_limit_deviation(1, 100), hermite_limit_deviation(1, 25));
}

TEST(HermiteLimit, MidSpectrumStateDoesNotConverge) {
  EXPECT_GT(hermite_limit_deviation(20, 40), 0.01);
}

TEST(DoubleFactorial, Examples) {
  EXPECT_EQ(double_factorial(0), Integer(1));
  EXPECT_EQ(double_factorial(1), Integer(1));
  EXPECT_EQ(double_factorial(4), Integer(8));
  EXPECT_EQ(double_factorial(10), Integer(3840));
  EXPECT_EQ(double_factorial(9), Integer(945));
  for (int s = 0; s <= 40; ++s) EXPECT_EQ(double_factorial(2 * s), (Integer(1) << s) * factorial(s));
  EXPECT_THROW(double_factorial(-2), domain_error);
}

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpl/apps.hpp"

using namespace qpl;
using oracle::Gen;

namespace {

ValueVector on_uniform(std::vector<double> f) {
  const std::size_t n = f.size();
  return ValueVector(uniform_space("X", n, 1.0 / double(n)), std::move(f));
}

Distribution counting(std::vector<double> phi) {
  const std::size_t n = phi.size();
  return Distribution(uniform_space("I", n, 1.0, "i"), std::move(phi));
}

Distribution random_unitary(Gen& g, std::size_t n) {
  std::vector<double> m(n);
  double s = 0;
  for (double& x : m) s += x = g.uniform(0.05, 1.0);
  for (double& x : m) x /= s;
  return counting(m);
}

}  // namespace

TEST(Softmax, Examples) {
  EXPECT_EQ(softmax_p(on_uniform({1, 1}), 1).values(), (std::vector<double>{1, 1}));
  EXPECT_EQ(softmax_p(on_uniform({1, 3}), 1).values(), (std::vector<double>{0.5, 1.5}));
  EXPECT_EQ(softmax_p(on_uniform({1, 3}), kInf).values(), (std::vector<double>{1.0 / 3, 1}));
  try {
    softmax_p(on_uniform({0, 0}), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroPredicate);
  }
  EXPECT_THROW(softmax_p(on_uniform({1, 2}), 0), Error);
}

TEST(Softmax, NormalizesCountingSpaces) {
  const ValueVector f(make_space({"a", "b"}, {1, 1}), {1, 3});
  const auto s = softmax_p(f, 1);
  EXPECT_TRUE(s.space().is_probability());
  EXPECT_EQ(s.values(), (std::vector<double>{0.5, 1.5}));
}

TEST(Softmax, DirectGibbsFormulaAndFormulaPath) {
  Gen g(61);
  for (int t = 0; t < 200; ++t) {
    const auto X = g.space("X", 1 + g.index(8), true);
    const ValueVector f(X, g.positives(X.size()));
    // f(y) / integral f, in long double
    long double z = 0;
    for (std::size_t i = 0; i < X.size(); ++i) z += (long double)X.weight(i) * f[i];
    const auto s1 = softmax_p(f, 1);
    long double integral = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      EXPECT_TRUE(oracle::close_rel(s1[i], double(f[i] / z), 1e-12));
      integral += (long double)X.weight(i) * s1[i];
    }
    EXPECT_NEAR(double(integral), 1.0, 1e-12);
    for (double p : {0.5, 1.0, 2.0, 7.0}) {
      const auto direct = softmax_p(f, p);
      const auto formula = softmax_p_formula(f, p);
      for (std::size_t i = 0; i < X.size(); ++i) EXPECT_TRUE(oracle::close_rel(direct[i], formula[i], 1e-9));
    }
  }
}

TEST(Softmax, ScaleInvariance) {
  Gen g(63);
  for (int t = 0; t < 200; ++t) {
    const auto X = g.space("X", 1 + g.index(8), true);
    auto v = g.positives(X.size());
    if (g.coin()) v[g.index(v.size())] = v[g.index(v.size())];  // ties
    const double c = g.log_uniform();
    auto cv = v;
    for (double& x : cv) x = detail::mul_tensor(c, x);
    EXPECT_EQ(argmax(ValueVector(X, v)), argmax(ValueVector(X, cv)));
    const auto a = softmax_p(ValueVector(X, v), 2), b = softmax_p(ValueVector(X, cv), 2);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_TRUE(oracle::close_rel(a[i], b[i], 1e-12));
  }
}

TEST(Argmax, Examples) {
  EXPECT_EQ(argmax(on_uniform({1, 3, 3})), (std::vector<bool>{false, true, true}));
  EXPECT_EQ(argmax(on_uniform({2, 2, 2})), (std::vector<bool>{true, true, true}));
  EXPECT_EQ(argmax(on_uniform({0, kInf, 1})), (std::vector<bool>{false, true, false}));
}

TEST(Argmax, MatchesBruteForce) {
  Gen g(67);
  for (int t = 0; t < 500; ++t) {
    const auto X = g.space("X", 1 + g.index(64), true);
    std::vector<double> f(X.size());
    for (double& x : f) x = g.coin(0.3) ? double(g.index(4)) : g.log_uniform();
    if (std::all_of(f.begin(), f.end(), [](double x) { return x == 0; })) f[0] = 1;
    EXPECT_EQ(argmax(ValueVector(X, f)), oracle::argmax_scan(X.weights(), f));
  }
}

TEST(LogLikelihood, Examples) {
  const auto U = uniform_space("X", 2, 0.5);
  EXPECT_EQ(log_likelihood(EnergyFunction(U, {0, 0})), (std::vector<double>{0, 0}));
  const auto L = log_likelihood(EnergyFunction(U, {0, kInf}));
  EXPECT_DOUBLE_EQ(L[0], -std::log(2.0));
  EXPECT_EQ(L[1], kInf);
  EXPECT_THROW(EnergyFunction(U, {0, -kInf}), Error);
}

TEST(LogLikelihood, FormulaPathMatchesMinusLogSoftmax) {
  Gen g(71);
  for (int t = 0; t < 200; ++t) {
    const auto X = g.space("X", 1 + g.index(8), g.coin());
    std::vector<double> u(X.size());
    for (double& x : u) x = g.uniform(-20, 20);
    const EnergyFunction e(X, u);
    const auto a = log_likelihood(e), b = log_likelihood_direct(e);
    // u(y) + log integral e^-u over the normalized space, in long double
    const auto P = normalize(X);
    long double z = 0;
    for (std::size_t i = 0; i < u.size(); ++i) z += (long double)P.weight(i) * std::exp(-(long double)u[i]);
    for (std::size_t i = 0; i < u.size(); ++i) {
      EXPECT_TRUE(oracle::close(a[i], b[i], 1e-9));
      EXPECT_TRUE(oracle::close(a[i], double(u[i] + std::log(z)), 1e-9));
    }
  }
}

TEST(Entropy, UniformAndDegenerate) {
  for (double p : {0.0, 0.5, 1.0, 2.0, 5.0, kInf}) {
    EXPECT_NEAR(renyi_entropy(counting({0.5, 0.5}), p), std::log(2.0), 1e-12) << p;
    EXPECT_NEAR(hill_diversity(counting({0.25, 0.25, 0.25, 0.25}), p), 4.0, 1e-12) << p;
    EXPECT_EQ(renyi_entropy(counting({1, 0}), p), 0.0) << p;
    EXPECT_EQ(hill_diversity(counting({1, 0}), p), 1.0) << p;
  }
  try {
    renyi_entropy(counting({0.5, 0.6}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
  EXPECT_THROW(renyi_entropy(counting({0.5, 0.5}), -1), Error);
}

TEST(Entropy, GeneralWeightsAgainstWhichPhiIsUnitary) {
  // phi = (1, 1) on a probability space is unitary and uniform
  const Distribution d(uniform_space("I", 2, 0.5), {1, 1});
  for (double p : {0.5, 2.0}) EXPECT_NEAR(renyi_entropy(d, p), 0.0, 1e-12);
}

TEST(Entropy, ShannonLimitMonotonicityAndHill) {
  Gen g(73);
  for (int t = 0; t < 200; ++t) {
    const auto phi = random_unitary(g, 2 + g.index(7));
    if (!phi.is_unitary()) continue;
    const double h1 = shannon_entropy(phi);
    EXPECT_NEAR(renyi_entropy(phi, 1 - 1e-4), h1, 1e-3);
    EXPECT_NEAR(renyi_entropy(phi, 1 + 1e-4), h1, 1e-3);
    double prev = kInf;
    for (double p : {0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 20.0, kInf}) {
      const double h = renyi_entropy(phi, p);
      EXPECT_LE(h, prev + 1e-12) << p;
      prev = h;
      EXPECT_TRUE(oracle::close_rel(hill_diversity(phi, p), std::exp(h), 1e-9)) << p;
    }
  }
}

TEST(Entropy, FormulaPaths) {
  Gen g(79);
  for (int t = 0; t < 200; ++t) {
    const auto phi = random_unitary(g, 2 + g.index(7));
    if (!phi.is_unitary()) continue;
    for (double p : {0.5, 2.0, 5.0, kInf}) {
      EXPECT_TRUE(oracle::close(renyi_entropy_formula(phi, p), renyi_entropy(phi, p), 1e-9)) << p;
      EXPECT_TRUE(oracle::close_rel(hill_diversity_formula(phi, p), hill_diversity(phi, p), 1e-9)) << p;
    }
  }
  EXPECT_THROW(renyi_entropy_formula(counting({0.5, 0.5}), 1), Error);
  EXPECT_THROW(renyi_entropy_formula(counting({0.5, 0.5}), 0), Error);
}

TEST(Entropy, ScaleFactor) {
  EXPECT_EQ(entropy_scale(2), -2.0);
  EXPECT_EQ(entropy_scale(0.5), 1.0);
  EXPECT_EQ(entropy_scale(kInf), -1.0);
}

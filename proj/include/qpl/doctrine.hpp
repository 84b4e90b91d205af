#pragma once

// Numeric checks of the candidate entailment between predicates.
//
//   phi |-_I psi  :=  A^p (i in I). phi(i) -o psi(i)
//                 =   (integral phi^p / psi^p)^(-1/p)
//
// entails() is a diagnostic number, not an order: it is neither reflexive
// (phi |- phi = mass^(-1/p)) nor transitive. What does hold is the
// adjunction between E^p over K and reindexing along I x K -> I, and
// monotonicity under measure-non-increasing reindexing.
//
// Pushforward densities f_! are defined here as fiber sums divided by the
// target weight; they compose, but are neither lax nor colax monoidal.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qpl/error.hpp"
#include "qpl/extreal.hpp"
#include "qpl/mspace.hpp"
#include "qpl/quantmean.hpp"

namespace qpl {

enum class Verdict { holds, violated };

constexpr std::string_view to_string(Verdict v) { return v == Verdict::holds ? "holds" : "violated"; }

struct EntailmentReport {
  std::string law;
  double value = 0.0;  // the entailment value the law is about
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // signed; positive means the forbidden direction
  Verdict verdict = Verdict::holds;
  std::vector<std::vector<double>> witness;  // phi, psi, sigma when a search found one
};

namespace detail {

inline double relative_gap(double a, double b) {
  if (a == b) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return kInf;
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline void same_space(const ValueVector& a, const ValueVector& b) {
  if (!(a.space() == b.space())) throw Error(ErrorCode::DimensionMismatch, "predicates live on different spaces");
}

}  // namespace detail

/// (integral phi^p / psi^p)^(-1/p), p finite positive.
inline MulReal entails(const ValueVector& phi, const ValueVector& psi, double p) {
  detail::same_space(phi, psi);
  if (!(p > 0.0) || std::isinf(p)) throw Error(ErrorCode::InvalidP, "entailment needs a finite positive p");
  std::vector<double> ratio(phi.size());
  for (std::size_t i = 0; i < ratio.size(); ++i) ratio[i] = detail::mul_div(phi[i], psi[i]);
  return MulReal(p_mean_raw(SignedP::forall(p), phi.space().weights(), ratio));
}

/// phi |- phi against the closed form mass^(-1/p).
inline EntailmentReport reflexivity_check(const ValueVector& phi, double p) {
  EntailmentReport r;
  r.law = "reflexivity formula phi |- phi = mass^(-1/p)";
  r.value = entails(phi, phi, p).value();
  r.lhs = r.value;
  r.rhs = std::pow(phi.space().total_mass(), -1.0 / p);
  r.gap = detail::relative_gap(r.lhs, r.rhs);
  r.verdict = r.gap <= 1e-12 ? Verdict::holds : Verdict::violated;
  return r;
}

/**
 * (E^p over K of rho(i, -)) |-_I psi  versus  rho |-_{I x K} psi(pi_I -).
 * rho is row-major over I x K. Holds when the relative gap is at most 1e-9.
 */
inline EntailmentReport adjunction_check(const Space& I, const Space& K, const std::vector<double>& rho,
                                         const std::vector<double>& psi, double p) {
  if (rho.size() != I.size() * K.size() || psi.size() != I.size()) {
    throw Error(ErrorCode::DimensionMismatch, "rho must live on I x K and psi on I");
  }
  std::vector<double> exists_k(I.size());
  for (std::size_t i = 0; i < I.size(); ++i) {
    std::span<const double> row(rho.data() + i * K.size(), K.size());
    exists_k[i] = p_mean_raw(SignedP::exists(p), K.weights(), row);
  }
  const Space IK = product_space(I, K);
  std::vector<double> pulled(IK.size());
  for (std::size_t i = 0; i < I.size(); ++i)
    for (std::size_t k = 0; k < K.size(); ++k) pulled[i * K.size() + k] = psi[i];

  EntailmentReport r;
  r.law = "adjunction E^p_K -| reindexing";
  r.lhs = entails(ValueVector(I, exists_k), ValueVector(I, psi), p).value();
  r.rhs = entails(ValueVector(IK, rho), ValueVector(IK, pulled), p).value();
  r.value = r.lhs;
  r.gap = detail::relative_gap(r.lhs, r.rhs);
  r.verdict = r.gap <= 1e-9 ? Verdict::holds : Verdict::violated;
  return r;
}

/**
 * Transitivity asks (phi |- psi) (x) (psi |- sigma) <= (phi |- sigma).
 * Reported in inverse form: lhs = product of the two inverse entailments,
 * rhs = inverse of phi |- sigma. Violated when lhs < rhs beyond tolerance.
 */
inline EntailmentReport transitivity_report(const ValueVector& phi, const ValueVector& psi, const ValueVector& sigma,
                                            double p) {
  const double ab = entails(phi, psi, p).value();
  const double bc = entails(psi, sigma, p).value();
  const double ac = entails(phi, sigma, p).value();
  EntailmentReport r;
  r.law = "transitivity (phi|-psi)(x)(psi|-sigma) <= phi|-sigma";
  r.value = detail::mul_tensor(ab, bc);
  r.lhs = detail::mul_tensor(detail::mul_dual(ab), detail::mul_dual(bc));
  r.rhs = detail::mul_dual(ac);
  r.gap = detail::mul_tensor(ab, bc) - ac;
  r.verdict = r.value > ac * (1.0 + 1e-12) ? Verdict::violated : Verdict::holds;
  r.witness = {phi.values(), psi.values(), sigma.values()};
  return r;
}

/// phi = (10, 0.001), psi = (10, 1), sigma = (1, 1) on two points of weight 1/2.
inline EntailmentReport canned_transitivity_witness(double p = 1.0) {
  const Space s("uniform2", {"i1", "i2"}, {0.5, 0.5});
  return transitivity_report(ValueVector(s, {10.0, 0.001}), ValueVector(s, {10.0, 1.0}), ValueVector(s, {1.0, 1.0}),
                             p);
}

/// Seed of trial `trial` under master seed `seed`; trials are independent of evaluation order.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

/// Log-uniform values in [1e-3, 1e3].
inline std::vector<double> log_uniform_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> e(-3.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = std::pow(10.0, e(rng));
  return v;
}

/// First random violation of transitivity, or the canned witness if none turns up.
inline EntailmentReport transitivity_search(const Space& space, double p = 1.0, std::size_t trials = 10000,
                                            std::uint64_t seed = 20240917) {
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    const ValueVector phi(space, log_uniform_values(rng, space.size()));
    const ValueVector psi(space, log_uniform_values(rng, space.size()));
    const ValueVector sigma(space, log_uniform_values(rng, space.size()));
    auto r = transitivity_report(phi, psi, sigma, p);
    if (r.verdict == Verdict::violated) {
      r.law += " (random trial " + std::to_string(t) + ")";
      return r;
    }
  }
  auto canned = canned_transitivity_witness(p);
  if (canned.verdict != Verdict::violated) {
    throw Error(ErrorCode::NoViolationFound, "no transitivity violation found");
  }
  canned.law += " (canned witness)";
  return canned;
}

/// phi |-_I psi <= f^*phi |-_J f^*psi for f : J -> I measure-non-increasing.
inline EntailmentReport reindex_monotonicity_check(const PointMap& f, const ValueVector& phi, const ValueVector& psi,
                                                   double p) {
  if (!f.measure_non_increasing()) throw Error(ErrorCode::MapNotNonincreasing, "map increases measure");
  detail::same_space(phi, psi);
  if (!(phi.space() == f.target())) throw Error(ErrorCode::DimensionMismatch, "predicates must live on the target");
  std::vector<double> phi_f, psi_f;
  for (std::size_t j = 0; j < f.source().size(); ++j) {
    phi_f.push_back(phi[f(j)]);
    psi_f.push_back(psi[f(j)]);
  }
  EntailmentReport r;
  r.law = "reindexing phi |-_I psi <= f*phi |-_J f*psi";
  r.lhs = entails(phi, psi, p).value();
  r.rhs = entails(ValueVector(f.source(), phi_f), ValueVector(f.source(), psi_f), p).value();
  r.value = r.lhs;
  r.gap = r.lhs - r.rhs;
  r.verdict = r.lhs <= r.rhs + 1e-12 * std::max(1.0, std::fabs(r.rhs)) ? Verdict::holds : Verdict::violated;
  return r;
}

/// (f_! phi)(j) = (sum over the fiber of phi(i) w(i)) / w(j).
inline std::vector<double> pushforward_density(const PointMap& f, const std::vector<double>& phi) {
  if (phi.size() != f.source().size()) throw Error(ErrorCode::DimensionMismatch, "phi must live on the source");
  std::vector<double> mass(f.target().size(), 0.0);
  std::vector<bool> hit(f.target().size(), false);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    mass[f(i)] += detail::mul_tensor(phi[i], f.source().weight(i));
    hit[f(i)] = true;
  }
  std::vector<double> out(mass.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double w = f.target().weight(j);
    if (!hit[j]) {
      out[j] = 0.0;
      continue;
    }
    if (!(w > 0.0)) {
      throw Error(ErrorCode::ZeroTargetWeight, "image point '" + f.target().points()[j] + "' has zero weight");
    }
    out[j] = mass[j] / w;
  }
  return out;
}

struct LaxityReport {
  std::vector<double> tensor_of_pushforwards;  // (f_! phi)(f_! psi)
  std::vector<double> pushforward_of_tensor;   // f_!(phi psi)
  bool lax_fails = false;                      // some j with the first strictly above the second
  bool colax_fails = false;                    // some j with the first strictly below the second
};

inline LaxityReport laxity_check(const PointMap& f, const std::vector<double>& phi, const std::vector<double>& psi) {
  if (phi.size() != psi.size()) throw Error(ErrorCode::DimensionMismatch, "phi and psi differ in length");
  const auto fphi = pushforward_density(f, phi);
  const auto fpsi = pushforward_density(f, psi);
  std::vector<double> prod(phi.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = detail::mul_tensor(phi[i], psi[i]);
  LaxityReport r;
  r.pushforward_of_tensor = pushforward_density(f, prod);
  for (std::size_t j = 0; j < fphi.size(); ++j) {
    const double t = detail::mul_tensor(fphi[j], fpsi[j]);
    r.tensor_of_pushforwards.push_back(t);
    const double u = r.pushforward_of_tensor[j];
    const double tol = 1e-12 * std::max(1.0, std::max(std::fabs(t), std::fabs(u)));
    if (t > u + tol) r.lax_fails = true;
    if (t < u - tol) r.colax_fails = true;
  }
  return r;
}

}  // namespace qpl

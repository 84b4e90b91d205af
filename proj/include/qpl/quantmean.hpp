#pragma once

// p-sums and weighted p-means, the soft quantifiers.
//
// A SignedP couples a polarity with a magnitude p in [0, inf]:
//
//   existential p   (sum w a^p)^(1/p)       -> ess sup as p -> inf
//   universal   p   (sum w a^-p)^(-1/p)     -> ess inf as p -> inf
//
// At p = 0 the two polarities give the two weighted geometric means, folded
// with cotensor (existential) and tensor (universal). They agree on finite
// positive data and split as soon as 0 and inf both occur.
//
// Zeros and infinities are split off before any floating-point kernel runs
// and are recombined by the table rules, so those corners are exact.
// Weights are used as given; p_mean never renormalizes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "qpl/error.hpp"
#include "qpl/extreal.hpp"
#include "qpl/mspace.hpp"

namespace qpl {

enum class Polarity { existential, universal };

struct SignedP {
  Polarity polarity = Polarity::existential;
  double magnitude = 1.0;

  static SignedP exists(double p) { return checked(Polarity::existential, p); }
  static SignedP forall(double p) { return checked(Polarity::universal, p); }

  SignedP flipped() const {
    return {polarity == Polarity::existential ? Polarity::universal : Polarity::existential, magnitude};
  }

  friend bool operator==(const SignedP&, const SignedP&) = default;

 private:
  static SignedP checked(Polarity pol, double p) {
    if (std::isnan(p) || p < 0.0) throw Error(ErrorCode::InvalidP, "quantifier exponent must lie in [0, inf]");
    return {pol, p};
  }
};

/// One multiplicative value per point of a space.
class ValueVector {
 public:
  ValueVector(Space space, std::vector<double> values) : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_.size()) {
      throw Error(ErrorCode::LengthMismatch, "value vector length does not match space '" + space_.name() + "'");
    }
    for (double v : values_) MulReal{v};
  }

  const Space& space() const { return space_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  Space space_;
  std::vector<double> values_;
};

namespace detail {

/// Neumaier summation; the order of add() calls fixes the result bit for bit.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// log(sum_i exp(l_i)) with max factoring. Empty input gives -inf.
inline double log_sum_exp(std::span<const double> logs) {
  double m = -kInf;
  for (double l : logs) m = std::max(m, l);
  if (m == -kInf || m == kInf) return m;
  CompensatedSum s;
  for (double l : logs) s.add(std::exp(l - m));
  return m + std::log(s.value());
}

inline bool needs_log_domain(std::span<const double> w, std::span<const double> a, double q) {
  if (std::fabs(q) >= 64.0) return true;
  double lo = kInf, hi = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    lo = std::min(lo, a[i]);
    hi = std::max(hi, a[i]);
    // a single term that would overflow or underflow
    if (std::fabs(q * std::log(a[i])) + std::fabs(std::log(w[i])) > 600.0) return true;
  }
  return hi > 1e12 * lo;
}

/// (sum_i w_i a_i^q)^(1/q) for finite positive a_i, positive w_i, finite q != 0.
/// Factored through the dominant value r (max for q > 0, min for q < 0), so
/// a unit-weight sum never rounds past r.
inline double power_mean_kernel(std::span<const double> w, std::span<const double> a, double q) {
  if (q == 1.0) {
    CompensatedSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(w[i] * a[i]);
    return s.value();
  }
  const double r = q > 0 ? *std::max_element(a.begin(), a.end()) : *std::min_element(a.begin(), a.end());
  if (needs_log_domain(w, a, q)) {
    const double lr = std::log(r);
    std::vector<double> logs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) logs[i] = std::log(w[i]) + q * (std::log(a[i]) - lr);
    return r * std::exp(log_sum_exp(logs) / q);
  }
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add(w[i] * std::pow(a[i] / r, q));
  return r * std::pow(s.value(), 1.0 / q);
}

/// Shared core of p_sum and p_mean: weights are positive, values valid MulReal.
inline double soft_quantify(SignedP sp, std::span<const double> w, std::span<const double> a) {
  const bool ex = sp.polarity == Polarity::existential;
  bool any_zero = false, any_inf = false;
  for (double v : a) {
    any_zero = any_zero || v == 0.0;
    any_inf = any_inf || v == kInf;
  }

  if (sp.magnitude == kInf) {
    return ex ? *std::max_element(a.begin(), a.end()) : *std::min_element(a.begin(), a.end());
  }

  if (sp.magnitude == 0.0) {
    // product of a_i^{w_i}: tensor lets 0 absorb, cotensor lets inf absorb
    if (ex) {
      if (any_inf) return kInf;
      if (any_zero) return 0.0;
    } else {
      if (any_zero) return 0.0;
      if (any_inf) return kInf;
    }
    CompensatedSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(w[i] * std::log(a[i]));
    return std::exp(s.value());
  }

  // finite p > 0: the absorbing element of the polarity decides outright,
  // the neutral one drops out of the sum
  if (ex && any_inf) return kInf;
  if (!ex && any_zero) return 0.0;
  std::vector<double> ww, aa;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0 || a[i] == kInf) continue;
    ww.push_back(w[i]);
    aa.push_back(a[i]);
  }
  if (aa.empty()) return ex ? 0.0 : kInf;
  return power_mean_kernel(ww, aa, ex ? sp.magnitude : -sp.magnitude);
}

}  // namespace detail

/// Unweighted p-sum. Magnitude 0 has no p-sum.
inline MulReal p_sum(SignedP sp, std::span<const double> values) {
  if (sp.magnitude == 0.0) throw Error(ErrorCode::PZeroSum, "p-sums are undefined at p = 0");
  if (values.empty()) throw Error(ErrorCode::EmptyList, "p-sum of an empty list");
  for (double v : values) MulReal{v};
  const std::vector<double> ones(values.size(), 1.0);
  return MulReal(detail::soft_quantify(sp, ones, values));
}

inline MulReal p_sum(SignedP sp, std::span<const MulReal> values) {
  std::vector<double> raw;
  for (MulReal v : values) raw.push_back(v.value());
  return p_sum(sp, std::span<const double>(raw));
}

/// Weighted p-mean over raw weights and values. Zero-weight points are ignored.
inline double p_mean_raw(SignedP sp, std::span<const double> weights, std::span<const double> values) {
  std::vector<double> w, a;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] > 0.0) {
      w.push_back(weights[i]);
      a.push_back(values[i]);
    }
  }
  if (a.empty()) throw Error(ErrorCode::EmptySupport, "quantifying over a space with empty support");
  return detail::soft_quantify(sp, w, a);
}

inline MulReal p_mean(SignedP sp, const ValueVector& v) {
  return MulReal(p_mean_raw(sp, v.space().weights(), v.values()));
}

/**
 * The same quantifier read in the additive carrier:
 *   existential  -(1/p) log sum w e^{-p u}
 *   universal    +(1/p) log sum w e^{+p u}
 * with ess min / ess max at p = inf and the two weighted arithmetic means at
 * p = 0. Always runs in the log domain; this path is independent of
 * p_mean_raw and the two are tied together only by napier.
 */
inline double add_p_mean_raw(SignedP sp, std::span<const double> weights, std::span<const double> values) {
  const bool ex = sp.polarity == Polarity::existential;
  std::vector<double> w, u;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] > 0.0) {
      w.push_back(weights[i]);
      u.push_back(values[i]);
    }
  }
  if (u.empty()) throw Error(ErrorCode::EmptySupport, "quantifying over a space with empty support");

  bool any_pos_inf = false, any_neg_inf = false;
  for (double x : u) {
    any_pos_inf = any_pos_inf || x == kInf;
    any_neg_inf = any_neg_inf || x == -kInf;
  }

  if (sp.magnitude == kInf) {
    return ex ? *std::min_element(u.begin(), u.end()) : *std::max_element(u.begin(), u.end());
  }
  if (sp.magnitude == 0.0) {
    if (ex) {
      if (any_neg_inf) return -kInf;
      if (any_pos_inf) return kInf;
    } else {
      if (any_pos_inf) return kInf;
      if (any_neg_inf) return -kInf;
    }
    detail::CompensatedSum s;
    for (std::size_t i = 0; i < u.size(); ++i) s.add(w[i] * u[i]);
    return s.value();
  }

  const double p = sp.magnitude;
  if (ex && any_neg_inf) return -kInf;
  if (!ex && any_pos_inf) return kInf;
  std::vector<double> logs;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::isinf(u[i])) continue;
    logs.push_back(std::log(w[i]) + (ex ? -p : p) * u[i]);
  }
  if (logs.empty()) return ex ? kInf : -kInf;
  const double lse = detail::log_sum_exp(logs);
  return ex ? -lse / p : lse / p;
}

}  // namespace qpl

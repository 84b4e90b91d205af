#pragma once

// Extended-real truth values.
//
// Two carriers:
//   MulReal  [0, inf]     ordered as usual, join = max
//   AddReal  [-inf, inf]  ordered in reverse, join = min
//
// Every operation is total. The corner cells where IEEE arithmetic would
// produce NaN (0 * inf, inf - inf, ...) are decided by explicit case analysis
// so that native 0 * inf is never evaluated.
//
// napier / napier_inv (-log and exp(-x)) carry each multiplicative operation
// to the additive operation with the same OpCode.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>

#include "qpl/error.hpp"

namespace qpl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A value in [0, inf]. NaN and negatives are rejected on construction.
class MulReal {
 public:
  constexpr MulReal() = default;
  explicit MulReal(double v) : v_(v) {
    if (std::isnan(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidValue, "multiplicative value must lie in [0, inf]");
    }
  }

  static MulReal inf() { return MulReal(kInf); }

  constexpr double value() const { return v_; }
  bool is_zero() const { return v_ == 0.0; }
  bool is_inf() const { return v_ == kInf; }

  friend constexpr bool operator==(MulReal, MulReal) = default;
  friend constexpr auto operator<=>(MulReal a, MulReal b) { return a.v_ <=> b.v_; }

 private:
  double v_ = 0.0;
};

/// A value in [-inf, inf]. NaN is rejected on construction.
class AddReal {
 public:
  constexpr AddReal() = default;
  explicit AddReal(double v) : v_(v) {
    if (std::isnan(v)) throw Error(ErrorCode::InvalidValue, "additive value must not be NaN");
  }

  constexpr double value() const { return v_; }

  friend constexpr bool operator==(AddReal, AddReal) = default;
  friend constexpr auto operator<=>(AddReal a, AddReal b) { return a.v_ <=> b.v_; }

 private:
  double v_ = 0.0;
};

/// The six binary connectives, one per cell of the connective tables.
enum class OpCode { join, meet, add, hadd, tensor, cotensor };

inline constexpr std::array<OpCode, 6> kAllOps = {OpCode::join, OpCode::meet,   OpCode::add,
                                                  OpCode::hadd, OpCode::tensor, OpCode::cotensor};

constexpr std::string_view to_string(OpCode op) {
  switch (op) {
    case OpCode::join: return "join";
    case OpCode::meet: return "meet";
    case OpCode::add: return "add";
    case OpCode::hadd: return "hadd";
    case OpCode::tensor: return "tensor";
    case OpCode::cotensor: return "cotensor";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Multiplicative carrier, raw double kernels. Inputs are assumed valid.

namespace detail {

inline double mul_tensor(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

inline double mul_cotensor(double a, double b) {
  if (a == kInf || b == kInf) return kInf;
  return a * b;
}

inline double mul_hadd(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  if (a == kInf) return b;
  if (b == kInf) return a;
  // 1/(1/a + 1/b) written as lo/(1 + lo/hi) so nothing overflows
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return lo / (1.0 + lo / hi);
}

inline double mul_binop(OpCode op, double a, double b) {
  switch (op) {
    case OpCode::join: return std::max(a, b);
    case OpCode::meet: return std::min(a, b);
    case OpCode::add: return a + b;
    case OpCode::hadd: return mul_hadd(a, b);
    case OpCode::tensor: return mul_tensor(a, b);
    case OpCode::cotensor: return mul_cotensor(a, b);
  }
  return 0.0;
}

inline double mul_dual(double a) {
  if (a == 0.0) return kInf;
  if (a == kInf) return 0.0;
  return 1.0 / a;
}

// a -o b
inline double mul_div(double a, double b) {
  if (a == 0.0 || b == kInf) return kInf;
  if (a == kInf || b == 0.0) return 0.0;
  return b / a;
}

// a^k, k in [0, inf]
inline double mul_pow(double k, double a) {
  if (k == 0.0) return 1.0;
  if (a == 1.0) return 1.0;
  if (k == kInf) return a < 1.0 ? 0.0 : kInf;
  if (a == 0.0) return 0.0;
  if (a == kInf) return kInf;
  if (k == 1.0) return a;
  return std::pow(a, k);
}

// a^k for signed finite or infinite k; negative k acts through the dual.
inline double mul_pow_signed(double k, double a) {
  return k < 0.0 ? mul_pow(-k, mul_dual(a)) : mul_pow(k, a);
}

// ---------------------------------------------------------------------------
// Additive carrier.

inline double add_tensor(double a, double b) {
  if (a == kInf || b == kInf) return kInf;
  return a + b;
}

inline double add_cotensor(double a, double b) {
  if (a == -kInf || b == -kInf) return -kInf;
  return a + b;
}

// softplus: -log(e^-a + e^-b)
inline double add_softplus(double a, double b) {
  if (a == kInf) return b;
  if (b == kInf) return a;
  if (a == -kInf || b == -kInf) return -kInf;
  const double lo = std::min(a, b);
  return lo - std::log1p(std::exp(-std::fabs(a - b)));
}

// harmonic softplus: log(e^a + e^b)
inline double add_hsoftplus(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a == kInf || b == kInf) return kInf;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

inline double add_binop(OpCode op, double a, double b) {
  switch (op) {
    case OpCode::join: return std::min(a, b);
    case OpCode::meet: return std::max(a, b);
    case OpCode::add: return add_softplus(a, b);
    case OpCode::hadd: return add_hsoftplus(a, b);
    case OpCode::tensor: return add_tensor(a, b);
    case OpCode::cotensor: return add_cotensor(a, b);
  }
  return 0.0;
}

// a -o b, the image of mul_div under -log
inline double add_div(double a, double b) {
  if (a == kInf || b == -kInf) return -kInf;
  if (a == -kInf || b == kInf) return kInf;
  return b - a;
}

inline double add_scalar(double k, double a) {
  if (k == 0.0) return 0.0;
  return k * a;
}

inline double napier(double a) { return 0.0 - std::log(a); }  // no -0 at a = 1
inline double napier_inv(double u) { return std::exp(-u); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Typed interface.

inline MulReal mul_binop(OpCode op, MulReal a, MulReal b) {
  return MulReal(detail::mul_binop(op, a.value(), b.value()));
}
inline MulReal mul_dual(MulReal a) { return MulReal(detail::mul_dual(a.value())); }
inline MulReal mul_div(MulReal a, MulReal b) { return MulReal(detail::mul_div(a.value(), b.value())); }
inline MulReal mul_pow(MulReal k, MulReal a) { return MulReal(detail::mul_pow(k.value(), a.value())); }

inline AddReal add_binop(OpCode op, AddReal a, AddReal b) {
  return AddReal(detail::add_binop(op, a.value(), b.value()));
}
inline AddReal add_dual(AddReal a) { return AddReal(0.0 - a.value()); }
inline AddReal add_div(AddReal a, AddReal b) { return AddReal(detail::add_div(a.value(), b.value())); }

/// k . a in the additive carrier. k may be negative here; the formula
/// language only produces k >= 0.
inline AddReal add_scalar(double k, AddReal a) {
  if (!std::isfinite(k)) throw Error(ErrorCode::InvalidValue, "additive scalar must be finite");
  return AddReal(detail::add_scalar(k, a.value()));
}

inline AddReal napier(MulReal a) { return AddReal(detail::napier(a.value())); }
inline MulReal napier_inv(AddReal u) { return MulReal(detail::napier_inv(u.value())); }

/// Logical order: numeric in the multiplicative carrier, reversed in the additive one.
inline bool logical_leq(MulReal a, MulReal b) { return a.value() <= b.value(); }
inline bool logical_leq(AddReal a, AddReal b) { return a.value() >= b.value(); }

// ---------------------------------------------------------------------------
// Text.

/// 12 significant digits, "inf" / "-inf" for the infinities.
inline std::string format_value(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Shortest text that parses back to exactly `v`.
inline std::string format_exact(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Parses "inf", "+inf", "-inf" or a decimal literal. Rejects NaN and trailing junk.
inline double parse_value(std::string_view text) {
  if (text == "inf" || text == "+inf") return kInf;
  if (text == "-inf") return -kInf;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || std::isnan(v)) {
    throw Error(ErrorCode::InvalidValue, "cannot parse value '" + std::string(text) + "'");
  }
  return v;
}

inline std::string to_string(MulReal a) { return format_value(a.value()); }
inline std::string to_string(AddReal a) { return format_value(a.value()); }

}  // namespace qpl

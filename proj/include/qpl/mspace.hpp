#pragma once

// Finite weighted point sets. They stand in for measure spaces: every
// integral in the library is a weighted sum over the points in order.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qpl/error.hpp"

namespace qpl {

class Space {
 public:
  Space() = default;

  /// Validates and builds a space. Zero weights are kept (negligible points).
  Space(std::string name, std::vector<std::string> points, std::vector<double> weights)
      : name_(std::move(name)), points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.size() != weights_.size()) {
      throw Error(ErrorCode::LengthMismatch, "space '" + name_ + "': points and weights differ in length");
    }
    if (points_.empty()) throw Error(ErrorCode::EmptySpace, "space '" + name_ + "' has no points");
    for (double w : weights_) {
      if (std::isnan(w) || std::isinf(w)) {
        throw Error(ErrorCode::NonfiniteWeight, "space '" + name_ + "' has a non-finite weight");
      }
      if (w < 0.0) throw Error(ErrorCode::NegativeWeight, "space '" + name_ + "' has a negative weight");
    }
    for (double w : weights_) total_mass_ += w;
  }

  const std::string& name() const { return name_; }
  const std::vector<std::string>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  double total_mass() const { return total_mass_; }
  bool is_probability() const { return std::fabs(total_mass_ - 1.0) <= 1e-12; }

  bool in_support(std::size_t i) const { return weights_[i] > 0.0; }
  bool has_support() const {
    for (double w : weights_)
      if (w > 0.0) return true;
    return false;
  }

  /// Index of the point with the given label, or size() when absent.
  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (points_[i] == label) return i;
    return points_.size();
  }

  friend bool operator==(const Space&, const Space&) = default;

 private:
  std::string name_;
  std::vector<std::string> points_;
  std::vector<double> weights_;
  double total_mass_ = 0.0;
};

inline Space make_space(std::vector<std::string> points, std::vector<double> weights, std::string name = "S") {
  return Space(std::move(name), std::move(points), std::move(weights));
}

/// n points labelled prefix1..prefixn, each of weight w.
inline Space uniform_space(std::string name, std::size_t n, double w, const std::string& prefix = "x") {
  std::vector<std::string> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(prefix + std::to_string(i + 1));
  return Space(std::move(name), std::move(pts), std::vector<double>(n, w));
}

/// Row-major product: point (i, j) sits at index i * |B| + j.
inline Space product_space(const Space& a, const Space& b) {
  std::vector<std::string> pts;
  std::vector<double> ws;
  pts.reserve(a.size() * b.size());
  ws.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      pts.push_back("(" + a.points()[i] + "," + b.points()[j] + ")");
      ws.push_back(a.weight(i) * b.weight(j));
    }
  }
  return Space(a.name() + "*" + b.name(), std::move(pts), std::move(ws));
}

inline Space normalize(const Space& a) {
  const double m = a.total_mass();
  if (!(m > 0.0)) throw Error(ErrorCode::ZeroMass, "space '" + a.name() + "' has zero mass");
  std::vector<double> ws = a.weights();
  for (double& w : ws) w /= m;
  return Space(a.name(), a.points(), std::move(ws));
}

/// A total map between the points of two spaces.
class PointMap {
 public:
  PointMap(Space source, Space target, std::vector<std::size_t> assignment)
      : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
    if (assignment_.size() != source_.size()) {
      throw Error(ErrorCode::LengthMismatch, "point map needs one image per source point");
    }
    for (std::size_t j : assignment_) {
      if (j >= target_.size()) throw Error(ErrorCode::InvalidInput, "point map image out of range");
    }
  }

  static PointMap identity(const Space& s) {
    std::vector<std::size_t> a(s.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
    return PointMap(s, s, std::move(a));
  }

  const Space& source() const { return source_; }
  const Space& target() const { return target_; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }
  std::size_t operator()(std::size_t i) const { return assignment_[i]; }

  /// Every fiber carries no more source mass than its target point.
  bool measure_non_increasing() const;

 private:
  Space source_;
  Space target_;
  std::vector<std::size_t> assignment_;
};

/// Weight at target j = sum of source weights over the fiber of j.
inline std::vector<double> pushforward_measure(const PointMap& f) {
  std::vector<double> out(f.target().size(), 0.0);
  for (std::size_t i = 0; i < f.source().size(); ++i) out[f(i)] += f.source().weight(i);
  return out;
}

inline bool PointMap::measure_non_increasing() const {
  const auto pushed = pushforward_measure(*this);
  for (std::size_t j = 0; j < pushed.size(); ++j) {
    const double w = target_.weight(j);
    if (pushed[j] > w + 1e-12 * w) return false;
  }
  return true;
}

/// g after f.
inline PointMap compose(const PointMap& g, const PointMap& f) {
  if (!(f.target() == g.source())) throw Error(ErrorCode::DimensionMismatch, "maps do not compose");
  std::vector<std::size_t> a(f.source().size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g(f(i));
  return PointMap(f.source(), g.target(), std::move(a));
}

}  // namespace qpl

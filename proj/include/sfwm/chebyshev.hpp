#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace sfwm {

/// Chebyshev-first-kind nodes cos(pi (k + 1/2) / n) on [-1, 1], descending.
template <class T>
std::vector<T> chebyshev_nodes(std::size_t n) {
  std::vector<T> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = std::cos(std::numbers::pi_v<T> * (T(k) + T(0.5)) / T(n));
  }
  return x;
}

/// Truncated Chebyshev expansion f(x) = sum_j a_j T_j(t), t = (2x - a - b)/(b - a).
template <class T>
class ChebyshevSeries {
 public:
  ChebyshevSeries() = default;
  ChebyshevSeries(T lo, T hi, std::vector<T> coeffs) : lo_(lo), hi_(hi), a_(std::move(coeffs)) {}

  /// Least-squares fit of the given degree to samples taken at the n
  /// chebyshev_nodes mapped onto [lo, hi]. With degree = n - 1 this
  /// interpolates.
  static ChebyshevSeries from_node_samples(T lo, T hi, std::span<const T> values, std::size_t degree) {
    const std::size_t n = values.size();
    if (degree + 1 > n) degree = n - 1;
    std::vector<T> a(degree + 1, T(0));
    for (std::size_t j = 0; j <= degree; ++j) {
      T s = 0;
      for (std::size_t k = 0; k < n; ++k) {
        s += values[k] * std::cos(std::numbers::pi_v<T> * T(j) * (T(k) + T(0.5)) / T(n));
      }
      a[j] = (j == 0 ? T(1) : T(2)) * s / T(n);
    }
    return ChebyshevSeries(lo, hi, std::move(a));
  }

  template <class F>
  static ChebyshevSeries fit(F&& f, T lo, T hi, std::size_t nodes, std::size_t degree) {
    const auto t = chebyshev_nodes<T>(nodes);
    std::vector<T> v(nodes);
    for (std::size_t k = 0; k < nodes; ++k) v[k] = f(map_from_unit(t[k], lo, hi));
    return from_node_samples(lo, hi, v, degree);
  }

  static T map_from_unit(T t, T lo, T hi) { return T(0.5) * (lo + hi) + T(0.5) * (hi - lo) * t; }

  T lo() const { return lo_; }
  T hi() const { return hi_; }
  std::size_t degree() const { return a_.empty() ? 0 : a_.size() - 1; }
  const std::vector<T>& coefficients() const { return a_; }

  T operator()(T x) const {
    const T t = (T(2) * x - lo_ - hi_) / (hi_ - lo_);
    T b1 = 0, b2 = 0;
    for (std::size_t j = a_.size(); j-- > 1;) {
      const T b0 = T(2) * t * b1 - b2 + a_[j];
      b2 = b1;
      b1 = b0;
    }
    return t * b1 - b2 + (a_.empty() ? T(0) : a_[0]);
  }

  ChebyshevSeries derivative() const {
    const std::size_t d = degree();
    if (d == 0) return ChebyshevSeries(lo_, hi_, {T(0)});
    std::vector<T> c(d + 2, T(0));
    for (std::size_t j = d; j >= 1; --j) {
      c[j - 1] = c[j + 1] + T(2) * T(j) * a_[j];
    }
    c.resize(d);
    c[0] *= T(0.5);
    const T scale = T(2) / (hi_ - lo_);
    for (auto& v : c) v *= scale;
    return ChebyshevSeries(lo_, hi_, std::move(c));
  }

 private:
  T lo_ = 0;
  T hi_ = 1;
  std::vector<T> a_;
};

}  // namespace sfwm

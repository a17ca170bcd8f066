#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace abl {

// Kahan-Neumaier compensated accumulator. Deterministic for a fixed sequence
// of inputs; block scans merge per-block sums in block order so results do
// not depend on thread count.
template <typename T = double>
struct KahanSum {
  T sum = 0;
  T comp = 0;

  void add(T x) {
    T t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  void merge(const KahanSum& other) {
    add(other.sum);
    comp += other.comp;
  }

  T value() const { return sum + comp; }
};

// Log-spaced grid of `count` points covering [lo, hi], endpoints included.
inline std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  std::vector<double> xs;
  xs.reserve(count);
  if (count == 1) {
    xs.push_back(lo);
    return xs;
  }
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(count - 1);
    xs.push_back(std::exp(llo + t * (lhi - llo)));
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

// Least-squares fit of the additive constant c in  y ~ main + c  over a grid,
// with the largest residual after fitting. Used for constants the references
// leave unprinted.
struct ConstantFit {
  double value = 0;
  double max_residual = 0;
};

inline ConstantFit fit_additive_constant(const std::vector<double>& y,
                                         const std::vector<double>& main) {
  ConstantFit fit;
  if (y.empty()) return fit;
  KahanSum<double> acc;
  for (std::size_t i = 0; i < y.size(); ++i) acc.add(y[i] - main[i]);
  fit.value = acc.value() / static_cast<double>(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    fit.max_residual = std::max(fit.max_residual,
                                std::abs(y[i] - main[i] - fit.value));
  }
  return fit;
}

}  // namespace abl

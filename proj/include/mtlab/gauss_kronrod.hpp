#pragma once

// Globally adaptive Gauss-Kronrod (G10/K21) quadrature on a finite interval.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "mtlab/errors.hpp"

namespace mtlab::gk {

// QUADPACK qk21 nodes and weights. Odd indices carry the embedded 10-point
// Gauss rule.
inline constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452322, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651146};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int panels = 0;
  bool converged = false;
};

/// One K21 panel. The error is the raw |K21 - G10| difference, which is a
/// deliberately pessimistic estimate for smooth integrands.
template <class F>
Panel panel(F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double fc = f(mid);
  double kronrod = fc * kKronrodWeights[10];
  double gauss = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    const double dx = half * kNodes[i];
    const double sum = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

/// Neumaier-compensated sum in the order given.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Bisects the panel with the largest error estimate until the summed error
/// is below max(abs_tol, rel_tol*|I|). The final sum runs over panels sorted
/// by their left endpoint, so results do not depend on refinement order.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
                 int max_panels = 4000) {
  Result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  auto cmp = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
  heap.push(panel(f, a, b));
  out.evaluations = 21;
  double total = heap.top().value;
  double error = heap.top().error;
  while (true) {
    const double target = std::max(abs_tol, rel_tol * std::abs(total));
    if (error <= target) {
      out.converged = true;
      break;
    }
    if (static_cast<int>(heap.size()) >= max_panels) break;
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    Panel left = panel(f, worst.a, mid);
    Panel right = panel(f, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum value;
  CompensatedSum err;
  for (const auto& p : panels) {
    value.add(p.value);
    err.add(p.error);
  }
  out.value = value.value();
  out.abs_error = err.value();
  out.panels = static_cast<int>(panels.size());
  if (!std::isfinite(out.value))
    throw QuadratureFailure("non-finite integrand value");
  return out;
}

}  // namespace mtlab::gk

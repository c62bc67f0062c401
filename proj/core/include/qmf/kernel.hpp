#pragma once

// Scalar special functions, compensated summation and quadrature rules.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "qmf/errors.hpp"

namespace qmf::kernel {

using cplx = std::complex<double>;

struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_refinement = 60;

  void validate() const;
  Tolerance scaled(double factor) const;
};

struct QuadratureResult {
  cplx value{};
  double error_estimate = 0.0;
  long evaluations = 0;
};

double bessel_k0(double x);
double bessel_k1(double x);

struct BesselK01 {
  double k0;
  double k1;
};
// K0 and K1 together; cheaper than two separate calls.
BesselK01 bessel_k01(double x);

// Neumaier summation.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_same_v<T, cplx>) {
      re_.add(x.real());
      im_.add(x.imag());
    } else {
      const T t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x)) {
        carry_ += (sum_ - t) + x;
      } else {
        carry_ += (x - t) + sum_;
      }
      sum_ = t;
    }
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const {
    if constexpr (std::is_same_v<T, cplx>) {
      return {re_.value(), im_.value()};
    } else {
      return sum_ + carry_;
    }
  }

 private:
  struct Empty {};
  using Part = std::conditional_t<std::is_same_v<T, cplx>, CompensatedSum<double>, Empty>;
  T sum_{};
  T carry_{};
  [[no_unique_address]] Part re_{};
  [[no_unique_address]] Part im_{};
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};
// Nodes and weights of the n-point rule; tables are built once per n.
const GaussLegendreRule& gauss_legendre_rule(int n);

cplx gauss_legendre(const std::function<cplx(double)>& f, double a, double b, int n_nodes);

enum class EndpointSingularity { none, inverse_sqrt_at_0 };

using Integrand = std::function<cplx(double)>;

QuadratureResult quad_interval(const Integrand& f, double a, double b, const Tolerance& tol);
QuadratureResult quad_finite(const Integrand& f, EndpointSingularity sing, double b,
                             const Tolerance& tol);
QuadratureResult quad_exp_tail(const Integrand& f, double decay_rate, double a,
                               const Tolerance& tol);

// Vector-valued integrands share one set of evaluation points across components.
template <std::size_t N>
using CVec = std::array<cplx, N>;

template <std::size_t N>
struct VecQuadratureResult {
  CVec<N> value{};
  double error_estimate = 0.0;
  long evaluations = 0;
};

namespace detail {

inline double magnitude(const cplx& z) { return std::abs(z); }
template <std::size_t N>
double magnitude(const CVec<N>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}
inline void axpy(cplx& acc, double w, const cplx& x) { acc += w * x; }
template <std::size_t N>
void axpy(CVec<N>& acc, double w, const CVec<N>& x) {
  for (std::size_t i = 0; i < N; ++i) acc[i] += w * x[i];
}
inline cplx minus(const cplx& a, const cplx& b) { return a - b; }
template <std::size_t N>
CVec<N> minus(const CVec<N>& a, const CVec<N>& b) {
  CVec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}

// 21-point Kronrod extension of the 10-point Gauss rule.
inline constexpr std::array<double, 11> kKronrodNodes = {
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
    0.123491976262065851077600525168316, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class V>
struct Panel {
  double a, b;
  V value;
  double error;
  double abs_integral;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class V, class F>
Panel<V> kronrod21(F& f, double a, double b, int depth) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::array<V, 21> fx;
  for (int i = 0; i < 10; ++i) {
    const double dx = half * kKronrodNodes[i];
    fx[2 * i] = f(mid - dx);
    fx[2 * i + 1] = f(mid + dx);
  }
  fx[20] = f(mid);
  V kron{};
  V gauss{};
  axpy(kron, kKronrodWeights[10], fx[20]);
  double abs_int = kKronrodWeights[10] * magnitude(fx[20]);
  for (int i = 0; i < 10; ++i) {
    axpy(kron, kKronrodWeights[i], fx[2 * i]);
    axpy(kron, kKronrodWeights[i], fx[2 * i + 1]);
    abs_int += kKronrodWeights[i] * (magnitude(fx[2 * i]) + magnitude(fx[2 * i + 1]));
    if (i % 2 == 1) {
      axpy(gauss, kGaussWeights[i / 2], fx[2 * i]);
      axpy(gauss, kGaussWeights[i / 2], fx[2 * i + 1]);
    }
  }
  V mean = kron;
  {
    V scaled{};
    axpy(scaled, 0.5, mean);
    mean = scaled;
  }
  double asc = kKronrodWeights[10] * magnitude(minus(fx[20], mean));
  for (int i = 0; i < 10; ++i) {
    asc += kKronrodWeights[i] *
           (magnitude(minus(fx[2 * i], mean)) + magnitude(minus(fx[2 * i + 1], mean)));
  }
  asc *= std::abs(half);
  abs_int *= std::abs(half);
  double err = magnitude(minus(kron, gauss)) * std::abs(half);
  if (asc > 0.0 && err > 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_int;
  err = std::max(err, roundoff);
  V value{};
  axpy(value, half, kron);
  return Panel<V>{a, b, value, err, abs_int, depth};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration on [a, b]. max_refinement caps the
// bisection depth of any single panel; the total panel count is capped at
// 64 * max_refinement.
template <class V, class F>
std::pair<V, double> adaptive_integrate(F&& f, double a, double b, const Tolerance& tol,
                                        long* evaluations = nullptr) {
  tol.validate();
  std::priority_queue<detail::Panel<V>> heap;
  auto first = detail::kronrod21<V>(f, a, b, 0);
  long evals = 21;
  V total = first.value;
  double total_err = first.error;
  double total_abs = first.abs_integral;
  heap.push(first);
  const std::size_t max_panels = static_cast<std::size_t>(64) * tol.max_refinement;
  while (true) {
    const double floor = 100.0 * std::numeric_limits<double>::epsilon() * total_abs;
    const double target =
        std::max({tol.abs_tol, tol.rel_tol * detail::magnitude(total), floor});
    if (total_err <= target) break;
    detail::Panel<V> worst = heap.top();
    if (worst.depth >= tol.max_refinement || heap.size() >= max_panels) {
      if (evaluations) *evaluations = evals;
      cplx best{};
      if constexpr (std::is_same_v<V, cplx>) best = total;
      else best = total[0];
      throw ConvergenceError("adaptive quadrature: refinement cap reached", best, total_err);
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::kronrod21<V>(f, worst.a, mid, worst.depth + 1);
    auto right = detail::kronrod21<V>(f, mid, worst.b, worst.depth + 1);
    evals += 42;
    detail::axpy(total, -1.0, worst.value);
    detail::axpy(total, 1.0, left.value);
    detail::axpy(total, 1.0, right.value);
    total_err += left.error + right.error - worst.error;
    total_abs += left.abs_integral + right.abs_integral - worst.abs_integral;
    heap.push(left);
    heap.push(right);
  }
  // Final sum from the panels themselves, free of update drift.
  V sum{};
  double err = 0.0;
  while (!heap.empty()) {
    detail::axpy(sum, 1.0, heap.top().value);
    err += heap.top().error;
    heap.pop();
  }
  if (evaluations) *evaluations = evals;
  return {sum, err};
}

// Integral over [a, inf) of f with |f(v)| <= C exp(-rate v). Integrates panels of
// width 2/rate until the tail bound inferred from the last panel is negligible.
template <class V, class F>
std::pair<V, double> exp_tail_integrate(F&& f, double decay_rate, double a,
                                        const Tolerance& tol, long* evaluations = nullptr) {
  if (!(decay_rate > 0.0)) throw DomainError("quad_exp_tail: decay rate must be positive");
  tol.validate();
  const double h = 2.0 / decay_rate;
  Tolerance panel_tol = tol;
  panel_tol.abs_tol = tol.abs_tol / 8.0;
  V total{};
  double total_err = 0.0;
  long evals = 0;
  int quiet = 0;
  for (int k = 0; k < 4000; ++k) {
    const double lo = a + k * h;
    const double hi = lo + h;
    long e = 0;
    auto [val, err] = adaptive_integrate<V>(f, lo, hi, panel_tol, &e);
    evals += e;
    detail::axpy(total, 1.0, val);
    total_err += err;
    double envelope = 0.0;
    for (int s = 0; s <= 4; ++s) {
      const double v = lo + 0.25 * s * h;
      envelope = std::max(envelope, detail::magnitude(f(v)) * std::exp(-decay_rate * (hi - v)));
    }
    evals += 5;
    const double tail = envelope / decay_rate;
    const double target = std::max(tol.abs_tol, tol.rel_tol * detail::magnitude(total));
    if (tail <= 0.1 * target) {
      if (++quiet >= 2) {
        if (evaluations) *evaluations = evals;
        return {total, total_err + tail};
      }
    } else {
      quiet = 0;
    }
  }
  cplx best{};
  if constexpr (std::is_same_v<V, cplx>) best = total;
  else best = total[0];
  throw ConvergenceError("quad_exp_tail: tail did not decay", best, total_err);
}

}  // namespace qmf::kernel

#include "qmf/kernel.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace qmf::kernel {

#include "bessel_cheb.inc"

void Tolerance::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_refinement < 1) {
    throw DomainError("Tolerance requires abs_tol > 0, rel_tol > 0, max_refinement >= 1");
  }
}

Tolerance Tolerance::scaled(double factor) const {
  Tolerance t = *this;
  t.abs_tol *= factor;
  t.rel_tol *= factor;
  return t;
}

namespace {

constexpr double kEuler = 0.57721566490153286060651209008240243;

template <std::size_t N>
double chebyshev(const double (&c)[N], double u) {
  double b1 = 0.0;
  double b2 = 0.0;
  const double two_u = 2.0 * u;
  for (std::size_t k = N - 1; k >= 1; --k) {
    const double b0 = two_u * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + c[0];
}

BesselK01 small_argument(double x) {
  const double y = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);
  // k-th terms of the I0 and I1/(x/2) series.
  double t0 = 1.0;
  double t1 = 1.0;
  double harmonic = 0.0;
  double i0 = 1.0;
  double i1_over = 1.0;
  double k0_sum = 0.0;
  double k1_sum = -2.0 * kEuler + 1.0;  // psi(1) + psi(2)
  for (int k = 1; k < 40; ++k) {
    t0 *= y / (static_cast<double>(k) * k);
    t1 *= y / (static_cast<double>(k) * (k + 1));
    harmonic += 1.0 / k;
    i0 += t0;
    i1_over += t1;
    k0_sum += harmonic * t0;
    // psi(k+1) + psi(k+2) = -2 gamma + 2 H_k + 1/(k+1)
    k1_sum += (-2.0 * kEuler + 2.0 * harmonic + 1.0 / (k + 1)) * t1;
    if (t0 < 1e-18 * i0 && t1 < 1e-18 * i1_over) break;
  }
  const double k0 = -(log_half + kEuler) * i0 + k0_sum;
  const double i1 = 0.5 * x * i1_over;
  const double k1 = 1.0 / x + log_half * i1 - 0.25 * x * k1_sum;
  return {k0, k1};
}

BesselK01 large_argument(double x) {
  const double u = 4.0 / x - 1.0;
  const double envelope = std::exp(-x) / std::sqrt(x);
  return {envelope * chebyshev(kScaledK0Cheb, u), envelope * chebyshev(kScaledK1Cheb, u)};
}

}  // namespace

BesselK01 bessel_k01(double x) {
  if (!(x > 0.0)) throw DomainError("Bessel K: argument must be positive");
  if (x <= 2.0) return small_argument(x);
  if (x > 745.0) return {0.0, 0.0};
  return large_argument(x);
}

double bessel_k0(double x) { return bessel_k01(x).k0; }
double bessel_k1(double x) { return bessel_k01(x).k1; }

namespace {

std::unique_ptr<GaussLegendreRule> build_rule(int n) {
  auto rule = std::make_unique<GaussLegendreRule>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * z * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0L;
      dp = n * (z * p1 - p0) / (z * z - 1.0L);
      const long double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-19L) break;
    }
    const long double w = 2.0L / ((1.0L - z * z) * dp * dp);
    rule->nodes[i] = -static_cast<double>(z);
    rule->nodes[n - 1 - i] = static_cast<double>(z);
    rule->weights[i] = rule->weights[n - 1 - i] = static_cast<double>(w);
  }
  if (n % 2 == 1) rule->nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int n) {
  if (n < 2) throw DomainError("gauss_legendre: need at least 2 nodes");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = build_rule(n);
  return *slot;
}

cplx gauss_legendre(const std::function<cplx(double)>& f, double a, double b, int n_nodes) {
  const auto& rule = gauss_legendre_rule(n_nodes);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  CompensatedSum<cplx> sum;
  for (int i = 0; i < n_nodes; ++i) sum.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
  return half * sum.value();
}

QuadratureResult quad_interval(const Integrand& f, double a, double b, const Tolerance& tol) {
  QuadratureResult r;
  auto [value, err] = adaptive_integrate<cplx>(f, a, b, tol, &r.evaluations);
  r.value = value;
  r.error_estimate = err;
  return r;
}

QuadratureResult quad_finite(const Integrand& f, EndpointSingularity sing, double b,
                             const Tolerance& tol) {
  if (!(b > 0.0)) throw DomainError("quad_finite: upper limit must be positive");
  if (sing == EndpointSingularity::none) return quad_interval(f, 0.0, b, tol);
  auto g = [&f](double w) { return 2.0 * w * f(w * w); };
  return quad_interval(g, 0.0, std::sqrt(b), tol);
}

QuadratureResult quad_exp_tail(const Integrand& f, double decay_rate, double a,
                               const Tolerance& tol) {
  QuadratureResult r;
  auto [value, err] = exp_tail_integrate<cplx>(f, decay_rate, a, tol, &r.evaluations);
  r.value = value;
  r.error_estimate = err;
  return r;
}

}  // namespace qmf::kernel

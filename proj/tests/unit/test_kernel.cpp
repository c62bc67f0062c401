#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "qmf/kernel.hpp"

using namespace qmf;
using namespace qmf::kernel;

namespace {

// K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du by the trapezoid rule, which converges
// geometrically for this entire, doubly-exponentially decaying integrand.
double bessel_integral(double x, int nu) {
  const long double h = 0.05L;
  long double sum = 0.5L * std::exp(-static_cast<long double>(x));
  for (int k = 1;; ++k) {
    const long double u = h * k;
    const long double term = std::exp(-x * std::cosh(u)) * std::cosh(nu * u);
    sum += term;
    if (x * std::cosh(u) > 800.0L) break;
  }
  return static_cast<double>(h * sum);
}

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("bessel_k0 at 1") { CHECK(bessel_k0(1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-15)); }

TEST_CASE("bessel functions match the integral representation on a log grid") {
  double worst = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double x = 1e-3 * std::pow(5e4, i / 60.0);
    worst = std::max(worst, std::abs(bessel_k0(x) / bessel_integral(x, 0) - 1.0));
    worst = std::max(worst, std::abs(bessel_k1(x) / bessel_integral(x, 1) - 1.0));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("bessel_k01 agrees with the separate functions") {
  for (double x : {1e-8, 0.01, 0.7, 2.0, 2.0000001, 9.5, 80.0, 650.0}) {
    const auto both = bessel_k01(x);
    CHECK(both.k0 == doctest::Approx(bessel_k0(x)).epsilon(1e-15));
    CHECK(both.k1 == doctest::Approx(bessel_k1(x)).epsilon(1e-15));
  }
}

TEST_CASE("bessel_k0 is strictly decreasing") {
  testing::Engine g(11);
  for (int i = 0; i < 200; ++i) {
    const double x = std::exp(testing::pick_real(g, std::log(1e-6), std::log(600.0)));
    const double y = x * (1.0 + testing::pick_real(g, 1e-6, 1.0));
    CHECK(bessel_k0(x) > bessel_k0(y));
  }
}

TEST_CASE("bessel_k0 solves the modified Bessel equation at x = 2") {
  const double x = 2.0, h = 1e-3;
  const double f0 = bessel_k0(x), fp = bessel_k0(x + h), fm = bessel_k0(x - h);
  const double y2 = (fp - 2.0 * f0 + fm) / (h * h);
  const double y1 = (fp - fm) / (2.0 * h);
  CHECK(std::abs(y2 + y1 / x - f0) < 1e-6);
}

TEST_CASE("bessel_k1 is minus the derivative of bessel_k0") {
  const double h = 1e-4;
  CHECK(std::abs(bessel_k1(1.0) + (bessel_k0(1.0 + h) - bessel_k0(1.0 - h)) / (2.0 * h)) < 1e-8);
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    auto residual = [x](double step) {
      return std::abs((bessel_k0(x + step) - bessel_k0(x - step)) / (2.0 * step) + bessel_k1(x));
    };
    const double ratio = residual(2e-2) / residual(1e-2);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("bessel_k1 exceeds bessel_k0 and their ratio tends to 1") {
  for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) CHECK(bessel_k1(x) > bessel_k0(x));
  CHECK(bessel_k1(50.0) / bessel_k0(50.0) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("bessel underflow and domain") {
  CHECK(bessel_k0(800.0) == 0.0);
  CHECK(bessel_k1(800.0) == 0.0);
  CHECK_THROWS_AS(bessel_k0(0.0), DomainError);
  CHECK_THROWS_AS(bessel_k1(-1.0), DomainError);
}

TEST_CASE("tolerance validation") {
  Tolerance t;
  CHECK_NOTHROW(t.validate());
  t.abs_tol = 0.0;
  CHECK_THROWS_AS(t.validate(), DomainError);
  t = Tolerance{1e-10, -1.0, 5};
  CHECK_THROWS_AS(t.validate(), DomainError);
  t = Tolerance{1e-10, 1e-10, 0};
  CHECK_THROWS_AS(t.validate(), DomainError);
}

TEST_CASE("quad_finite examples") {
  const Tolerance tol;
  const auto a = quad_finite([](double v) { return cplx(1.0 / std::sqrt(v)); },
                             EndpointSingularity::inverse_sqrt_at_0, 1.0, tol);
  CHECK(std::abs(a.value - 2.0) < 1e-13);
  CHECK(std::abs(a.value - 2.0) <= 10.0 * a.error_estimate + 1e-15);
  const auto b = quad_finite([](double v) { return cplx(1.0 / (std::sqrt(v) * (1.0 + v))); },
                             EndpointSingularity::inverse_sqrt_at_0, 1.0, tol);
  CHECK(std::abs(b.value - std::numbers::pi / 2.0) < 1e-13);
  CHECK(std::abs(b.value - std::numbers::pi / 2.0) <= 10.0 * b.error_estimate + 1e-15);
  const auto c = quad_finite([](double v) { return cplx(v); }, EndpointSingularity::none, 1.0, tol);
  CHECK(std::abs(c.value - 0.5) < 1e-15);
  CHECK(c.evaluations >= 1);
  CHECK(c.error_estimate >= 0.0);
}

TEST_CASE("quad_exp_tail examples") {
  const Tolerance tol;
  const auto a = quad_exp_tail([](double v) { return cplx(std::exp(-v)); }, 1.0, 0.0, tol);
  CHECK(std::abs(a.value - 1.0) < 1e-12);
  const auto b = quad_exp_tail([](double v) { return cplx(std::exp(-2.0 * v) * std::cos(v)); }, 2.0, 0.0, tol);
  CHECK(std::abs(b.value - 0.4) < 1e-12);
  const auto c = quad_exp_tail([](double v) { return cplx(std::exp(-v)); }, 1.0, 1.0, tol);
  CHECK(std::abs(c.value - std::exp(-1.0)) < 1e-12);
  for (const auto* r : {&a, &b, &c}) CHECK(r->error_estimate >= 0.0);
  CHECK(std::abs(a.value - 1.0) <= 10.0 * a.error_estimate + 1e-15);
  CHECK_THROWS_AS(quad_exp_tail([](double) { return cplx(0.0); }, 0.0, 0.0, tol), DomainError);
  CHECK_THROWS_AS(quad_exp_tail([](double) { return cplx(0.0); }, -1.0, 0.0, tol), DomainError);
}

TEST_CASE("gauss_legendre examples") {
  CHECK(std::abs(gauss_legendre([](double) { return cplx(1.0); }, 0.0, 1.0, 8) - 1.0) < 1e-15);
  CHECK(std::abs(gauss_legendre([](double t) { return cplx(t); }, -1.0, 1.0, 8)) < 1e-15);
  auto gauss = [](double t) { return cplx(std::exp(-t * t)); };
  const cplx fixed = gauss_legendre(gauss, -1.0, 1.0, 32);
  const cplx adaptive = quad_interval(gauss, -1.0, 1.0, Tolerance{1e-15, 1e-15, 60}).value;
  CHECK(std::abs(fixed - adaptive) < 1e-13);
  CHECK(std::abs(fixed - std::sqrt(std::numbers::pi) * std::erf(1.0)) < 1e-14);
  CHECK_THROWS_AS(gauss_legendre(gauss, 0.0, 1.0, 1), DomainError);
}

TEST_CASE("gauss_legendre rules integrate polynomials of degree 2n - 1 exactly") {
  for (int n : {2, 5, 16, 40}) {
    const auto& rule = gauss_legendre_rule(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    for (int p = 0; p < 2 * n; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(std::abs(s - exact) < 1e-14);
    }
  }
}

TEST_CASE("singular substitution agrees with the explicit w^2 rewrite") {
  testing::Engine g(3);
  const Tolerance tol;
  for (int i = 0; i < 20; ++i) {
    // f(v) = (p0 + p1 v + p2 v^2) / (sqrt(v) (q0 + q1 v + v^2)) with q0, q1 > 0
    const double p0 = testing::pick_real(g, -2.0, 2.0), p1 = testing::pick_real(g, -2.0, 2.0);
    const double p2 = testing::pick_real(g, -2.0, 2.0);
    const double q0 = testing::pick_real(g, 0.1, 3.0), q1 = testing::pick_real(g, 0.0, 3.0);
    const double b = testing::pick_real(g, 0.2, 4.0);
    auto rational = [=](double v) { return (p0 + p1 * v + p2 * v * v) / (q0 + q1 * v + v * v); };
    const auto flagged = quad_finite([&](double v) { return cplx(rational(v) / std::sqrt(v)); },
                                     EndpointSingularity::inverse_sqrt_at_0, b, tol);
    const auto rewritten = quad_finite([&](double w) { return cplx(2.0 * rational(w * w)); },
                                       EndpointSingularity::none, std::sqrt(b), tol);
    CHECK(std::abs(flagged.value - rewritten.value) <= flagged.error_estimate + rewritten.error_estimate);
  }
}

TEST_CASE("refinement cap raises a convergence error with the best estimate") {
  const Tolerance tight{1e-14, 1e-14, 2};
  try {
    quad_interval([](double v) { return cplx(std::sin(1.0 / v)); }, 1e-4, 1.0, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.best_estimate().real()));
    CHECK(e.error_bound() > 0.0);
  }
}

TEST_CASE("compensated summation recovers cancelled low-order bits") {
  CompensatedSum<double> s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-12));
  CompensatedSum<cplx> z;
  z += cplx(1e20, -1e20);
  z += cplx(3.0, 4.0);
  z += cplx(-1e20, 1e20);
  CHECK(z.value() == cplx(3.0, 4.0));
}

}  // TEST_SUITE

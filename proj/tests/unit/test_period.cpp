#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "generators.hpp"
#include "qmf/period.hpp"

using namespace qmf;
using namespace qmf::period;
using modular::cusp_matrix;
using modular::gamma_constant;
using theta::family;

namespace {

constexpr std::array<FamilyName, 3> kAll = {FamilyName::F, FamilyName::G, FamilyName::H};

PeriodOptions forced(Route r) {
  PeriodOptions o;
  o.route = r;
  return o;
}

}  // namespace

TEST_SUITE("period") {

TEST_CASE("u values near the cusp 11/12") {
  const auto a = u_value(FamilyName::G, cplx(11.0 / 12.0, 1e-3));
  CHECK(a.route == Route::split_integral);
  CHECK(std::abs(a.value[0] - cplx(34.06349943, -1.54026658)) < 1e-6);
  const auto b = u_value(FamilyName::G, cplx(11.0 / 12.0, 1e-2));
  CHECK(std::abs(b.value[3] - cplx(-0.69157228, 1.38696416)) < 1e-6);
}

TEST_CASE("u minus the growing term at height 1e-4") {
  const double t = 1e-4;
  const auto u = u_value(FamilyName::G, cplx(11.0 / 12.0, t));
  const cplx g = gamma_constant(family(FamilyName::G), 0, cusp_matrix(Rational(11, 12)));
  CHECK(std::abs(u.value[0] - g / (std::numbers::pi * t) - cplx(-0.8445552866, -1.5333698829)) < 1e-8);
}

TEST_CASE("route selection") {
  CHECK(u_value(FamilyName::F, cplx(0.1, 0.2)).route == Route::direct_qseries);
  CHECK(u_value(FamilyName::F, cplx(0.1, 0.01)).route == Route::split_integral);
  CHECK(u_value(FamilyName::F, cplx(0.1, 0.01)).anchor.has_value());
  CHECK_THROWS_AS(u_value(FamilyName::F, cplx(0.1, 0.0)), DomainError);
  CHECK_THROWS_AS(u_value(FamilyName::F, cplx(0.1, -1.0)), DomainError);
}

TEST_CASE("direct and split routes agree at height 0.2") {
  for (auto f : kAll) {
    const cplx tau(0.37, 0.2);
    const auto d = u_value(f, tau, {}, forced(Route::direct_qseries));
    const auto s = u_value(f, tau, {}, forced(Route::split_integral));
    for (int j = 0; j < 4; ++j) CHECK(std::abs(d.value[j] - s.value[j]) < 1e-9);
  }
}

TEST_CASE("direct and split routes agree on the overlap window") {
  testing::Engine g(67);
  for (auto f : kAll) {
    for (int i = 0; i < 30; ++i) {
      const cplx tau = testing::pick_tau(g, 0.05, 0.5);
      const auto d = u_value(f, tau, {}, forced(Route::direct_qseries));
      const auto s = u_value(f, tau, {}, forced(Route::split_integral));
      for (int j = 0; j < 4; ++j) {
        INFO(theta::to_string(f) << j << " at " << tau);
        CHECK(std::abs(d.value[j] - s.value[j]) < 1e-9);
      }
    }
  }
}

TEST_CASE("u is holomorphic") {
  const double h = 1e-4;
  for (auto f : kAll) {
    for (const cplx tau : {cplx(0.31, 0.4), cplx(-0.2, 0.03)}) {
      // fourth-order central differences along x and y
      auto diff = [&](cplx e) {
        const auto p1 = u_value(f, tau + e).value, m1 = u_value(f, tau - e).value;
        const auto p2 = u_value(f, tau + 2.0 * e).value, m2 = u_value(f, tau - 2.0 * e).value;
        Vec4 d;
        for (int j = 0; j < 4; ++j) d[j] = (8.0 * (p1[j] - m1[j]) - (p2[j] - m2[j])) / (12.0 * h);
        return d;
      };
      const auto dx = diff(cplx(h, 0.0)), dy = diff(cplx(0.0, h));
      for (int j = 0; j < 4; ++j) {
        INFO(theta::to_string(f) << j << " at " << tau);
        CHECK(std::abs(dx[j] + cplx(0, 1) * dy[j]) < 1e-6 * std::max(1.0, std::abs(dx[j])));
      }
    }
  }
}

TEST_CASE("obstruction examples") {
  const auto rho = cusp_matrix(Rational(-1, 2));
  const auto a = obstruction_value(FamilyName::G, rho, cplx(11.0 / 12.0, 0.0));
  CHECK(std::abs(a.value[0] - cplx(0.48540561, -0.41339484)) < 1e-6);
  const auto b = obstruction_value(FamilyName::G, rho, cplx(11.0 / 12.0, 1e-2));
  CHECK(std::abs(b.value[2] - cplx(0.07430784, 0.09577127)) < 1e-6);
  CHECK_THROWS_AS(obstruction_value(FamilyName::G, rho, cplx(-0.5, 0.3)), DomainError);
}

TEST_CASE("obstruction does not depend on the split height") {
  for (auto f : kAll) {
    for (const auto& x : {Rational(-1, 2), Rational(3, 8), Rational(-11, 12)}) {
      const auto rho = cusp_matrix(x);
      PeriodOptions one, two;
      one.obstruction_split = 1.0;
      two.obstruction_split = 2.0;
      for (const cplx arg : {cplx(0.1, 0.0), cplx(0.7, 0.25)}) {
        const auto a = obstruction_value(f, rho, arg, {}, one);
        const auto b = obstruction_value(f, rho, arg, {}, two);
        for (int j = 0; j < 4; ++j) CHECK(std::abs(a.value[j] - b.value[j]) < 1e-10);
      }
    }
  }
}

TEST_CASE("obstruction is holomorphic off its cut") {
  const double h = 1e-4;
  const auto rho = cusp_matrix(Rational(-1, 2));
  for (auto f : kAll) {
    const cplx z(0.2, 0.15);
    const auto px = obstruction_value(f, rho, z + h).value, mx = obstruction_value(f, rho, z - h).value;
    const auto py = obstruction_value(f, rho, z + cplx(0, h)).value;
    const auto my = obstruction_value(f, rho, z - cplx(0, h)).value;
    for (int j = 0; j < 4; ++j) {
      const cplx dx = (px[j] - mx[j]) / (2.0 * h), dy = (py[j] - my[j]) / (2.0 * h);
      CHECK(std::abs(dx + cplx(0, 1) * dy) < 1e-6);
    }
  }
}

TEST_CASE("quantum values at 11/12 and 11/34") {
  const auto q = quantum_value(FamilyName::G, cusp_matrix(Rational(11, 12)));
  CHECK(std::abs(q.value[0] - cplx(-0.8418504490893570, -1.5326920704511053)) < 1e-10);
  CHECK(std::abs(q.gamma[0] - 0.10974649141040139) < 1e-15);
  CHECK(std::abs(q.value[3] - cplx(-std::sqrt(2.0), std::sqrt(2.0))) < 1e-7);
  const auto r = quantum_value(FamilyName::G, cusp_matrix(Rational(11, 34)));
  CHECK(std::abs(r.value[1] - cplx(-1.30588754, -1.76561858)) < 1e-6);
  CHECK_THROWS_AS(quantum_value(FamilyName::G, cusp_matrix(Rational(1, 3))), DomainError);
}

TEST_CASE("vertical limits approach the quantum value monotonically") {
  const auto x = cusp_matrix(Rational(11, 12));
  const auto q = quantum_value(FamilyName::G, x);
  for (int j = 0; j < 4; ++j) {
    double previous = INFINITY;
    // the gap is linear in t, so it drops below 1e-6 only past t = 1e-5
    for (double t : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9}) {
      const auto u = u_value(FamilyName::G, cplx(11.0 / 12.0, t));
      const double err = std::abs(u.value[j] - q.gamma[j] / (std::numbers::pi * t) - q.value[j]);
      CHECK(err < previous);
      previous = err;
    }
    CHECK(previous < 1e-6);
  }
}

TEST_CASE("deformed paths shift the limit by i B gamma / pi") {
  const auto heights = default_deformation_heights();
  REQUIRE(heights.size() == 7);
  for (std::size_t i = 1; i < heights.size(); ++i) CHECK(heights[i] < heights[i - 1]);
  const auto x = cusp_matrix(Rational(11, 12));
  CHECK(path_deformation_check(FamilyName::G, 0, x, 1.0, heights).residual < 1e-5);
  CHECK(path_deformation_check(FamilyName::G, 0, x, 0.0, heights).residual < 1e-7);
  for (double b : {-1.0, 2.0}) {
    const auto r = path_deformation_check(FamilyName::F, 1, cusp_matrix(Rational(1, 4)), b, heights);
    CHECK(r.residual < 1e-7);
  }
}

TEST_CASE("Neville extrapolation is exact on polynomials") {
  const std::vector<double> h = {0.4, 0.2, 0.1, 0.05};
  std::vector<cplx> f;
  for (double v : h) f.push_back(cplx(3.0 - 2.0 * v + v * v * v, v));
  CHECK(std::abs(extrapolate_to_zero(h, f) - cplx(3.0, 0.0)) < 1e-13);
}

TEST_CASE("modular transformation examples") {
  const auto r = modular::Gamma02Element::R();
  CHECK(verify_modular(FamilyName::G, r, cplx(11.0 / 12.0, 1e-3)) < 1e-5);
  for (const cplx tau : {cplx(0.1, 0.3), cplx(-0.4, 0.02), cplx(0.49, 2.0)}) {
    CHECK(verify_modular(FamilyName::F, modular::Gamma02Element::T(), tau) < 1e-12);
  }
  CHECK(verify_modular(FamilyName::H, r * modular::Gamma02Element::T() * r, cplx(0.23, 0.41)) < 1e-8);
}

TEST_CASE("modular transformation on random elements") {
  testing::Engine g(71);
  for (int i = 0; i < 15; ++i) {
    const auto m = testing::random_word_element(g, static_cast<int>(testing::pick(g, 1, 4)));
    const cplx tau = testing::pick_tau(g, 0.1, 1.0);
    for (auto f : kAll) {
      INFO(theta::to_string(f) << " " << to_string(m) << " at " << tau);
      CHECK(verify_modular(f, m, tau) < 1e-8);
    }
  }
}

TEST_CASE("quantum transformation examples") {
  const auto r = modular::Gamma02Element::R();
  CHECK(act(r, Rational(11, 12)) == Rational(11, 34));
  CHECK(verify_quantum(FamilyName::G, r, cusp_matrix(Rational(11, 12))) < 1e-6);
  CHECK(verify_quantum(FamilyName::F, modular::Gamma02Element::T(), cusp_matrix(Rational(1, 2))) < 1e-10);
}

TEST_CASE("quantum transformation at 20 Farey points for family H") {
  const auto pts = even_farey_points(40, Rational(-1), Rational(1));
  testing::Engine g(73);
  int done = 0;
  while (done < 20) {
    const Rational x = pts[testing::pick(g, 0, static_cast<long>(pts.size()) - 1)];
    if (x == Rational(-1, 2)) continue;
    INFO(to_string(x));
    CHECK(verify_quantum(FamilyName::H, modular::Gamma02Element::R(), cusp_matrix(x)) < 1e-6);
    ++done;
  }
}

TEST_CASE("even Farey points") {
  const auto pts = even_farey_points(40, Rational(-1), Rational(1));
  long expected = 0;
  for (long q = 2; q <= 40; q += 2) {
    for (long p = -q + 1; p < q; ++p) expected += std::gcd(p, q) == 1;
  }
  CHECK(static_cast<long>(pts.size()) == expected);
  CHECK(pts.size() == 346);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].denominator() % 2 == 0);
    if (i > 0) CHECK(pts[i - 1] < pts[i]);
  }
  const auto small = even_farey_points(4, Rational(0), Rational(1));
  CHECK(small == std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(3, 4)});
}

TEST_CASE("side of cusp and exact action") {
  const modular::Gamma02Element m(1, -1, 12, -11);
  CHECK(side_of_cusp(m, 0.95) == 1);
  CHECK(side_of_cusp(m, 0.9) == -1);
  CHECK_THROWS_AS(side_of_cusp(m, 11.0 / 12.0), DomainError);
  CHECK(act(m, Rational(0)) == Rational(1, 11));
}

}  // TEST_SUITE

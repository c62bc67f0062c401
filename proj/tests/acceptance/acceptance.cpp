// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>

#include "generators.hpp"
#include "qmf/io.hpp"
#include "qmf/period.hpp"

using namespace qmf;
using kernel::cplx;
using nlohmann::json;
using period::Vec4;
using theta::FamilyName;

namespace {

constexpr std::array<FamilyName, 3> kAll = {FamilyName::F, FamilyName::G, FamilyName::H};
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const double kCusp = 11.0 / 12.0;

Outcome near_cusp_values(const json& ref) {
  Timer timer;
  const auto half = modular::cusp_matrix(Rational(-1, 2));
  const auto& near = ref.at("near_cusp");
  const double tol = near.at("tolerance").get<double>();
  double worst = 0.0;
  int entries = 0;
  for (const auto& row : near.at("rows")) {
    const cplx tau(kCusp, std::pow(10.0, -row.at("k").get<int>()));
    const std::array<Vec4, 3> computed = {period::u_value(FamilyName::G, tau).value,
                                          period::u_value(FamilyName::G, tau / (2.0 * tau + 1.0)).value,
                                          period::obstruction_value(FamilyName::G, half, tau).value};
    const std::array<const char*, 3> cols = {"u", "u_transformed", "obstruction"};
    for (int c = 0; c < 3; ++c) {
      const Vec4 expected = io::vec4_from_json(row.at(cols[c]));
      for (int j = 0; j < 4; ++j, ++entries) worst = std::max(worst, std::abs(computed[c][j] - expected[j]));
    }
  }
  const double t = timer.seconds();
  return {entries == 48 && worst < tol && t <= 300.0,
          std::to_string(entries) + " entries, max |diff| " + sci(worst) + " (< " + sci(tol) + "), " +
              sci(t) + " s (<= 300 s)"};
}

Outcome subtracted_values(const json& ref) {
  const auto& sub = ref.at("subtracted");
  const double tol = sub.at("tolerance").get<double>();
  const cplx gamma = modular::gamma_constant(theta::family(FamilyName::G), 0, modular::cusp_matrix(Rational(11, 12)));
  double worst = 0.0;
  int n = 0;
  for (const auto& row : sub.at("rows")) {
    const double t = std::pow(10.0, -row.at("k").get<int>());
    const cplx v = period::u_value(FamilyName::G, cplx(kCusp, t)).value[0] - gamma / (kPi * t);
    worst = std::max(worst, std::abs(v - io::complex_from_json(row.at("value"))));
    ++n;
  }
  return {n == 4 && worst < tol, std::to_string(n) + " values, max |diff| " + sci(worst) + " (< " + sci(tol) + ")"};
}

Outcome quantum_values(const json& ref) {
  const auto& q = ref.at("quantum");
  const double tol = q.at("tolerance").get<double>();
  const std::array<Vec4, 3> computed = {
      period::quantum_value(FamilyName::G, modular::cusp_matrix(Rational(11, 12))).value,
      period::quantum_value(FamilyName::G, modular::cusp_matrix(Rational(11, 34))).value,
      period::obstruction_value(FamilyName::G, modular::cusp_matrix(Rational(-1, 2)), cplx(kCusp, 0.0)).value};
  const std::array<const char*, 3> cols = {"quantum_11_12", "quantum_11_34", "obstruction_11_12"};
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    const Vec4 expected = io::vec4_from_json(q.at(cols[c]));
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(computed[c][j] - expected[j]));
  }
  return {worst < tol, "12 entries, max |diff| " + sci(worst) + " (< " + sci(tol) + ")"};
}

Outcome high_precision_value(const json& ref) {
  const auto& hp = ref.at("quantum_high_precision");
  const int j = hp.at("component").get<int>();
  const int digits = hp.at("digits").get<int>();
  const cplx expected(std::stod(hp.at("value_text")[0].get<std::string>()),
                      std::stod(hp.at("value_text")[1].get<std::string>()));
  const cplx v = period::quantum_value(FamilyName::G, modular::cusp_matrix(parse_rational(hp.at("x"))))
                     .value[j];
  const double err = std::max(std::abs(v.real() - expected.real()), std::abs(v.imag() - expected.imag()));
  const double bound = 0.5 * std::pow(10.0, -digits);
  return {err < bound, "max component error " + sci(err) + " (< " + sci(bound) + ", " + std::to_string(digits) +
                           " decimals)"};
}

Outcome gamma_value(const json& ref) {
  const auto& g = ref.at("gamma");
  const double tol = g.at("tolerance").get<double>();
  const cplx v = modular::gamma_constant(theta::family(FamilyName::G), 0, modular::cusp_matrix(Rational(11, 12)));
  const double d1 = std::abs(v - g.at("value").get<double>());
  const double d2 = std::abs(v - std::atanh(1.0 / std::sqrt(3.0)) / 6.0);
  return {d1 <= tol && d2 <= tol, "|diff| " + sci(d1) + ", closed form |diff| " + sci(d2) + " (<= " + sci(tol) + ")"};
}

Outcome coefficient_identities() {
  Timer timer;
  int agree = 0;
  for (int id = 1; id <= 12; ++id) {
    for (auto f : kAll) {
      const auto& fam = theta::family(f);
      if (std::find(fam.l_ids.begin(), fam.l_ids.end(), id) == fam.l_ids.end()) continue;
      const int j = fam.component_of_series(id);
      agree += theta::offset_l_series(fam, j, 40) == theta::false_theta_series(fam, j, 40);
    }
  }
  const double t = timer.seconds();
  return {agree == 12 && t <= 60.0, std::to_string(agree) + "/12 exact to order 40, " + sci(t) + " s (<= 60 s)"};
}

Outcome shadow_cancellation() {
  testing::Engine g(101);
  double worst = 0.0;
  for (auto f : kAll) {
    const auto& fam = theta::family(f);
    for (int i = 0; i < 10; ++i) {
      const cplx tau = testing::pick_tau(g, 0.2, 1.5);
      for (int j = 0; j < 4; ++j) {
        worst = std::max(worst, std::abs(theta::completed_family_value(fam, j, tau) - theta::mock_maass_value(fam, j, tau)));
      }
    }
  }
  return {worst < 1e-10, "30 points x 4 components, max |completed - mock| " + sci(worst) + " (< 1e-10)"};
}

double max_abs(const Eigen::Matrix4cd& m) { return m.cwiseAbs().maxCoeff(); }

Outcome multiplier_cross_check() {
  testing::Engine g(103);
  double fold = 0.0, rep = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto m = testing::random_element_with_c(g, 40);
    for (auto f : kAll) fold = std::max(fold, max_abs(modular::multiplier(f, m).m - modular::fold_multiplier(theta::family(f), m).m));
  }
  for (int i = 0; i < 200; ++i) {
    const auto m1 = testing::random_word_element(g, static_cast<int>(testing::pick(g, 0, 6)));
    const auto m2 = testing::random_word_element(g, static_cast<int>(testing::pick(g, 0, 6)));
    for (auto f : kAll) {
      rep = std::max(rep, max_abs(modular::multiplier(f, m1 * m2).m - modular::multiplier(f, m1).m * modular::multiplier(f, m2).m));
    }
  }
  return {fold < 1e-11 && rep < 1e-12,
          "folded max |diff| " + sci(fold) + " (< 1e-11), representation max |diff| " + sci(rep) + " (< 1e-12)"};
}

Outcome modular_transformation() {
  testing::Engine g(107);
  double worst = 0.0;
  for (auto f : kAll) {
    for (int i = 0; i < 50; ++i) {
      const auto m = testing::random_element_with_c(g, 40);
      const cplx tau = testing::pick_tau(g, 0.1, 1.0);
      worst = std::max(worst, period::verify_modular(f, m, tau));
    }
  }
  return {worst < 1e-8, "150 samples with |c| <= 40, max residual " + sci(worst) + " (< 1e-8)"};
}

Outcome quantum_transformation() {
  const auto r = modular::Gamma02Element::R();
  double worst = 0.0;
  int n = 0;
  for (const auto& x : period::even_farey_points(40, Rational(-1), Rational(1))) {
    if (x == Rational(-1, 2)) continue;
    worst = std::max(worst, period::verify_quantum(FamilyName::G, r, modular::cusp_matrix(x)));
    ++n;
  }
  return {worst < 1e-6, std::to_string(n) + " cusps, max residual " + sci(worst) + " (< 1e-6)"};
}

Outcome laplace_eigenvalue() {
  const double h = 1e-3;
  const std::array<cplx, 5> taus = {cplx(0.3, 1.1), cplx(-0.41, 0.55), cplx(0.07, 0.8), cplx(0.45, 1.4), cplx(-0.2, 0.35)};
  double worst = 0.0;
  for (auto f : kAll) {
    const auto& fam = theta::family(f);
    for (int j = 0; j < 4; ++j) {
      auto u = [&](cplx z) { return theta::mock_maass_value(fam, j, z); };
      for (const cplx tau : taus) {
        const cplx v = u(tau);
        cplx lap = 0.0;
        for (const cplx e : {cplx(h, 0.0), cplx(0.0, h)}) {
          lap += -u(tau + 2.0 * e) + 16.0 * u(tau + e) - 30.0 * v + 16.0 * u(tau - e) - u(tau - 2.0 * e);
        }
        lap *= -tau.imag() * tau.imag() / (12.0 * h * h);
        worst = std::max(worst, std::abs(lap - 0.25 * v) / std::abs(0.25 * v));
      }
    }
  }
  return {worst < 1e-5, "5 points x 12 components at h = 1e-3, max relative error " + sci(worst) + " (< 1e-5)"};
}

Outcome path_deformation() {
  const auto x = modular::cusp_matrix(Rational(11, 12));
  double worst = 0.0;
  for (double b : {-1.0, 1.0}) {
    worst = std::max(worst, period::path_deformation_check(FamilyName::G, 0, x, b, period::default_deformation_heights()).residual);
  }
  return {worst < 1e-5, "B = -1, 1: max residual " + sci(worst) + " (< 1e-5)"};
}

}  // namespace

int main() {
  std::ifstream in(QMF_TEST_DATA);
  if (!in) {
    std::fprintf(stderr, "cannot open %s\n", QMF_TEST_DATA);
    return 2;
  }
  const json ref = json::parse(in);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"u, transformed u and obstruction near the cusp", [&] { return near_cusp_values(ref); }},
      {"u minus the growing term", [&] { return subtracted_values(ref); }},
      {"quantum and obstruction values at the cusp", [&] { return quantum_values(ref); }},
      {"high-precision quantum value", [&] { return high_precision_value(ref); }},
      {"gamma constant", [&] { return gamma_value(ref); }},
      {"exact coefficient identities", coefficient_identities},
      {"shadow cancellation", shadow_cancellation},
      {"multiplier cross-check", multiplier_cross_check},
      {"modular transformation of u", modular_transformation},
      {"quantum transformation under R", quantum_transformation},
      {"Laplace eigenvalue 1/4", laplace_eigenvalue},
      {"path deformation law", path_deformation},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "pool.hpp"
#include "qmf/qseries.hpp"
#include "qmf/theta.hpp"

namespace qmf::cli {

namespace {

using modular::Gamma02Element;
using theta::FamilyName;

constexpr std::array<FamilyName, 3> kFamilies = {FamilyName::F, FamilyName::G, FamilyName::H};

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// x a + y b = g
long ext_gcd(long a, long b, long& x, long& y) {
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  x = x0;
  y = y0;
  return a;
}

double max_abs(const Eigen::Matrix4cd& m) { return m.cwiseAbs().maxCoeff(); }

CheckResult finish(std::string name, double residual, double threshold, long samples) {
  return {std::move(name), residual < threshold, residual, threshold, samples};
}

std::vector<CheckResult> coeff_checks() {
  constexpr long kOrder = 40;
  std::vector<CheckResult> out;
  for (int id = 1; id <= 12; ++id) {
    {
      const auto [f, j] = series_component(id);
      const auto& fam = theta::family(f);
      const auto lhs = theta::offset_l_series(fam, j, kOrder);
      const auto rhs = theta::false_theta_series(fam, j, kOrder);
      double residual = 0.0;
      const auto diff = lhs - rhs;
      for (const auto& c : diff.coefficients()) residual = std::max(residual, std::abs(c.get_d()));
      if (lhs != rhs && residual == 0.0) residual = 1.0;
      CheckResult r;
      r.check = "coeffs.L" + std::to_string(id) + "." + theta::to_string(f) + std::to_string(j);
      r.pass = lhs == rhs;
      r.max_residual = residual;
      r.threshold = 0.0;
      r.samples = kOrder;
      out.push_back(r);
    }
  }
  return out;
}

std::vector<CheckResult> shadow_checks(const SuiteSettings& s) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(s.seed ^ 0x5d);
  for (auto f : kFamilies) {
    const auto& fam = theta::family(f);
    std::vector<kernel::cplx> taus;
    for (int i = 0; i < 10; ++i) taus.emplace_back(uniform_real(rng, -0.5, 0.5), uniform_real(rng, 0.2, 1.5));
    std::vector<double> res(taus.size());
    parallel_for(taus.size(), s.threads, [&](std::size_t i) {
      double r = 0.0;
      for (int j = 0; j < 4; ++j) {
        r = std::max(r, std::abs(theta::completed_family_value(fam, j, taus[i], s.tol) -
                                 theta::mock_maass_value(fam, j, taus[i], s.tol)));
      }
      res[i] = r;
    });
    out.push_back(finish("shadows." + theta::to_string(f), *std::max_element(res.begin(), res.end()),
                         1e-10, static_cast<long>(taus.size())));
  }
  return out;
}

std::vector<CheckResult> multiplier_checks(const SuiteSettings& s) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(s.seed ^ 0x3c);
  for (auto f : kFamilies) {
    const auto& fam = theta::family(f);
    const Eigen::Vector4d w = modular::invariant_form(fam);
    double fold = 0.0, form = 0.0, rep = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto m = random_gamma02(rng, 40);
      const auto psi = modular::multiplier(f, m).m;
      fold = std::max(fold, max_abs(modular::fold_multiplier(fam, m).m - psi));
      form = std::max(form, modular::unitarity_defect(psi, w));
    }
    for (int i = 0; i < 200; ++i) {
      const auto a = random_gamma02(rng, 40);
      const auto b = random_gamma02(rng, 40);
      const auto lhs = modular::multiplier(f, a * b).m;
      const auto rhs = modular::multiplier(f, a).m * modular::multiplier(f, b).m;
      rep = std::max(rep, max_abs(lhs - rhs));
    }
    const std::string tag = theta::to_string(f);
    out.push_back(finish("multipliers.fold." + tag, fold, 1e-11, 50));
    out.push_back(finish("multipliers.invariant_form." + tag, form, 1e-12, 50));
    out.push_back(finish("multipliers.representation." + tag, rep, 1e-12, 200));
  }
  long failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto m = random_gamma02(rng, 200);
    if (!(modular::evaluate_word(modular::decompose(m)) == m)) ++failures;
  }
  out.push_back(finish("multipliers.decompose", static_cast<double>(failures), 0.5, 1000));
  return out;
}

std::vector<CheckResult> modular_checks(const SuiteSettings& s) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(s.seed ^ 0x71);
  for (auto f : kFamilies) {
    std::vector<std::pair<Gamma02Element, kernel::cplx>> cases;
    while (cases.size() < 50) {
      const auto m = random_gamma02(rng, 40);
      if (m.c() == 0) continue;
      cases.emplace_back(m, kernel::cplx(uniform_real(rng, -0.5, 0.5), uniform_real(rng, 0.3, 1.2)));
    }
    std::vector<double> res(cases.size());
    parallel_for(cases.size(), s.threads, [&](std::size_t i) {
      res[i] = period::verify_modular(f, cases[i].first, cases[i].second, s.tol);
    });
    out.push_back(finish("modular." + theta::to_string(f), *std::max_element(res.begin(), res.end()),
                         1e-8, static_cast<long>(cases.size())));
  }
  return out;
}

std::vector<CheckResult> quantum_checks(const SuiteSettings& s) {
  std::vector<CheckResult> out;
  std::vector<Rational> points;
  for (const auto& x : period::even_farey_points(40, Rational(-1), Rational(1))) {
    if (x != Rational(-1, 2)) points.push_back(x);
  }
  for (auto f : kFamilies) {
    std::vector<double> res(points.size());
    parallel_for(points.size(), s.threads, [&](std::size_t i) {
      res[i] = period::verify_quantum(f, Gamma02Element::R(), modular::cusp_matrix(points[i]), s.tol);
    });
    out.push_back(finish("quantum.R." + theta::to_string(f), *std::max_element(res.begin(), res.end()),
                         1e-6, static_cast<long>(points.size())));
  }
  return out;
}

}  // namespace

Gamma02Element random_gamma02(std::mt19937_64& rng, long c_max) {
  if (uniform(rng, 0, 7) == 0) {
    const auto t = Gamma02Element::T(uniform(rng, -5, 5));
    return uniform(rng, 0, 1) ? t : Gamma02Element::neg() * t;
  }
  long c = 0;
  while (c == 0) c = 2 * uniform(rng, -c_max / 2, c_max / 2);
  long d = 0;
  while (std::gcd(c, d) != 1) d = uniform(rng, -61, 61);
  long x = 0, y = 0;
  const long g = ext_gcd(d, c, x, y);
  if (g == -1) {
    x = -x;
    y = -y;
  }
  // x d + y c = 1, so a = x, b = -y.
  const long k = uniform(rng, -3, 3);
  return Gamma02Element(x + k * c, -y + k * d, c, d);
}

std::pair<FamilyName, int> series_component(int id) {
  for (auto f : kFamilies) {
    const auto& ids = theta::family(f).l_ids;
    for (int j = 0; j < 4; ++j) {
      if (ids[j] == id) return {f, j};
    }
  }
  throw DomainError("series id must be in 1..12");
}

bool is_suite(const std::string& suite) {
  return suite == "coeffs" || suite == "shadows" || suite == "multipliers" || suite == "modular" ||
         suite == "quantum" || suite == "all";
}

std::vector<CheckResult> run_suite(const std::string& suite, const SuiteSettings& settings) {
  if (!is_suite(suite)) throw DomainError("unknown suite: " + suite);
  std::vector<CheckResult> out;
  auto append = [&out](std::vector<CheckResult> r) { out.insert(out.end(), r.begin(), r.end()); };
  const bool all = suite == "all";
  if (all || suite == "coeffs") append(coeff_checks());
  if (all || suite == "shadows") append(shadow_checks(settings));
  if (all || suite == "multipliers") append(multiplier_checks(settings));
  if (all || suite == "modular") append(modular_checks(settings));
  if (all || suite == "quantum") append(quantum_checks(settings));
  return out;
}

}  // namespace qmf::cli

#include "qmf/theta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

namespace qmf::theta {

namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Rational frac(const Rational& r) {
  return r - Rational(floor_div(r.numerator(), r.denominator()));
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

int sign_of(const Rational& r) { return r.numerator() > 0 ? 1 : (r.numerator() < 0 ? -1 : 0); }

IntLinear reduced(long p, long q) {
  const long g = std::gcd(p, q);
  return g == 0 ? IntLinear{0, 0} : IntLinear{p / g, q / g};
}

}  // namespace

QVec reduce_mod1(const QVec& v) { return {frac(v.x), frac(v.y)}; }

bool congruent_mod1(const QVec& a, const QVec& b) { return reduce_mod1(a) == reduce_mod1(b); }

QuadraticForm::QuadraticForm(int alpha1, int alpha2) : alpha1_(alpha1), alpha2_(alpha2) {
  if (alpha1 <= 0 || alpha2 <= 0) throw DomainError("QuadraticForm: alpha1, alpha2 must be positive");
  const long prod = static_cast<long>(alpha1) * alpha2;
  const long r = std::lround(std::sqrt(static_cast<double>(prod)));
  for (long s = std::max(0L, r - 1); s <= r + 1; ++s) {
    if (s * s == prod) throw DomainError("QuadraticForm: form is isotropic over Q");
  }
}

std::array<std::array<int, 2>, 2> QuadraticForm::gram() const {
  return {{{2 * alpha1_, 0}, {0, -2 * alpha2_}}};
}

Rational QuadraticForm::Q(const QVec& n) const {
  return Rational(alpha1_) * n.x * n.x - Rational(alpha2_) * n.y * n.y;
}

Rational QuadraticForm::B(const QVec& n, const QVec& m) const {
  return Rational(2 * alpha1_) * n.x * m.x - Rational(2 * alpha2_) * n.y * m.y;
}

int IntLinear::sign(const QVec& n) const { return sign_of(Rational(p) * n.x + Rational(q) * n.y); }

ConePair ConePair::from_directions(const QuadraticForm& form, std::array<long, 2> u1,
                                   std::array<long, 2> u2) {
  auto make = [&](std::array<long, 2> u) {
    const double a1 = form.alpha1();
    const double a2 = form.alpha2();
    const long qu = form.alpha1() * u[0] * u[0] - form.alpha2() * u[1] * u[1];
    if (qu >= 0) throw DomainError("ConePair: direction must have negative norm");
    if (u[1] <= 0) throw DomainError("ConePair: second component must be positive");
    const double s = 1.0 / std::sqrt(static_cast<double>(-qu));
    ConeVector v;
    v.direction = u;
    v.c = {s * u[0], s * u[1]};
    v.c_perp = {std::sqrt(a2) * s * u[1] / std::sqrt(a1), std::sqrt(a1) * s * u[0] / std::sqrt(a2)};
    v.t = std::asinh(std::sqrt(a1) * v.c[0]);
    const double norm = form.Q(v.c[0], v.c[1]);
    if (std::abs(norm + 1.0) > 1e-14 || std::abs(std::cosh(v.t) - std::sqrt(a2) * v.c[1]) > 1e-14) {
      throw InternalError("ConePair: cone vector fails its parametrization check");
    }
    v.sign_b = reduced(2L * form.alpha1() * u[0], -2L * form.alpha2() * u[1]);
    v.sign_b_perp = reduced(u[1], -u[0]);
    return v;
  };
  ConePair pair{make(u1), make(u2)};
  if (!(pair.c1.t < pair.c2.t)) throw DomainError("ConePair: expected t1 < t2");
  return pair;
}

std::string to_string(FamilyName f) {
  switch (f) {
    case FamilyName::F: return "F";
    case FamilyName::G: return "G";
    case FamilyName::H: return "H";
  }
  return "?";
}

FamilyName parse_family(const std::string& s) {
  if (s == "F" || s == "f") return FamilyName::F;
  if (s == "G" || s == "g") return FamilyName::G;
  if (s == "H" || s == "h") return FamilyName::H;
  throw DomainError("unknown family '" + s + "' (expected F, G or H)");
}

int FamilySpec::component_of_series(int l_id) const {
  for (int j = 0; j < 4; ++j) {
    if (l_ids[j] == l_id) return j;
  }
  throw DomainError("series id does not belong to family " + to_string(name));
}

Rational FamilySpec::exponent_class(int j) const { return frac(form.Q(mus.at(j))); }

namespace {

FamilySpec make_family(FamilyName name) {
  const QVec half{Rational(1, 2), Rational(1, 2)};
  switch (name) {
    case FamilyName::F: {
      QuadraticForm form(8, 4);
      FamilySpec f{name,
                   form,
                   ConePair::from_directions(form, {-1, 2}, {1, 2}),
                   {},
                   half,
                   {3, 2, 4, 1},
                   {Rational(-33, 32), Rational(7, 32), Rational(-9, 32), Rational(-17, 32)},
                   {0.0, 0.0, 0.0, 0.0},
                   "",
                   0.0};
      for (int j = 0; j < 4; ++j) f.mus[j] = {Rational(2 * j + 1, 16), Rational(1, 8)};
      return f;
    }
    case FamilyName::G: {
      QuadraticForm form(6, 2);
      const double t2 = std::atanh(1.0 / std::sqrt(3.0));
      FamilySpec f{name,
                   form,
                   ConePair::from_directions(form, {-1, 3}, {1, 3}),
                   {},
                   half,
                   {5, 7, 8, 6},
                   {Rational(-1), Rational(1, 6), Rational(-1, 3), Rational(-1, 2)},
                   {2.0 * t2, 0.0, 0.0, 0.0},
                   "arctanh(1/sqrt(3))/pi",
                   t2 / kPi};
      for (int j = 0; j < 4; ++j) f.mus[j] = {Rational(j, 6), Rational(0)};
      return f;
    }
    case FamilyName::H: {
      QuadraticForm form(6, 4);
      FamilySpec f{name,
                   form,
                   ConePair::from_directions(form, {-2, 3}, {2, 3}),
                   {},
                   half,
                   {10, 11, 12, 9},
                   {Rational(-17, 16), Rational(5, 48), Rational(-19, 48), Rational(-9, 16)},
                   {0.0, 0.0, 0.0, 0.0},
                   "",
                   0.0};
      for (int j = 0; j < 4; ++j) f.mus[j] = {Rational(j, 6), Rational(1, 8)};
      return f;
    }
  }
  throw DomainError("unknown family");
}

}  // namespace

const FamilySpec& family(FamilyName name) {
  static const FamilySpec f = make_family(FamilyName::F);
  static const FamilySpec g = make_family(FamilyName::G);
  static const FamilySpec h = make_family(FamilyName::H);
  switch (name) {
    case FamilyName::F: return f;
    case FamilyName::G: return g;
    case FamilyName::H: return h;
  }
  throw DomainError("unknown family");
}

int weight_indefinite(const QVec& n, const ConePair& cones) {
  return 1 - cones.c1.sign_b.sign(n) * cones.c2.sign_b.sign(n);
}

int weight_indefinite_perp(const QVec& n, const ConePair& cones) {
  return 1 - cones.c1.sign_b_perp.sign(n) * cones.c2.sign_b_perp.sign(n);
}

std::vector<LatticePoint> enumerate_ellipse(const QuadraticForm& form, const QVec& mu,
                                            double radius) {
  const QVec m = reduce_mod1(mu);
  const double a1 = form.alpha1();
  const double a2 = form.alpha2();
  const double estimate = kPi * radius / std::sqrt(a1 * a2) + 4.0 * std::sqrt(radius) + 4.0;
  if (estimate > 1e8) throw ResourceError("lattice enumeration would exceed 1e8 points");
  std::vector<LatticePoint> out;
  const double slack = 1.0 + 1e-12;
  const double mx = to_double(m.x);
  const double my = to_double(m.y);
  const double r1 = std::sqrt(radius / a1);
  for (long i = static_cast<long>(std::floor(-r1 - mx)) - 1;
       i <= static_cast<long>(std::ceil(r1 - mx)) + 1; ++i) {
    const double n1 = mx + i;
    const double rest = radius - a1 * n1 * n1;
    if (rest < -1e-12 * radius) continue;
    const double r2 = std::sqrt(std::max(rest, 0.0) / a2);
    for (long k = static_cast<long>(std::floor(-r2 - my)) - 1;
         k <= static_cast<long>(std::ceil(r2 - my)) + 1; ++k) {
      const double n2 = my + k;
      if (form.majorant(n1, n2) > radius * slack) continue;
      LatticePoint p;
      p.n = {m.x + Rational(i), m.y + Rational(k)};
      p.q = form.Q(p.n);
      p.n1 = to_double(p.n.x);
      p.n2 = to_double(p.n.y);
      p.qd = to_double(p.q);
      out.push_back(p);
    }
  }
  return out;
}

std::vector<LatticePoint> enumerate_lattice(const QuadraticForm& form, const ConePair& cones,
                                            const QVec& mu, double q_bound) {
  if (!(q_bound > 0.0)) throw DomainError("enumerate_lattice: q_bound must be positive");
  const double radius = q_bound * std::cosh(2.0 * cones.max_abs_t());
  auto pts = enumerate_ellipse(form, mu, radius);
  std::vector<LatticePoint> out;
  out.reserve(pts.size());
  for (auto& p : pts) {
    if (std::abs(p.qd) <= q_bound * (1.0 + 1e-12)) out.push_back(std::move(p));
  }
  return out;
}

qseries::FormalSeries false_theta_series(const FamilySpec& fam, int j, long order) {
  if (order < 1) throw DomainError("false_theta_series: order must be positive");
  if (j < 0 || j > 3) throw DomainError("component index must be in 0..3");
  const Rational cls = fam.exponent_class(j);
  qseries::FormalSeries out(cls, order);
  const double bound = to_double(cls) + order;
  for (const QVec& mu : {fam.mus[j], fam.mus[j] + fam.lambda}) {
    for (const auto& p : enumerate_lattice(fam.form, fam.cones, mu, bound)) {
      if (p.n == QVec{}) continue;
      const int w = weight_indefinite(p.n, fam.cones);
      if (w == 0) continue;
      if (p.q.numerator() <= 0) throw InternalError("false_theta_series: weighted point with Q <= 0");
      const Rational idx = p.q - cls;
      if (idx.denominator() != 1) throw InternalError("false_theta_series: exponent outside its class");
      const long n = static_cast<long>(idx.numerator());
      if (n >= order) continue;
      mpq_class c(w, 2);
      c.canonicalize();
      out.add_to_coefficient(n, c);
    }
  }
  if (fam.const_terms[j] != 0.0) {
    out.add_symbolic(0, mpq_class(-2), fam.constant_symbol, fam.constant_symbol_value);
  }
  return out;
}

qseries::FormalSeries offset_l_series(const FamilySpec& fam, int j, long order) {
  const Rational cls = fam.exponent_class(j);
  const Rational shift = fam.offsets[j] - cls;
  if (shift.denominator() != 1) throw InternalError("offset_l_series: offset outside exponent class");
  const long s = static_cast<long>(shift.numerator());
  auto l = qseries::l_series(qseries::SeriesId(fam.l_ids[j]), order - s);
  auto out = l.times_q_power(fam.offsets[j]).with_offset(cls);
  if (fam.const_terms[j] != 0.0) {
    out.add_symbolic(0, mpq_class(-2), fam.constant_symbol, fam.constant_symbol_value);
  }
  return out;
}

namespace {

double epsilon_target(const Tolerance& tol) { return std::min(tol.abs_tol, tol.rel_tol); }

void check_height(double y, const ThetaOptions& opt) {
  if (!(y >= opt.min_imag)) {
    throw DomainError(
        "theta sums need Im(tau) >= " + std::to_string(opt.min_imag) +
        "; evaluate closer to the real line through period::u_value, which uses a modular "
        "transformation");
  }
}

bool is_integral(const QVec& mu) { return reduce_mod1(mu) == QVec{}; }

// Sum over the mock Maass theta lattice points; the functor receives (Q, weight/2).
template <class Term>
cplx mock_sum(const QuadraticForm& form, const ConePair& cones, const QVec& mu, double y,
              const Tolerance& tol, const ThetaOptions& opt, Term&& term) {
  const double bound = (std::log(1.0 / epsilon_target(tol)) + opt.log_margin) / (2.0 * kPi * y);
  kernel::CompensatedSum<cplx> sum;
  for (const auto& p : enumerate_lattice(form, cones, mu, bound)) {
    if (p.n == QVec{}) continue;
    const int w = weight_indefinite(p.n, cones);
    const int wp = weight_indefinite_perp(p.n, cones);
    if (p.qd > 0.0) {
      if (wp != 0) throw InternalError("mock theta: positive-norm point with perpendicular weight");
      if (w != 0) sum.add(term(p.qd, 0.5 * w));
    } else {
      if (w != 0) throw InternalError("mock theta: negative-norm point with cone weight");
      if (wp != 0) sum.add(term(p.qd, 0.5 * wp));
    }
  }
  return sum.value();
}

}  // namespace

cplx mock_theta_coset(const QuadraticForm& form, const ConePair& cones, const QVec& mu, cplx tau,
                      const Tolerance& tol, const ThetaOptions& opt) {
  const double x = tau.real();
  const double y = tau.imag();
  check_height(y, opt);
  const cplx s = mock_sum(form, cones, mu, y, tol, opt, [&](double q, double w) {
    const double k0 = kernel::bessel_k0(2.0 * kPi * std::abs(q) * y);
    return w * k0 * std::polar(1.0, 2.0 * kPi * q * x);
  });
  cplx value = std::sqrt(y) * s;
  if (is_integral(mu)) value += (cones.t2() - cones.t1()) * std::sqrt(y);
  return value;
}

cplx mock_theta_coset_dz(const QuadraticForm& form, const ConePair& cones, const QVec& mu,
                         cplx tau, const Tolerance& tol, const ThetaOptions& opt) {
  const double x = tau.real();
  const double y = tau.imag();
  check_height(y, opt);
  const double sy = std::sqrt(y);
  const cplx s = mock_sum(form, cones, mu, y, tol, opt, [&](double q, double w) {
    const auto k = kernel::bessel_k01(2.0 * kPi * std::abs(q) * y);
    const double bracket =
        2.0 * kPi * q * sy * k.k0 - k.k0 / (2.0 * sy) + 2.0 * kPi * std::abs(q) * sy * k.k1;
    return cplx(0.0, 0.5) * w * bracket * std::polar(1.0, 2.0 * kPi * q * x);
  });
  cplx value = s;
  if (is_integral(mu)) value += cplx(0.0, -0.25) * (cones.t2() - cones.t1()) / sy;
  return value;
}

cplx mock_maass_value(const FamilySpec& fam, int j, cplx tau, const Tolerance& tol,
                      const ThetaOptions& opt) {
  if (j < 0 || j > 3) throw DomainError("component index must be in 0..3");
  return mock_theta_coset(fam.form, fam.cones, fam.mus[j], tau, tol, opt) +
         mock_theta_coset(fam.form, fam.cones, fam.mus[j] + fam.lambda, tau, tol, opt);
}

cplx mock_maass_dz(const FamilySpec& fam, int j, cplx tau, const Tolerance& tol,
                   const ThetaOptions& opt) {
  if (j < 0 || j > 3) throw DomainError("component index must be in 0..3");
  return mock_theta_coset_dz(fam.form, fam.cones, fam.mus[j], tau, tol, opt) +
         mock_theta_coset_dz(fam.form, fam.cones, fam.mus[j] + fam.lambda, tau, tol, opt);
}

namespace {

// Center of exp(-2 pi y |Q| cosh(2(t - s0))) for the point with scaled coordinates (x1, x2).
double gaussian_center(double q, double x1, double x2) {
  return q > 0.0 ? std::atanh(x2 / x1) : std::atanh(x1 / x2);
}

// int_{t1}^{t2} exp(-pi y (2Q + B(n, c(t))^2)) dt
double completed_t_integral(double q, double x1, double x2, double t1, double t2, double y) {
  if (q == 0.0) return t2 - t1;
  const double s0 = gaussian_center(q, x1, x2);
  const double a = 2.0 * kPi * y * std::abs(q);
  auto g = [&](double t) { return std::exp(-a * std::cosh(2.0 * (t - s0))); };
  const double sigma = 1.0 / std::sqrt(4.0 * a);
  const double h = 3.0 * sigma;
  const double c = std::clamp(s0, t1, t2);
  const auto& rule = kernel::gauss_legendre_rule(20);
  auto panel = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * g(mid + half * rule.nodes[i]);
    return half * s;
  };
  kernel::CompensatedSum<double> sum;
  const double peak = g(c);
  for (double lo = c; lo < t2;) {
    const double hi = std::min(lo + h, t2);
    sum.add(panel(lo, hi));
    if (g(hi) < 1e-18 * peak) break;
    lo = hi;
  }
  for (double hi = c; hi > t1;) {
    const double lo = std::max(hi - h, t1);
    sum.add(panel(lo, hi));
    if (g(lo) < 1e-18 * peak) break;
    hi = lo;
  }
  return sum.value();
}

double gaussian_radius(const Tolerance& tol, const ThetaOptions& opt, double y, double t_max) {
  return (std::log(1.0 / epsilon_target(tol)) + opt.log_margin) /
         (2.0 * kPi * y * std::exp(-2.0 * t_max));
}

}  // namespace

cplx completed_theta_value(const QuadraticForm& form, const QVec& mu, const ConePair& cones,
                           cplx tau, const Tolerance& tol, const ThetaOptions& opt) {
  const double x = tau.real();
  const double y = tau.imag();
  check_height(y, opt);
  const double radius = gaussian_radius(tol, opt, y, cones.max_abs_t());
  const double sa1 = std::sqrt(static_cast<double>(form.alpha1()));
  const double sa2 = std::sqrt(static_cast<double>(form.alpha2()));
  kernel::CompensatedSum<cplx> sum;
  for (const auto& p : enumerate_ellipse(form, mu, radius)) {
    const double integral =
        completed_t_integral(p.qd, sa1 * p.n1, sa2 * p.n2, cones.t1(), cones.t2(), y);
    sum.add(integral * std::polar(1.0, 2.0 * kPi * p.qd * x));
  }
  return std::sqrt(y) * sum.value();
}

cplx completed_family_value(const FamilySpec& fam, int j, cplx tau, const Tolerance& tol,
                            const ThetaOptions& opt) {
  if (j < 0 || j > 3) throw DomainError("component index must be in 0..3");
  return completed_theta_value(fam.form, fam.mus[j], fam.cones, tau, tol, opt) +
         completed_theta_value(fam.form, fam.mus[j] + fam.lambda, fam.cones, tau, tol, opt);
}

cplx shadow_value(const QuadraticForm& form, const QVec& mu, const ConeVector& c0,
                  const ConePair& cones, cplx tau, const Tolerance& tol,
                  const ThetaOptions& opt) {
  const double x = tau.real();
  const double y = tau.imag();
  check_height(y, opt);
  const double t_max = std::max(cones.max_abs_t(), std::abs(c0.t));
  const double radius = gaussian_radius(tol, opt, y, t_max);
  const double sa1 = std::sqrt(static_cast<double>(form.alpha1()));
  const double sa2 = std::sqrt(static_cast<double>(form.alpha2()));
  const Tolerance inner{1e-300, 1e-14, tol.max_refinement};
  kernel::CompensatedSum<cplx> sum;
  for (const auto& p : enumerate_ellipse(form, mu, radius)) {
    const int s = c0.sign_b.sign(p.n) * c0.sign_b_perp.sign(p.n);
    if (s == 0) continue;
    const double s0 = gaussian_center(p.qd, sa1 * p.n1, sa2 * p.n2);
    const double u0 = std::sinh(c0.t - s0);
    if (s * u0 < -1e-9) throw InternalError("shadow_value: sign case disagrees with cone geometry");
    const double a = 4.0 * kPi * y * std::abs(p.qd);
    const double lo = std::abs(u0);
    const double log_scale = -2.0 * kPi * y * std::abs(p.qd) - a * lo * lo;
    if (log_scale < -745.0) continue;
    auto f = [&](double w) -> cplx { return std::exp(-a * (w * w - lo * lo)) / std::sqrt(1.0 + w * w); };
    const double rate = std::max(a * lo, std::sqrt(a));
    const auto r = kernel::quad_exp_tail(f, rate, lo, inner);
    sum.add(static_cast<double>(s) * r.value.real() * std::exp(log_scale) *
            std::polar(1.0, 2.0 * kPi * p.qd * x));
  }
  return std::sqrt(y) * sum.value();
}

double FourierTable::min_abs_exponent() const {
  if (terms.empty()) return 0.0;
  return std::abs(terms.front().m);
}

FourierTable fourier_table(const FamilySpec& fam, int j, const Rational& exponent_bound) {
  if (j < 0 || j > 3) throw DomainError("component index must be in 0..3");
  if (exponent_bound < Rational(1)) throw DomainError("fourier_table: exponent bound must be >= 1");
  std::map<Rational, Rational> acc;
  const double bound = to_double(exponent_bound);
  for (const QVec& mu : {fam.mus[j], fam.mus[j] + fam.lambda}) {
    for (const auto& p : enumerate_lattice(fam.form, fam.cones, mu, bound)) {
      if (p.n == QVec{}) continue;
      const Rational aq = p.q.numerator() < 0 ? -p.q : p.q;
      if (aq > exponent_bound) continue;
      const int w = p.q.numerator() > 0 ? weight_indefinite(p.n, fam.cones)
                                        : weight_indefinite_perp(p.n, fam.cones);
      if (w != 0) acc[p.q] += Rational(w, 2);
    }
  }
  FourierTable t;
  t.family = fam.name;
  t.component = j;
  t.exponent_bound = exponent_bound;
  t.constant = fam.const_terms[j];
  for (const auto& [m, d] : acc) {
    if (d.numerator() == 0) continue;
    t.terms.push_back({m, d, to_double(m), to_double(d)});
  }
  std::stable_sort(t.terms.begin(), t.terms.end(), [](const FourierTerm& a, const FourierTerm& b) {
    return std::abs(a.m) < std::abs(b.m);
  });
  return t;
}

FourierParts fourier_bessel_parts(const FourierTable& table, double x, double y, double cutoff) {
  if (!(y > 0.0)) throw DomainError("Fourier evaluation needs Im(tau) > 0");
  const double sy = std::sqrt(y);
  kernel::CompensatedSum<cplx> u;
  kernel::CompensatedSum<cplx> d;
  for (const auto& term : table.terms) {
    const double am = std::abs(term.m);
    const double arg = 2.0 * kPi * am * y;
    if (arg > cutoff) break;
    const auto k = kernel::bessel_k01(arg);
    const double angle = 2.0 * kPi * std::fmod(term.m * x, 1.0);
    const cplx phase(std::cos(angle), std::sin(angle));
    u.add(term.d * k.k0 * phase);
    d.add(term.d * (4.0 * kPi * term.m * sy * k.k0 - k.k0 / sy + 4.0 * kPi * am * sy * k.k1) * phase);
  }
  return {sy * u.value(), d.value()};
}

cplx fourier_value(const FourierTable& table, cplx tau, double cutoff) {
  const auto parts = fourier_bessel_parts(table, tau.real(), tau.imag(), cutoff);
  return table.constant * std::sqrt(tau.imag()) + parts.u;
}

cplx fourier_dz(const FourierTable& table, cplx tau, double cutoff) {
  const auto parts = fourier_bessel_parts(table, tau.real(), tau.imag(), cutoff);
  const cplx total = parts.minus_4i_du - table.constant / std::sqrt(tau.imag());
  return total / cplx(0.0, -4.0);
}

}  // namespace qmf::theta

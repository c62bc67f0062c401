#include "qmf/period.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace qmf::period {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

using CVec4 = kernel::CVec<4>;

double epsilon_target(const Tolerance& tol) { return std::min(tol.abs_tol, tol.rel_tol); }

double bessel_cutoff(const Tolerance& tol, const PeriodOptions& opt) {
  return std::log(1.0 / epsilon_target(tol)) + opt.bessel_margin;
}

// The four Fourier tables, each long enough for heights >= y_min.
struct Model {
  std::array<const theta::FourierTable*, 4> tables{};
  double cutoff = 0.0;
  double y_min = 0.0;
  std::array<double, 4> constants{};

  Model(FamilyName f, double y_floor, double cut) : cutoff(cut), y_min(y_floor) {
    if (!(y_floor > 0.0)) throw InternalError("Fourier model requested at nonpositive height");
    const double bound = cut / (kTwoPi * y_floor) + 1.0;
    const auto& fam = theta::family(f);
    for (int j = 0; j < 4; ++j) {
      tables[j] = &fourier_model(f, j, bound);
      constants[j] = fam.const_terms[j];
    }
  }

  // Bessel parts of U_k and of -4i dU_k at x + iy for all k.
  void eval(double x, double y, CVec4& u, CVec4& d) const {
    if (y < y_min * (1.0 - 1e-12)) throw InternalError("Fourier model evaluated below its height");
    for (int k = 0; k < 4; ++k) {
      const auto parts = theta::fourier_bessel_parts(*tables[k], x, y, cutoff);
      u[k] = parts.u;
      d[k] = parts.minus_4i_du;
    }
  }

  double min_exponent() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto* t : tables) {
      if (!t->terms.empty()) m = std::min(m, t->min_abs_exponent());
    }
    return m;
  }
};

Vec4 mix(const Eigen::Matrix4cd& psi, const CVec4& v) {
  Vec4 out{};
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) out[j] += psi(j, k) * v[k];
  }
  return out;
}

Tolerance inner_tolerance(const Tolerance& tol) {
  Tolerance t = tol;
  t.abs_tol = tol.abs_tol / 4.0;
  return t;
}

// (1/t) int_0^{X} J(s) ds with X = v_split / t; the [0, V] constant-term integral.
cplx constant_lower_integral(double delta, double t, double v_split, const Tolerance& tol,
                             double& err) {
  if (delta == 0.0) return (2.0 / t) * std::sqrt(v_split / (v_split + 2.0 * t));
  const double dp = delta / t;
  auto j = [dp](double s) -> cplx {
    const double a = std::hypot(dp, 1.0 + s);
    const cplx z(dp, 1.0 + s);
    return -a / (z * z * std::sqrt(s) * std::sqrt(s + 2.0)) +
           std::sqrt(s) / (a * std::pow(s + 2.0, 1.5));
  };
  const double x_end = v_split / t;
  const double first = std::min(1.0, x_end);
  const auto head = kernel::quad_finite(j, kernel::EndpointSingularity::inverse_sqrt_at_0, first, tol);
  kernel::CompensatedSum<cplx> sum;
  sum.add(head.value);
  err += head.error_estimate / t;
  for (double lo = first; lo < x_end;) {
    const double hi = std::min(2.0 * lo, x_end);
    const auto r = kernel::quad_interval(j, lo, hi, tol);
    sum.add(r.value);
    err += r.error_estimate / t;
    lo = hi;
  }
  return sum.value() / t;
}

}  // namespace

std::string to_string(Route r) {
  switch (r) {
    case Route::automatic: return "automatic";
    case Route::direct_qseries: return "direct_qseries";
    case Route::split_integral: return "split_integral";
  }
  return "?";
}

const theta::FourierTable& fourier_model(FamilyName f, int j, double exponent_bound) {
  if (j < 0 || j > 3) throw DomainError("component index must be in 0..3");
  if (!(exponent_bound > 0.0)) throw DomainError("Fourier bound must be positive");
  int k = 3;
  while (std::ldexp(1.0, k) < exponent_bound) {
    if (++k > 22) throw ResourceError("Fourier table beyond 2^22 exponents requested");
  }
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<theta::FourierTable>> cache;
  const auto key = std::make_tuple(static_cast<int>(f), j, k);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto table = std::make_unique<theta::FourierTable>(
        theta::fourier_table(theta::family(f), j, Rational(1L << k)));
    it = cache.emplace(key, std::move(table)).first;
  }
  return *it->second;
}

namespace {

PeriodValue direct_route(FamilyName f, cplx tau, const Tolerance& tol, const PeriodOptions& opt) {
  const double y = tau.imag();
  const double cutoff = bessel_cutoff(tol, opt);
  const auto& fam = theta::family(f);
  PeriodValue out;
  out.route = Route::direct_qseries;
  for (int j = 0; j < 4; ++j) {
    const auto& table = fourier_model(f, j, cutoff / (kTwoPi * y) + 1.0);
    kernel::CompensatedSum<cplx> sum;
    sum.add(-fam.const_terms[j] / kPi);
    for (const auto& term : table.terms) {
      if (kTwoPi * std::abs(term.m) * y > cutoff) break;
      if (term.m <= 0.0) continue;
      const double angle = kTwoPi * std::fmod(term.m * tau.real(), 1.0);
      sum.add(term.d * std::exp(-kTwoPi * term.m * y) * cplx(std::cos(angle), std::sin(angle)));
    }
    out.value[j] = sum.value();
  }
  out.error_estimate = 4.0 * std::exp(-cutoff);
  return out;
}

}  // namespace

PeriodValue u_value_at(FamilyName f, const CuspRational& anchor, double delta, double t,
                       const Tolerance& tol, const PeriodOptions& opt) {
  tol.validate();
  if (t < 0.0) throw DomainError("u_value_at: height must be nonnegative");
  if (t == 0.0 && delta != 0.0) throw DomainError("u_value_at: real arguments must be the anchor itself");
  const auto& fam = theta::family(f);
  const auto& m = anchor.matrix;
  const double a = static_cast<double>(m.a());
  const double c = static_cast<double>(m.c());
  const double ac = std::abs(c);
  const double v_split = 1.0 / ac;
  const double x0 = static_cast<double>(anchor.x.numerator()) / static_cast<double>(anchor.x.denominator());
  const double tau1 = x0 + delta;
  const double cutoff = bessel_cutoff(tol, opt);
  const Eigen::Matrix4cd psi = modular::multiplier(f, m.inverse()).m;
  const Tolerance itol = inner_tolerance(tol);

  // Smallest height reached by the transformed argument on [0, V] and by the direct one on [V, inf).
  auto w_height = [&](double y) { return y / (c * c * (delta * delta + y * y)); };
  double y_floor = std::min({t + v_split, w_height(t + v_split)});
  if (t > 0.0) y_floor = std::min(y_floor, w_height(t));
  const Model model(f, y_floor, cutoff);

  PeriodValue out;
  out.route = Route::split_integral;
  out.anchor = anchor.x;
  double err = 0.0;

  // [V, inf): Fourier expansion at tau1 + i(t + v).
  auto upper = [&](double v) {
    CVec4 u, d;
    model.eval(tau1, t + v, u, d);
    const double k1 = std::sqrt(v + t) / (std::sqrt(v) * std::sqrt(v + 2.0 * t));
    const double k2 = std::sqrt(v) / (std::sqrt(v + t) * std::pow(v + 2.0 * t, 1.5));
    CVec4 r;
    for (int k = 0; k < 4; ++k) r[k] = d[k] * k1 + u[k] * k2;
    return r;
  };
  long evals = 0;
  const double rate = kTwoPi * model.min_exponent();
  auto [hi, hi_err] = kernel::exp_tail_integrate<CVec4>(upper, rate, v_split, itol, &evals);
  err += hi_err / kTwoPi;

  // [0, V] with v = s^2: the integrand after the modular transformation by M^-1.
  auto lower = [&](double s) {
    const double v = s * s;
    const double y = t + v;
    const cplx zeta(delta, y);
    const cplx w = a / c - 1.0 / (c * c * zeta);
    CVec4 r{};
    if (w.imag() * kTwoPi * model.min_exponent() > cutoff) return r;
    CVec4 u, d;
    model.eval(w.real(), w.imag(), u, d);
    const double k1 = 2.0 * std::sqrt(v + t) / std::sqrt(v + 2.0 * t);
    const double k2 = 2.0 * s * s / (std::sqrt(v + t) * std::pow(v + 2.0 * t, 1.5));
    const cplx scale = 1.0 / (c * c * zeta * zeta);
    for (int k = 0; k < 4; ++k) r[k] = d[k] * scale * k1 + u[k] * k2;
    return r;
  };
  auto [lo, lo_err] = kernel::adaptive_integrate<CVec4>(lower, 0.0, std::sqrt(v_split), itol, &evals);
  err += lo_err / kTwoPi;

  CVec4 hi_scaled, lo_scaled;
  for (int k = 0; k < 4; ++k) {
    hi_scaled[k] = hi[k] / kTwoPi;
    lo_scaled[k] = lo[k] / kTwoPi;
  }
  const Vec4 lo_mixed = mix(psi, lo_scaled);

  CVec4 consts;
  for (int k = 0; k < 4; ++k) consts[k] = fam.const_terms[k];
  const Vec4 mixed_consts = mix(psi, consts);

  double cerr = 0.0;
  const bool any_const = std::any_of(mixed_consts.begin(), mixed_consts.end(),
                                     [](const cplx& z) { return std::abs(z) != 0.0; });
  cplx lower_const_factor{};
  if (any_const) {
    lower_const_factor = t > 0.0 ? constant_lower_integral(delta, t, v_split, itol, cerr) / (kTwoPi * ac)
                                 : cplx(-1.0 / (ac * kPi * v_split), 0.0);
  }
  for (int j = 0; j < 4; ++j) {
    const cplx upper_const = -fam.const_terms[j] / kPi * (1.0 - std::sqrt(v_split / (v_split + 2.0 * t)));
    out.value[j] = hi_scaled[j] + upper_const + lo_mixed[j] + mixed_consts[j] * lower_const_factor;
  }
  out.error_estimate = err + cerr * std::abs(mixed_consts[0]);
  return out;
}

CuspRational select_anchor(cplx tau) {
  const double x = tau.real();
  const double t = tau.imag();
  if (!(t > 0.0)) throw DomainError("select_anchor: Im(tau) must be positive");
  long q_max = static_cast<long>(std::ceil(4.0 / std::sqrt(t)));
  q_max = std::clamp(q_max + (q_max % 2), 2L, 4000L);
  double best = -1.0;
  Rational best_x(0);
  for (long q = 2; q <= q_max; q += 2) {
    const long nearest = std::lround(x * static_cast<double>(q));
    for (long p = nearest - 1; p <= nearest + 1; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const double delta = x - static_cast<double>(p) / static_cast<double>(q);
      const double v = 1.0 / static_cast<double>(q);
      auto w2 = [&](double s) { return s / (static_cast<double>(q) * q * (delta * delta + s * s)); };
      const double score = std::min({t + v, w2(t), w2(t + v)});
      if (score > best) {
        best = score;
        best_x = Rational(p, q);
      }
    }
  }
  if (best < 1e-5) {
    throw DomainError(
        "u_value: no even-denominator rational close enough to Re(tau) to anchor the modular "
        "splitting at this height");
  }
  return modular::cusp_matrix(best_x);
}

PeriodValue u_value(FamilyName f, cplx tau, const Tolerance& tol, const PeriodOptions& opt) {
  tol.validate();
  if (!(tau.imag() > 0.0)) throw DomainError("u_value: Im(tau) must be positive");
  Route route = opt.route;
  if (route == Route::automatic) {
    route = tau.imag() >= opt.direct_threshold ? Route::direct_qseries : Route::split_integral;
  }
  if (route == Route::direct_qseries) {
    if (tau.imag() < theta::kMinImag) {
      throw DomainError("u_value: the direct q-series route needs Im(tau) >= 1e-3");
    }
    return direct_route(f, tau, tol, opt);
  }
  const CuspRational anchor = select_anchor(tau);
  const double x0 = static_cast<double>(anchor.x.numerator()) / static_cast<double>(anchor.x.denominator());
  return u_value_at(f, anchor, tau.real() - x0, tau.imag(), tol, opt);
}

ObstructionValue obstruction_value(FamilyName f, const CuspRational& rho, cplx arg,
                                   const Tolerance& tol, const PeriodOptions& opt) {
  tol.validate();
  const auto& fam = theta::family(f);
  const auto& m = rho.matrix;
  const double a = static_cast<double>(m.a());
  const double c = static_cast<double>(m.c());
  const double ac = std::abs(c);
  const double x0 = static_cast<double>(rho.x.numerator()) / static_cast<double>(rho.x.denominator());
  const cplx w = arg - x0;
  if (std::abs(w.real()) < 1e-14) {
    throw DomainError("obstruction_value: argument lies on the cut Re(tau) = rho");
  }
  if (arg.imag() < 0.0) throw DomainError("obstruction_value: argument must have Im >= 0");
  const double split = opt.obstruction_split.value_or(2.0 / ac);
  if (!(split > 0.0)) throw DomainError("obstruction_value: split height must be positive");
  const double cutoff = bessel_cutoff(tol, opt);
  const Eigen::Matrix4cd psi = modular::multiplier(f, m.inverse()).m;
  const Tolerance itol = inner_tolerance(tol);

  const Model model(f, std::min(split, 1.0 / (c * c * split)), cutoff);
  auto f_ratio = [&](double t) { return (t + kI * w) / (t - kI * w); };

  ObstructionValue out{rho.x, arg, {}, 0.0};

  auto upper = [&](double t) {
    CVec4 u, d;
    model.eval(x0, t, u, d);
    const cplx fr = f_ratio(t);
    const cplx den = std::sqrt(t) * std::sqrt(t * t + w * w);
    CVec4 r;
    for (int k = 0; k < 4; ++k) r[k] = (t * (-d[k]) - fr * u[k]) / den;
    return r;
  };
  long evals = 0;
  auto [hi, hi_err] =
      kernel::exp_tail_integrate<CVec4>(upper, kTwoPi * model.min_exponent(), split, itol, &evals);

  auto lower = [&](double t) {
    CVec4 r{};
    const double height = 1.0 / (c * c * t);
    if (height * kTwoPi * model.min_exponent() > cutoff) return r;
    CVec4 u, d;
    model.eval(a / c, height, u, d);
    const cplx fr = f_ratio(t);
    const cplx den = std::sqrt(t) * std::sqrt(t * t + w * w);
    for (int k = 0; k < 4; ++k) r[k] = (height * (-d[k]) + fr * u[k]) / den;
    return r;
  };
  auto [lo, lo_err] = kernel::adaptive_integrate<CVec4>(lower, 0.0, split, itol, &evals);

  // Closed forms of the constant-term integrals; sqrt(g) with g = (t + iw)/(t - iw).
  auto root_ratio = [&](double t) { return std::sqrt(t + kI * w) / std::sqrt(t - kI * w); };
  const cplx upper_const_shape = 1.0 - root_ratio(split);
  const cplx lower_const_shape =
      (2.0 * kI / w) * (root_ratio(split) - std::sqrt(kI * w) / std::sqrt(-kI * w));

  CVec4 lower_total;
  for (int k = 0; k < 4; ++k) {
    lower_total[k] = lo[k] + fam.const_terms[k] / ac * lower_const_shape;
  }
  const Vec4 mixed = mix(psi, lower_total);
  for (int j = 0; j < 4; ++j) {
    out.value[j] = (hi[j] + 2.0 * fam.const_terms[j] * upper_const_shape - mixed[j]) / kTwoPi;
  }
  out.error_estimate = (hi_err + lo_err) / kTwoPi;
  return out;
}

QuantumValue quantum_value(FamilyName f, const CuspRational& x, const Tolerance& tol,
                           const PeriodOptions& opt) {
  const auto pv = u_value_at(f, x, 0.0, 0.0, tol, opt);
  QuantumValue out;
  out.x = x.x;
  out.value = pv.value;
  out.error_estimate = pv.error_estimate;
  const auto& fam = theta::family(f);
  for (int j = 0; j < 4; ++j) out.gamma[j] = modular::gamma_constant(fam, j, x);
  return out;
}

int side_of_cusp(const Gamma02Element& m, double tau1) {
  if (m.c() == 0) return m.d() > 0 ? 1 : -1;
  const double cusp = -static_cast<double>(m.d()) / static_cast<double>(m.c());
  if (std::abs(tau1 - cusp) < 1e-14) {
    throw DomainError("Re(tau) is within 1e-14 of the cusp -d/c; the sign of c tau1 + d is undefined");
  }
  const double v = static_cast<double>(m.c()) * (tau1 - cusp);
  return v > 0.0 ? 1 : -1;
}

Rational act(const Gamma02Element& m, const Rational& x) {
  const long p = x.numerator();
  const long q = x.denominator();
  long n1 = 0, n2 = 0, d1 = 0, d2 = 0, num = 0, den = 0;
  if (__builtin_mul_overflow(m.a(), p, &n1) || __builtin_mul_overflow(m.b(), q, &n2) ||
      __builtin_add_overflow(n1, n2, &num) || __builtin_mul_overflow(m.c(), p, &d1) ||
      __builtin_mul_overflow(m.d(), q, &d2) || __builtin_add_overflow(d1, d2, &den)) {
    throw DomainError("act: rational image overflows 64-bit integers");
  }
  if (den == 0) throw DomainError("act: x is the pole -d/c");
  return Rational(num, den);
}

double verify_modular(FamilyName f, const Gamma02Element& m, cplx tau, const Tolerance& tol,
                      const PeriodOptions& opt) {
  const int s = side_of_cusp(m, tau.real());
  const Vec4 lhs = u_value(f, m.act(tau), tol, opt).value;
  Vec4 inner = u_value(f, tau, tol, opt).value;
  if (m.c() != 0) {
    const CuspRational rho = modular::cusp_matrix(Rational(-m.d(), m.c()));
    const Vec4 obs = obstruction_value(f, rho, tau, tol, opt).value;
    for (int k = 0; k < 4; ++k) inner[k] += obs[k];
  }
  const Eigen::Matrix4cd psi = modular::multiplier(f, m).m;
  const cplx factor = static_cast<double>(s) * (static_cast<double>(m.c()) * tau + static_cast<double>(m.d()));
  double residual = 0.0;
  for (int j = 0; j < 4; ++j) {
    cplx rhs{};
    for (int k = 0; k < 4; ++k) rhs += psi(j, k) * inner[k];
    residual = std::max(residual, std::abs(lhs[j] - factor * rhs));
  }
  return residual;
}

double verify_quantum(FamilyName f, const Gamma02Element& m, const CuspRational& x,
                      const Tolerance& tol, const PeriodOptions& opt) {
  if (m.c() != 0 && x.x == Rational(-m.d(), m.c())) {
    throw DomainError("verify_quantum: x coincides with the cusp -d/c");
  }
  const Rational image = act(m, x.x);
  const Vec4 lhs = quantum_value(f, modular::cusp_matrix(image), tol, opt).value;
  Vec4 inner = quantum_value(f, x, tol, opt).value;
  const double xd = static_cast<double>(x.x.numerator()) / static_cast<double>(x.x.denominator());
  if (m.c() != 0) {
    const CuspRational rho = modular::cusp_matrix(Rational(-m.d(), m.c()));
    const Vec4 obs = obstruction_value(f, rho, cplx(xd, 0.0), tol, opt).value;
    for (int k = 0; k < 4; ++k) inner[k] += obs[k];
  }
  const Rational cxd = Rational(m.c()) * x.x + Rational(m.d());
  const double factor = std::abs(static_cast<double>(cxd.numerator()) / static_cast<double>(cxd.denominator()));
  const Eigen::Matrix4cd psi = modular::multiplier(f, m).m;
  double residual = 0.0;
  for (int j = 0; j < 4; ++j) {
    cplx rhs{};
    for (int k = 0; k < 4; ++k) rhs += psi(j, k) * inner[k];
    residual = std::max(residual, std::abs(lhs[j] - factor * rhs));
  }
  return residual;
}

cplx extrapolate_to_zero(const std::vector<double>& h, const std::vector<cplx>& f) {
  if (h.empty() || h.size() != f.size()) throw DomainError("extrapolate_to_zero: size mismatch");
  std::vector<cplx> p = f;
  const std::size_t n = h.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double hi = h[i];
      const double hj = h[i + level];
      if (hi == hj) throw DomainError("extrapolate_to_zero: repeated abscissa");
      p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
    }
  }
  return p[0];
}

std::vector<double> default_deformation_heights() {
  std::vector<double> h;
  for (int k = 0; k < 7; ++k) h.push_back(std::ldexp(2e-3, -k));
  return h;
}

PathDeformationResult path_deformation_check(FamilyName f, int j, const CuspRational& x, double b,
                                             const std::vector<double>& t_sequence,
                                             const Tolerance& tol, const PeriodOptions& opt) {
  if (j < 0 || j > 3) throw DomainError("component index must be in 0..3");
  if (t_sequence.size() < 2) throw DomainError("path_deformation_check: need at least two heights");
  for (std::size_t i = 0; i < t_sequence.size(); ++i) {
    if (!(t_sequence[i] > 0.0) || (i > 0 && !(t_sequence[i] < t_sequence[i - 1]))) {
      throw DomainError("path_deformation_check: heights must be positive and decreasing");
    }
  }
  const auto q = quantum_value(f, x, tol, opt);
  const cplx gamma = q.gamma[j];
  std::vector<cplx> vals;
  for (double t : t_sequence) {
    const double delta = b * t * t;
    const cplx u = u_value_at(f, x, delta, t, tol, opt).value[j];
    vals.push_back(u - gamma / (kPi * t));
  }
  PathDeformationResult r;
  r.extrapolated = extrapolate_to_zero(t_sequence, vals);
  r.expected = q.value[j] + kI * b * gamma / kPi;
  r.residual = std::abs(r.extrapolated - r.expected);
  return r;
}

std::vector<Rational> even_farey_points(long max_q, const Rational& lo, const Rational& hi) {
  if (max_q < 2) throw DomainError("even_farey_points: maximal denominator must be >= 2");
  std::vector<Rational> out;
  for (long q = 2; q <= max_q; q += 2) {
    const Rational a = lo * Rational(q);
    const Rational b = hi * Rational(q);
    long p = static_cast<long>(std::floor(static_cast<double>(a.numerator()) / a.denominator()));
    for (; Rational(p) <= b; ++p) {
      const Rational r(p, q);
      if (!(lo < r && r < hi)) continue;
      if (std::gcd(p, q) == 1) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qmf::period

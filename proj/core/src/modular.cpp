#include "qmf/modular.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace qmf::modular {

namespace {

constexpr double kPi = std::numbers::pi;

long checked_mul_add(long x, long y, long u, long v) {
  long p = 0;
  long r = 0;
  long s = 0;
  if (__builtin_mul_overflow(x, y, &p) || __builtin_mul_overflow(u, v, &r) ||
      __builtin_add_overflow(p, r, &s)) {
    throw DomainError("SL2(Z) product overflows 64-bit integers");
  }
  return s;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Nearest integer to n / d.
long nearest(long n, long d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return floor_div(2 * n + d, 2 * d);
}

long mod_inverse(long x, long m) {
  long r0 = m, r1 = ((x % m) + m) % m;
  long s0 = 0, s1 = 1;
  while (r1 != 0) {
    const long q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (r0 != 1) throw DomainError("no modular inverse");
  return ((s0 % m) + m) % m;
}

Eigen::Matrix4cd diagonal_power(FamilyName f, long k) {
  std::array<long, 4> e{};
  long n = 1;
  switch (f) {
    case FamilyName::F: e = {31, 7, 23, 15}; n = 32; break;
    case FamilyName::G: e = {0, 2, 8, 6}; n = 12; break;
    case FamilyName::H: e = {45, 5, 29, 21}; n = 48; break;
  }
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  const long kr = ((k % n) + n) % n;
  for (int j = 0; j < 4; ++j) m(j, j) = root_of_unity(kr * e[j], n);
  return m;
}

Eigen::Matrix4cd matrix_power(const Eigen::Matrix4cd& base, long k) {
  Eigen::Matrix4cd b = k >= 0 ? base : Eigen::Matrix4cd(base.inverse());
  unsigned long e = k >= 0 ? static_cast<unsigned long>(k) : static_cast<unsigned long>(-k);
  Eigen::Matrix4cd r = Eigen::Matrix4cd::Identity();
  while (e != 0) {
    if (e & 1UL) r = r * b;
    e >>= 1;
    if (e != 0) b = b * b;
  }
  return r;
}

}  // namespace

cplx root_of_unity(long k, long n) {
  if (n <= 0) throw DomainError("root_of_unity: order must be positive");
  const long r = ((k % n) + n) % n;
  // Fold into [-n/2, n/2] so the angle is at most pi in magnitude.
  const long s = 2 * r > n ? r - n : r;
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(s) / static_cast<double>(n));
}

SL2Z SL2Z::operator*(const SL2Z& o) const {
  return {checked_mul_add(a, o.a, b, o.c), checked_mul_add(a, o.b, b, o.d),
          checked_mul_add(c, o.a, d, o.c), checked_mul_add(c, o.b, d, o.d)};
}

Gamma02Element::Gamma02Element(long a, long b, long c, long d) : m_{a, b, c, d} {
  long ad = 0;
  long bc = 0;
  if (__builtin_mul_overflow(a, d, &ad) || __builtin_mul_overflow(b, c, &bc) || ad - bc != 1) {
    throw DomainError("Gamma_0(2) element must have determinant 1");
  }
  if (c % 2 != 0) throw DomainError("Gamma_0(2) element must have even lower-left entry");
}

std::string to_string(const Gamma02Element& m) {
  std::ostringstream os;
  os << "[[" << m.a() << ", " << m.b() << "], [" << m.c() << ", " << m.d() << "]]";
  return os.str();
}

std::string to_string(const GeneratorWord& w) {
  if (w.empty()) return "I";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    switch (w[i].kind) {
      case GeneratorToken::Kind::T: os << "T^" << w[i].power; break;
      case GeneratorToken::Kind::R: os << "R^" << w[i].power; break;
      case GeneratorToken::Kind::NEG: os << "-I"; break;
    }
  }
  return os.str();
}

Gamma02Element evaluate_word(const GeneratorWord& w) {
  Gamma02Element m = Gamma02Element::identity();
  for (const auto& t : w) {
    switch (t.kind) {
      case GeneratorToken::Kind::T: m = m * Gamma02Element::T(t.power); break;
      case GeneratorToken::Kind::R: m = m * Gamma02Element::R(t.power); break;
      case GeneratorToken::Kind::NEG: m = m * Gamma02Element::neg(); break;
    }
  }
  return m;
}

GeneratorWord decompose(const Gamma02Element& m) {
  long a = m.a(), b = m.b(), c = m.c(), d = m.d();
  GeneratorWord w;
  while (c != 0) {
    const long k = nearest(a, c);
    if (k != 0) {
      w.push_back({GeneratorToken::Kind::T, k});
      a -= k * c;
      b -= k * d;
    }
    if (a == 0) throw InternalError("decompose: degenerate column");
    const long k2 = nearest(c, 2 * a);
    w.push_back({GeneratorToken::Kind::R, k2});
    c -= 2 * k2 * a;
    d -= 2 * k2 * b;
  }
  if (a == 1) {
    if (b != 0) w.push_back({GeneratorToken::Kind::T, b});
  } else {
    w.push_back({GeneratorToken::Kind::NEG, 1});
    if (b != 0) w.push_back({GeneratorToken::Kind::T, -b});
  }
  return w;
}

Eigen::Matrix4cd generator_t(FamilyName f) { return diagonal_power(f, 1); }

Eigen::Matrix4cd generator_r(FamilyName f) {
  Eigen::Matrix4cd m;
  switch (f) {
    case FamilyName::F: {
      const double c3 = std::cos(3.0 * kPi / 16.0);
      const double c1 = std::cos(kPi / 16.0);
      const double s1 = std::sin(kPi / 16.0);
      const double s3 = std::sin(3.0 * kPi / 16.0);
      auto z = [](long k) { return root_of_unity(k, 32); };
      m << z(31) * c3, z(3) * c1, z(11) * s1, z(23) * s3,
           z(3) * c1, z(23) * s3, z(31) * c3, z(11) * s1,
           z(11) * s1, z(31) * c3, z(23) * s3, z(3) * c1,
           z(23) * s3, z(11) * s1, z(3) * c1, z(31) * c3;
      m /= std::sqrt(2.0);
      break;
    }
    case FamilyName::G: {
      auto z = [](long k) { return root_of_unity(k, 12); };
      const cplx zero{};
      m << zero, 2.0 * z(1), zero, z(9),
           z(1), zero, z(11), zero,
           zero, z(11), zero, z(1),
           z(9), zero, 2.0 * z(1), zero;
      m /= std::sqrt(3.0);
      break;
    }
    case FamilyName::H: {
      auto z = [](long k) { return root_of_unity(k, 48); };
      const double p = 1.0 + std::sqrt(2.0);
      m << z(45), 2.0 * p * z(1), 2.0 * z(13), p * z(33),
           p * z(1), z(5), p * z(41), z(13),
           z(13), p * z(41), z(5), p * z(1),
           p * z(33), 2.0 * z(13), 2.0 * p * z(1), z(45);
      m *= std::sqrt((2.0 - std::sqrt(2.0)) / 12.0);
      break;
    }
  }
  return m;
}

MultiplierMatrix multiplier(FamilyName f, const Gamma02Element& m) {
  const Eigen::Matrix4cd r = generator_r(f);
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Identity();
  for (const auto& t : decompose(m)) {
    switch (t.kind) {
      case GeneratorToken::Kind::T: out = out * diagonal_power(f, t.power); break;
      case GeneratorToken::Kind::R: out = out * matrix_power(r, t.power); break;
      case GeneratorToken::Kind::NEG: break;
    }
  }
  return {f, out};
}

namespace {

long common_denominator(const QVec& v) {
  return std::lcm(v.x.denominator(), v.y.denominator());
}

__int128 scaled_q(const theta::QuadraticForm& f, __int128 x, __int128 y) {
  return f.alpha1() * x * x - f.alpha2() * y * y;
}

__int128 scaled_b(const theta::QuadraticForm& f, __int128 x1, __int128 y1, __int128 x2,
                  __int128 y2) {
  return 2 * f.alpha1() * x1 * x2 - 2 * f.alpha2() * y1 * y2;
}

}  // namespace

cplx weil_psi(const theta::QuadraticForm& form, const SL2Z& m, const QVec& mu, const QVec& nu) {
  const QVec gm{Rational(2 * form.alpha1()) * mu.x, Rational(-2 * form.alpha2()) * mu.y};
  const QVec gn{Rational(2 * form.alpha1()) * nu.x, Rational(-2 * form.alpha2()) * nu.y};
  if (gm.x.denominator() != 1 || gm.y.denominator() != 1 || gn.x.denominator() != 1 ||
      gn.y.denominator() != 1) {
    throw DomainError("weil_psi: cosets must lie in the dual lattice");
  }
  if (m.a * m.d - m.b * m.c != 1) throw DomainError("weil_psi: matrix must have determinant 1");
  if (m.c == 0) {
    const QVec target = m.d > 0 ? nu : -nu;
    if (!theta::congruent_mod1(mu, target)) return {0.0, 0.0};
    const Rational phase = Rational(m.a * m.b) * form.Q(mu);
    return root_of_unity(phase.numerator() % phase.denominator(), phase.denominator());
  }
  const long c = m.c;
  const long ac = std::abs(c);
  if (ac > 4000) throw ResourceError("weil_psi: |c| too large for the direct Gauss sum");
  const long D = std::lcm(common_denominator(mu), common_denominator(nu));
  const __int128 modulus = static_cast<__int128>(ac) * D * D;
  const __int128 mx = static_cast<__int128>((mu.x * Rational(D)).numerator());
  const __int128 my = static_cast<__int128>((mu.y * Rational(D)).numerator());
  const __int128 nx = static_cast<__int128>((nu.x * Rational(D)).numerator());
  const __int128 ny = static_cast<__int128>((nu.y * Rational(D)).numerator());
  const __int128 qn = scaled_q(form, nx, ny);
  kernel::CompensatedSum<cplx> sum;
  for (long i = 0; i < ac; ++i) {
    for (long k = 0; k < ac; ++k) {
      const __int128 px = mx + static_cast<__int128>(i) * D;
      const __int128 py = my + static_cast<__int128>(k) * D;
      __int128 e = m.a * scaled_q(form, px, py) - scaled_b(form, px, py, nx, ny) + m.d * qn;
      if (c < 0) e = -e;
      e %= modulus;
      if (e < 0) e += modulus;
      const long double frac = static_cast<long double>(e) / static_cast<long double>(modulus);
      const long double ang = 2.0L * std::numbers::pi_v<long double> * frac;
      sum.add(cplx(static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))));
    }
  }
  const double norm = static_cast<double>(ac) * std::sqrt(static_cast<double>(form.abs_det()));
  return sum.value() / norm;
}

namespace {

// Smallest element of the orbit {+-v, (-v1, v2), (v1, -v2)} mod 1, in lexicographic order.
QVec orbit_key(const QVec& v) {
  const QVec cands[4] = {v, -v, {-v.x, v.y}, {v.x, -v.y}};
  QVec best = theta::reduce_mod1(cands[0]);
  for (const auto& c : cands) {
    const QVec r = theta::reduce_mod1(c);
    if (r.x < best.x || (r.x == best.x && r.y < best.y)) best = r;
  }
  return best;
}

struct QVecLess {
  bool operator()(const QVec& a, const QVec& b) const {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

}  // namespace

MultiplierMatrix fold_multiplier(const FamilySpec& fam, const Gamma02Element& m) {
  const auto& form = fam.form;
  const long n1 = 2L * form.alpha1();
  const long n2 = 2L * form.alpha2();
  constexpr double kAgree = 1e-10;
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int j = 0; j < 4; ++j) {
    std::map<QVec, cplx, QVecLess> orbit_sum;
    for (long r1 = 0; r1 < n1; ++r1) {
      for (long r2 = 0; r2 < n2; ++r2) {
        const QVec nu{Rational(r1, n1), Rational(r2, n2)};
        const cplx v = weil_psi(form, m.matrix(), fam.mus[j], nu) +
                       weil_psi(form, m.matrix(), fam.mus[j] + fam.lambda, nu);
        orbit_sum[orbit_key(nu)] += v;
      }
    }
    std::map<QVec, bool, QVecLess> used;
    for (int k = 0; k < 4; ++k) {
      const QVec o1 = orbit_key(fam.mus[k]);
      const QVec o2 = orbit_key(fam.mus[k] + fam.lambda);
      const cplx s1 = orbit_sum[o1];
      const cplx s2 = orbit_sum[o2];
      if (std::abs(s1 - s2) > kAgree) {
        throw InternalError("fold_multiplier: orbit sums of mu and mu + lambda disagree");
      }
      out(j, k) = 0.5 * (s1 + s2);
      used[o1] = true;
      used[o2] = true;
    }
    for (const auto& [key, val] : orbit_sum) {
      if (!used.count(key) && std::abs(val) > kAgree) {
        throw InternalError("fold_multiplier: weight leaks outside the family cosets");
      }
    }
  }
  return {fam.name, out};
}

CuspRational cusp_matrix(const Rational& x) {
  const long p = x.numerator();
  const long q = x.denominator();
  if (q % 2 != 0) {
    throw DomainError("rational " + qmf::to_string(x) +
                      " is not a Gamma_0(2)-cusp representative (denominator must be even)");
  }
  const long c = q;
  const long d = -p;
  const long a = mod_inverse(d, c);
  long ad = 0;
  if (__builtin_mul_overflow(a, d, &ad)) throw DomainError("cusp_matrix: entries overflow");
  const long b = (ad - 1) / c;
  return {x, Gamma02Element(a, b, c, d)};
}

cplx gamma_constant(const FamilySpec& fam, int j, const CuspRational& cusp) {
  if (j < 0 || j > 3) throw DomainError("component index must be in 0..3");
  const auto psi = multiplier(fam.name, cusp.matrix.inverse()).m;
  cplx s{};
  for (int k = 0; k < 4; ++k) s += psi(j, k) * fam.const_terms[k];
  return s / static_cast<double>(std::abs(cusp.matrix.c()));
}

Eigen::Vector4d invariant_form(const FamilySpec& fam) {
  auto orbit_size = [](const QVec& v) {
    std::map<QVec, bool, QVecLess> seen;
    for (const QVec& c : {v, -v, QVec{-v.x, v.y}, QVec{v.x, -v.y}}) seen[theta::reduce_mod1(c)] = true;
    return static_cast<double>(seen.size());
  };
  Eigen::Vector4d w;
  for (int k = 0; k < 4; ++k) {
    w(k) = 1.0 / orbit_size(fam.mus[k]) + 1.0 / orbit_size(fam.mus[k] + fam.lambda);
  }
  return w;
}

double unitarity_defect(const Eigen::Matrix4cd& m, const Eigen::Vector4d& weights) {
  const Eigen::Matrix4cd w = weights.cast<cplx>().asDiagonal();
  return (m * w * m.adjoint() - w).cwiseAbs().maxCoeff();
}

}  // namespace qmf::modular

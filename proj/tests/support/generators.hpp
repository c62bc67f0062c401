#pragma once

// Random inputs for property tests. Every generator takes the engine explicitly so each
// test case owns a fixed seed.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "qmf/modular.hpp"

namespace qmf::testing {

using Engine = std::mt19937_64;

inline long pick(Engine& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline double pick_real(Engine& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline std::complex<double> pick_tau(Engine& g, double y_lo, double y_hi) {
  return {pick_real(g, -0.5, 0.5), pick_real(g, y_lo, y_hi)};
}

// Word of the given length in T^k, R^k (|k| <= 3) and -I, evaluated by explicit products.
inline modular::Gamma02Element random_word_element(Engine& g, int length) {
  using modular::Gamma02Element;
  Gamma02Element m = Gamma02Element::identity();
  for (int i = 0; i < length; ++i) {
    long k = pick(g, -3, 3);
    if (k == 0) k = 1;
    switch (pick(g, 0, 4)) {
      case 0: m = m * Gamma02Element::neg(); break;
      case 1:
      case 2: m = m * Gamma02Element::T(k); break;
      default: m = m * Gamma02Element::R(k); break;
    }
  }
  return m;
}

// Element with lower-left entry c, 0 < |c| <= c_max, built from a coprime bottom row.
inline modular::Gamma02Element random_element_with_c(Engine& g, long c_max, long d_max = 61) {
  long c = 0;
  while (c == 0) c = 2 * pick(g, -c_max / 2, c_max / 2);
  long d = 0;
  while (std::gcd(c, d) != 1) d = pick(g, -d_max, d_max);
  // a d - b c = 1: a is the inverse of d modulo |c|
  const long m = std::abs(c);
  long a = 1;
  while (((a * d) % m + m) % m != 1 % m) ++a;
  const long b = (a * d - 1) / c;
  const long shift = pick(g, -3, 3);
  return {a + shift * c, b + shift * d, c, d};
}

// Element with entries up to about `bound`, from a random coprime pair (c, d).
inline modular::Gamma02Element random_large_element(Engine& g, long bound) {
  long c = 0, d = 0;
  while (c == 0 || std::gcd(c, d) != 1) {
    c = 2 * pick(g, -bound / 2, bound / 2);
    d = pick(g, -bound, bound);
  }
  // extended Euclid on (d, c): x d + y c = 1
  long r0 = d, r1 = c, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    const long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (r0 < 0) {
    x0 = -x0;
    y0 = -y0;
  }
  return {x0, -y0, c, d};
}

// p/q in lowest terms with q even, q <= q_max, p/q in (lo, hi).
inline Rational random_even_cusp(Engine& g, long q_max, double lo, double hi) {
  while (true) {
    const long q = 2 * pick(g, 1, q_max / 2);
    const long p = pick(g, static_cast<long>(std::floor(lo * q)), static_cast<long>(std::ceil(hi * q)));
    const double x = static_cast<double>(p) / q;
    if (std::gcd(p, q) == 1 && x > lo && x < hi) return Rational(p, q);
  }
}

}  // namespace qmf::testing

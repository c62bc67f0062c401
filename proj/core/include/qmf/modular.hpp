#pragma once

// Gamma_0(2) matrices, generator words, the family multiplier systems, the Weil
// representation and cusp bookkeeping.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qmf/theta.hpp"

namespace qmf::modular {

using kernel::cplx;
using theta::FamilyName;
using theta::FamilySpec;
using theta::QVec;

// exp(2 pi i k / n) from the reduced residue k mod n.
cplx root_of_unity(long k, long n);

// Integer 2x2 matrix of determinant 1.
struct SL2Z {
  long a = 1, b = 0, c = 0, d = 1;

  SL2Z operator*(const SL2Z& o) const;
  SL2Z inverse() const { return {d, -b, -c, a}; }
  bool operator==(const SL2Z& o) const = default;
  cplx act(cplx tau) const { return (double(a) * tau + double(b)) / (double(c) * tau + double(d)); }
};

class Gamma02Element {
 public:
  // Throws DomainError unless ad - bc = 1 and c is even.
  Gamma02Element(long a, long b, long c, long d);
  explicit Gamma02Element(const SL2Z& m) : Gamma02Element(m.a, m.b, m.c, m.d) {}

  static Gamma02Element identity() { return {1, 0, 0, 1}; }
  static Gamma02Element T(long k = 1) { return {1, k, 0, 1}; }
  static Gamma02Element R(long k = 1) { return {1, 0, 2 * k, 1}; }
  static Gamma02Element neg() { return {-1, 0, 0, -1}; }

  long a() const { return m_.a; }
  long b() const { return m_.b; }
  long c() const { return m_.c; }
  long d() const { return m_.d; }
  const SL2Z& matrix() const { return m_; }

  Gamma02Element operator*(const Gamma02Element& o) const { return Gamma02Element(m_ * o.m_); }
  Gamma02Element inverse() const { return Gamma02Element(m_.inverse()); }
  bool operator==(const Gamma02Element& o) const { return m_ == o.m_; }
  cplx act(cplx tau) const { return m_.act(tau); }

 private:
  SL2Z m_;
};

std::string to_string(const Gamma02Element& m);

struct GeneratorToken {
  enum class Kind { T, R, NEG };
  Kind kind;
  long power = 1;  // ignored for NEG

  bool operator==(const GeneratorToken& o) const = default;
};

using GeneratorWord = std::vector<GeneratorToken>;

std::string to_string(const GeneratorWord& w);
Gamma02Element evaluate_word(const GeneratorWord& w);
GeneratorWord decompose(const Gamma02Element& m);

struct MultiplierMatrix {
  FamilyName family;
  Eigen::Matrix4cd m;
};

// The hard-coded images of T and R.
Eigen::Matrix4cd generator_t(FamilyName f);
Eigen::Matrix4cd generator_r(FamilyName f);

MultiplierMatrix multiplier(FamilyName f, const Gamma02Element& m);

// psi_M(mu, nu) for the Weil representation attached to an even binary form.
cplx weil_psi(const theta::QuadraticForm& form, const SL2Z& m, const QVec& mu, const QVec& nu);

// The multiplier rebuilt from weil_psi by folding sign orbits and the lambda shift.
MultiplierMatrix fold_multiplier(const FamilySpec& fam, const Gamma02Element& m);

struct CuspRational {
  Rational x;
  Gamma02Element matrix;
};

// M = [[a, b], [c, d]] with c = q, d = -p and a the least nonnegative inverse of d mod c.
CuspRational cusp_matrix(const Rational& x);

// (1/|c|) sum_k Psi_{M^-1}(j, k) c_k
cplx gamma_constant(const FamilySpec& fam, int j, const CuspRational& cusp);

// Diagonal Hermitian form preserved by every multiplier of the family:
// entry k is 1/|orbit(mu_k)| + 1/|orbit(mu_k + lambda)| over the sign-flip orbits mod 1.
// It is scalar for F, so those multipliers are unitary; G and H have mixed orbit sizes.
Eigen::Vector4d invariant_form(const FamilySpec& fam);

// max |M W M^* - W| for W = diag(weights); weights = 1 tests plain unitarity.
double unitarity_defect(const Eigen::Matrix4cd& m,
                        const Eigen::Vector4d& weights = Eigen::Vector4d::Ones());

}  // namespace qmf::modular

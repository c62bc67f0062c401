#pragma once

// Indefinite binary lattices, cone data, the three families F, G, H and their theta
// sums: false-indefinite q-series, mock Maass thetas, completions and shadows.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "qmf/kernel.hpp"
#include "qmf/qseries.hpp"

namespace qmf::theta {

using kernel::cplx;
using kernel::Tolerance;

struct QVec {
  Rational x{0};
  Rational y{0};

  bool operator==(const QVec& o) const { return x == o.x && y == o.y; }
  QVec operator+(const QVec& o) const { return {x + o.x, y + o.y}; }
  QVec operator-() const { return {-x, -y}; }
};

// Representative with both coordinates in [0, 1).
QVec reduce_mod1(const QVec& v);
bool congruent_mod1(const QVec& a, const QVec& b);

// Q(n) = alpha1 n1^2 - alpha2 n2^2, Gram matrix A = diag(2 alpha1, -2 alpha2).
class QuadraticForm {
 public:
  QuadraticForm(int alpha1, int alpha2);

  int alpha1() const { return alpha1_; }
  int alpha2() const { return alpha2_; }
  std::array<std::array<int, 2>, 2> gram() const;
  long abs_det() const { return 4L * alpha1_ * alpha2_; }

  Rational Q(const QVec& n) const;
  double Q(double n1, double n2) const { return alpha1_ * n1 * n1 - alpha2_ * n2 * n2; }
  Rational B(const QVec& n, const QVec& m) const;
  double B(double n1, double n2, double m1, double m2) const {
    return 2.0 * alpha1_ * n1 * m1 - 2.0 * alpha2_ * n2 * m2;
  }
  // alpha1 n1^2 + alpha2 n2^2
  double majorant(double n1, double n2) const { return alpha1_ * n1 * n1 + alpha2_ * n2 * n2; }

 private:
  int alpha1_;
  int alpha2_;
};

// Integer functional p n1 + q n2; its sign is evaluated exactly on rational vectors.
struct IntLinear {
  long p = 0;
  long q = 0;
  int sign(const QVec& n) const;
};

// c = direction / sqrt(-Q(direction)) on the negative-norm branch with c2 > 0.
struct ConeVector {
  std::array<long, 2> direction{};
  std::array<double, 2> c{};
  std::array<double, 2> c_perp{};
  double t = 0.0;
  IntLinear sign_b;       // sgn B(n, c)
  IntLinear sign_b_perp;  // sgn B(n, c_perp)
};

struct ConePair {
  ConeVector c1;
  ConeVector c2;

  static ConePair from_directions(const QuadraticForm& form, std::array<long, 2> u1,
                                  std::array<long, 2> u2);
  double t1() const { return c1.t; }
  double t2() const { return c2.t; }
  double max_abs_t() const { return std::max(std::abs(c1.t), std::abs(c2.t)); }
};

enum class FamilyName { F, G, H };
std::string to_string(FamilyName f);
FamilyName parse_family(const std::string& s);

struct FamilySpec {
  FamilyName name;
  QuadraticForm form;
  ConePair cones;
  std::array<QVec, 4> mus;
  QVec lambda;
  // component j = q^offsets[j] * L_{l_ids[j]}, minus the symbolic constant for (G, 0)
  std::array<int, 4> l_ids;
  std::array<Rational, 4> offsets;
  std::array<double, 4> const_terms;
  // Transcendental constant t2/pi carried symbolically in series constant terms.
  std::string constant_symbol;
  double constant_symbol_value;

  int component_of_series(int l_id) const;
  // Fractional part of Q(mu_j): the exponents of component j lie in this class mod 1.
  Rational exponent_class(int j) const;
};

const FamilySpec& family(FamilyName name);

int weight_indefinite(const QVec& n, const ConePair& cones);
int weight_indefinite_perp(const QVec& n, const ConePair& cones);

struct LatticePoint {
  QVec n;
  Rational q;
  double n1;
  double n2;
  double qd;
};

// All n in Z^2 + mu with |Q(n)| <= q_bound and alpha1 n1^2 + alpha2 n2^2 <= q_bound cosh(2 t_max),
// which contains every point of nonzero cone weight with |Q(n)| <= q_bound.
std::vector<LatticePoint> enumerate_lattice(const QuadraticForm& form, const ConePair& cones,
                                            const QVec& mu, double q_bound);
// All n in Z^2 + mu with alpha1 n1^2 + alpha2 n2^2 <= radius.
std::vector<LatticePoint> enumerate_ellipse(const QuadraticForm& form, const QVec& mu,
                                            double radius);

// theta_mu + theta_{mu + lambda}, exact, including the symbolic constant for (G, 0).
qseries::FormalSeries false_theta_series(const FamilySpec& fam, int j, long order);
// q^offset L_id rewritten with the exponent class offset of its family component.
qseries::FormalSeries offset_l_series(const FamilySpec& fam, int j, long order);

inline constexpr double kMinImag = 1e-3;
inline constexpr double kLogMargin = 40.0;

struct ThetaOptions {
  double log_margin = kLogMargin;
  double min_imag = kMinImag;
};

// Theta_mu for a single coset (including (t2 - t1) sqrt(tau2) when mu is integral).
cplx mock_theta_coset(const QuadraticForm& form, const ConePair& cones, const QVec& mu, cplx tau,
                      const Tolerance& tol = {}, const ThetaOptions& opt = {});
cplx mock_theta_coset_dz(const QuadraticForm& form, const ConePair& cones, const QVec& mu,
                         cplx tau, const Tolerance& tol = {}, const ThetaOptions& opt = {});

cplx mock_maass_value(const FamilySpec& fam, int j, cplx tau, const Tolerance& tol = {},
                      const ThetaOptions& opt = {});
// d/dz with d = (d/dx - i d/dy) / 2.
cplx mock_maass_dz(const FamilySpec& fam, int j, cplx tau, const Tolerance& tol = {},
                   const ThetaOptions& opt = {});

cplx completed_theta_value(const QuadraticForm& form, const QVec& mu, const ConePair& cones,
                           cplx tau, const Tolerance& tol = {}, const ThetaOptions& opt = {});
cplx completed_family_value(const FamilySpec& fam, int j, cplx tau, const Tolerance& tol = {},
                            const ThetaOptions& opt = {});

// phi_mu^[c0]; c0 is one of the cone vectors (its parameter t0 is c0.t).
cplx shadow_value(const QuadraticForm& form, const QVec& mu, const ConeVector& c0,
                  const ConePair& cones, cplx tau, const Tolerance& tol = {},
                  const ThetaOptions& opt = {});

struct FourierTerm {
  Rational exponent;
  Rational coefficient;
  double m;  // exponent as a double
  double d;  // coefficient as a double
};

// U_j(tau) = c sqrt(tau2) + sqrt(tau2) sum_m d(m) K0(2 pi |m| tau2) e(m tau1),
// terms sorted by |m|.
struct FourierTable {
  FamilyName family;
  int component = 0;
  Rational exponent_bound;
  double constant = 0.0;
  std::vector<FourierTerm> terms;

  double min_abs_exponent() const;
};

FourierTable fourier_table(const FamilySpec& fam, int j, const Rational& exponent_bound);

// Bessel parts of U and of -4i dU at x + iy, dropping terms with 2 pi |m| y > cutoff.
struct FourierParts {
  cplx u;
  cplx minus_4i_du;
};
FourierParts fourier_bessel_parts(const FourierTable& table, double x, double y, double cutoff);
cplx fourier_value(const FourierTable& table, cplx tau, double cutoff);
cplx fourier_dz(const FourierTable& table, cplx tau, double cutoff);

}  // namespace qmf::theta

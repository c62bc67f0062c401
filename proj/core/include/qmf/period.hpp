#pragma once

// Holomorphic period functions u_j of the family Maass forms, their obstructions to
// modularity, quantum limits at cusps and transformation checks.

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "qmf/modular.hpp"
#include "qmf/theta.hpp"

namespace qmf::period {

using kernel::cplx;
using kernel::Tolerance;
using modular::CuspRational;
using modular::Gamma02Element;
using theta::FamilyName;

using Vec4 = std::array<cplx, 4>;

enum class Route { automatic, direct_qseries, split_integral };
std::string to_string(Route r);

struct PeriodOptions {
  Route route = Route::automatic;
  // The direct q-series is used at Im(tau) >= this height.
  double direct_threshold = 0.05;
  // Fourier terms with 2 pi |m| y > ln(1/eps) + bessel_margin are dropped.
  double bessel_margin = 12.0;
  // Split height of the obstruction integral; default 2/|c| of the cusp.
  std::optional<double> obstruction_split;
};

struct PeriodValue {
  Vec4 value{};
  Route route = Route::direct_qseries;
  double error_estimate = 0.0;
  // Present for the split route.
  std::optional<Rational> anchor;
};

struct ObstructionValue {
  Rational rho;
  cplx arg;
  Vec4 value{};
  double error_estimate = 0.0;
};

struct QuantumValue {
  Rational x;
  Vec4 value{};
  Vec4 gamma{};
  double error_estimate = 0.0;
};

// Fourier tables of the four components, cached per (family, bound rounded up to 2^k).
const theta::FourierTable& fourier_model(FamilyName f, int j, double exponent_bound);

// All four components of u at tau.
PeriodValue u_value(FamilyName f, cplx tau, const Tolerance& tol = {},
                    const PeriodOptions& opt = {});

// u at tau = x + delta + i t computed through the cusp x (split route with a given anchor).
PeriodValue u_value_at(FamilyName f, const CuspRational& anchor, double delta, double t,
                       const Tolerance& tol = {}, const PeriodOptions& opt = {});

// The cusp used by the split route for tau.
CuspRational select_anchor(cplx tau);

ObstructionValue obstruction_value(FamilyName f, const CuspRational& rho, cplx arg,
                                   const Tolerance& tol = {}, const PeriodOptions& opt = {});

QuantumValue quantum_value(FamilyName f, const CuspRational& x, const Tolerance& tol = {},
                           const PeriodOptions& opt = {});

// sgn(c tau1 + d) for a floating tau1; throws within 1e-14 of the cusp -d/c.
int side_of_cusp(const Gamma02Element& m, double tau1);

// max_j |u_j(M tau) - sgn(c tau1 + d)(c tau + d) sum_k Psi_M(j,k)(u_k(tau) + U_{k,-d/c}(tau))|
double verify_modular(FamilyName f, const Gamma02Element& m, cplx tau, const Tolerance& tol = {},
                      const PeriodOptions& opt = {});

// Image of a rational under a Gamma_0(2) element, exactly.
Rational act(const Gamma02Element& m, const Rational& x);

// max_j |q_j(M x) - |c x + d| sum_k Psi_M(j,k)(q_k(x) + U_{k,-d/c}(x))| for the quantum values q.
double verify_quantum(FamilyName f, const Gamma02Element& m, const CuspRational& x,
                      const Tolerance& tol = {}, const PeriodOptions& opt = {});

struct PathDeformationResult {
  cplx extrapolated;  // lim (u_j(x + it + Bt^2) - gamma/(pi t))
  cplx expected;      // quantum value + i B gamma / pi
  double residual;
};

// Heights 2e-3 * 2^-k, k = 0..6: small enough that the limit is polynomial in t.
std::vector<double> default_deformation_heights();

PathDeformationResult path_deformation_check(FamilyName f, int j, const CuspRational& x,
                                             double b, const std::vector<double>& t_sequence,
                                             const Tolerance& tol = {},
                                             const PeriodOptions& opt = {});

// Polynomial extrapolation to h = 0 through (h_i, f_i) (Neville's scheme).
cplx extrapolate_to_zero(const std::vector<double>& h, const std::vector<cplx>& f);

// Fractions p/q in the open interval (lo, hi) with q even, gcd(p, q) = 1 and q <= max_q,
// sorted by value.
std::vector<Rational> even_farey_points(long max_q, const Rational& lo, const Rational& hi);

}  // namespace qmf::period

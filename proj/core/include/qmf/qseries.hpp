#pragma once

// Exact truncated q-expansions and the twelve hypergeometric series L1..L12.

#include <gmpxx.h>

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmf/kernel.hpp"

namespace qmf {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);
std::string to_string(const mpq_class& r);
mpq_class parse_mpq(const std::string& text);

}  // namespace qmf

namespace qmf::qseries {

// A coefficient multiple of a named transcendental constant, attached to q^(offset+index).
struct SymbolicTerm {
  long index = 0;
  mpq_class multiplier;
  std::string symbol;
  double symbol_value = 0.0;

  bool operator==(const SymbolicTerm& o) const {
    return index == o.index && multiplier == o.multiplier && symbol == o.symbol;
  }
};

// sum_{n < order} coeff[n] q^(offset + n), exact rational coefficients.
class FormalSeries {
 public:
  FormalSeries() = default;
  FormalSeries(Rational offset, long order);

  static FormalSeries constant(const mpq_class& c, long order);
  static FormalSeries monomial(long n, const mpq_class& c, long order);

  const Rational& offset() const { return offset_; }
  long order() const { return static_cast<long>(coeffs_.size()); }
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }
  const std::vector<SymbolicTerm>& symbolic_terms() const { return symbolic_; }

  // Throws std::out_of_range outside [0, order).
  const mpq_class& coefficient(long n) const;
  void set_coefficient(long n, const mpq_class& c);
  void add_to_coefficient(long n, const mpq_class& c);
  void add_symbolic(long n, const mpq_class& multiplier, const std::string& symbol,
                    double symbol_value);

  FormalSeries truncated(long order) const;
  // q^p times this series: only the offset changes.
  FormalSeries times_q_power(const Rational& p) const;
  // Same series written with a different offset; the difference must be an integer and
  // every coefficient dropped by a downward shift must vanish.
  FormalSeries with_offset(const Rational& new_offset) const;

  FormalSeries operator+(const FormalSeries& o) const;
  FormalSeries operator-(const FormalSeries& o) const;
  FormalSeries operator*(const FormalSeries& o) const;
  FormalSeries operator*(const mpq_class& s) const;

  bool operator==(const FormalSeries& o) const;
  bool operator!=(const FormalSeries& o) const { return !(*this == o); }

  // sum_n c_n exp(2 pi i (offset + n) tau) including symbolic constants.
  std::complex<double> evaluate_at_tau(std::complex<double> tau) const;
  // Polynomial value at q; requires an integral offset >= 0.
  std::complex<double> evaluate(std::complex<double> q) const;

 private:
  Rational offset_{0};
  std::vector<mpq_class> coeffs_;
  std::vector<SymbolicTerm> symbolic_;
};

// (a; q)_n truncated below q^order; n = nullopt means the infinite product.
FormalSeries pochhammer(const FormalSeries& a, std::optional<long> n, long order);

struct SeriesId {
  int index;

  explicit SeriesId(int i);
  bool star_averaged() const { return index == 7 || index == 8 || index == 11 || index == 12; }
};

FormalSeries l_series(SeriesId id, long order);

// Same partial sums as l_series but returning S_N for a fixed row cap N, before averaging.
// Exposed for the independence-of-stabilization property.
FormalSeries l_series_partial(SeriesId id, long order, long rows);

std::complex<double> l_eval(SeriesId id, std::complex<double> q,
                            const kernel::Tolerance& tol = {});

}  // namespace qmf::qseries

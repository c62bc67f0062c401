#include "qmf/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qmf {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(n);
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const long long p = std::stoll(num, &used);
    if (used != num.size()) throw std::invalid_argument(text);
    const long long q = std::stoll(den, &used);
    if (used != den.size()) throw std::invalid_argument(text);
    if (q == 0) throw DomainError("zero denominator in rational '" + text + "'");
    return Rational(p, q);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw;
    throw DomainError("malformed rational '" + text + "'");
  }
}

std::string to_string(const mpq_class& r) { return r.get_str(); }

mpq_class parse_mpq(const std::string& text) {
  mpq_class r;
  if (r.set_str(text, 10) != 0) throw DomainError("malformed rational '" + text + "'");
  if (r.get_den() == 0) throw DomainError("zero denominator in rational '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace qmf

namespace qmf::qseries {

FormalSeries::FormalSeries(Rational offset, long order) : offset_(offset) {
  if (order < 0) throw DomainError("FormalSeries: negative order");
  coeffs_.assign(static_cast<std::size_t>(order), mpq_class(0));
}

FormalSeries FormalSeries::constant(const mpq_class& c, long order) {
  FormalSeries s(Rational(0), order);
  if (order > 0) s.coeffs_[0] = c;
  return s;
}

FormalSeries FormalSeries::monomial(long n, const mpq_class& c, long order) {
  FormalSeries s(Rational(0), order);
  if (n < 0) throw DomainError("FormalSeries::monomial: negative exponent");
  if (n < order) s.coeffs_[static_cast<std::size_t>(n)] = c;
  return s;
}

const mpq_class& FormalSeries::coefficient(long n) const {
  if (n < 0 || n >= order()) throw std::out_of_range("FormalSeries: index beyond order");
  return coeffs_[static_cast<std::size_t>(n)];
}

void FormalSeries::set_coefficient(long n, const mpq_class& c) {
  if (n < 0 || n >= order()) throw std::out_of_range("FormalSeries: index beyond order");
  coeffs_[static_cast<std::size_t>(n)] = c;
}

void FormalSeries::add_to_coefficient(long n, const mpq_class& c) {
  if (n < 0 || n >= order()) throw std::out_of_range("FormalSeries: index beyond order");
  coeffs_[static_cast<std::size_t>(n)] += c;
}

void FormalSeries::add_symbolic(long n, const mpq_class& multiplier, const std::string& symbol,
                                double symbol_value) {
  if (n < 0 || n >= order()) return;
  for (auto& t : symbolic_) {
    if (t.index == n && t.symbol == symbol) {
      t.multiplier += multiplier;
      return;
    }
  }
  symbolic_.push_back({n, multiplier, symbol, symbol_value});
}

FormalSeries FormalSeries::truncated(long new_order) const {
  if (new_order > order()) throw DomainError("FormalSeries::truncated: cannot extend order");
  FormalSeries s(offset_, new_order);
  std::copy_n(coeffs_.begin(), new_order, s.coeffs_.begin());
  for (const auto& t : symbolic_) {
    if (t.index < new_order) s.symbolic_.push_back(t);
  }
  return s;
}

FormalSeries FormalSeries::times_q_power(const Rational& p) const {
  FormalSeries s = *this;
  s.offset_ += p;
  return s;
}

FormalSeries FormalSeries::with_offset(const Rational& new_offset) const {
  const Rational diff = offset_ - new_offset;
  if (diff.denominator() != 1) {
    throw DomainError("FormalSeries::with_offset: offsets differ by a non-integer");
  }
  const long shift = static_cast<long>(diff.numerator());
  const long new_order = order() + shift;
  if (new_order < 0) throw DomainError("FormalSeries::with_offset: shift exceeds order");
  FormalSeries s(new_offset, new_order);
  for (long n = 0; n < order(); ++n) {
    const long m = n + shift;
    if (m < 0) {
      if (coeffs_[static_cast<std::size_t>(n)] != 0) {
        throw DomainError("FormalSeries::with_offset: would drop a nonzero coefficient");
      }
      continue;
    }
    s.coeffs_[static_cast<std::size_t>(m)] = coeffs_[static_cast<std::size_t>(n)];
  }
  for (auto t : symbolic_) {
    t.index += shift;
    if (t.index < 0) throw DomainError("FormalSeries::with_offset: would drop a symbolic term");
    s.symbolic_.push_back(t);
  }
  return s;
}

FormalSeries FormalSeries::operator+(const FormalSeries& o) const {
  if (offset_ != o.offset_) throw DomainError("FormalSeries: adding series with different offsets");
  FormalSeries s(offset_, std::min(order(), o.order()));
  for (long n = 0; n < s.order(); ++n) {
    s.coeffs_[static_cast<std::size_t>(n)] =
        coeffs_[static_cast<std::size_t>(n)] + o.coeffs_[static_cast<std::size_t>(n)];
  }
  for (const auto& t : symbolic_) s.add_symbolic(t.index, t.multiplier, t.symbol, t.symbol_value);
  for (const auto& t : o.symbolic_) {
    s.add_symbolic(t.index, t.multiplier, t.symbol, t.symbol_value);
  }
  return s;
}

FormalSeries FormalSeries::operator-(const FormalSeries& o) const {
  return *this + o * mpq_class(-1);
}

FormalSeries FormalSeries::operator*(const FormalSeries& o) const {
  if (!symbolic_.empty() || !o.symbolic_.empty()) {
    throw DomainError("FormalSeries: product of series with symbolic terms is not supported");
  }
  FormalSeries s(offset_ + o.offset_, std::min(order(), o.order()));
  const long n_max = s.order();
  for (long i = 0; i < n_max; ++i) {
    const auto& a = coeffs_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    for (long j = 0; i + j < n_max; ++j) {
      const auto& b = o.coeffs_[static_cast<std::size_t>(j)];
      if (b != 0) s.coeffs_[static_cast<std::size_t>(i + j)] += a * b;
    }
  }
  return s;
}

FormalSeries FormalSeries::operator*(const mpq_class& c) const {
  FormalSeries s = *this;
  for (auto& x : s.coeffs_) x *= c;
  for (auto& t : s.symbolic_) t.multiplier *= c;
  return s;
}

bool FormalSeries::operator==(const FormalSeries& o) const {
  if (offset_ != o.offset_ || coeffs_ != o.coeffs_) return false;
  auto live = [](const std::vector<SymbolicTerm>& v) {
    std::vector<SymbolicTerm> r;
    for (const auto& t : v) {
      if (t.multiplier != 0) r.push_back(t);
    }
    std::sort(r.begin(), r.end(), [](const SymbolicTerm& a, const SymbolicTerm& b) {
      return a.index != b.index ? a.index < b.index : a.symbol < b.symbol;
    });
    return r;
  };
  return live(symbolic_) == live(o.symbolic_);
}

std::complex<double> FormalSeries::evaluate_at_tau(std::complex<double> tau) const {
  const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
  const double off = static_cast<double>(offset_.numerator()) / offset_.denominator();
  kernel::CompensatedSum<std::complex<double>> sum;
  for (long n = 0; n < order(); ++n) {
    const auto& c = coeffs_[static_cast<std::size_t>(n)];
    if (c == 0) continue;
    sum.add(c.get_d() * std::exp(two_pi_i * (off + n) * tau));
  }
  for (const auto& t : symbolic_) {
    sum.add(t.multiplier.get_d() * t.symbol_value * std::exp(two_pi_i * (off + t.index) * tau));
  }
  return sum.value();
}

std::complex<double> FormalSeries::evaluate(std::complex<double> q) const {
  if (offset_.denominator() != 1 || offset_.numerator() < 0) {
    throw DomainError("FormalSeries::evaluate: needs a nonnegative integral offset");
  }
  std::complex<double> acc = 0.0;
  for (long n = order() - 1; n >= 0; --n) acc = acc * q + coeffs_[static_cast<std::size_t>(n)].get_d();
  for (const auto& t : symbolic_) {
    acc += t.multiplier.get_d() * t.symbol_value * std::pow(q, static_cast<double>(t.index));
  }
  return acc * std::pow(q, static_cast<double>(offset_.numerator()));
}

FormalSeries pochhammer(const FormalSeries& a, std::optional<long> n, long order) {
  if (order < 1) throw DomainError("pochhammer: order must be positive");
  if (a.offset().denominator() != 1 || a.offset().numerator() < 0) {
    throw DomainError("pochhammer: argument must have a nonnegative integral offset");
  }
  const long known = a.order() + static_cast<long>(a.offset().numerator());
  order = std::min(order, known);
  if (order < 1) throw DomainError("pochhammer: argument carries no coefficients");
  const FormalSeries base = a.with_offset(Rational(0)).truncated(order);
  FormalSeries result = FormalSeries::constant(1, order);
  const long count = n.value_or(order);
  if (n && *n < 0) throw DomainError("pochhammer: negative length");
  for (long j = 0; j < count && j < order; ++j) {
    // 1 - a q^j
    FormalSeries factor = FormalSeries::constant(1, order);
    for (long i = 0; i + j < order && i < base.order(); ++i) {
      factor.add_to_coefficient(i + j, -base.coefficient(i));
    }
    result = result * factor;
  }
  return result;
}

SeriesId::SeriesId(int i) : index(i) {
  if (i < 1 || i > 12) throw DomainError("series id must be in 1..12");
}

namespace {

// Truncated integer power series mod q^L.
using IntSeries = std::vector<mpz_class>;

// s <- s (1 - c q^e)
void mul_one_minus(IntSeries& s, int c, long e) {
  const long L = static_cast<long>(s.size());
  if (e == 0) {
    for (auto& x : s) x *= (1 - c);
    return;
  }
  for (long i = L - 1; i >= e; --i) {
    if (c == 1) s[i] -= s[i - e];
    else s[i] += s[i - e];
  }
}

// s <- s / (1 - c q^e), e >= 1
void div_one_minus(IntSeries& s, int c, long e) {
  const long L = static_cast<long>(s.size());
  for (long i = e; i < L; ++i) {
    if (c == 1) s[i] += s[i - e];
    else s[i] -= s[i - e];
  }
}

void shift_up(IntSeries& s, long p) {
  const long L = static_cast<long>(s.size());
  if (p <= 0) return;
  for (long i = L - 1; i >= 0; --i) s[i] = (i >= p) ? s[i - p] : mpz_class(0);
}

enum class Numerator { q_n_minus_1, q_n, q2_n };
enum class Denominator { q_k_minus_1, q_k, q2_k_minus_1, q2_k };

// T(n,k) = pre (-1)^(n+k) [(-1)_n] N(n) q^(shift + e(n,k)) / ((1 - q^(2k+ds)) (q)_(n-k) D(k))
// with e(n,k) = tri n(n+1)/2 + lin n + (k2 k^2 + k1 k)/2.
struct Spec {
  int k_min;
  bool minus_one;
  Numerator num;
  int tri, lin, k2, k1;
  int ds;
  Denominator den;
  int shift;
  int prefactor;
  int constant;
  bool star;

  long exponent(long n, long k) const {
    return tri * n * (n + 1) / 2 + lin * n + (k2 * k * k + k1 * k) / 2;
  }
  long valuation(long n, long k) const {
    return shift + exponent(n, k) + ((k == 0 && ds == -1) ? 1 : 0);
  }
  long exponent_step(long n) const { return tri * (n + 1) + lin; }
};

const Spec& spec_for(SeriesId id) {
  using N = Numerator;
  using D = Denominator;
  static const Spec specs[12] = {
      {1, false, N::q_n_minus_1, 1, 0, 1, 1, -1, D::q_k_minus_1, 0, 1, 0, false},
      {0, false, N::q_n, 1, 0, 1, 1, +1, D::q_k, 0, 1, 0, false},
      {1, false, N::q_n_minus_1, 1, 0, 1, -1, -1, D::q_k_minus_1, 1, 1, 0, false},
      {0, false, N::q_n, 1, 0, 1, -1, +1, D::q_k, 0, 1, -1, false},
      {1, true, N::q_n_minus_1, 0, 1, 2, -2, -1, D::q2_k_minus_1, 1, 1, 0, false},
      {1, true, N::q_n_minus_1, 0, 1, 2, 0, -1, D::q2_k_minus_1, 0, 1, 0, false},
      {0, false, N::q2_n, 0, 0, 2, 2, +1, D::q2_k, 0, 2, 0, true},
      {0, false, N::q2_n, 0, 0, 2, 0, +1, D::q2_k, 0, 2, -1, true},
      {1, true, N::q_n_minus_1, 0, 1, 1, 1, -1, D::q_k_minus_1, 0, 1, 0, false},
      {1, true, N::q_n_minus_1, 0, 1, 1, -1, -1, D::q_k_minus_1, 1, 1, 0, false},
      {0, false, N::q2_n, 0, 0, 1, 1, +1, D::q_k, 0, 2, 0, true},
      {0, false, N::q2_n, 0, 0, 1, -1, +1, D::q_k, 0, 2, -2, true},
  };
  return specs[id.index - 1];
}

// Exact T(k, k) mod q^L.
IntSeries diagonal_term(const Spec& sp, long k, long L) {
  IntSeries s(static_cast<std::size_t>(L), 0);
  if (L == 0) return s;
  s[0] = sp.prefactor;
  if (sp.minus_one) {
    for (long j = 0; j < k; ++j) mul_one_minus(s, -1, j);
  }
  switch (sp.num) {
    case Numerator::q_n_minus_1:
      for (long j = 1; j <= k - 1; ++j) mul_one_minus(s, 1, j);
      break;
    case Numerator::q_n:
      for (long j = 1; j <= k; ++j) mul_one_minus(s, 1, j);
      break;
    case Numerator::q2_n:
      for (long j = 1; j <= k; ++j) mul_one_minus(s, 1, 2 * j);
      break;
  }
  const long odd = 2 * k + sp.ds;
  if (odd >= 1) {
    div_one_minus(s, 1, odd);
  } else {
    // 1/(1 - q^-1) = -q/(1 - q)
    for (auto& x : s) x = -x;
    shift_up(s, 1);
    div_one_minus(s, 1, 1);
  }
  switch (sp.den) {
    case Denominator::q_k_minus_1:
      for (long j = 1; j <= k - 1; ++j) div_one_minus(s, 1, j);
      break;
    case Denominator::q_k:
      for (long j = 1; j <= k; ++j) div_one_minus(s, 1, j);
      break;
    case Denominator::q2_k_minus_1:
      for (long j = 1; j <= k - 1; ++j) div_one_minus(s, 1, 2 * j);
      break;
    case Denominator::q2_k:
      for (long j = 1; j <= k; ++j) div_one_minus(s, 1, 2 * j);
      break;
  }
  shift_up(s, sp.shift + sp.exponent(k, k));
  return s;
}

// T(n+1, k) from T(n, k).
void advance_row(const Spec& sp, IntSeries& s, long n, long k) {
  for (auto& x : s) x = -x;
  if (sp.minus_one) mul_one_minus(s, -1, n);
  switch (sp.num) {
    case Numerator::q_n_minus_1:
      mul_one_minus(s, 1, n);
      break;
    case Numerator::q_n:
      mul_one_minus(s, 1, n + 1);
      break;
    case Numerator::q2_n:
      mul_one_minus(s, 1, 2 * n + 2);
      break;
  }
  shift_up(s, sp.exponent_step(n));
  div_one_minus(s, 1, n + 1 - k);
}

void accumulate(IntSeries& acc, const IntSeries& s) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s[i];
}

FormalSeries finish(const Spec& sp, const IntSeries& sum, long order, bool halve) {
  FormalSeries out(Rational(0), order);
  for (long i = 0; i < order; ++i) {
    mpq_class c(sum[static_cast<std::size_t>(i)]);
    if (halve) {
      c /= 2;
      c.canonicalize();
    }
    out.set_coefficient(i, c);
  }
  if (order > 0) out.add_to_coefficient(0, sp.constant);
  return out;
}

IntSeries non_star_sum(const Spec& sp, long order) {
  IntSeries total(static_cast<std::size_t>(order), 0);
  for (long k = sp.k_min; sp.valuation(k, k) < order; ++k) {
    IntSeries term = diagonal_term(sp, k, order);
    for (long n = k; sp.valuation(n, k) < order; ++n) {
      accumulate(total, term);
      advance_row(sp, term, n, k);
    }
  }
  return total;
}

// Runs the star recurrence, calling visit(N, S_N) after each row N.
template <class Visit>
void star_rows(const Spec& sp, long order, long max_rows, Visit&& visit) {
  IntSeries partial(static_cast<std::size_t>(order), 0);
  std::vector<IntSeries> active;
  for (long n = 0; n <= max_rows; ++n) {
    for (long k = 0; k < static_cast<long>(active.size()); ++k) {
      advance_row(sp, active[static_cast<std::size_t>(k)], n - 1, k);
    }
    if (sp.valuation(n, n) < order && static_cast<long>(active.size()) == n) {
      active.push_back(diagonal_term(sp, n, order));
    }
    for (const auto& t : active) accumulate(partial, t);
    if (!visit(n, partial)) return;
  }
}

}  // namespace

FormalSeries l_series(SeriesId id, long order) {
  if (order < 1) throw DomainError("l_series: order must be positive");
  const Spec& sp = spec_for(id);
  if (!sp.star) return finish(sp, non_star_sum(sp, order), order, false);

  const long max_rows = 20 * order + 400;
  IntSeries prev_partial;
  std::vector<IntSeries> averages;  // twice the averaged partial sums
  bool done = false;
  star_rows(sp, order, max_rows, [&](long n, const IntSeries& partial) {
    if (n > 0) {
      IntSeries twice = prev_partial;
      accumulate(twice, partial);
      averages.push_back(std::move(twice));
      const std::size_t m = averages.size();
      if (m >= 3 && averages[m - 1] == averages[m - 2] && averages[m - 2] == averages[m - 3]) {
        done = true;
        return false;
      }
    }
    prev_partial = partial;
    return true;
  });
  if (!done) {
    throw ConvergenceError("l_series: star-averaged partial sums did not stabilize", 0.0, 0.0);
  }
  return finish(sp, averages.back(), order, true);
}

FormalSeries l_series_partial(SeriesId id, long order, long rows) {
  if (order < 1) throw DomainError("l_series_partial: order must be positive");
  const Spec& sp = spec_for(id);
  if (!sp.star) {
    IntSeries total(static_cast<std::size_t>(order), 0);
    for (long k = sp.k_min; k <= rows && sp.valuation(k, k) < order; ++k) {
      IntSeries term = diagonal_term(sp, k, order);
      for (long n = k; n <= rows && sp.valuation(n, k) < order; ++n) {
        accumulate(total, term);
        advance_row(sp, term, n, k);
      }
    }
    return finish(sp, total, order, false);
  }
  IntSeries result;
  star_rows(sp, order, rows, [&](long n, const IntSeries& partial) {
    if (n == rows) result = partial;
    return true;
  });
  return finish(sp, result, order, false);
}

namespace {

using lcplx = std::complex<long double>;

lcplx diagonal_value(const Spec& sp, long k, lcplx q) {
  auto qp = [&](long e) { return std::pow(q, static_cast<long double>(e)); };
  lcplx v = static_cast<long double>(sp.prefactor);
  if (sp.minus_one) {
    for (long j = 0; j < k; ++j) v *= 1.0L + qp(j);
  }
  switch (sp.num) {
    case Numerator::q_n_minus_1:
      for (long j = 1; j <= k - 1; ++j) v *= 1.0L - qp(j);
      break;
    case Numerator::q_n:
      for (long j = 1; j <= k; ++j) v *= 1.0L - qp(j);
      break;
    case Numerator::q2_n:
      for (long j = 1; j <= k; ++j) v *= 1.0L - qp(2 * j);
      break;
  }
  const long odd = 2 * k + sp.ds;
  if (odd >= 1) v /= 1.0L - qp(odd);
  else v *= -q / (1.0L - q);
  switch (sp.den) {
    case Denominator::q_k_minus_1:
      for (long j = 1; j <= k - 1; ++j) v /= 1.0L - qp(j);
      break;
    case Denominator::q_k:
      for (long j = 1; j <= k; ++j) v /= 1.0L - qp(j);
      break;
    case Denominator::q2_k_minus_1:
      for (long j = 1; j <= k - 1; ++j) v /= 1.0L - qp(2 * j);
      break;
    case Denominator::q2_k:
      for (long j = 1; j <= k; ++j) v /= 1.0L - qp(2 * j);
      break;
  }
  return v * qp(sp.shift + sp.exponent(k, k));
}

lcplx row_ratio(const Spec& sp, long n, long k, lcplx q, const std::vector<lcplx>& powers) {
  auto qp = [&](long e) -> lcplx {
    if (e < static_cast<long>(powers.size())) return powers[static_cast<std::size_t>(e)];
    return std::pow(q, static_cast<long double>(e));
  };
  lcplx r = -1.0L;
  if (sp.minus_one) r *= 1.0L + qp(n);
  switch (sp.num) {
    case Numerator::q_n_minus_1:
      r *= 1.0L - qp(n);
      break;
    case Numerator::q_n:
      r *= 1.0L - qp(n + 1);
      break;
    case Numerator::q2_n:
      r *= 1.0L - qp(2 * n + 2);
      break;
  }
  r *= qp(sp.exponent_step(n));
  return r / (1.0L - qp(n + 1 - k));
}

}  // namespace

std::complex<double> l_eval(SeriesId id, std::complex<double> q_in, const kernel::Tolerance& tol) {
  tol.validate();
  if (!(std::abs(q_in) < 1.0)) throw DomainError("l_eval: requires |q| < 1");
  if (q_in == std::complex<double>(0.0)) return l_series(id, 1).coefficient(0).get_d();
  const Spec& sp = spec_for(id);
  const lcplx q(q_in.real(), q_in.imag());
  const long max_rows = 200000;
  std::vector<lcplx> powers{1.0L};
  std::vector<lcplx> terms;  // T(n, k) for k = k_min..n
  kernel::CompensatedSum<std::complex<double>> total;
  lcplx partial = 0.0L;
  lcplx prev_partial = 0.0L;
  lcplx prev_average = 0.0L;
  int quiet = 0;
  auto to_d = [](lcplx z) { return std::complex<double>(double(z.real()), double(z.imag())); };
  for (long n = 0; n < max_rows; ++n) {
    while (static_cast<long>(powers.size()) < 2 * n + 4) powers.push_back(powers.back() * q);
    for (long k = sp.k_min; k < n; ++k) {
      auto& t = terms[static_cast<std::size_t>(k - sp.k_min)];
      t *= row_ratio(sp, n - 1, k, q, powers);
    }
    if (n >= sp.k_min) terms.push_back(diagonal_value(sp, n, q));
    lcplx row = 0.0L;
    long double row_mag = 0.0L;
    for (const auto& t : terms) {
      row += t;
      row_mag = std::max(row_mag, std::abs(t));
    }
    if (!std::isfinite(static_cast<double>(row_mag))) {
      throw ConvergenceError("l_eval: non-finite term", std::complex<double>(NAN, NAN), INFINITY);
    }
    partial += row;
    if (!sp.star) {
      total.add(to_d(row));
      const double scale = std::max(tol.abs_tol, tol.rel_tol * std::abs(total.value()));
      if (n > 2 && row_mag < 0.01L * scale) {
        if (++quiet >= 3) return total.value() + static_cast<double>(sp.constant);
      } else {
        quiet = 0;
      }
    } else {
      if (n > 0) {
        const lcplx average = 0.5L * (partial + prev_partial);
        const double scale =
            std::max(tol.abs_tol, tol.rel_tol * static_cast<double>(std::abs(average)));
        if (n > 2 && std::abs(average - prev_average) < 0.01L * scale) {
          if (++quiet >= 3) return to_d(average) + static_cast<double>(sp.constant);
        } else {
          quiet = 0;
        }
        prev_average = average;
      }
      prev_partial = partial;
    }
  }
  const auto best = sp.star ? to_d(prev_average) : total.value();
  throw ConvergenceError("l_eval: series did not converge within the row cap",
                         best + static_cast<double>(sp.constant), 0.0);
}

}  // namespace qmf::qseries

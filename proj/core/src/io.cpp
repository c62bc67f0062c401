#include "qmf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace qmf::io {

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json series_to_json(const qseries::FormalSeries& s) {
  json coeffs = json::array();
  for (const auto& c : s.coefficients()) coeffs.push_back(to_string(c));
  json sym = json::array();
  for (const auto& t : s.symbolic_terms()) {
    sym.push_back({{"index", t.index},
                   {"multiplier", to_string(t.multiplier)},
                   {"symbol", t.symbol},
                   {"value", t.symbol_value}});
  }
  return {{"offset", to_string(s.offset())},
          {"order", s.order()},
          {"coefficients", coeffs},
          {"symbolic", sym}};
}

qseries::FormalSeries series_from_json(const json& j) {
  const Rational offset = parse_rational(j.at("offset").get<std::string>());
  const auto& coeffs = j.at("coefficients");
  const long order = j.at("order").get<long>();
  if (static_cast<long>(coeffs.size()) != order) throw DomainError("series order mismatch");
  qseries::FormalSeries s(offset, order);
  for (long n = 0; n < order; ++n) s.set_coefficient(n, parse_mpq(coeffs[n].get<std::string>()));
  if (j.contains("symbolic")) {
    for (const auto& t : j.at("symbolic")) {
      s.add_symbolic(t.at("index").get<long>(), parse_mpq(t.at("multiplier").get<std::string>()),
                     t.at("symbol").get<std::string>(), t.at("value").get<double>());
    }
  }
  return s;
}

json fourier_table_to_json(const theta::FourierTable& t) {
  json terms = json::array();
  for (const auto& term : t.terms) {
    const double coeff = static_cast<double>(term.coefficient.numerator()) /
                         static_cast<double>(term.coefficient.denominator());
    terms.push_back(json::array({term.exponent.numerator(), term.exponent.denominator(), coeff}));
  }
  return {{"family", theta::to_string(t.family)},
          {"component", t.component},
          {"exponent_bound", to_string(t.exponent_bound)},
          {"constant", t.constant},
          {"terms", terms}};
}

theta::FourierTable fourier_table_from_json(const json& j) {
  theta::FourierTable t;
  t.family = theta::parse_family(j.at("family").get<std::string>());
  t.component = j.at("component").get<int>();
  t.exponent_bound = parse_rational(j.at("exponent_bound").get<std::string>());
  t.constant = j.at("constant").get<double>();
  for (const auto& row : j.at("terms")) {
    if (!row.is_array() || row.size() != 3) throw DomainError("Fourier term must be [num, den, coefficient]");
    const Rational e(row[0].get<long>(), row[1].get<long>());
    const double d = row[2].get<double>();
    const Rational c(static_cast<long>(std::lround(2.0 * d)), 2);
    if (static_cast<double>(c.numerator()) / c.denominator() != d) {
      throw DomainError("Fourier coefficient is not a half-integer");
    }
    t.terms.push_back({e, c, static_cast<double>(e.numerator()) / e.denominator(), d});
  }
  return t;
}

json matrix_to_json(const Eigen::Matrix4cd& m) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Eigen::Matrix4cd matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw DomainError("matrix must be a 4 x 4 array");
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4) throw DomainError("matrix must be a 4 x 4 array");
    for (int k = 0; k < 4; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

json vec4_to_json(const period::Vec4& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

period::Vec4 vec4_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw DomainError("expected four complex values");
  period::Vec4 v;
  for (int k = 0; k < 4; ++k) v[k] = complex_from_json(j[k]);
  return v;
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_complex(std::complex<double> z, int digits) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*g %c %.*gi", digits, z.real(), z.imag() < 0 ? '-' : '+',
                digits, std::abs(z.imag()));
  return buf;
}

}  // namespace qmf::io

#pragma once

// JSON encodings of series, Fourier tables, multipliers and complex values.

#include <json.hpp>

#include "qmf/modular.hpp"
#include "qmf/period.hpp"
#include "qmf/qseries.hpp"
#include "qmf/theta.hpp"

namespace qmf::io {

using nlohmann::json;

json complex_to_json(std::complex<double> z);  // [re, im]
std::complex<double> complex_from_json(const json& j);

// {"offset": "p/q", "order": n, "coefficients": ["p/q", ...], "symbolic": [...]}
json series_to_json(const qseries::FormalSeries& s);
qseries::FormalSeries series_from_json(const json& j);

// [[exponent_num, exponent_den, coefficient], ...] plus family, component, bound and constant.
json fourier_table_to_json(const theta::FourierTable& t);
theta::FourierTable fourier_table_from_json(const json& j);

// 4 x 4 array of [re, im].
json matrix_to_json(const Eigen::Matrix4cd& m);
Eigen::Matrix4cd matrix_from_json(const json& j);

json vec4_to_json(const period::Vec4& v);
period::Vec4 vec4_from_json(const json& j);

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
// Text-mode complex with 12 significant digits: "a + bi".
std::string format_complex(std::complex<double> z, int digits = 12);

}  // namespace qmf::io

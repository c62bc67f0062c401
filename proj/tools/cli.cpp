#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "checks.hpp"
#include "pool.hpp"
#include "qmf/io.hpp"
#include "reference_data.hpp"

namespace qmf::cli {

namespace {

using nlohmann::json;
using kernel::cplx;
using modular::Gamma02Element;
using period::Vec4;
using theta::FamilyName;

constexpr double kPi = std::numbers::pi;
constexpr const char* kCrlf = "\r\n";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string family = "G";
  int j = -1;
  std::vector<double> tau;
  std::string x;
  long order = 20;
  int id = 0;
  long denominator_max = 40;
  double tol = 0.0;
  std::string output = "json";
  std::string out_path;
  int threads = 0;
  std::string suite = "all";
  std::vector<long> matrix;
  std::string route = "auto";
};

kernel::Tolerance tolerance(const Config& c) {
  kernel::Tolerance t;
  if (c.tol > 0.0) t.abs_tol = t.rel_tol = c.tol;
  return t;
}

int threads(const Config& c) {
  return resolve_threads(c.threads > 0 ? std::optional<int>(c.threads) : std::nullopt);
}

FamilyName family(const Config& c) { return theta::parse_family(c.family); }

cplx tau_of(const Config& c) {
  if (c.tau.size() != 2) throw UsageError("--tau RE IM is required");
  return {c.tau[0], c.tau[1]};
}

Rational x_of(const Config& c) {
  if (c.x.empty()) throw UsageError("--x P/Q is required");
  try {
    return parse_rational(c.x);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--x: ") + e.what());
  }
}

std::string rational_text(const Rational& r) { return to_string(r); }

void emit(const Config& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + c.out_path);
  f << text;
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

std::string csv_complex(cplx z) { return io::format_double(z.real()) + "," + io::format_double(z.imag()); }

json values_json(const Vec4& v, int j) {
  if (j >= 0) return io::complex_to_json(v[j]);
  return io::vec4_to_json(v);
}

std::string values_text(const std::string& name, const Vec4& v, int j) {
  std::ostringstream s;
  for (int k = 0; k < 4; ++k) {
    if (j >= 0 && k != j) continue;
    s << name << "_" << k << " = " << io::format_complex(v[k]) << "\n";
  }
  return s.str();
}

std::string values_csv(const Vec4& v, int j) {
  std::string s = std::string("j,re,im") + kCrlf;
  for (int k = 0; k < 4; ++k) {
    if (j >= 0 && k != j) continue;
    s += std::to_string(k) + "," + csv_complex(v[k]) + kCrlf;
  }
  return s;
}

std::string format_values(const Config& c, const std::string& name, const Vec4& v, json meta) {
  if (c.output == "text") return values_text(name, v, c.j);
  if (c.output == "csv") return values_csv(v, c.j);
  meta["values"] = values_json(v, c.j);
  return dump(meta);
}

// ---- commands ----

int cmd_series(const Config& c, std::ostream& out) {
  if (c.id < 1 || c.id > 12) throw UsageError("--id must be in 1..12");
  if (c.order < 1) throw UsageError("--order must be positive");
  const auto [f, j] = series_component(c.id);
  const auto raw = qseries::l_series(qseries::SeriesId(c.id), c.order);
  const auto norm = theta::offset_l_series(theta::family(f), j, c.order);
  if (c.output == "json") {
    emit(c, out, dump({{"id", c.id},
                       {"family", theta::to_string(f)},
                       {"component", j},
                       {"raw", io::series_to_json(raw)},
                       {"normalized", io::series_to_json(norm)}}));
  } else if (c.output == "csv") {
    std::string s = std::string("series,exponent,coefficient") + kCrlf;
    auto rows = [&s](const char* name, const qseries::FormalSeries& ser) {
      for (long n = 0; n < ser.order(); ++n) {
        s += std::string(name) + "," + rational_text(ser.offset() + Rational(n)) + "," +
             to_string(ser.coefficient(n)) + kCrlf;
      }
    };
    rows("raw", raw);
    rows("normalized", norm);
    emit(c, out, s);
  } else {
    std::ostringstream s;
    auto line = [&s](const std::string& name, const qseries::FormalSeries& ser) {
      s << name << " (offset " << rational_text(ser.offset()) << "):";
      for (const auto& k : ser.coefficients()) s << " " << to_string(k);
      for (const auto& t : ser.symbolic_terms()) {
        s << "  + " << to_string(t.multiplier) << "*" << t.symbol << " q^" << t.index;
      }
      s << "\n";
    };
    line("L" + std::to_string(c.id), raw);
    line(theta::to_string(f) + std::to_string(j), norm);
    emit(c, out, s.str());
  }
  return 0;
}

int cmd_u(const Config& c, std::ostream& out) {
  const FamilyName f = family(c);
  const cplx tau = tau_of(c);
  if (!(tau.imag() > 0.0)) throw UsageError("--tau must lie in the upper half-plane");
  period::PeriodOptions opt;
  if (c.route == "direct") opt.route = period::Route::direct_qseries;
  else if (c.route == "split") opt.route = period::Route::split_integral;
  const auto v = period::u_value(f, tau, tolerance(c), opt);
  json meta = {{"family", theta::to_string(f)},
               {"tau", io::complex_to_json(tau)},
               {"route", period::to_string(v.route)},
               {"error_estimate", v.error_estimate}};
  if (v.anchor) meta["anchor"] = rational_text(*v.anchor);
  emit(c, out, format_values(c, "u", v.value, meta));
  return 0;
}

int cmd_obstruction(const Config& c, std::ostream& out) {
  const FamilyName f = family(c);
  const Rational rho = x_of(c);
  const cplx arg = tau_of(c);
  const auto v = period::obstruction_value(f, modular::cusp_matrix(rho), arg, tolerance(c));
  json meta = {{"family", theta::to_string(f)},
               {"rho", rational_text(rho)},
               {"tau", io::complex_to_json(arg)},
               {"error_estimate", v.error_estimate}};
  emit(c, out, format_values(c, "U", v.value, meta));
  return 0;
}

int cmd_multiplier(const Config& c, std::ostream& out) {
  const FamilyName f = family(c);
  if (c.matrix.size() != 4) throw UsageError("--matrix A B C D is required");
  const Gamma02Element m(c.matrix[0], c.matrix[1], c.matrix[2], c.matrix[3]);
  const auto word = modular::decompose(m);
  const auto psi = modular::multiplier(f, m).m;
  const double fold = (modular::fold_multiplier(theta::family(f), m).m - psi).cwiseAbs().maxCoeff();
  if (c.output == "json") {
    emit(c, out, dump({{"family", theta::to_string(f)},
                       {"matrix", {m.a(), m.b(), m.c(), m.d()}},
                       {"word", modular::to_string(word)},
                       {"multiplier", io::matrix_to_json(psi)},
                       {"fold_residual", fold}}));
  } else if (c.output == "csv") {
    std::string s = std::string("row,col,re,im") + kCrlf;
    for (int r = 0; r < 4; ++r) {
      for (int k = 0; k < 4; ++k) s += std::to_string(r) + "," + std::to_string(k) + "," + csv_complex(psi(r, k)) + kCrlf;
    }
    emit(c, out, s);
  } else {
    std::ostringstream s;
    s << modular::to_string(m) << " = " << modular::to_string(word) << "\n";
    for (int r = 0; r < 4; ++r) {
      for (int k = 0; k < 4; ++k) s << (k ? "  " : "") << io::format_complex(psi(r, k), 8);
      s << "\n";
    }
    s << "fold residual " << fold << "\n";
    emit(c, out, s.str());
  }
  return 0;
}

int cmd_fourier(const Config& c, std::ostream& out) {
  const FamilyName f = family(c);
  if (c.j < 0) throw UsageError("--j is required");
  if (c.order < 1) throw UsageError("--order must be positive");
  const auto table = theta::fourier_table(theta::family(f), c.j, Rational(c.order));
  if (c.output == "json") {
    emit(c, out, dump(io::fourier_table_to_json(table)));
  } else {
    std::string s = c.output == "csv" ? std::string("exponent,coefficient") + kCrlf : "";
    const char* sep = c.output == "csv" ? "," : " ";
    const std::string eol = c.output == "csv" ? kCrlf : "\n";
    if (c.output == "text") s += "constant " + io::format_double(table.constant) + "\n";
    for (const auto& t : table.terms) s += rational_text(t.exponent) + sep + rational_text(t.coefficient) + eol;
    emit(c, out, s);
  }
  return 0;
}

int cmd_tables(const Config& c, std::ostream& out, std::ostream& err) {
  const auto cells = reproduce_tables(reference_data(), tolerance(c), threads(c));
  bool ok = true;
  for (const auto& cell : cells) {
    if (!cell.pass) {
      ok = false;
      err << "divergent cell " << cell.name << ": computed " << io::format_complex(cell.computed)
          << ", reference " << io::format_complex(cell.reference) << ", difference " << cell.abs_diff << "\n";
    }
  }
  if (c.output == "json") {
    json rows = json::array();
    for (const auto& cell : cells) {
      rows.push_back({{"cell", cell.name},
                      {"computed", io::complex_to_json(cell.computed)},
                      {"reference", io::complex_to_json(cell.reference)},
                      {"abs_diff", cell.abs_diff},
                      {"tolerance", cell.tolerance},
                      {"status", cell.pass ? "pass" : "fail"}});
    }
    emit(c, out, dump({{"status", ok ? "pass" : "fail"}, {"cells", rows}}));
  } else if (c.output == "csv") {
    std::string s = std::string("cell,computed_re,computed_im,reference_re,reference_im,abs_diff,tolerance,status") + kCrlf;
    for (const auto& cell : cells) {
      s += cell.name + "," + csv_complex(cell.computed) + "," + csv_complex(cell.reference) + "," +
           io::format_double(cell.abs_diff) + "," + io::format_double(cell.tolerance) + "," +
           (cell.pass ? "pass" : "fail") + kCrlf;
    }
    emit(c, out, s);
  } else {
    std::ostringstream s;
    for (const auto& cell : cells) {
      char diff[32];
      std::snprintf(diff, sizeof diff, "%.2e", cell.abs_diff);
      s << (cell.pass ? "pass " : "FAIL ") << cell.name << "  " << io::format_complex(cell.computed)
        << "  (reference " << io::format_complex(cell.reference) << ", diff " << diff << ")\n";
    }
    emit(c, out, s.str());
  }
  return ok ? 0 : 1;
}

int cmd_quantum(const Config& c, std::ostream& out, std::ostream& err) {
  const FamilyName f = family(c);
  if (!c.x.empty()) {
    const Rational x = x_of(c);
    const auto q = period::quantum_value(f, modular::cusp_matrix(x), tolerance(c));
    json meta = {{"family", theta::to_string(f)},
                 {"x", rational_text(x)},
                 {"gamma", io::vec4_to_json(q.gamma)},
                 {"error_estimate", q.error_estimate}};
    emit(c, out, format_values(c, "q", q.value, meta));
    return 0;
  }
  if (c.denominator_max < 2 || c.denominator_max > 200) throw UsageError("--denominator-max must be in 2..200");
  const auto sweep = quantum_sweep(f, c.denominator_max, tolerance(c), threads(c));
  double worst = 0.0;
  for (const auto& row : sweep.transform) worst = std::max(worst, row.residual);
  const bool ok = worst < 1e-6;
  if (!ok) err << "transform residual " << worst << " exceeds 1e-6\n";
  if (c.out_path.empty()) {
    out << quantum_csv(sweep);
    return ok ? 0 : 1;
  }
  std::string stem = c.out_path;
  std::string ext;
  if (const auto dot = stem.rfind('.'); dot != std::string::npos && stem.find('/', dot) == std::string::npos) {
    ext = stem.substr(dot);
    stem.resize(dot);
  }
  const std::string second = stem + "_transform" + (ext.empty() ? ".csv" : ext);
  for (const auto& [path, text] : {std::pair{c.out_path, quantum_csv(sweep)}, std::pair{second, transform_csv(sweep)}}) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    file << text;
  }
  const json summary = {{"family", theta::to_string(f)},
                        {"denominator_max", c.denominator_max},
                        {"points", sweep.values.size()},
                        {"values_file", c.out_path},
                        {"transform_file", second},
                        {"transform_max_residual", worst},
                        {"status", ok ? "pass" : "fail"}};
  if (c.output == "json") out << dump(summary);
  else out << sweep.values.size() << " points written to " << c.out_path << " and " << second
           << "; transform residual " << worst << "\n";
  return ok ? 0 : 1;
}

int cmd_verify(const Config& c, std::ostream& out) {
  if (!is_suite(c.suite)) throw UsageError("unknown suite " + c.suite);
  SuiteSettings s;
  s.tol = tolerance(c);
  s.threads = threads(c);
  const auto results = run_suite(c.suite, s);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.pass;
  if (c.output == "json") {
    json rows = json::array();
    for (const auto& r : results) {
      rows.push_back({{"check", r.check},
                      {"status", r.pass ? "pass" : "fail"},
                      {"max_residual", r.max_residual},
                      {"threshold", r.threshold},
                      {"samples", r.samples}});
    }
    emit(c, out, dump({{"suite", c.suite}, {"status", ok ? "pass" : "fail"}, {"checks", rows}}));
  } else if (c.output == "csv") {
    std::string s2 = std::string("check,status,max_residual,threshold,samples") + kCrlf;
    for (const auto& r : results) {
      s2 += r.check + "," + (r.pass ? "pass" : "fail") + "," + io::format_double(r.max_residual) + "," +
            io::format_double(r.threshold) + "," + std::to_string(r.samples) + kCrlf;
    }
    emit(c, out, s2);
  } else {
    std::ostringstream s2;
    for (const auto& r : results) {
      s2 << (r.pass ? "pass " : "FAIL ") << r.check << "  max residual " << r.max_residual << " (" << r.samples
         << " samples)\n";
    }
    emit(c, out, s2.str());
  }
  return ok ? 0 : 1;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--tol", c.tol, "Absolute and relative tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--output", c.output, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--out", c.out_path, "Write output to this file");
  sub->add_option("--threads", c.threads, "Worker threads (default QMF_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
}

void add_family(CLI::App* sub, Config& c) {
  sub->add_option("--family", c.family, "Family F, G or H")->check(CLI::IsMember({"F", "G", "H"}));
}

}  // namespace

const nlohmann::json& reference_data() {
  static const json data = json::parse(kReferenceJson);
  return data;
}

std::vector<TableCell> reproduce_tables(const json& ref, const kernel::Tolerance& tol, int n_threads) {
  const FamilyName f = theta::parse_family(ref.at("family").get<std::string>());
  const auto& fam = theta::family(f);
  const Rational x = parse_rational(ref.at("cusp").get<std::string>());
  const double xd = static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
  const auto half = modular::cusp_matrix(Rational(-1, 2));
  const auto& near = ref.at("near_cusp");
  const auto& rows = near.at("rows");

  std::vector<std::function<Vec4()>> jobs;
  for (const auto& row : rows) {
    const cplx tau(xd, std::pow(10.0, -row.at("k").get<int>()));
    jobs.push_back([=] { return period::u_value(f, tau, tol).value; });
    jobs.push_back([=] { return period::u_value(f, tau / (2.0 * tau + 1.0), tol).value; });
    jobs.push_back([=] { return period::obstruction_value(f, half, tau, tol).value; });
  }
  const auto& qref = ref.at("quantum");
  const std::size_t quantum_base = jobs.size();
  jobs.push_back([=] { return period::quantum_value(f, modular::cusp_matrix(Rational(11, 12)), tol).value; });
  jobs.push_back([=] { return period::quantum_value(f, modular::cusp_matrix(Rational(11, 34)), tol).value; });
  jobs.push_back([=] { return period::obstruction_value(f, half, cplx(xd, 0.0), tol).value; });

  std::vector<Vec4> results(jobs.size());
  parallel_for(jobs.size(), n_threads, [&](std::size_t i) { results[i] = jobs[i](); });

  std::vector<TableCell> cells;
  auto add = [&cells](std::string name, cplx computed, cplx reference, double tolerance) {
    const double d = std::abs(computed - reference);
    cells.push_back({std::move(name), computed, reference, d, tolerance, d < tolerance});
  };
  const double near_tol = near.at("tolerance").get<double>();
  const std::array<const char*, 3> columns = {"u", "u_transformed", "obstruction"};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int k = rows[r].at("k").get<int>();
    for (std::size_t col = 0; col < columns.size(); ++col) {
      const Vec4 expected = io::vec4_from_json(rows[r].at(columns[col]));
      for (int j = 0; j < 4; ++j) {
        add(std::string("near_cusp[k=") + std::to_string(k) + "]." + columns[col] + "[" + std::to_string(j) + "]",
            results[3 * r + col][j], expected[j], near_tol);
      }
    }
  }

  const cplx gamma = modular::gamma_constant(fam, 0, modular::cusp_matrix(x));
  const auto& sub = ref.at("subtracted");
  for (const auto& row : sub.at("rows")) {
    const int k = row.at("k").get<int>();
    std::size_t r = 0;
    while (r < rows.size() && rows[r].at("k").get<int>() != k) ++r;
    if (r == rows.size()) throw DomainError("subtracted row without matching height");
    const double t = std::pow(10.0, -k);
    add("subtracted[k=" + std::to_string(k) + "]", results[3 * r][0] - gamma / (kPi * t),
        io::complex_from_json(row.at("value")), sub.at("tolerance").get<double>());
  }

  const double qtol = qref.at("tolerance").get<double>();
  const std::array<const char*, 3> qcols = {"quantum_11_12", "quantum_11_34", "obstruction_11_12"};
  for (std::size_t col = 0; col < qcols.size(); ++col) {
    const Vec4 expected = io::vec4_from_json(qref.at(qcols[col]));
    for (int j = 0; j < 4; ++j) {
      add(std::string(qcols[col]) + "[" + std::to_string(j) + "]", results[quantum_base + col][j], expected[j], qtol);
    }
  }

  const auto& hp = ref.at("quantum_high_precision");
  add("quantum_high_precision", results[quantum_base][hp.at("component").get<int>()],
      io::complex_from_json(hp.at("value")), 0.5 * std::pow(10.0, -hp.at("digits").get<int>()));
  const auto& g = ref.at("gamma");
  add("gamma", gamma, cplx(g.at("value").get<double>(), 0.0), g.at("tolerance").get<double>());
  return cells;
}

QuantumSweep quantum_sweep(FamilyName f, long max_q, const kernel::Tolerance& tol, int n_threads) {
  if (max_q > 200) throw DomainError("denominator bound above 200");
  const auto points = period::even_farey_points(max_q, Rational(-1), Rational(1));
  const auto psi = modular::multiplier(f, Gamma02Element::R()).m;
  const auto half = modular::cusp_matrix(Rational(-1, 2));
  QuantumSweep s;
  s.values.resize(points.size());
  std::vector<std::optional<TransformRow>> transform(points.size());
  parallel_for(points.size(), n_threads, [&](std::size_t i) {
    const Rational x = points[i];
    const Vec4 q = period::quantum_value(f, modular::cusp_matrix(x), tol).value;
    s.values[i] = {x, q};
    if (x == Rational(-1, 2)) return;
    const Rational image = period::act(Gamma02Element::R(), x);
    const Vec4 qi = period::quantum_value(f, modular::cusp_matrix(image), tol).value;
    const double xd = static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
    const Vec4 obs = period::obstruction_value(f, half, cplx(xd, 0.0), tol).value;
    const double factor = std::abs(2.0 * xd + 1.0);
    cplx mixed{}, from_obs{};
    for (int k = 0; k < 4; ++k) {
      mixed += psi(0, k) * q[k];
      from_obs += psi(0, k) * obs[k];
    }
    TransformRow row{x, qi[0] - factor * mixed, factor * from_obs, 0.0};
    row.residual = std::abs(row.difference - row.from_obstruction);
    transform[i] = row;
  });
  for (auto& t : transform) {
    if (t) s.transform.push_back(*t);
  }
  return s;
}

std::string quantum_csv(const QuantumSweep& s) {
  std::string out = std::string("p,q,j,re,im") + kCrlf;
  for (const auto& row : s.values) {
    for (int j = 0; j < 4; ++j) {
      out += std::to_string(row.x.numerator()) + "," + std::to_string(row.x.denominator()) + "," +
             std::to_string(j) + "," + csv_complex(row.value[j]) + kCrlf;
    }
  }
  return out;
}

std::string transform_csv(const QuantumSweep& s) {
  std::string out = std::string("p,q,re,im") + kCrlf;
  for (const auto& row : s.transform) {
    out += std::to_string(row.x.numerator()) + "," + std::to_string(row.x.denominator()) + "," +
           csv_complex(row.difference) + kCrlf;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Quantum modular forms from mock Maass theta functions on Gamma_0(2)", "qmf"};
  app.require_subcommand(1);

  auto* series = app.add_subcommand("series", "Exact q-expansion of L_id and its family component");
  series->add_option("--id", c.id, "Series index 1..12")->required();
  series->add_option("--order", c.order, "Number of coefficients");
  add_common(series, c);

  auto* tables = app.add_subcommand("tables", "Recompute the reference tables and compare");
  add_common(tables, c);

  auto* quantum = app.add_subcommand("quantum", "Quantum values at even-denominator rationals");
  add_family(quantum, c);
  quantum->add_option("--x", c.x, "Single rational P/Q with even Q");
  quantum->add_option("--denominator-max", c.denominator_max, "Largest denominator of the sweep (<= 200)");
  add_common(quantum, c);

  auto* verify = app.add_subcommand("verify", "Run identity verification suites");
  verify->add_option("--suite", c.suite, "coeffs, shadows, multipliers, modular, quantum or all");
  add_common(verify, c);

  auto* u = app.add_subcommand("u", "Period function u_j at a point of the upper half-plane");
  add_family(u, c);
  u->add_option("--tau", c.tau, "Real and imaginary parts")->expected(2);
  u->add_option("--j", c.j, "Component 0..3")->check(CLI::Range(0, 3));
  u->add_option("--route", c.route, "auto, direct or split")->check(CLI::IsMember({"auto", "direct", "split"}));
  add_common(u, c);

  auto* obstruction = app.add_subcommand("obstruction", "Obstruction to modularity at the cusp --x");
  add_family(obstruction, c);
  obstruction->add_option("--x", c.x, "Cusp P/Q with even Q");
  obstruction->add_option("--tau", c.tau, "Argument: real and imaginary parts (imaginary >= 0)")->expected(2);
  obstruction->add_option("--j", c.j, "Component 0..3")->check(CLI::Range(0, 3));
  add_common(obstruction, c);

  auto* mult = app.add_subcommand("multiplier", "Multiplier matrix and generator word of a Gamma_0(2) element");
  add_family(mult, c);
  mult->add_option("--matrix", c.matrix, "Entries A B C D")->expected(4);
  add_common(mult, c);

  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients of the non-holomorphic part");
  add_family(fourier, c);
  fourier->add_option("--j", c.j, "Component 0..3")->check(CLI::Range(0, 3));
  fourier->add_option("--order", c.order, "Largest |exponent|");
  add_common(fourier, c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*series) return cmd_series(c, out);
    if (*tables) return cmd_tables(c, out, err);
    if (*quantum) return cmd_quantum(c, out, err);
    if (*verify) return cmd_verify(c, out);
    if (*u) return cmd_u(c, out);
    if (*obstruction) return cmd_obstruction(c, out);
    if (*mult) return cmd_multiplier(c, out);
    if (*fourier) return cmd_fourier(c, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace qmf::cli

#pragma once

// The qmf command-line tool. Exit codes: 0 success, 1 failed check or computation,
// 2 usage error.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmf/period.hpp"

namespace qmf::cli {

int run(int argc, char** argv, std::ostream& out, std::ostream& err);
// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The reference values compiled into the tool.
const nlohmann::json& reference_data();

struct TableCell {
  std::string name;
  kernel::cplx computed;
  kernel::cplx reference;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<TableCell> reproduce_tables(const nlohmann::json& ref, const kernel::Tolerance& tol,
                                        int threads);

struct QuantumRow {
  Rational x;
  period::Vec4 value;
};

// q_0(x / (2x + 1)) - |2x + 1| sum_k R(0, k) q_k(x), and the same quantity computed from the
// obstruction at -1/2.
struct TransformRow {
  Rational x;
  kernel::cplx difference;
  kernel::cplx from_obstruction;
  double residual = 0.0;
};

struct QuantumSweep {
  std::vector<QuantumRow> values;
  std::vector<TransformRow> transform;
};

// Every x = p/q in (-1, 1) with q even, q <= max_q; the transform rows skip x = -1/2.
QuantumSweep quantum_sweep(theta::FamilyName f, long max_q, const kernel::Tolerance& tol,
                           int threads);

// "p,q,j,re,im" rows, components 0..3 for each x.
std::string quantum_csv(const QuantumSweep& s);
// "p,q,re,im" rows of the transform difference.
std::string transform_csv(const QuantumSweep& s);

}  // namespace qmf::cli

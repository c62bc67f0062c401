#pragma once

// Verification suites behind `qmf verify`.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qmf/modular.hpp"
#include "qmf/period.hpp"

namespace qmf::cli {

struct CheckResult {
  std::string check;
  bool pass = false;
  double max_residual = 0.0;
  double threshold = 0.0;
  long samples = 0;
};

struct SuiteSettings {
  kernel::Tolerance tol{};
  int threads = 1;
  std::uint64_t seed = 20240611;
};

// suite is one of coeffs, shadows, multipliers, modular, quantum, all.
std::vector<CheckResult> run_suite(const std::string& suite, const SuiteSettings& settings);
bool is_suite(const std::string& suite);

// Family and component whose false theta series matches L_id.
std::pair<theta::FamilyName, int> series_component(int id);

// A random element of Gamma_0(2) with 0 < |c| <= c_max (or c = 0 with probability 1/8).
modular::Gamma02Element random_gamma02(std::mt19937_64& rng, long c_max);

}  // namespace qmf::cli

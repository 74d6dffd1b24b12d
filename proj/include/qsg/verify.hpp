// Invariant suite shared by `qsg verify` and the test binaries.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsg/exactalg.hpp"
#include "qsg/timeops.hpp"
#include "qsg/waveops.hpp"

namespace qsg::verify {

enum class Level { Fast, Full };

struct Options {
  Level level = Level::Fast;
  std::string tamper;         // relation name for Relations::tampered; empty = genuine calculus
  long tamper_factor = 2;
  std::uint64_t seed = 20260515;
};

struct Check {
  std::string name;     // "module.invariant"
  bool pass = false;
  double measured = 0;
  double tolerance = 0;
  std::string detail;
  double seconds = 0;
};

struct Report {
  Level level = Level::Fast;
  std::vector<Check> checks;
  double seconds = 0;

  bool all_pass() const;
  std::vector<std::string> failures() const;
  nlohmann::json to_json() const;
};

Report run(const Options& opt = {});

// Fixtures, also used by the unit tests.

/// Sum of 1–3 terms q·λ^a·β^b·x^α·t^n with small Gaussian-rational q and total degree ≤ max_degree.
exactalg::NCElement random_element(std::mt19937_64& rng, unsigned dim, unsigned max_degree);
/// All x^α t^n with |α| + n ≤ degree.
std::vector<exactalg::Monomial> monomials_up_to(unsigned dim, unsigned degree);
/// 1–3 terms c·tᵖ·e^{st}, p ≤ 2, |Re s|, |Im s| ≤ 1.
timeops::TimeFunction random_time_function(std::mt19937_64& rng);
/// Ten radial separable fields used by the wave-operator coherence checks.
std::vector<waveops::SeparableField> field_battery();

/// max coefficient of (a − b) over max(1, max coefficient of a)
double relative_gap(const timeops::TimeFunction& a, const timeops::TimeFunction& b);
/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qsg::verify

#pragma once

// Seeded property suites shared by the command-line tool and the acceptance runner.
// Case k draws from its own generator seeded by (seed, k), so results do not depend on
// which cases run or in which order.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "formring/io.hpp"

namespace formring {

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  int cap_exponent = 16;
  bool witnesses = true;  // attach witness words to the report
  std::size_t threads = 0;  // 0: one per hardware thread
};

struct CaseResult {
  std::size_t index = 0;
  std::string status;  // pass | fail | unknown
  std::string detail;
  json witness;
  double seconds = 0;
};

struct SuiteReport {
  std::string suite, group;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;
  std::size_t pass = 0, fail = 0, unknown = 0;
  double seconds = 0, max_case_seconds = 0;

  // Timings are left out unless asked for, so equal configs give identical reports.
  json to_json(bool timing = false) const;
  // 0 all pass, 1 any failure, 2 unknowns without failures.
  int exit_code() const;
};

const std::vector<std::string>& suite_names();
// Group spec used when none is given on the command line.
std::string default_group(const std::string& suite);
SuiteReport run_suite(const std::string& name, const GroupSpec& spec, const SuiteConfig& cfg);

std::mt19937_64 case_rng(std::uint64_t seed, std::size_t index);

// Word over R[X] of the given length, payload degrees <= degree, with eval(0) = I.
PolyWord random_poly_alpha(const GroupDescriptor& g, std::mt19937_64& rng, std::size_t length, int degree = 3);
// eval(random word) e_2n.
Vector<Elem> random_isotropic_vector(const GroupDescriptor& g, std::mt19937_64& rng, std::size_t length = 6);
// w with <v, w> = 0 and I + M(v, w) in the group; empty when rejection sampling gives up.
std::optional<Vector<Elem>> random_admissible_w(const GroupDescriptor& g, const Vector<Elem>& v, std::mt19937_64& rng,
                                                std::size_t tries = 4000);

}  // namespace formring

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "purify/io.hpp"

namespace purify {

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::size_t failures = 0;
  Json counterexamples = Json::array();  // first few failing trials

  bool passed() const { return failures == 0; }
};

/// Names accepted by run_suite.
std::vector<std::string> suite_names();

/// Runs a named randomized property suite. Trial t draws from an RNG seeded
/// with (seed, t), so any single failure replays from its trial index.
/// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, std::size_t trials,
                      std::uint64_t seed);

}  // namespace purify

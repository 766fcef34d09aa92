#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace arlog::analysis {

// Where a target value comes from: a published constant,
// an independent derivation or oracle, or nothing but the data itself.
enum class Provenance { kPublished, kDerived, kEmpirical };
std::string_view to_string(Provenance p);

using ParamValue = std::variant<std::int64_t, double, std::string, std::vector<double>>;

struct Param {
  std::string name;
  ParamValue value;
};

struct Stat {
  std::string name;
  double value;
};

struct Target {
  std::string name;
  std::string value;  // decimal string, possibly beyond double precision
  Provenance provenance;
  std::string source;
};

struct Verdict {
  std::string name;
  std::string target;  // name of the Target compared against
  double observed;
  double tolerance;
  std::string rule;
  bool passed;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<Param> params;
  std::uint64_t seed = 0;
  std::int64_t reps = 0;
  std::vector<Stat> stats;
  std::vector<Target> targets;
  std::vector<Verdict> verdicts;
  bool exploratory = false;
  std::vector<std::string> notes;

  bool passed() const;
  // Throws std::out_of_range for unknown names.
  double stat(std::string_view name) const;
  const Verdict& verdict(std::string_view name) const;
  const Target& target(std::string_view name) const;

  // {experiment, params, seed, reps, stats, targets, tolerances, verdicts,
  //  exploratory, passed, notes}. Output is a pure function of the report.
  std::string to_json(int indent = 2) const;
  // Header: section,name,value,target,tolerance,provenance,passed
  std::string to_csv() const;
};

// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace arlog::analysis

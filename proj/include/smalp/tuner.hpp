#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smalp/engine.hpp"
#include "smalp/symsubst.hpp"

namespace smalp {

struct TestCase {
  Expr goal;
  TruthValue expected_value = 0.0;
  std::optional<Substitution> expected_subst;
};

/// One case per statement: `goal -> value.` or `goal -> value ; {X/a}.`
std::vector<TestCase> parse_cases(std::string_view text);

struct CaseResult {
  TruthValue value = 0.0;
  double deviation = 0.0;
};

struct CandidateResult {
  SymbolicSubstitution theta;
  std::vector<CaseResult> per_case;
  double z = 0.0;  // unrounded sum of deviations
};

/// Candidate figures as printed in a report: each value rounded, each
/// deviation taken from the rounded value, z the sum of those deviations.
struct RoundedResult {
  std::vector<TruthValue> values;
  std::vector<double> deviations;
  double z = 0.0;
};

/// Round half away from zero at `digits` decimals, applied to the shortest
/// decimal representation of `x` (so 0.585 rounds to 0.59).
double round_decimal(double x, int digits);

RoundedResult rounded(const CandidateResult& c, const std::vector<TestCase>& cases, int digits);

struct TuneOptions {
  EngineOptions engine;
  // Decimals of the reported figures that drive selection; ties fall back to
  // the unrounded z and then to enumeration order. nullopt selects on the
  // unrounded z alone.
  std::optional<int> objective_digits = 2;
  // Worker threads for candidate evaluation; results keep enumeration order.
  unsigned jobs = 1;
};

struct TuningReport {
  std::vector<Answer> sfcas;
  std::vector<CandidateResult> candidates;  // enumeration order
  std::size_t best = 0;
  std::optional<int> objective_digits;

  const CandidateResult& best_candidate() const { return candidates.at(best); }
};

CandidateResult evaluate_candidate(const SymbolicSubstitution& theta, const std::vector<Answer>& sfcas,
                                   const std::vector<TestCase>& cases, const Registry& reg);

/// Computes every case's SFCA once, then sweeps all candidates of `spec`.
TuningReport tune(const Program& prog, const std::vector<TestCase>& cases, const DomainSpec& spec,
                  const Registry& reg, const TuneOptions& opts = {});

/// Text table with one row per candidate followed by the best candidate.
std::string render_table(const TuningReport& report, const std::vector<TestCase>& cases, int digits = 2);
/// `Θ4: s=luka, disj=prod, v=0.3 (z=0.05)`
std::string render_best(const TuningReport& report, const std::vector<TestCase>& cases, int digits = 2);
/// JSON document with unrounded figures; see README for the schema.
std::string report_json(const TuningReport& report, const std::vector<TestCase>& cases, int digits = 2);

}  // namespace smalp

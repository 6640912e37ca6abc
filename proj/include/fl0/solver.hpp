#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fl0/concept.hpp"
#include "fl0/flatten.hpp"
#include "fl0/frontend.hpp"

namespace fl0 {

struct Statistics {
  std::size_t max_variables = 0;          // largest generic-goal registry
  std::size_t preprocessing_decided = 0;  // goals the implicit solver settled
  std::size_t shortcut_phases = 0;        // goals that needed shortcuts
  std::size_t constants_processed = 0;
  double elapsed_ms = 0;

  /// Everything except the timing.
  friend bool operator==(const Statistics& a, const Statistics& b) {
    return a.max_variables == b.max_variables && a.preprocessing_decided == b.preprocessing_decided &&
           a.shortcut_phases == b.shortcut_phases && a.constants_processed == b.constants_processed;
  }
};

struct SolveOptions {
  /// One worker thread per constant. Verdict, unifier and counters are the
  /// same as in sequential mode.
  bool parallel = false;
  /// Receives one line per choice and per stage when set.
  std::function<void(const std::string&)> trace;
};

struct ConstantOutcome {
  std::optional<Substitution> unifier;
  Statistics stats;
};

struct SolveResult {
  bool unifiable = false;
  /// Values for user and system variables; unmapped ones are ⊤.
  Substitution unifier;
  Statistics stats;
  /// The flattened signature: the input names first, then system variables.
  Signature signature;
  std::optional<NameId> failed_constant;

  std::vector<NameId> user_variables() const;
  std::vector<NameId> system_variables() const;
};

/// Decides unifiability and returns a verified unifier when there is one.
/// Throws VerificationFailure if a computed unifier fails the check, and
/// CapacityExceeded if a goal is too large for the shortcut phase.
SolveResult solve(const ProblemSource& src, const SolveOptions& options = {});

/// The loop for one constant over a flattened model.
ConstantOutcome solve_for_constant(const FiloModel& model, NameId constant, const SolveOptions& options = {});

}  // namespace fl0

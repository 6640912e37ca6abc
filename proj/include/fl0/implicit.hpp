#pragma once

#include <vector>

#include "fl0/choice.hpp"
#include "fl0/concept.hpp"
#include "fl0/flatten.hpp"

namespace fl0 {

/// A generic goal under one consistent choice. Start subsumptions X ⊑ A are
/// kept as the list of their variables.
struct Goal {
  const GenericGoal* generic = nullptr;
  Choice choice;
  std::vector<FlatSubsumption> unsolved;
  std::vector<NameId> starts;  // registry order
};

Goal build_goal(const GenericGoal& generic, const Choice& choice);

struct ImplicitResult {
  enum class Kind : std::uint8_t { Solved, Failed, Residual };

  Kind kind = Kind::Residual;
  int failed_rule = 0;   // 5, 7 or 8 when Failed
  Substitution unifier;  // Solved: conforms to the choice
  Goal goal;             // Residual: what is left
};

/// Runs the critical checks (rules 5, 7, 8) before anything else and again
/// after every change, and otherwise applies rules 1, 2, 3, 4 and 6 in
/// order, subsumption by subsumption, until nothing applies.
ImplicitResult run_implicit(Goal goal);

/// The unifier conforming to a choice when every flat subsumption is solved:
/// TOP variables map to ⊤, CONSTANT ones contain A, and X gets ∀r.P for
/// every P in the value of X^r.
Substitution conforming_unifier(const GenericGoal& generic, const Choice& choice);

}  // namespace fl0

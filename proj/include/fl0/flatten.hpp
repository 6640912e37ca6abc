#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fl0/concept.hpp"
#include "fl0/frontend.hpp"
#include "fl0/signature.hpp"

namespace fl0 {

/// An input axiom after distribution and abstraction: both sides are normal
/// forms whose particles have words of length at most one.
struct ModelAxiom {
  Axiom::Kind kind = Axiom::Kind::Subsumption;
  ConceptNF lhs;
  ConceptNF rhs;

  friend bool operator==(const ModelAxiom&, const ModelAxiom&) = default;
};

/// V ≡ ∀r.H introduced for a nested value restriction.
struct Definition {
  NameId variable;
  ConceptNF body;

  friend bool operator==(const Definition&, const Definition&) = default;
};

struct FiloModel {
  Signature signature;  // the source signature plus the system variables
  std::vector<ModelAxiom> axioms;
  std::vector<Definition> definitions;
};

/// Flattening I. Every particle ∀r1…rn.H with n ≥ 2 becomes ∀r1.V1 with
/// fresh system variables and definitions V1 ≡ ∀r2.V2, …, V(n-1) ≡ ∀rn.H.
/// Variables are numbered in traversal order; equal deep particles in
/// different places get separate variables.
FiloModel flatten_one(const ProblemSource& src);

/// All axioms and definitions as goal subsumptions with particle right
/// sides; equivalences contribute both directions. ⊤ right sides vanish.
std::vector<GoalSubsumption> split(const FiloModel& model);

/// split() followed by projection onto one constant: foreign constants are
/// erased, and subsumptions whose right side became ⊤ are dropped.
std::vector<GoalSubsumption> split_and_project(const FiloModel& model, NameId constant);

/// Y1 ⊓ … ⊓ Yn ⊑ X over variables and the goal's constant. An empty lhs is ⊤.
struct FlatSubsumption {
  std::vector<NameId> lhs;  // sorted, unique
  NameId rhs;

  friend auto operator<=>(const FlatSubsumption&, const FlatSubsumption&) = default;
};

/// X ⊑ ∀r.X^r
struct IncreasingSubsumption {
  NameId parent;
  RoleId role;
  NameId child;

  friend auto operator<=>(const IncreasingSubsumption&, const IncreasingSubsumption&) = default;
};

/// Lineage of one registry variable, by registry index.
struct VariableNode {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  NameId name;
  std::size_t parent = npos;                                // X^r and X_A only
  std::vector<std::pair<RoleId, std::size_t>> decompositions;  // X^r per role
  std::size_t constant_decomposition = npos;                // X_A
  bool is_decomposition = false;                            // this is some Y^r
  bool is_constant_decomposition = false;                   // this is some Y_A
};

struct GenericGoal {
  NameId constant;
  Signature signature;
  std::vector<FlatSubsumption> flats;
  std::vector<IncreasingSubsumption> increasing;
  /// Variables occurring in flats or increasing subsumptions: those of the
  /// input in first-occurrence order, then created ones in creation order.
  /// Parents therefore precede their decompositions.
  std::vector<VariableNode> variables;
  std::unordered_map<NameId, std::size_t> index_of;

  std::size_t index(NameId variable) const { return index_of.at(variable); }
  std::vector<GoalSubsumption> as_goal_subsumptions() const;
};

/// Flattening II over subsumptions that mention no constant but `constant`.
GenericGoal flatten_two(std::span<const GoalSubsumption> subs, NameId constant, Signature signature);

std::string render_model(const FiloModel& model);
std::string render_generic_goal(const GenericGoal& goal);

}  // namespace fl0

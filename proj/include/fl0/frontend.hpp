#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fl0/concept.hpp"
#include "fl0/signature.hpp"

namespace fl0 {

struct Axiom {
  enum class Kind : std::uint8_t { Subsumption, Equivalence };

  Kind kind = Kind::Subsumption;
  Concept lhs;
  Concept rhs;

  friend bool operator==(const Axiom&, const Axiom&) = default;
};

/// A parsed unification problem. Every name used by an axiom is in the
/// signature; names ending in `_var` are variables, all others constants.
struct ProblemSource {
  Signature signature;
  std::vector<Axiom> axioms;

  friend bool operator==(const ProblemSource&, const ProblemSource&) = default;
};

enum class InputFormat : std::uint8_t { Flu, AxiomSubset, Auto };

/// Parses the s-expression `.flu` syntax:
///
///   problem := (decl | axiom)*
///   decl    := "(roles" NAME+ ")"
///   axiom   := "(sub" concept concept ")" | "(equiv" concept concept ")"
///   concept := "top" | NAME | "(and" concept concept+ ")" | "(all" NAME concept ")"
///
/// `;` starts a comment running to end of line. Names are interned into
/// `base`, which lets a solution file share ids with its problem.
ProblemSource parse_text(std::string_view text, Signature base = {});

/// Parses the functional-style axiom subset: SubClassOf, EquivalentClasses,
/// ObjectIntersectionOf, ObjectAllValuesFrom and owl:Thing, one axiom per
/// line. Prefix/Ontology wrapper lines and Declaration lines are accepted.
ProblemSource parse_axiom_subset(std::string_view text, Signature base = {});

/// `.flu` by extension, the axiom subset for `.ofn`, `.owl`, `.owx` and `.fss`.
InputFormat detect_format(const std::filesystem::path& path);

/// Reads and parses a file. Throws InputError when it cannot be read.
ProblemSource load_problem(const std::filesystem::path& path, InputFormat format = InputFormat::Auto);
std::string read_file(const std::filesystem::path& path);

std::string render_flu(const ProblemSource& src);
std::string render_axiom(const Axiom& axiom, const Signature& sig);

/// The axioms as goal subsumptions with single-particle right sides;
/// equivalences contribute both directions.
std::vector<GoalSubsumption> goal_subsumptions(const ProblemSource& src);

/// Interprets `(equiv X_var concept)` lines as a substitution. Throws
/// InputError on any other axiom shape, a non-variable left side, a repeated
/// variable or a variable inside a value.
Substitution read_substitution(const ProblemSource& solution);

/// `(equiv X concept)` lines for the given variables, in the given order.
std::string render_substitution(const Substitution& sigma, std::span<const NameId> variables, const Signature& sig);

}  // namespace fl0

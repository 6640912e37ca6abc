#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fl0/flatten.hpp"

namespace fl0 {

enum class ChoiceValue : std::uint8_t { Top = 0, Constant = 1, Nothing = 2 };

/// One value per registry variable of a generic goal.
using Choice = std::vector<ChoiceValue>;

/// Bit set over ChoiceValue.
using Domain = std::uint8_t;
constexpr Domain domain_bit(ChoiceValue v) { return static_cast<Domain>(1u << static_cast<unsigned>(v)); }
constexpr Domain kAllValues = 0b111;

/// The three choice tables. A variable whose domain holds one value is
/// fixed, two values binary, three values ternary. Table order is registry
/// order.
struct ChoiceState {
  std::vector<Domain> domains;
  std::vector<std::size_t> fixed;
  std::vector<std::size_t> binary;
  std::vector<std::size_t> ternary;
  /// Some variable ended with an empty domain: no choice exists.
  bool contradictory = false;

  /// 2^|binary| · 3^|ternary|, saturating; 0 when contradictory.
  std::uint64_t total() const;
};

/// Applies the fixing rules to a fixpoint:
///  (i)   ⊤ ⊑ X            → X is TOP
///  (ii)  A ⊑ X            → X is TOP or CONSTANT
///  (iii) X ⊑ A            → X is CONSTANT
///  (iv)  X fixed TOP      → every X^r and X_A is TOP
///  (v)   X fixed, not CONSTANT → X_A is TOP
///  (vi)  X_A fixed TOP    → X is not CONSTANT
ChoiceState fix_choices(const GenericGoal& goal);

/// First choice in enumeration order; nullopt when contradictory.
std::optional<Choice> first_choice(const ChoiceState& state);

/// Advances `current` like an odometer: binary variables are the fast digits,
/// ternary ones the slow digits, and within a table the first variable is
/// the most significant. Returns false when exhausted.
bool next_choice(const ChoiceState& state, Choice& current);

/// False iff a parent is TOP while some X^r is not, or X_A is CONSTANT
/// exactly when its parent is not.
bool is_consistent(const GenericGoal& goal, const Choice& choice);

/// Digits as in "(0,1,0,0,0)" in registry order.
std::string render_choice(const Choice& choice);

}  // namespace fl0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fl0/implicit.hpp"

namespace fl0 {

/// Atoms of a goal as bits: registry index i is bit i, the constant is bit n
/// where n is the registry size. Goals with more than 63 variables do not fit.
using AtomSet = std::uint64_t;

struct Shortcut {
  AtomSet members = 0;
  /// For every role with a decomposition variable among the members, the
  /// index of an earlier shortcut resolving this one.
  std::vector<std::pair<RoleId, std::size_t>> resolvers;
  std::size_t round = 0;
};

/// The computed shortcuts that matter: the first shortcut found for each
/// distinct resolving profile, then the initial shortcut when reached.
struct ShortcutStore {
  std::vector<Shortcut> computed;
  std::optional<std::size_t> initial;
  AtomSet initial_members = 0;
  AtomSet good_variables = 0;
  std::size_t rounds = 0;
};

struct ShortcutResult {
  bool success = false;
  ShortcutStore store;
};

/// If the rhs is a member, some lhs atom is too.
bool satisfies(std::span<const NameId> members, const FlatSubsumption& s);

/// s2 resolves s1 w.r.t. r: s1 has some Y^r, the parent of every Y^r in s1
/// is in s2, and X^r is in s1 for every X in s2 that has one.
bool resolves(const GenericGoal& goal, std::span<const NameId> s2, std::span<const NameId> s1, RoleId r);

/// Height-0 shortcuts first, then rounds admitting shortcuts whose
/// decomposition variables are resolved by shortcuts of earlier rounds,
/// until the initial shortcut (start variables plus the constant) is
/// admitted or a round adds nothing. Throws CapacityExceeded past 63
/// variables.
ShortcutResult compute_shortcuts(const Goal& goal);

/// Gives A to the members of the initial shortcut and ∀r.P to the members
/// of the shortcut resolving S w.r.t. r whenever P went to S's members.
Substitution extract_unifier(const ShortcutStore& store, const Goal& goal);

std::vector<NameId> members_of(const Goal& goal, AtomSet set);

}  // namespace fl0

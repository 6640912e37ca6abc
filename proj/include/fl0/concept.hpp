#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fl0/signature.hpp"

namespace fl0 {

/// Syntax tree of an FL0 concept as read from input.
struct Concept {
  enum class Kind : std::uint8_t { Top, Name, And, All };

  Kind kind = Kind::Top;
  NameId name{};                  // Kind::Name
  RoleId role{};                  // Kind::All
  std::vector<Concept> children;  // And: conjuncts, All: the single body

  static Concept top() { return {}; }
  static Concept atom(NameId n);
  static Concept conjunction(std::vector<Concept> conjuncts);
  static Concept all(RoleId r, Concept body);

  friend bool operator==(const Concept&, const Concept&) = default;
};

using RoleWord = std::vector<RoleId>;

/// A value restriction chain applied to a concept name, written ∀v.A.
struct Particle {
  RoleWord word;
  NameId head{};

  friend auto operator<=>(const Particle&, const Particle&) = default;
};

/// A concept in reduced normal form: a canonical sorted set of particles.
/// The empty set is ⊤.
class ConceptNF {
 public:
  using const_iterator = std::vector<Particle>::const_iterator;

  ConceptNF() = default;
  explicit ConceptNF(std::vector<Particle> particles);
  ConceptNF(std::initializer_list<Particle> particles) : ConceptNF(std::vector<Particle>(particles)) {}

  bool is_top() const { return particles_.empty(); }
  std::size_t size() const { return particles_.size(); }
  bool contains(const Particle& p) const;

  void insert(Particle p);
  void merge(const ConceptNF& other);

  const_iterator begin() const { return particles_.begin(); }
  const_iterator end() const { return particles_.end(); }
  std::span<const Particle> particles() const { return particles_; }

  friend auto operator<=>(const ConceptNF&, const ConceptNF&) = default;

 private:
  std::vector<Particle> particles_;
};

ConceptNF operator|(const ConceptNF& a, const ConceptNF& b);

/// Particles of a concept tree in first-occurrence order, without duplicates.
/// Value restrictions are distributed over conjunctions and ⊤ is erased.
std::vector<Particle> particles_in_order(const Concept& c);

ConceptNF normalize(const Concept& c);

/// c ⊑ d, decided by particle-set inclusion d ⊆ c.
bool subsumes(const ConceptNF& c, const ConceptNF& d);

enum class Projection : std::uint8_t {
  Ground,         // keep only particles headed by the constant
  KeepVariables,  // also keep variable-headed particles; other constants become ⊤
};

ConceptNF restrict_to_constant(const ConceptNF& c, NameId constant, const Signature& sig,
                               Projection mode = Projection::Ground);

/// Maps variables to normal-form concepts; unmapped variables stand for ⊤.
class Substitution {
 public:
  void assign(NameId variable, ConceptNF value) { map_[variable] = std::move(value); }
  void extend(NameId variable, const ConceptNF& more) { map_[variable].merge(more); }
  const ConceptNF* find(NameId variable) const;
  ConceptNF value(NameId variable) const;

  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }
  std::size_t size() const { return map_.size(); }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<NameId, ConceptNF> map_;
};

/// Replaces every variable-headed particle ∀v.X by {∀vw.B | ∀w.B ∈ σ(X)}.
ConceptNF apply(const Substitution& sigma, const ConceptNF& c, const Signature& sig);

/// C ⊑? P with P a single particle; an empty rhs is ⊤.
struct GoalSubsumption {
  ConceptNF lhs;
  std::optional<Particle> rhs;

  friend bool operator==(const GoalSubsumption&, const GoalSubsumption&) = default;
};

bool verify_unifier(std::span<const GoalSubsumption> goals, const Substitution& sigma, const Signature& sig);

/// Folds a normal form back into a tree, grouping particles by their
/// leading role so the result reads like ordinary nested restrictions.
Concept to_concept(const ConceptNF& c);

std::string render_flu(const Concept& c, const Signature& sig);
std::string render_flu(const ConceptNF& c, const Signature& sig);
std::string render_particle(const Particle& p, const Signature& sig);

}  // namespace fl0

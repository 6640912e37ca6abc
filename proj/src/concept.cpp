#include "fl0/concept.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fl0 {

Concept Concept::atom(NameId n) {
  Concept c;
  c.kind = Kind::Name;
  c.name = n;
  return c;
}

Concept Concept::conjunction(std::vector<Concept> conjuncts) {
  if (conjuncts.empty()) return top();
  if (conjuncts.size() == 1) return std::move(conjuncts.front());
  Concept c;
  c.kind = Kind::And;
  c.children = std::move(conjuncts);
  return c;
}

Concept Concept::all(RoleId r, Concept body) {
  Concept c;
  c.kind = Kind::All;
  c.role = r;
  c.children.push_back(std::move(body));
  return c;
}

ConceptNF::ConceptNF(std::vector<Particle> particles) : particles_(std::move(particles)) {
  std::sort(particles_.begin(), particles_.end());
  particles_.erase(std::unique(particles_.begin(), particles_.end()), particles_.end());
}

bool ConceptNF::contains(const Particle& p) const {
  return std::binary_search(particles_.begin(), particles_.end(), p);
}

void ConceptNF::insert(Particle p) {
  auto it = std::lower_bound(particles_.begin(), particles_.end(), p);
  if (it != particles_.end() && *it == p) return;
  particles_.insert(it, std::move(p));
}

void ConceptNF::merge(const ConceptNF& other) {
  std::vector<Particle> out;
  out.reserve(particles_.size() + other.particles_.size());
  std::set_union(particles_.begin(), particles_.end(), other.particles_.begin(), other.particles_.end(),
                 std::back_inserter(out));
  particles_ = std::move(out);
}

ConceptNF operator|(const ConceptNF& a, const ConceptNF& b) {
  ConceptNF out = a;
  out.merge(b);
  return out;
}

namespace {

void collect(const Concept& c, RoleWord& prefix, std::vector<Particle>& out, std::set<Particle>& seen) {
  switch (c.kind) {
    case Concept::Kind::Top:
      return;
    case Concept::Kind::Name: {
      Particle p{prefix, c.name};
      if (seen.insert(p).second) out.push_back(std::move(p));
      return;
    }
    case Concept::Kind::And:
      for (const auto& child : c.children) collect(child, prefix, out, seen);
      return;
    case Concept::Kind::All:
      prefix.push_back(c.role);
      collect(c.children.at(0), prefix, out, seen);
      prefix.pop_back();
      return;
  }
}

}  // namespace

std::vector<Particle> particles_in_order(const Concept& c) {
  std::vector<Particle> out;
  std::set<Particle> seen;
  RoleWord prefix;
  collect(c, prefix, out, seen);
  return out;
}

ConceptNF normalize(const Concept& c) { return ConceptNF(particles_in_order(c)); }

bool subsumes(const ConceptNF& c, const ConceptNF& d) {
  return std::includes(c.begin(), c.end(), d.begin(), d.end());
}

ConceptNF restrict_to_constant(const ConceptNF& c, NameId constant, const Signature& sig, Projection mode) {
  std::vector<Particle> kept;
  for (const auto& p : c) {
    if (p.head == constant || (mode == Projection::KeepVariables && sig.is_variable(p.head))) kept.push_back(p);
  }
  return ConceptNF(std::move(kept));
}

const ConceptNF* Substitution::find(NameId variable) const {
  auto it = map_.find(variable);
  return it == map_.end() ? nullptr : &it->second;
}

ConceptNF Substitution::value(NameId variable) const {
  const ConceptNF* v = find(variable);
  return v ? *v : ConceptNF{};
}

ConceptNF apply(const Substitution& sigma, const ConceptNF& c, const Signature& sig) {
  std::vector<Particle> out;
  for (const auto& p : c) {
    if (!sig.is_variable(p.head)) {
      out.push_back(p);
      continue;
    }
    const ConceptNF* value = sigma.find(p.head);
    if (!value) continue;
    for (const auto& q : *value) {
      Particle expanded{p.word, q.head};
      expanded.word.insert(expanded.word.end(), q.word.begin(), q.word.end());
      out.push_back(std::move(expanded));
    }
  }
  return ConceptNF(std::move(out));
}

bool verify_unifier(std::span<const GoalSubsumption> goals, const Substitution& sigma, const Signature& sig) {
  for (const auto& g : goals) {
    if (!g.rhs) continue;
    ConceptNF lhs = apply(sigma, g.lhs, sig);
    ConceptNF rhs = apply(sigma, ConceptNF{*g.rhs}, sig);
    if (!subsumes(lhs, rhs)) return false;
  }
  return true;
}

namespace {

Concept fold(std::span<const Particle> particles, std::size_t depth) {
  // particles share a common prefix of length `depth` and are sorted
  std::vector<Concept> conjuncts;
  std::size_t i = 0;
  while (i < particles.size()) {
    const Particle& p = particles[i];
    if (p.word.size() == depth) {
      conjuncts.push_back(Concept::atom(p.head));
      ++i;
      continue;
    }
    RoleId r = p.word[depth];
    std::size_t j = i;
    while (j < particles.size() && particles[j].word.size() > depth && particles[j].word[depth] == r) ++j;
    conjuncts.push_back(Concept::all(r, fold(particles.subspan(i, j - i), depth + 1)));
    i = j;
  }
  return Concept::conjunction(std::move(conjuncts));
}

void render_into(const Concept& c, const Signature& sig, std::string& out) {
  switch (c.kind) {
    case Concept::Kind::Top:
      out += "top";
      return;
    case Concept::Kind::Name:
      out += sig.name(c.name);
      return;
    case Concept::Kind::And:
      out += "(and";
      for (const auto& child : c.children) {
        out += ' ';
        render_into(child, sig, out);
      }
      out += ')';
      return;
    case Concept::Kind::All:
      out += "(all ";
      out += sig.role_name(c.role);
      out += ' ';
      render_into(c.children.at(0), sig, out);
      out += ')';
      return;
  }
}

}  // namespace

Concept to_concept(const ConceptNF& c) {
  // Sorting by word groups particles with a common leading role together,
  // with the bare names (empty word) first.
  return fold(c.particles(), 0);
}

std::string render_flu(const Concept& c, const Signature& sig) {
  std::string out;
  render_into(c, sig, out);
  return out;
}

std::string render_flu(const ConceptNF& c, const Signature& sig) { return render_flu(to_concept(c), sig); }

std::string render_particle(const Particle& p, const Signature& sig) {
  std::string out;
  if (!p.word.empty()) {
    out += "∀";
    for (RoleId r : p.word) out += sig.role_name(r);
    out += '.';
  }
  out += sig.name(p.head);
  return out;
}

}  // namespace fl0

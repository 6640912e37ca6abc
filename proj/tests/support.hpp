#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fl0/concept.hpp"
#include "fl0/flatten.hpp"
#include "fl0/frontend.hpp"

namespace fl0::test {

inline std::string fixture(const std::string& name) { return std::string(FL0_PROBLEMS_DIR) + "/" + name; }

inline NameId id(const Signature& sig, std::string_view name) { return sig.find_name(name).value(); }

/// "rs.A" → ∀rs.A; roles are single letters, "A" alone is the bare name.
inline Particle particle(const Signature& sig, std::string_view text) {
  Particle p;
  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    for (char c : text.substr(0, dot)) p.word.push_back(sig.find_role(std::string(1, c)).value());
    text = text.substr(dot + 1);
  }
  p.head = id(sig, text);
  return p;
}

inline ConceptNF nf(const Signature& sig, std::initializer_list<std::string_view> particles) {
  std::vector<Particle> out;
  for (auto t : particles) out.push_back(particle(sig, t));
  return ConceptNF(std::move(out));
}

/// A flat subsumption as "X_var Y_var > Z_var" with names resolved in `sig`.
inline FlatSubsumption flat(const Signature& sig, std::initializer_list<std::string_view> lhs, std::string_view rhs) {
  FlatSubsumption f;
  for (auto n : lhs) f.lhs.push_back(id(sig, n));
  std::sort(f.lhs.begin(), f.lhs.end());
  f.rhs = id(sig, rhs);
  return f;
}

inline std::string render_flat(const FlatSubsumption& f, const Signature& sig) {
  std::string out;
  for (NameId n : f.lhs) out += std::string(sig.name(n)) + " ";
  return out + "<= " + std::string(sig.name(f.rhs));
}

/// The generic goal of a `.flu` problem for one constant.
inline GenericGoal generic(std::string_view text, std::string_view constant) {
  FiloModel model = flatten_one(parse_text(text));
  NameId a = id(model.signature, constant);
  auto subs = split_and_project(model, a);
  return flatten_two(subs, a, model.signature);
}

inline std::vector<std::string> render_flats(const GenericGoal& g) {
  std::vector<std::string> out;
  for (const auto& f : g.flats) out.push_back(render_flat(f, g.signature));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fl0::test

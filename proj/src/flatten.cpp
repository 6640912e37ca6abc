#include "fl0/flatten.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace fl0 {

namespace {

// ∀r1…rn.H with n ≥ 2 becomes ∀r1.V1 plus the definition chain.
Particle abstract(const Particle& p, FiloModel& model) {
  if (p.word.size() < 2) return p;
  NameId first = model.signature.fresh_system_variable();
  NameId current = first;
  for (std::size_t i = 1; i < p.word.size(); ++i) {
    bool last = i + 1 == p.word.size();
    NameId inner = last ? p.head : model.signature.fresh_system_variable();
    model.definitions.push_back(Definition{current, ConceptNF{Particle{{p.word[i]}, inner}}});
    current = inner;
  }
  return Particle{{p.word[0]}, first};
}

ConceptNF abstract_all(const Concept& c, FiloModel& model) {
  std::vector<Particle> out;
  for (const auto& p : particles_in_order(c)) out.push_back(abstract(p, model));
  return ConceptNF(std::move(out));
}

void add_split(std::vector<GoalSubsumption>& out, const ConceptNF& lhs, const ConceptNF& rhs) {
  for (const auto& p : rhs) out.push_back(GoalSubsumption{lhs, p});
}

struct GoalLess {
  bool operator()(const GoalSubsumption& a, const GoalSubsumption& b) const {
    if (a.lhs != b.lhs) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
  }
};

class FlattenTwo {
 public:
  FlattenTwo(NameId constant, Signature signature) {
    goal_.constant = constant;
    goal_.signature = std::move(signature);
    roles_ = goal_.signature.roles();
  }

  GenericGoal run(std::span<const GoalSubsumption> subs) {
    for (const auto& s : subs) {
      for (const auto& p : s.lhs) note_variable(p.head);
      if (s.rhs) note_variable(s.rhs->head);
    }
    for (const auto& s : subs) {
      if (s.rhs) push(s);
    }
    while (!queue_.empty()) {
      GoalSubsumption s = std::move(queue_.front());
      queue_.pop_front();
      step(s);
    }
    build_registry();
    return std::move(goal_);
  }

 private:
  const Signature& sig() const { return goal_.signature; }

  void note_variable(NameId n) {
    if (sig().is_variable(n) && noted_.insert(n).second) order_.push_back(n);
  }

  void push(GoalSubsumption s) {
    if (!s.rhs) return;
    if (seen_.insert(s).second) queue_.push_back(std::move(s));
  }

  static bool is_flat(const GoalSubsumption& s) {
    if (!s.rhs->word.empty()) return false;
    return std::all_of(s.lhs.begin(), s.lhs.end(), [](const Particle& p) { return p.word.empty(); });
  }

  NameId decomposition(NameId parent, RoleId r) {
    if (auto existing = goal_.signature.find_decomposition(parent, r)) return *existing;
    NameId child = goal_.signature.decomposition(parent, r);
    note_variable(child);
    goal_.increasing.push_back(IncreasingSubsumption{parent, r, child});
    return child;
  }

  // E^{-r}; nullopt stands for ⊤.
  std::optional<Particle> minus(const Particle& e, RoleId r) {
    if (e.word.empty()) {
      if (!sig().is_variable(e.head)) return std::nullopt;
      return Particle{{}, decomposition(e.head, r)};
    }
    if (e.word.front() != r) return std::nullopt;
    return Particle{RoleWord(e.word.begin() + 1, e.word.end()), e.head};
  }

  // s^{-r}, or nullopt when the right side becomes ⊤.
  std::optional<GoalSubsumption> minus(const GoalSubsumption& s, RoleId r) {
    std::optional<Particle> rhs = minus(*s.rhs, r);
    if (!rhs) return std::nullopt;
    std::vector<Particle> lhs;
    for (const auto& p : s.lhs) {
      if (auto q = minus(p, r)) lhs.push_back(std::move(*q));
    }
    return GoalSubsumption{ConceptNF(std::move(lhs)), std::move(rhs)};
  }

  ConceptNF constant_part(const ConceptNF& lhs) const {
    std::vector<Particle> out;
    for (const auto& p : lhs) {
      if (p.word.empty() && (p.head == goal_.constant || sig().is_variable(p.head))) out.push_back(p);
    }
    return ConceptNF(std::move(out));
  }

  void step(const GoalSubsumption& s) {
    if (is_flat(s)) {
      FlatSubsumption flat;
      for (const auto& p : s.lhs) flat.lhs.push_back(p.head);
      std::sort(flat.lhs.begin(), flat.lhs.end());
      flat.rhs = s.rhs->head;
      if (flat_seen_.insert(flat).second) goal_.flats.push_back(std::move(flat));
      return;
    }
    const Particle& rhs = *s.rhs;
    if (!rhs.word.empty()) {
      if (auto next = minus(s, rhs.word.front())) push(std::move(*next));
      return;
    }
    if (!sig().is_variable(rhs.head)) {
      push(GoalSubsumption{constant_part(s.lhs), rhs});
      return;
    }
    for (RoleId r : roles_) {
      if (auto next = minus(s, r)) push(std::move(*next));
    }
    NameId xa = goal_.signature.constant_decomposition(rhs.head, goal_.constant);
    note_variable(xa);
    push(GoalSubsumption{constant_part(s.lhs), Particle{{}, xa}});
  }

  void build_registry() {
    std::unordered_set<NameId> used;
    for (const auto& f : goal_.flats) {
      for (NameId n : f.lhs) {
        if (sig().is_variable(n)) used.insert(n);
      }
      if (sig().is_variable(f.rhs)) used.insert(f.rhs);
    }
    for (const auto& inc : goal_.increasing) {
      used.insert(inc.parent);
      used.insert(inc.child);
    }
    // Parents of used decompositions stay in the registry so lineage is total.
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      if (!used.contains(*it)) continue;
      const NameInfo& info = sig().info(*it);
      if (info.kind == NameKind::DecompositionVariable || info.kind == NameKind::ConstantDecompositionVariable) {
        used.insert(info.parent);
      }
    }
    for (NameId n : order_) {
      if (!used.contains(n)) continue;
      goal_.index_of.emplace(n, goal_.variables.size());
      VariableNode node;
      node.name = n;
      goal_.variables.push_back(node);
    }
    for (std::size_t i = 0; i < goal_.variables.size(); ++i) {
      const NameInfo& info = sig().info(goal_.variables[i].name);
      if (info.kind == NameKind::DecompositionVariable) {
        std::size_t p = goal_.index(info.parent);
        goal_.variables[i].parent = p;
        goal_.variables[i].is_decomposition = true;
        goal_.variables[p].decompositions.emplace_back(info.role, i);
      } else if (info.kind == NameKind::ConstantDecompositionVariable) {
        std::size_t p = goal_.index(info.parent);
        goal_.variables[i].parent = p;
        goal_.variables[i].is_constant_decomposition = true;
        goal_.variables[p].constant_decomposition = i;
      }
    }
  }

  GenericGoal goal_;
  std::vector<RoleId> roles_;
  std::deque<GoalSubsumption> queue_;
  std::set<GoalSubsumption, GoalLess> seen_;
  std::set<FlatSubsumption> flat_seen_;
  std::unordered_set<NameId> noted_;
  std::vector<NameId> order_;
};

std::string render_lhs(const std::vector<NameId>& lhs, const Signature& sig) {
  if (lhs.empty()) return "top";
  if (lhs.size() == 1) return std::string(sig.name(lhs.front()));
  std::string out = "(and";
  for (NameId n : lhs) {
    out += ' ';
    out += sig.name(n);
  }
  return out + ")";
}

}  // namespace

FiloModel flatten_one(const ProblemSource& src) {
  FiloModel model;
  model.signature = src.signature;
  for (const auto& ax : src.axioms) {
    ModelAxiom out;
    out.kind = ax.kind;
    out.lhs = abstract_all(ax.lhs, model);
    out.rhs = abstract_all(ax.rhs, model);
    model.axioms.push_back(std::move(out));
  }
  return model;
}

std::vector<GoalSubsumption> split(const FiloModel& model) {
  std::vector<GoalSubsumption> out;
  for (const auto& ax : model.axioms) {
    add_split(out, ax.lhs, ax.rhs);
    if (ax.kind == Axiom::Kind::Equivalence) add_split(out, ax.rhs, ax.lhs);
  }
  for (const auto& def : model.definitions) {
    ConceptNF var{Particle{{}, def.variable}};
    add_split(out, var, def.body);
    add_split(out, def.body, var);
  }
  return out;
}

std::vector<GoalSubsumption> split_and_project(const FiloModel& model, NameId constant) {
  std::vector<GoalSubsumption> out;
  for (auto& s : split(model)) {
    const Particle& p = *s.rhs;
    if (!model.signature.is_variable(p.head) && p.head != constant) continue;
    out.push_back(GoalSubsumption{restrict_to_constant(s.lhs, constant, model.signature, Projection::KeepVariables),
                                  std::move(s.rhs)});
  }
  return out;
}

GenericGoal flatten_two(std::span<const GoalSubsumption> subs, NameId constant, Signature signature) {
  return FlattenTwo(constant, std::move(signature)).run(subs);
}

std::vector<GoalSubsumption> GenericGoal::as_goal_subsumptions() const {
  std::vector<GoalSubsumption> out;
  for (const auto& f : flats) {
    std::vector<Particle> lhs;
    for (NameId n : f.lhs) lhs.push_back(Particle{{}, n});
    out.push_back(GoalSubsumption{ConceptNF(std::move(lhs)), Particle{{}, f.rhs}});
  }
  for (const auto& inc : increasing) {
    out.push_back(GoalSubsumption{ConceptNF{Particle{{}, inc.parent}}, Particle{{inc.role}, inc.child}});
  }
  return out;
}

std::string render_model(const FiloModel& model) {
  std::string out;
  for (const auto& ax : model.axioms) {
    out += render_axiom(Axiom{ax.kind, to_concept(ax.lhs), to_concept(ax.rhs)}, model.signature);
    out += '\n';
  }
  for (const auto& def : model.definitions) {
    out += "(equiv ";
    out += model.signature.name(def.variable);
    out += ' ';
    out += render_flu(def.body, model.signature);
    out += ")\n";
  }
  return out;
}

std::string render_generic_goal(const GenericGoal& goal) {
  const Signature& sig = goal.signature;
  std::string out = "; generic goal for ";
  out += sig.name(goal.constant);
  out += "\n; variables:";
  for (const auto& v : goal.variables) {
    out += ' ';
    out += sig.name(v.name);
  }
  out += '\n';
  for (const auto& f : goal.flats) {
    out += "(sub " + render_lhs(f.lhs, sig) + " " + std::string(sig.name(f.rhs)) + ")\n";
  }
  for (const auto& inc : goal.increasing) {
    out += "(sub " + std::string(sig.name(inc.parent)) + " (all " + std::string(sig.role_name(inc.role)) + " " +
           std::string(sig.name(inc.child)) + "))\n";
  }
  return out;
}

}  // namespace fl0

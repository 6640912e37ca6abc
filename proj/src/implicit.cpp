#include "fl0/implicit.hpp"

#include <algorithm>

namespace fl0 {

Goal build_goal(const GenericGoal& generic, const Choice& choice) {
  Goal goal;
  goal.generic = &generic;
  goal.choice = choice;
  goal.unsolved = generic.flats;
  for (std::size_t i = 0; i < generic.variables.size(); ++i) {
    if (choice[i] == ChoiceValue::Constant) goal.starts.push_back(generic.variables[i].name);
  }
  return goal;
}

namespace {

class Implicit {
 public:
  explicit Implicit(const Goal& goal) : g_(*goal.generic), choice_(goal.choice) {}

  ChoiceValue value(NameId n) const { return choice_[g_.index(n)]; }
  bool is_a(NameId n) const { return n == g_.constant; }

  bool lhs_can_supply_a(const FlatSubsumption& s) const {
    return std::any_of(s.lhs.begin(), s.lhs.end(),
                       [&](NameId n) { return is_a(n) || value(n) == ChoiceValue::Constant; });
  }

  // 0 when no critical check fires.
  int critical(const FlatSubsumption& s) const {
    if (is_a(s.rhs)) return lhs_can_supply_a(s) ? 0 : 5;
    ChoiceValue x = value(s.rhs);
    if (x == ChoiceValue::Constant && !lhs_can_supply_a(s)) return 7;
    if (s.lhs.empty() && x != ChoiceValue::Top) return 8;
    if (s.lhs.size() == 1 && is_a(s.lhs.front())) {
      if (x == ChoiceValue::Nothing) return 8;
      for (auto [r, child] : g_.variables[g_.index(s.rhs)].decompositions) {
        if (choice_[child] != ChoiceValue::Top) return 8;
      }
    }
    return 0;
  }

  enum class Step : std::uint8_t { Solved, Changed, Stuck };

  Step apply_one(FlatSubsumption& s) const {
    bool rhs_var = !is_a(s.rhs);
    if (rhs_var && value(s.rhs) == ChoiceValue::Top) return Step::Solved;  // 1
    auto top = [&](NameId n) { return !is_a(n) && value(n) == ChoiceValue::Top; };
    if (std::any_of(s.lhs.begin(), s.lhs.end(), top)) {  // 2
      std::erase_if(s.lhs, top);
      return Step::Changed;
    }
    if (std::binary_search(s.lhs.begin(), s.lhs.end(), s.rhs)) return Step::Solved;  // 3
    if (!rhs_var && std::any_of(s.lhs.begin(), s.lhs.end(), [&](NameId n) {
          return !is_a(n) && value(n) == ChoiceValue::Constant;
        })) {
      return Step::Solved;  // 4
    }
    if (rhs_var && value(s.rhs) != ChoiceValue::Constant) {  // 6
      auto it = std::find(s.lhs.begin(), s.lhs.end(), g_.constant);
      if (it != s.lhs.end()) {
        s.lhs.erase(it);
        return Step::Changed;
      }
    }
    return Step::Stuck;
  }

 private:
  const GenericGoal& g_;
  const Choice& choice_;
};

}  // namespace

ImplicitResult run_implicit(Goal goal) {
  ImplicitResult result;
  Implicit rules(goal);
  for (const auto& s : goal.unsolved) {
    if (int rule = rules.critical(s)) {
      result.kind = ImplicitResult::Kind::Failed;
      result.failed_rule = rule;
      return result;
    }
  }
  std::vector<FlatSubsumption> left;
  for (auto& s : goal.unsolved) {
    while (true) {
      auto step = rules.apply_one(s);
      if (step == decltype(step)::Solved) break;
      if (step == decltype(step)::Stuck) {
        left.push_back(std::move(s));
        break;
      }
      if (int rule = rules.critical(s)) {
        result.kind = ImplicitResult::Kind::Failed;
        result.failed_rule = rule;
        return result;
      }
    }
  }
  goal.unsolved = std::move(left);
  // With no start subsumption no particle is ever needed, so the goal is
  // solved by the choice alone, just like an empty one.
  if (goal.unsolved.empty() || goal.starts.empty()) {
    result.kind = ImplicitResult::Kind::Solved;
    result.unifier = conforming_unifier(*goal.generic, goal.choice);
  } else {
    result.kind = ImplicitResult::Kind::Residual;
  }
  result.goal = std::move(goal);
  return result;
}

Substitution conforming_unifier(const GenericGoal& generic, const Choice& choice) {
  Substitution sigma;
  std::vector<ConceptNF> values(generic.variables.size());
  for (std::size_t i = generic.variables.size(); i-- > 0;) {
    if (choice[i] == ChoiceValue::Top) continue;
    const VariableNode& v = generic.variables[i];
    std::vector<Particle> out;
    if (choice[i] == ChoiceValue::Constant) out.push_back(Particle{{}, generic.constant});
    for (auto [r, child] : v.decompositions) {
      for (const auto& p : values[child]) {
        Particle q{{r}, p.head};
        q.word.insert(q.word.end(), p.word.begin(), p.word.end());
        out.push_back(std::move(q));
      }
    }
    values[i] = ConceptNF(std::move(out));
    if (!values[i].is_top()) sigma.assign(v.name, values[i]);
  }
  return sigma;
}

}  // namespace fl0

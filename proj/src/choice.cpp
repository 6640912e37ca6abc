#include "fl0/choice.hpp"

#include <bit>
#include <limits>

namespace fl0 {

namespace {

constexpr Domain kTop = domain_bit(ChoiceValue::Top);
constexpr Domain kConstant = domain_bit(ChoiceValue::Constant);

ChoiceValue lowest(Domain d) { return static_cast<ChoiceValue>(std::countr_zero(d)); }

// Next value of the domain after v, if any.
std::optional<ChoiceValue> after(Domain d, ChoiceValue v) {
  Domain rest = static_cast<Domain>(d & ~((domain_bit(v) << 1) - 1));
  if (rest == 0) return std::nullopt;
  return lowest(rest);
}

}  // namespace

std::uint64_t ChoiceState::total() const {
  if (contradictory) return 0;
  std::uint64_t n = 1;
  constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() / 3;
  for (std::size_t i = 0; i < binary.size(); ++i) n = n > cap ? std::numeric_limits<std::uint64_t>::max() : n * 2;
  for (std::size_t i = 0; i < ternary.size(); ++i) n = n > cap ? std::numeric_limits<std::uint64_t>::max() : n * 3;
  return n;
}

ChoiceState fix_choices(const GenericGoal& goal) {
  ChoiceState state;
  const std::size_t n = goal.variables.size();
  state.domains.assign(n, kAllValues);
  auto& dom = state.domains;
  const Signature& sig = goal.signature;

  for (const auto& f : goal.flats) {
    bool rhs_var = sig.is_variable(f.rhs);
    if (rhs_var && f.lhs.empty()) {
      dom[goal.index(f.rhs)] &= kTop;  // (i)
    } else if (rhs_var && f.lhs.size() == 1 && f.lhs.front() == goal.constant) {
      dom[goal.index(f.rhs)] &= kTop | kConstant;  // (ii)
    } else if (!rhs_var && f.lhs.size() == 1 && sig.is_variable(f.lhs.front())) {
      dom[goal.index(f.lhs.front())] &= kConstant;  // (iii)
    }
  }

  auto restrict = [&](std::size_t i, Domain keep, bool& changed) {
    Domain d = dom[i] & keep;
    if (d != dom[i]) {
      dom[i] = d;
      changed = true;
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const VariableNode& v = goal.variables[i];
      if (std::popcount(dom[i]) == 1) {
        if (dom[i] == kTop) {  // (iv)
          for (auto [r, child] : v.decompositions) restrict(child, kTop, changed);
        }
        if (dom[i] != kConstant && v.constant_decomposition != VariableNode::npos) {  // (iv), (v)
          restrict(v.constant_decomposition, kTop, changed);
        }
      }
      if (v.is_constant_decomposition && dom[i] == kTop) {  // (vi)
        restrict(v.parent, static_cast<Domain>(~kConstant), changed);
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    switch (std::popcount(dom[i])) {
      case 0:
        state.contradictory = true;
        break;
      case 1:
        state.fixed.push_back(i);
        break;
      case 2:
        state.binary.push_back(i);
        break;
      default:
        state.ternary.push_back(i);
        break;
    }
  }
  return state;
}

std::optional<Choice> first_choice(const ChoiceState& state) {
  if (state.contradictory) return std::nullopt;
  Choice c(state.domains.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = lowest(state.domains[i]);
  return c;
}

bool next_choice(const ChoiceState& state, Choice& current) {
  auto advance = [&](const std::vector<std::size_t>& table) {
    for (auto it = table.rbegin(); it != table.rend(); ++it) {
      Domain d = state.domains[*it];
      if (auto v = after(d, current[*it])) {
        current[*it] = *v;
        return true;
      }
      current[*it] = lowest(d);
    }
    return false;
  };
  if (state.contradictory) return false;
  if (advance(state.binary)) return true;
  return advance(state.ternary);
}

bool is_consistent(const GenericGoal& goal, const Choice& choice) {
  for (std::size_t i = 0; i < goal.variables.size(); ++i) {
    const VariableNode& v = goal.variables[i];
    if (choice[i] == ChoiceValue::Top) {
      for (auto [r, child] : v.decompositions) {
        if (choice[child] != ChoiceValue::Top) return false;
      }
    }
    if (v.constant_decomposition != VariableNode::npos) {
      bool xa = choice[v.constant_decomposition] == ChoiceValue::Constant;
      bool x = choice[i] == ChoiceValue::Constant;
      if (xa != x) return false;
    }
  }
  return true;
}

std::string render_choice(const Choice& choice) {
  std::string out = "(";
  for (std::size_t i = 0; i < choice.size(); ++i) {
    if (i) out += ',';
    out += static_cast<char>('0' + static_cast<int>(choice[i]));
  }
  return out + ")";
}

}  // namespace fl0

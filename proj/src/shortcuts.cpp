#include "fl0/shortcuts.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_map>

#include "fl0/errors.hpp"

namespace fl0 {

bool satisfies(std::span<const NameId> members, const FlatSubsumption& s) {
  auto in = [&](NameId n) { return std::find(members.begin(), members.end(), n) != members.end(); };
  return !in(s.rhs) || std::any_of(s.lhs.begin(), s.lhs.end(), in);
}

bool resolves(const GenericGoal& goal, std::span<const NameId> s2, std::span<const NameId> s1, RoleId r) {
  const Signature& sig = goal.signature;
  auto in = [](std::span<const NameId> set, NameId n) { return std::find(set.begin(), set.end(), n) != set.end(); };
  bool any = false;
  for (NameId y : s1) {
    if (!sig.is_variable(y)) continue;
    const NameInfo& info = sig.info(y);
    if (info.kind != NameKind::DecompositionVariable || info.role != r) continue;
    any = true;
    if (!in(s2, info.parent)) return false;
  }
  if (!any) return false;
  for (NameId x : s2) {
    if (!sig.is_variable(x)) continue;
    if (auto xr = sig.find_decomposition(x, r); xr && goal.index_of.contains(*xr) && !in(s1, *xr)) return false;
  }
  return true;
}

std::vector<NameId> members_of(const Goal& goal, AtomSet set) {
  const GenericGoal& g = *goal.generic;
  std::vector<NameId> out;
  for (std::size_t i = 0; i < g.variables.size(); ++i) {
    if (set >> i & 1) out.push_back(g.variables[i].name);
  }
  if (set >> g.variables.size() & 1) out.push_back(g.constant);
  return out;
}

namespace {

AtomSet bit(std::size_t i) { return AtomSet{1} << i; }

struct MaskFlat {
  AtomSet lhs = 0;
  AtomSet rhs = 0;
};

class ShortcutSearch {
 public:
  explicit ShortcutSearch(const Goal& goal) : goal_(goal), g_(*goal.generic) {
    const std::size_t n = g_.variables.size();
    if (n > 63) {
      throw CapacityExceeded("generic goal has " + std::to_string(n) + " variables; shortcuts support at most 63");
    }
    constant_ = bit(n);
    auto atom = [&](NameId x) { return x == g_.constant ? constant_ : bit(g_.index(x)); };
    for (const auto& s : goal.unsolved) {
      MaskFlat f;
      for (NameId x : s.lhs) f.lhs |= atom(x);
      f.rhs = atom(s.rhs);
      flats_.push_back(f);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (goal.choice[i] != ChoiceValue::Top) universe_ |= bit(i);
    }
    // Roles with decompositions, in role order.
    std::map<std::uint32_t, std::size_t> role_slot;
    for (std::size_t i = 0; i < n; ++i) {
      for (auto [r, child] : g_.variables[i].decompositions) role_slot.emplace(r.value, 0);
    }
    for (auto& [r, slot] : role_slot) {
      slot = roles_.size();
      RoleData rd;
      rd.role = RoleId{r};
      roles_.push_back(std::move(rd));
    }
    AtomSet decomposition = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (auto [r, child] : g_.variables[i].decompositions) {
        RoleData& rd = roles_[role_slot.at(r.value)];
        rd.children.emplace_back(i, child);
        rd.members |= bit(child);
        decomposition |= bit(child);
        if (universe_ >> i & 1) parents_ |= bit(i);
      }
    }
    AtomSet nondecomposition = universe_ & ~decomposition;
    free_ = nondecomposition & ~parents_;
    parents_ &= nondecomposition;
    for (std::size_t i = 0; i < n; ++i) {
      if (parents_ >> i & 1) parent_list_.push_back(i);
    }
    for (NameId x : goal.starts) initial_ |= bit(g_.index(x));
    initial_ |= constant_;
  }

  ShortcutResult run() {
    ShortcutResult result;
    ShortcutStore& store = result.store;
    store.initial_members = initial_;
    if (!satisfies_all(initial_)) return result;
    std::size_t previous_end = 0;  // profiles known before the last round
    for (std::size_t round = 0;; ++round) {
      if (try_initial(store, round)) {
        store.rounds = round;
        result.success = true;
        return result;
      }
      std::size_t before = store.computed.size();
      run_round(store, round, previous_end);
      store.rounds = round + 1;
      if (store.computed.size() == before) return result;
      previous_end = before;
    }
  }

 private:
  struct RoleData {
    RoleId role;
    std::vector<std::pair<std::size_t, std::size_t>> children;  // (parent, X^r)
    AtomSet members = 0;                                         // all X^r
    std::vector<AtomSet> profiles;                               // admission order
    std::vector<std::size_t> owners;                             // parallel: shortcut index
    std::unordered_map<AtomSet, std::size_t> index;              // profile -> position
  };

  bool satisfies_all(AtomSet s) const {
    for (const auto& f : flats_) {
      if ((s & f.rhs) && !(s & f.lhs)) return false;
    }
    return true;
  }

  // Largest shortcut that agrees with `fixed` outside the free atoms, or 0.
  // Unions of shortcuts are shortcuts, so dropping violated free right
  // sides until nothing is violated yields the maximum.
  AtomSet complete(AtomSet fixed) const {
    AtomSet s = fixed | free_;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& f : flats_) {
        if ((s & f.rhs) && !(s & f.lhs)) {
          if (!(f.rhs & free_)) return 0;
          s &= ~f.rhs;
          changed = true;
        }
      }
    }
    return s;
  }

  // The r-decompositions of the members; nullopt if one of them is TOP,
  // since no shortcut can contain it.
  std::optional<AtomSet> profile(const RoleData& rd, AtomSet s) const {
    AtomSet p = 0;
    for (auto [parent, child] : rd.children) {
      if (s >> parent & 1) p |= bit(child);
    }
    if (p & ~universe_) return std::nullopt;
    return p;
  }

  bool try_initial(ShortcutStore& store, std::size_t round) {
    Shortcut sc;
    sc.members = initial_;
    sc.round = round;
    for (const auto& rd : roles_) {
      AtomSet part = initial_ & rd.members;
      if (!part) continue;
      auto it = rd.index.find(part);
      if (it == rd.index.end()) return false;
      sc.resolvers.emplace_back(rd.role, rd.owners[it->second]);
    }
    store.initial = store.computed.size();
    store.computed.push_back(std::move(sc));
    return true;
  }

  void run_round(ShortcutStore& store, std::size_t round, std::size_t previous_end) {
    std::vector<AtomSet> candidates;
    // Options per role: none, or one of the profiles known so far.
    const std::size_t k = roles_.size();
    std::vector<std::size_t> known(k);
    for (std::size_t j = 0; j < k; ++j) known[j] = roles_[j].profiles.size();
    std::vector<std::size_t> pick(k, 0);  // 0 = none, p+1 = profiles[p]
    while (true) {
      bool fresh = round == 0;
      AtomSet d = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (pick[j] == 0) continue;
        std::size_t pos = pick[j] - 1;
        d |= roles_[j].profiles[pos];
        if (roles_[j].owners[pos] >= previous_end) fresh = true;
      }
      if (fresh) collect(d, candidates);
      std::size_t j = 0;
      while (j < k && ++pick[j] > known[j]) pick[j++] = 0;
      if (j == k) break;
    }
    std::sort(candidates.begin(), candidates.end(), [](AtomSet a, AtomSet b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<std::pair<std::size_t, AtomSet>> pending;  // (role slot, profile)
    std::set<std::pair<std::size_t, AtomSet>> pending_seen;
    for (AtomSet s : candidates) {
      std::vector<std::pair<std::size_t, AtomSet>> fresh;
      for (std::size_t j = 0; j < k; ++j) {
        auto p = profile(roles_[j], s);
        if (!p || !*p || roles_[j].index.contains(*p) || pending_seen.contains({j, *p})) continue;
        fresh.emplace_back(j, *p);
      }
      if (fresh.empty()) continue;
      Shortcut sc;
      sc.members = s;
      sc.round = round;
      for (const auto& rd : roles_) {
        AtomSet part = s & rd.members;
        if (part) sc.resolvers.emplace_back(rd.role, rd.owners[rd.index.at(part)]);
      }
      std::size_t idx = store.computed.size();
      store.computed.push_back(std::move(sc));
      for (auto& f : fresh) {
        pending_seen.insert(f);
        pending.emplace_back(f.first, f.second);
        owner_of_pending_.push_back(idx);
      }
    }
    for (std::size_t i = 0; i < pending.size(); ++i) {
      RoleData& rd = roles_[pending[i].first];
      rd.index.emplace(pending[i].second, rd.profiles.size());
      rd.profiles.push_back(pending[i].second);
      rd.owners.push_back(owner_of_pending_[i]);
      store.good_variables |= pending[i].second;
    }
    owner_of_pending_.clear();
  }

  // Every shortcut whose decomposition part is exactly `d`, projected onto
  // the atoms that decide profiles and completed maximally elsewhere.
  void collect(AtomSet d, std::vector<AtomSet>& out) const {
    const std::size_t m = parent_list_.size();
    AtomSet base = d;
    std::vector<AtomSet> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = bit(parent_list_[i]);
    // Gray-code-free plain subset walk; m is small in practice.
    const std::uint64_t limit = std::uint64_t{1} << m;
    for (std::uint64_t sub = 0; sub < limit; ++sub) {
      AtomSet fixed = base;
      for (std::size_t i = 0; i < m; ++i) {
        if (sub >> i & 1) fixed |= order[i];
      }
      AtomSet s = complete(fixed);
      if (!s) continue;
      out.push_back(s);
    }
  }

  const Goal& goal_;
  const GenericGoal& g_;
  AtomSet constant_ = 0;
  AtomSet universe_ = 0;
  AtomSet parents_ = 0;
  AtomSet free_ = 0;
  AtomSet initial_ = 0;
  std::vector<std::size_t> parent_list_;
  std::vector<MaskFlat> flats_;
  std::vector<RoleData> roles_;
  std::vector<std::size_t> owner_of_pending_;
};

}  // namespace

ShortcutResult compute_shortcuts(const Goal& goal) { return ShortcutSearch(goal).run(); }

Substitution extract_unifier(const ShortcutStore& store, const Goal& goal) {
  const GenericGoal& g = *goal.generic;
  Substitution sigma;
  if (!store.initial) return sigma;
  std::vector<std::set<RoleWord>> words(store.computed.size());
  words[*store.initial].insert(RoleWord{});
  std::vector<std::vector<Particle>> values(g.variables.size());
  // Resolvers always come earlier, so one backwards sweep suffices.
  for (std::size_t idx = store.computed.size(); idx-- > 0;) {
    if (words[idx].empty()) continue;
    const Shortcut& sc = store.computed[idx];
    for (auto [r, target] : sc.resolvers) {
      for (const auto& w : words[idx]) {
        RoleWord rw{r};
        rw.insert(rw.end(), w.begin(), w.end());
        words[target].insert(std::move(rw));
      }
    }
    for (std::size_t i = 0; i < g.variables.size(); ++i) {
      if (!(sc.members >> i & 1)) continue;
      for (const auto& w : words[idx]) values[i].push_back(Particle{w, g.constant});
    }
  }
  for (std::size_t i = 0; i < g.variables.size(); ++i) {
    if (!values[i].empty()) sigma.assign(g.variables[i].name, ConceptNF(std::move(values[i])));
  }
  return sigma;
}

}  // namespace fl0

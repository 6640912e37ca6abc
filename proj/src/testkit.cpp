#include "fl0/testkit.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <stdexcept>

namespace fl0::testkit {

namespace {

constexpr const char* kConstants[] = {"A", "B"};
constexpr const char* kVariables[] = {"X_var", "Y_var", "Z_var"};
constexpr const char* kRoles[] = {"r", "s"};

template <class Rng>
int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <class Rng>
std::string random_particle(Rng& rng, const GeneratorParams& p) {
  int heads = p.n_constants + p.n_variables;
  int h = uniform(rng, 0, heads - 1);
  std::string out = h < p.n_constants ? kConstants[h] : kVariables[h - p.n_constants];
  int depth = uniform(rng, 0, p.max_depth);
  for (int i = 0; i < depth; ++i) out = std::string("(all ") + kRoles[uniform(rng, 0, p.n_roles - 1)] + " " + out + ")";
  return out;
}

template <class Rng>
std::string random_concept(Rng& rng, const GeneratorParams& p, int max_particles) {
  int k = uniform(rng, 1, max_particles);
  if (k == 1) return random_particle(rng, p);
  std::string out = "(and";
  for (int i = 0; i < k; ++i) out += " " + random_particle(rng, p);
  return out + ")";
}

}  // namespace

void validate(const GeneratorParams& p) {
  auto in = [](int v, int lo, int hi) { return v >= lo && v <= hi; };
  if (!in(p.n_constants, 0, 2) || !in(p.n_variables, 0, 3) || !in(p.n_roles, 1, 2) || !in(p.max_depth, 0, 2) ||
      !in(p.n_subsumptions, 1, 4) || p.n_constants + p.n_variables == 0) {
    throw std::invalid_argument("generator parameters out of bounds");
  }
}

ProblemSource gen_problem(const GeneratorParams& params) {
  validate(params);
  std::mt19937_64 rng(params.seed);
  std::string text;
  for (int i = 0; i < params.n_subsumptions; ++i) {
    bool equiv = uniform(rng, 0, 4) == 0;
    std::string lhs = random_concept(rng, params, 3);
    std::string rhs = random_concept(rng, params, 2);
    text += std::string(equiv ? "(equiv " : "(sub ") + lhs + " " + rhs + ")\n";
  }
  return parse_text(text);
}

GeneratorParams random_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  GeneratorParams p;
  p.n_constants = uniform(rng, 1, 2);
  p.n_variables = uniform(rng, 1, 3);
  p.n_roles = uniform(rng, 1, 2);
  p.max_depth = uniform(rng, 1, 2);
  p.n_subsumptions = uniform(rng, 1, 4);
  p.seed = seed;
  return p;
}

std::size_t particle_cap(std::size_t n_variables) { return n_variables <= 2 ? 12 : 8; }

namespace {

std::vector<RoleWord> words_up_to(std::size_t n_roles, std::size_t length) {
  std::vector<RoleWord> out{RoleWord{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= length; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::uint32_t r = 0; r < n_roles; ++r) {
        RoleWord w = out[i];
        w.push_back(RoleId{r});
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

struct Problem {
  std::vector<GoalSubsumption> goals;
  std::vector<NameId> variables;
  std::vector<NameId> constants;
  std::size_t depth = 0;
};

Problem inspect(const ProblemSource& src) {
  Problem p;
  p.goals = goal_subsumptions(src);
  const Signature& sig = src.signature;
  for (NameId n : sig.names()) {
    if (sig.is_variable(n)) p.variables.push_back(n);
  }
  p.constants = sig.constants();
  for (const auto& g : p.goals) {
    for (const auto& q : g.lhs) p.depth = std::max(p.depth, q.word.size());
    if (g.rhs) p.depth = std::max(p.depth, g.rhs->word.size());
  }
  return p;
}

std::size_t count_words(std::size_t n_roles, std::size_t length) {
  std::size_t total = 0, level = 1;
  for (std::size_t len = 0; len <= length; ++len) {
    total += level;
    if (total > 1000) return total;
    level *= n_roles;
  }
  return total;
}

bool fits(const Problem& p, std::size_t n_roles, int depth) {
  if (p.variables.size() > 3) return false;
  std::size_t universe = count_words(n_roles, depth) * p.constants.size();
  std::size_t extended = count_words(n_roles, p.depth + depth) * p.constants.size();
  return universe <= particle_cap(p.variables.size()) && extended <= 64;
}

struct Side {
  std::uint64_t constant = 0;
  std::vector<std::pair<std::size_t, std::size_t>> vars;  // (variable, prefix slot)
};

}  // namespace

std::optional<int> max_oracle_depth(const ProblemSource& src, int max_depth) {
  Problem p = inspect(src);
  for (int d = max_depth; d >= 0; --d) {
    if (fits(p, src.signature.role_count(), d)) return d;
  }
  return std::nullopt;
}

OracleResult oracle_search(const ProblemSource& src, int depth) {
  const Signature& sig = src.signature;
  Problem p = inspect(src);
  if (depth < 0 || !fits(p, sig.role_count(), depth)) {
    throw BudgetExceeded("oracle search space too large at depth " + std::to_string(depth));
  }
  const std::size_t nv = p.variables.size();

  // Value universe and the extended universe that applied values live in.
  std::vector<Particle> universe;
  for (const auto& w : words_up_to(sig.role_count(), depth)) {
    for (NameId c : p.constants) universe.push_back(Particle{w, c});
  }
  std::map<Particle, std::size_t> extended;
  for (const auto& w : words_up_to(sig.role_count(), p.depth + depth)) {
    for (NameId c : p.constants) extended.emplace(Particle{w, c}, extended.size());
  }
  auto ext_bit = [&](const Particle& q) { return std::uint64_t{1} << extended.at(q); };

  const std::size_t subsets = std::size_t{1} << universe.size();
  std::map<RoleWord, std::size_t> prefix_slot;
  std::vector<std::vector<std::uint64_t>> shifted;  // per prefix: subset -> extended mask
  auto slot_of = [&](const RoleWord& v) {
    auto [it, inserted] = prefix_slot.emplace(v, shifted.size());
    if (inserted) {
      std::vector<std::uint64_t> table(subsets, 0);
      for (std::size_t s = 1; s < subsets; ++s) {
        std::size_t low = static_cast<std::size_t>(std::countr_zero(s));
        const Particle& u = universe[low];
        Particle q{v, u.head};
        q.word.insert(q.word.end(), u.word.begin(), u.word.end());
        table[s] = table[s & (s - 1)] | ext_bit(q);
      }
      shifted.push_back(std::move(table));
    }
    return it->second;
  };
  std::map<NameId, std::size_t> var_index;
  for (std::size_t i = 0; i < nv; ++i) var_index.emplace(p.variables[i], i);

  // Goals grouped by the last variable they mention.
  struct Compiled {
    Side lhs;
    Side rhs;
  };
  std::vector<std::vector<Compiled>> at_level(nv + 1);
  for (const auto& g : p.goals) {
    if (!g.rhs) continue;
    Compiled c;
    std::size_t level = 0;
    auto add = [&](Side& side, const Particle& q) {
      if (sig.is_variable(q.head)) {
        std::size_t v = var_index.at(q.head);
        side.vars.emplace_back(v, slot_of(q.word));
        level = std::max(level, v + 1);
      } else {
        side.constant |= ext_bit(q);
      }
    };
    for (const auto& q : g.lhs) add(c.lhs, q);
    add(c.rhs, *g.rhs);
    at_level[level].push_back(std::move(c));
  }

  std::vector<std::size_t> value(nv, 0);
  auto eval = [&](const Side& side) {
    std::uint64_t m = side.constant;
    for (auto [v, slot] : side.vars) m |= shifted[slot][value[v]];
    return m;
  };
  auto holds = [&](std::size_t level) {
    for (const auto& c : at_level[level]) {
      if (eval(c.rhs) & ~eval(c.lhs)) return false;
    }
    return true;
  };

  OracleResult result;
  if (!holds(0)) return result;
  // Iterative odometer over the variables with per-level goal checks.
  std::size_t level = 0;
  bool found = nv == 0;
  if (!found) {
    value[0] = 0;
    while (true) {
      if (holds(level + 1)) {
        if (level + 1 == nv) {
          found = true;
          break;
        }
        ++level;
        value[level] = 0;
        continue;
      }
      while (++value[level] == subsets) {
        if (level == 0) break;
        --level;
      }
      if (value[level] == subsets) break;
    }
  }
  if (!found) return result;

  Substitution sigma;
  for (std::size_t i = 0; i < nv; ++i) {
    std::vector<Particle> ps;
    for (std::size_t b = 0; b < universe.size(); ++b) {
      if (value[i] >> b & 1) ps.push_back(universe[b]);
    }
    if (!ps.empty()) sigma.assign(p.variables[i], ConceptNF(std::move(ps)));
  }
  if (!verify_unifier(p.goals, sigma, sig)) throw std::logic_error("oracle produced a non-unifier");
  result.found = std::move(sigma);
  return result;
}

}  // namespace fl0::testkit

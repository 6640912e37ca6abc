#pragma once

#include <cstdint>
#include <optional>

#include "fl0/concept.hpp"
#include "fl0/errors.hpp"
#include "fl0/frontend.hpp"

namespace fl0::testkit {

/// Bounds for random problems. Constants are A, B; variables X_var, Y_var,
/// Z_var; roles r, s.
struct GeneratorParams {
  int n_constants = 1;     // ≤ 2
  int n_variables = 1;     // ≤ 3
  int n_roles = 1;         // ≤ 2
  int max_depth = 1;       // ≤ 2
  int n_subsumptions = 1;  // ≤ 4
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when a bound is violated.
void validate(const GeneratorParams& params);

/// Same parameters, same problem. The result round-trips through the
/// `.flu` parser, so its signature holds exactly the names it uses.
ProblemSource gen_problem(const GeneratorParams& params);

/// Random parameters within the bounds, drawn from `seed`.
GeneratorParams random_params(std::uint64_t seed);

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

struct OracleResult {
  /// Definitive when set. Otherwise no unifier exists within the bound,
  /// which says nothing about deeper unifiers.
  std::optional<Substitution> found;
};

/// Particle budget per variable: 12 with up to two variables, 8 with three;
/// no more than three variables are supported.
std::size_t particle_cap(std::size_t n_variables);

/// Tries every substitution that maps each variable to a set of particles
/// with words of length ≤ depth over the problem's constants. Throws
/// BudgetExceeded if that particle universe is over the cap or the
/// evaluation space does not fit.
OracleResult oracle_search(const ProblemSource& src, int depth);

/// The largest depth ≤ max_depth whose universe fits the cap, or nullopt.
std::optional<int> max_oracle_depth(const ProblemSource& src, int max_depth = 2);

}  // namespace fl0::testkit

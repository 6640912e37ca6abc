#include <doctest.h>

#include <mutex>

#include "fl0/frontend.hpp"
#include "fl0/solver.hpp"
#include "fl0/testkit.hpp"
#include "support.hpp"

using namespace fl0;

TEST_CASE("constant-free problems are solved by ⊤") {
  SolveResult r = solve(load_problem(test::fixture("constant_free.flu")));
  CHECK(r.unifiable);
  CHECK(r.unifier.size() == 0);
  CHECK(r.stats.constants_processed == 0);
}

TEST_CASE("worked example shows user variables only") {
  SolveResult r = solve(load_problem(test::fixture("generic_goal.flu")));
  REQUIRE(r.unifiable);
  CHECK(render_substitution(r.unifier, r.user_variables(), r.signature) ==
        "(equiv X_var (and A (all r A)))\n(equiv Y_var A)\n");
  for (NameId n : r.system_variables()) CHECK(r.signature.kind(n) == NameKind::SystemVariable);
}

TEST_CASE("early exit at the first failing constant") {
  ProblemSource src = parse_text("(sub A B) (sub C C)");
  SolveResult r = solve(src);
  CHECK_FALSE(r.unifiable);
  REQUIRE(r.failed_constant);
  CHECK(r.signature.name(*r.failed_constant) == "B");
  CHECK(r.stats.constants_processed == 2);
  CHECK_FALSE(testkit::oracle_search(src, 2).found);
}

TEST_CASE("solve_for_constant") {
  SUBCASE("worked example") {
    FiloModel model = flatten_one(load_problem(test::fixture("generic_goal.flu")));
    ConstantOutcome out = solve_for_constant(model, test::id(model.signature, "A"));
    REQUIRE(out.unifier);
    CHECK(out.stats.shortcut_phases >= 1);
  }
  SUBCASE("contradictory fix") {
    ProblemSource src = parse_text("(sub top X_var) (sub X_var A)");
    FiloModel model = flatten_one(src);
    ConstantOutcome out = solve_for_constant(model, test::id(model.signature, "A"));
    CHECK_FALSE(out.unifier);
    CHECK_FALSE(testkit::oracle_search(src, 2).found);
  }
  SUBCASE("nothing left after projection") {
    FiloModel model = flatten_one(parse_text("(sub X_var (all r B)) (sub A A)"));
    ConstantOutcome out = solve_for_constant(model, test::id(model.signature, "A"));
    REQUIRE(out.unifier);
    CHECK(out.stats.shortcut_phases == 0);
  }
}

TEST_CASE("tracing reports every choice") {
  std::mutex m;
  std::vector<std::string> lines;
  SolveOptions options;
  options.trace = [&](const std::string& line) {
    std::lock_guard lock(m);
    lines.push_back(line);
  };
  solve(load_problem(test::fixture("generic_goal.flu")), options);
  CHECK_FALSE(lines.empty());
}

TEST_CASE("parallel and sequential runs agree") {
  SolveOptions par;
  par.parallel = true;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    CAPTURE(seed);
    ProblemSource src = testkit::gen_problem(testkit::random_params(seed));
    SolveResult a = solve(src), b = solve(src, par);
    CHECK(a.unifiable == b.unifiable);
    CHECK(a.stats == b.stats);
    CHECK(render_substitution(a.unifier, a.user_variables(), a.signature) ==
          render_substitution(b.unifier, b.user_variables(), b.signature));
    CHECK(a.failed_constant == b.failed_constant);
  }
}

TEST_CASE("statistics equality ignores timing") {
  Statistics a, b;
  a.elapsed_ms = 1;
  b.elapsed_ms = 2;
  CHECK(a == b);
  b.shortcut_phases = 1;
  CHECK_FALSE(a == b);
}

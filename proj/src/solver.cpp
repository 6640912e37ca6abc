#include "fl0/solver.hpp"

#include <chrono>
#include <mutex>
#include <thread>

#include "fl0/choice.hpp"
#include "fl0/errors.hpp"
#include "fl0/implicit.hpp"
#include "fl0/shortcuts.hpp"

namespace fl0 {

namespace {

void emit(const SolveOptions& options, const std::string& line) {
  if (options.trace) options.trace(line);
}

void accumulate(Statistics& into, const Statistics& from) {
  into.max_variables = std::max(into.max_variables, from.max_variables);
  into.preprocessing_decided += from.preprocessing_decided;
  into.shortcut_phases += from.shortcut_phases;
  into.constants_processed += from.constants_processed;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw VerificationFailure("computed unifier does not solve " + what);
}

}  // namespace

std::vector<NameId> SolveResult::user_variables() const {
  std::vector<NameId> out;
  for (NameId n : signature.names()) {
    if (signature.kind(n) == NameKind::UserVariable) out.push_back(n);
  }
  return out;
}

std::vector<NameId> SolveResult::system_variables() const {
  std::vector<NameId> out;
  for (NameId n : signature.names()) {
    if (signature.kind(n) == NameKind::SystemVariable) out.push_back(n);
  }
  return out;
}

ConstantOutcome solve_for_constant(const FiloModel& model, NameId constant, const SolveOptions& options) {
  ConstantOutcome out;
  out.stats.constants_processed = 1;
  const std::string cname(model.signature.name(constant));

  std::vector<GoalSubsumption> projected = split_and_project(model, constant);
  GenericGoal generic = flatten_two(projected, constant, model.signature);
  out.stats.max_variables = generic.variables.size();
  emit(options, "constant " + cname + ": " + std::to_string(generic.flats.size()) + " flat, " +
                    std::to_string(generic.increasing.size()) + " increasing, " +
                    std::to_string(generic.variables.size()) + " variables");

  ChoiceState state = fix_choices(generic);
  std::optional<Choice> choice = first_choice(state);
  if (!choice) {
    emit(options, "constant " + cname + ": contradictory fixed choices");
    return out;
  }
  emit(options, "constant " + cname + ": " + std::to_string(state.fixed.size()) + " fixed, " +
                    std::to_string(state.binary.size()) + " binary, " + std::to_string(state.ternary.size()) +
                    " ternary");

  do {
    if (!is_consistent(generic, *choice)) {
      if (options.trace) emit(options, "choice " + render_choice(*choice) + " inconsistent");
      continue;
    }
    ImplicitResult r = run_implicit(build_goal(generic, *choice));
    std::optional<Substitution> found;
    switch (r.kind) {
      case ImplicitResult::Kind::Failed:
        ++out.stats.preprocessing_decided;
        if (options.trace) {
          emit(options, "choice " + render_choice(*choice) + " failed by rule " + std::to_string(r.failed_rule));
        }
        break;
      case ImplicitResult::Kind::Solved:
        ++out.stats.preprocessing_decided;
        if (options.trace) emit(options, "choice " + render_choice(*choice) + " solved by the implicit solver");
        found = std::move(r.unifier);
        break;
      case ImplicitResult::Kind::Residual: {
        ++out.stats.shortcut_phases;
        ShortcutResult sr = compute_shortcuts(r.goal);
        if (options.trace) {
          emit(options, "choice " + render_choice(*choice) + " residual " + std::to_string(r.goal.unsolved.size()) +
                            " flat, " + std::to_string(r.goal.starts.size()) + " starts; shortcuts " +
                            (sr.success ? "reached" : "missed") + " the initial shortcut after " +
                            std::to_string(sr.store.rounds) + " rounds");
        }
        if (sr.success) found = extract_unifier(sr.store, r.goal);
        break;
      }
    }
    if (found) {
      check(verify_unifier(generic.as_goal_subsumptions(), *found, generic.signature),
            "the generic goal for " + cname);
      check(verify_unifier(projected, *found, generic.signature), "the projected goal for " + cname);
      out.unifier = std::move(found);
      return out;
    }
  } while (next_choice(state, *choice));
  emit(options, "constant " + cname + ": no choice leads to a unifier");
  return out;
}

SolveResult solve(const ProblemSource& src, const SolveOptions& options) {
  auto start = std::chrono::steady_clock::now();
  SolveResult result;
  FiloModel model = flatten_one(src);
  result.signature = model.signature;
  std::vector<NameId> constants = model.signature.constants();

  std::vector<ConstantOutcome> outcomes(constants.size());
  if (options.parallel && constants.size() > 1) {
    std::mutex trace_lock;
    SolveOptions worker_options = options;
    if (options.trace) {
      worker_options.trace = [&](const std::string& line) {
        std::lock_guard guard(trace_lock);
        options.trace(line);
      };
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(constants.size());
    for (std::size_t i = 0; i < constants.size(); ++i) {
      workers.emplace_back([&, i] {
        try {
          outcomes[i] = solve_for_constant(model, constants[i], worker_options);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (std::size_t i = 0; i < constants.size(); ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
      if (!outcomes[i].unifier) break;  // later errors would not have happened sequentially
    }
  }

  bool ok = true;
  for (std::size_t i = 0; i < constants.size(); ++i) {
    if (!options.parallel || constants.size() <= 1) outcomes[i] = solve_for_constant(model, constants[i], options);
    accumulate(result.stats, outcomes[i].stats);
    if (!outcomes[i].unifier) {
      ok = false;
      result.failed_constant = constants[i];
      break;
    }
    for (const auto& [var, value] : *outcomes[i].unifier) {
      if (var.value >= model.signature.name_count()) continue;  // decomposition variables of this goal
      NameKind k = model.signature.kind(var);
      if (k == NameKind::UserVariable || k == NameKind::SystemVariable) result.unifier.extend(var, value);
    }
  }

  if (ok) {
    check(verify_unifier(split(model), result.unifier, model.signature), "the flattened problem");
    check(verify_unifier(goal_subsumptions(src), result.unifier, model.signature), "the input problem");
    result.unifiable = true;
  }
  result.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace fl0

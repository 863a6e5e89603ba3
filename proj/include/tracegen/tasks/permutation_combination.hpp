#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// k-th permutation (1-based) of 1..n in lexicographic order, built position
// by position with factorial counting.
class PermutationCombinationTask final : public Task {
 public:
  std::string id() const override { return "permutation-combination"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Backtracking; }
  RangeBounds default_bounds() const override { return {{1, 3}, {4, 6}, {7, 10}}; }

  std::vector<std::string> query_templates() const override {
    return {
        "List the permutation at position ${k}$ (counting from $1$) in the lexicographic "
        "ordering of the integers $1$ through ${n}$.",
        "Among all permutations of $1, \\ldots, {n}$ in lexicographic order, which one is "
        "number ${k}$ (1-based)?",
        "Give permutation number ${k}$ (1-based, lexicographic order) of the first ${n}$ "
        "positive integers.",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1 || lb.hi < lb.lo || lb.hi > 20) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": bad bounds for range");
    }
    Rng rng(derive_seed(seed, id()));
    const int n = static_cast<int>(rng.range(lb.lo, lb.hi));
    std::uint64_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["n"] = std::to_string(n);
    inst.params["k"] = std::to_string(1 + rng.below(fact));
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["n"] = "3";
    inst.params["k"] = "3";
    inst.length = 3;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const Parsed p = parse(inst);
    std::vector<long long> remaining;
    for (int i = 1; i <= p.n; ++i) remaining.push_back(i);
    std::vector<long long> out;
    std::uint64_t k = p.k - 1;  // 0-based rank
    for (int pos = p.n; pos >= 1; --pos) {
      const std::uint64_t f = factorial(pos - 1);
      const std::size_t idx = static_cast<std::size_t>(k / f);
      out.push_back(remaining[idx]);
      remaining.erase(remaining.begin() + static_cast<long>(idx));
      k %= f;
    }
    return render_int_list(out);
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    const Parsed p = parse(inst);
    if (p.n > 10) {
      throw TaskError(TaskErrorKind::OracleCapExceeded, id() + ": n too large to walk");
    }
    std::vector<long long> perm;
    for (int i = 1; i <= p.n; ++i) perm.push_back(i);
    for (std::uint64_t step = 1; step < p.k; ++step) {
      std::next_permutation(perm.begin(), perm.end());
    }
    return render_int_list(perm);
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const Parsed p = parse(inst);
    std::vector<long long> remaining;
    for (int i = 1; i <= p.n; ++i) remaining.push_back(i);
    std::vector<long long> prefix;
    std::uint64_t k = p.k - 1;
    std::vector<StepEvent> events;
    for (int pos = 1; pos <= p.n; ++pos) {
      const int slots = p.n - pos;  // positions remaining after this one
      const std::uint64_t f = factorial(slots);
      const std::size_t idx = static_cast<std::size_t>(k / f);
      const long long chosen = remaining[idx];
      StepEvent ev;
      ev.subtask = "position " + std::to_string(pos);
      ev.loop_group = 1;
      const std::string k_sym = "k_" + std::to_string(pos - 1);
      const std::string rem_sym = "Rem_" + std::to_string(pos - 1);
      const Origin prev =
          pos == 1 ? Origin::query() : Origin::output_of(static_cast<std::size_t>(pos) - 1);
      ev.review.push_back(single_review(k_sym, std::to_string(k + 1), prev));
      ev.review.push_back(single_review(rem_sym, render_int_list(remaining), prev));
      const std::uint64_t next_k = k % f;
      ev.computation.text = "$" + std::to_string(slots) + "! = " + std::to_string(f) +
                            "$; entry $\\lfloor (" + std::to_string(k + 1) + " - 1)/" +
                            std::to_string(f) + " \\rfloor = " + std::to_string(idx) +
                            "$ of $" + render_int_list(remaining) + "$ is $" +
                            std::to_string(chosen) + "$; rank becomes $" +
                            std::to_string(next_k + 1) + "$";
      prefix.push_back(chosen);
      remaining.erase(remaining.begin() + static_cast<long>(idx));
      k = next_k;
      ev.computation.result_symbol = "prefix_" + std::to_string(pos);
      ev.computation.result = render_int_list(prefix);
      ev.computation.uses = {k_sym, rem_sym};
      ev.transition = pos == p.n ? Transition::final()
                                 : Transition::to("position " + std::to_string(pos + 1));
      events.push_back(std::move(ev));
    }
    return build_trace(id(), std::move(events));
  }

  int length_of(const TaskInstance& inst) const override {
    const int n = std::stoi(inst.param("n"));
    if (n < 1) throw TaskError(TaskErrorKind::IllegalInstance, id() + ": bad n");
    return n;
  }

 private:
  struct Parsed {
    int n = 0;
    std::uint64_t k = 0;
  };

  Parsed parse(const TaskInstance& inst) const {
    Parsed p;
    p.n = std::stoi(inst.param("n"));
    p.k = std::stoull(inst.param("k"));
    if (p.n < 1 || p.n > 20 || p.k < 1 || p.k > factorial(p.n)) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": rank out of range");
    }
    return p;
  }

  static std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  }
};

}  // namespace tracegen

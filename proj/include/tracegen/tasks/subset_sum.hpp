#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// Decide whether any subset of the values hits the target sum.  The trace
// walks a depth-first search in preorder over nodes (i, s): values sorted
// descending, branches pruned when the sum overshoots or the remaining
// values cannot reach the target.
class SubsetSumTask final : public Task {
 public:
  std::string id() const override { return "subset-sum"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Backtracking; }
  RangeBounds default_bounds() const override { return {{4, 6}, {7, 9}, {10, 12}}; }
  bool hard() const override { return true; }

  std::vector<std::string> query_templates() const override {
    return {
        "Given the numbers {list}, is there a subset whose sum is exactly {target}? "
        "Answer YES or NO.",
        "Can you pick some of the numbers {list}, each at most once, so that they add up "
        "to {target}? Answer YES or NO.",
        "Does any subset of {list} sum to exactly {target}? Answer YES or NO.",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1 || lb.hi > 20) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": supported sizes are 1 to 20 values");
    }
    Rng rng(derive_seed(seed, id()));
    const int n = static_cast<int>(rng.range(static_cast<std::uint64_t>(lb.lo),
                                             static_cast<std::uint64_t>(lb.hi)));
    std::vector<long long> values;
    long long target = 0;
    // keep the search tree small: redraw instances whose trace would sprawl
    for (int attempt = 0; attempt < 200; ++attempt) {
      values.clear();
      for (int i = 0; i < n; ++i) {
        values.push_back(static_cast<long long>(rng.range(1, 99)));
      }
      const long long total = std::accumulate(values.begin(), values.end(), 0LL);
      if (rng.coin()) {
        target = planted_target(rng, values);
      } else {
        target = 0;
        for (int tries = 0; tries < 100; ++tries) {
          const long long t =
              static_cast<long long>(rng.range(1, static_cast<std::uint64_t>(total + 50)));
          if (!reachable(values, t)) {
            target = t;
            break;
          }
        }
        if (target == 0) target = planted_target(rng, values);
      }
      std::vector<Node> nodes;
      dfs_nodes(values, target, nodes);
      if (nodes.size() <= 1500) break;
    }
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["list"] = render_int_list(values);
    inst.params["target"] = std::to_string(target);
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["list"] = "[3, 34, 4, 12, 5, 2]";
    inst.params["target"] = "9";
    inst.length = 6;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    std::vector<Node> nodes;
    return dfs_nodes(values_of(inst), target_of(inst), nodes) ? "YES" : "NO";
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    const std::vector<long long> values = values_of(inst);
    const long long target = target_of(inst);
    if (values.size() > 22) {
      throw TaskError(TaskErrorKind::OracleCapExceeded, id() + ": too many values to enumerate");
    }
    // sweep every bitmask, no ordering and no pruning
    for (std::uint64_t mask = 1; mask < (1ULL << values.size()); ++mask) {
      long long sum = 0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (mask & (1ULL << i)) sum += values[i];
      }
      if (sum == target) return "YES";
    }
    return "NO";
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const std::vector<long long> original = values_of(inst);
    const long long target = target_of(inst);
    if (original.empty()) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": no values");
    }
    std::vector<long long> sorted = original;
    std::sort(sorted.begin(), sorted.end(), std::greater<long long>());
    std::vector<long long> suffix = suffix_sums(sorted);
    std::vector<Node> nodes;
    const bool found = dfs_nodes(original, target, nodes);

    std::vector<StepEvent> events;
    events.reserve(nodes.size() + 1);
    {
      StepEvent ev;
      ev.subtask = "sort descending";
      std::vector<OperandBinding> all;
      std::vector<std::string> uses;
      for (std::size_t i = 0; i < original.size(); ++i) {
        const std::string sym = "v_" + std::to_string(i);
        all.push_back(bind(sym, std::to_string(original[i]), Origin::query()));
        uses.push_back(sym);
      }
      ev.review.push_back(bracketed_review(std::move(all)));
      ev.computation.text =
          "order the values from largest to smallest: $" + render_int_list(sorted) + "$";
      ev.computation.result_symbol = "Sorted";
      ev.computation.result = render_int_list(sorted);
      ev.computation.uses = std::move(uses);
      events.push_back(std::move(ev));
    }

    for (const Node& node : nodes) {
      StepEvent ev;
      ev.subtask =
          "node (" + std::to_string(node.i) + ", " + std::to_string(node.s) + ")";
      ev.loop_group = 1;
      // the empty root sum is fixed by the query; every other sum was formed
      // by the parent node's branch
      ev.review.push_back(single_review(
          "S", std::to_string(node.s),
          node.parent_step == 0 ? Origin::query() : Origin::output_of(node.parent_step)));
      ev.review.push_back(single_review("T", std::to_string(target), Origin::query()));
      ev.computation.uses = {"S", "T"};
      ev.computation.result_symbol = "verdict";
      switch (node.kind) {
        case NodeKind::Yes:
          ev.computation.text = "current sum $S = " + std::to_string(node.s) +
                                "$ hits the target: answer YES";
          ev.computation.result = "YES";
          break;
        case NodeKind::Overshoot:
          ev.computation.text = "sum $S = " + std::to_string(node.s) + "$ exceeds $T = " +
                                std::to_string(target) + "$: prune this branch";
          ev.computation.result = "prune";
          break;
        case NodeKind::DeadEnd:
          ev.computation.text = "no values remain and $S = " + std::to_string(node.s) +
                                " \\ne " + std::to_string(target) + "$: backtrack";
          ev.computation.result = "backtrack";
          break;
        case NodeKind::Bound:
          ev.computation.text = "even taking every remaining value reaches only $" +
                                std::to_string(node.s) + " + " +
                                std::to_string(suffix[static_cast<std::size_t>(node.i)]) +
                                " = " +
                                std::to_string(node.s +
                                               suffix[static_cast<std::size_t>(node.i)]) +
                                " < " + std::to_string(target) + "$: prune this branch";
          ev.computation.result = "prune";
          break;
        case NodeKind::Branch: {
          const std::string v_sym = "v'_" + std::to_string(node.i);
          ev.review.push_back(single_review(
              v_sym, std::to_string(sorted[static_cast<std::size_t>(node.i)]),
              Origin::output_of(1)));
          ev.computation.uses.push_back(v_sym);
          ev.computation.text = "branch on $" + latex_subscript(v_sym) + " = " +
                                std::to_string(sorted[static_cast<std::size_t>(node.i)]) +
                                "$: try taking it first, then skipping it";
          ev.computation.result = "branch";
          break;
        }
      }
      events.push_back(std::move(ev));
    }

    for (std::size_t j = 0; j + 1 < events.size(); ++j) {
      events[j].transition = Transition::to(events[j + 1].subtask);
    }
    StepEvent& last = events.back();
    if (found) {
      last.transition = Transition::final();
    } else {
      last.computation.text += "; every branch is exhausted, answer NO";
      last.computation.result = "NO";
      last.transition = Transition::final();
    }

    Trace trace = build_trace(id(), std::move(events));
    trace.friendly_preamble = "Let's search the subsets depth-first, biggest values first.";
    trace.friendly_conclusion = "So the answer is $\\boxed{" + trace.final_answer + "}$.";
    return trace;
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(values_of(inst).size());
  }

 private:
  enum class NodeKind { Yes, Overshoot, DeadEnd, Bound, Branch };

  struct Node {
    int i = 0;
    long long s = 0;
    std::size_t parent_step = 0;  // 0 marks the root
    NodeKind kind = NodeKind::Branch;
  };

  std::vector<long long> values_of(const TaskInstance& inst) const {
    return parse_int_list(inst.param("list"));
  }

  long long target_of(const TaskInstance& inst) const {
    return std::stoll(inst.param("target"));
  }

  static std::vector<long long> suffix_sums(const std::vector<long long>& sorted) {
    std::vector<long long> suffix(sorted.size() + 1, 0);
    for (std::size_t i = sorted.size(); i > 0; --i) {
      suffix[i - 1] = suffix[i] + sorted[i - 1];
    }
    return suffix;
  }

  static long long planted_target(Rng& rng, const std::vector<long long>& values) {
    const std::uint64_t mask =
        1 + rng.below((1ULL << values.size()) - 1);
    long long sum = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (mask & (1ULL << i)) sum += values[i];
    }
    return sum;
  }

  static bool reachable(const std::vector<long long>& values, long long target) {
    const long long total = std::accumulate(values.begin(), values.end(), 0LL);
    if (target < 0 || target > total) return false;
    std::vector<char> hit(static_cast<std::size_t>(total) + 1, 0);
    hit[0] = 1;
    for (long long v : values) {
      for (long long s = total; s >= v; --s) {
        if (hit[static_cast<std::size_t>(s - v)]) hit[static_cast<std::size_t>(s)] = 1;
      }
    }
    return hit[static_cast<std::size_t>(target)] != 0;
  }

  // Preorder search over (index, sum) nodes; records every visited node.
  // Step indices: the sort step is 1, so node k lands on step k + 2.
  static bool dfs_nodes(const std::vector<long long>& original, long long target,
                        std::vector<Node>& out) {
    std::vector<long long> sorted = original;
    std::sort(sorted.begin(), sorted.end(), std::greater<long long>());
    const std::vector<long long> suffix = suffix_sums(sorted);
    return visit(sorted, suffix, target, 0, 0, 0, out);
  }

  static bool visit(const std::vector<long long>& sorted,
                    const std::vector<long long>& suffix, long long target, int i, long long s,
                    std::size_t parent_step, std::vector<Node>& out) {
    const std::size_t my_step = out.size() + 2;
    Node node{i, s, parent_step, NodeKind::Branch};
    if (s == target) {
      node.kind = NodeKind::Yes;
    } else if (s > target) {
      node.kind = NodeKind::Overshoot;
    } else if (static_cast<std::size_t>(i) == sorted.size()) {
      node.kind = NodeKind::DeadEnd;
    } else if (s + suffix[static_cast<std::size_t>(i)] < target) {
      node.kind = NodeKind::Bound;
    }
    out.push_back(node);
    if (node.kind == NodeKind::Yes) return true;
    if (node.kind != NodeKind::Branch) return false;
    if (visit(sorted, suffix, target, i + 1, s + sorted[static_cast<std::size_t>(i)], my_step,
              out)) {
      return true;
    }
    return visit(sorted, suffix, target, i + 1, s, my_step, out);
  }
};

}  // namespace tracegen

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

// Length of the longest common subsequence, folded one row at a time over
// the first string.  Size metric: length of the first string; the second
// string stays short so the rows remain readable.
class LongestCommonSubsequenceTask final : public Task {
 public:
  std::string id() const override { return "longest-common-subsequence"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::DP; }

  std::vector<std::string> query_templates() const override {
    return {
        "Find the length of the longest common subsequence of \"{a}\" and \"{b}\".",
        "What is the length of the longest string that appears as a subsequence of both "
        "\"{a}\" and \"{b}\"?",
        "Given the strings \"{a}\" and \"{b}\", compute the length of their longest common "
        "subsequence.",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": need a nonempty first string");
    }
    Rng rng(derive_seed(seed, id()));
    const int n = static_cast<int>(rng.range(static_cast<std::uint64_t>(lb.lo),
                                             static_cast<std::uint64_t>(lb.hi)));
    const int m = static_cast<int>(rng.range(3, 12));
    std::string a, b;
    for (int i = 0; i < n; ++i) a += letter(rng);
    for (int i = 0; i < m; ++i) b += letter(rng);
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["a"] = a;
    inst.params["b"] = b;
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["a"] = "abcbdab";
    inst.params["b"] = "bdcaba";
    inst.length = 7;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const std::string& a = inst.param("a");
    const std::string& b = inst.param("b");
    check(a, b);
    std::vector<long long> row(b.size() + 1, 0);
    for (char ca : a) row = next_row(row, ca, b);
    return std::to_string(row.back());
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    const std::string& a = inst.param("a");
    const std::string& b = inst.param("b");
    check(a, b);
    if (b.size() > 20) {
      throw TaskError(TaskErrorKind::OracleCapExceeded,
                      id() + ": second string too long to enumerate");
    }
    // try every subsequence of b and keep the longest one found inside a
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << b.size()); ++mask) {
      std::string candidate;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (mask & (1ULL << j)) candidate += b[j];
      }
      if (candidate.size() <= best) continue;
      std::size_t at = 0;
      for (char c : a) {
        if (at < candidate.size() && c == candidate[at]) ++at;
      }
      if (at == candidate.size()) best = candidate.size();
    }
    return std::to_string(best);
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const std::string& a = inst.param("a");
    const std::string& b = inst.param("b");
    check(a, b);
    std::vector<StepEvent> events;
    events.reserve(a.size() + 1);
    std::vector<long long> row(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
      const char ca = a[i - 1];
      const std::string prev_text = render_int_list(row);
      row = next_row(row, ca, b);
      StepEvent ev;
      ev.subtask = "row " + std::to_string(i);
      ev.loop_group = 1;
      const std::string a_sym = "a_" + std::to_string(i);
      const std::string prev_sym = "R_" + std::to_string(i - 1);
      const std::string cur_sym = "R_" + std::to_string(i);
      ev.review.push_back(single_review(a_sym, std::string(1, ca), Origin::query()));
      ev.review.push_back(single_review("B", b, Origin::query()));
      // the all-zero starting row is fixed by the query itself
      ev.review.push_back(single_review(
          prev_sym, prev_text, i == 1 ? Origin::query() : Origin::output_of(i - 1)));
      ev.computation.text =
          "fold \"" + std::string(1, ca) + "\" into the row: $" + latex_subscript(cur_sym) +
          "[j] = \\max(" + latex_subscript(prev_sym) + "[j], " + latex_subscript(cur_sym) +
          "[j-1], " + latex_subscript(prev_sym) + "[j-1] + [" + latex_subscript(a_sym) +
          " = b_j])$, giving $" + render_int_list(row) + "$";
      ev.computation.result_symbol = cur_sym;
      ev.computation.result = render_int_list(row);
      ev.computation.uses = {a_sym, "B", prev_sym};
      ev.transition = Transition::to(i == a.size() ? std::string("read off")
                                                   : "row " + std::to_string(i + 1));
      events.push_back(std::move(ev));
    }
    {
      StepEvent ev;
      ev.subtask = "read off";
      const std::string last_sym = "R_" + std::to_string(a.size());
      ev.review.push_back(
          single_review(last_sym, render_int_list(row), Origin::output_of(a.size())));
      ev.computation.text = "the last cell of the final row is the answer: $L = " +
                            std::to_string(row.back()) + "$";
      ev.computation.result_symbol = "L";
      ev.computation.result = std::to_string(row.back());
      ev.computation.uses = {last_sym};
      ev.transition = Transition::final();
      events.push_back(std::move(ev));
    }
    Trace trace = build_trace(id(), std::move(events));
    trace.friendly_preamble = "Let's fill the subsequence table one row at a time.";
    trace.friendly_conclusion =
        "The longest common subsequence has length $\\boxed{" + trace.final_answer + "}$.";
    return trace;
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(inst.param("a").size());
  }

 private:
  static char letter(Rng& rng) { return static_cast<char>('a' + rng.below(4)); }

  static std::vector<long long> next_row(const std::vector<long long>& prev, char ca,
                                         const std::string& b) {
    std::vector<long long> cur(prev.size(), 0);
    for (std::size_t j = 1; j < cur.size(); ++j) {
      if (ca == b[j - 1]) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    return cur;
  }

  void check(const std::string& a, const std::string& b) const {
    if (a.empty() || b.empty()) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": both strings must be nonempty");
    }
  }
};

}  // namespace tracegen

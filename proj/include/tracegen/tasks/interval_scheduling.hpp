#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

namespace interval_detail {

struct Interval {
  long long start = 0;
  long long end = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline std::string render_interval(const Interval& iv) {
  return "(" + std::to_string(iv.start) + ", " + std::to_string(iv.end) + ")";
}

inline std::string render_intervals(const std::vector<Interval>& ivs) {
  std::string out = "[";
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    if (i > 0) out += ", ";
    out += render_interval(ivs[i]);
  }
  return out + "]";
}

inline std::vector<Interval> parse_intervals(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw std::invalid_argument("not an interval list: " + text);
  }
  std::vector<Interval> out;
  std::size_t pos = 1;
  while (true) {
    const std::size_t open = text.find('(', pos);
    if (open == std::string::npos) break;
    const std::size_t close = text.find(')', open + 1);
    if (close == std::string::npos) {
      throw std::invalid_argument("unclosed pair in interval list: " + text);
    }
    const std::vector<long long> ends =
        parse_int_list("[" + text.substr(open + 1, close - open - 1) + "]");
    if (ends.size() != 2) {
      throw std::invalid_argument("interval needs exactly two endpoints: " + text);
    }
    out.push_back({ends[0], ends[1]});
    pos = close + 1;
  }
  return out;
}

inline std::vector<Interval> sorted_by_end(std::vector<Interval> ivs) {
  std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) {
    if (a.end != b.end) return a.end < b.end;
    return a.start < b.start;
  });
  return ivs;
}

}  // namespace interval_detail

// Pick the maximum number of pairwise non-overlapping intervals (touching
// endpoints allowed).  Earliest-end-first selection after a single sort.
class IntervalSchedulingTask final : public Task {
 public:
  std::string id() const override { return "interval-scheduling"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Greedy; }

  std::vector<std::string> query_templates() const override {
    return {
        "You are given the intervals {intervals}. Select as many pairwise non-overlapping "
        "intervals as possible; two intervals may touch at an endpoint. How many can you select?",
        "From the interval list {intervals}, what is the largest number of intervals you can "
        "keep so that no two of the kept intervals overlap? Sharing a single endpoint does not "
        "count as overlapping.",
        "A booking desk receives the requests {intervals}, each written as (start, end). "
        "Accepted requests must not overlap, although one may begin exactly when another ends. "
        "At most how many requests can be accepted?",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": need at least one interval");
    }
    Rng rng(derive_seed(seed, id()));
    const int n = static_cast<int>(rng.range(static_cast<std::uint64_t>(lb.lo),
                                             static_cast<std::uint64_t>(lb.hi)));
    std::vector<interval_detail::Interval> ivs;
    ivs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const long long start = static_cast<long long>(rng.range(0, 999));
      const long long len = static_cast<long long>(rng.range(1, 99));
      ivs.push_back({start, start + len});
    }
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["intervals"] = interval_detail::render_intervals(ivs);
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["intervals"] = "[(1, 3), (2, 5), (4, 7), (6, 8)]";
    inst.length = 4;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const auto sorted = interval_detail::sorted_by_end(intervals(inst));
    long long count = 0;
    long long last_end = 0;
    bool any = false;
    for (const auto& iv : sorted) {
      if (!any || iv.start >= last_end) {
        ++count;
        last_end = iv.end;
        any = true;
      }
    }
    return std::to_string(count);
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    // longest chain by pairwise dynamic programming instead of greedy scan
    const auto sorted = interval_detail::sorted_by_end(intervals(inst));
    const std::size_t n = sorted.size();
    std::vector<long long> best(n, 1);
    long long overall = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (sorted[j].end <= sorted[i].start) best[i] = std::max(best[i], best[j] + 1);
      }
      overall = std::max(overall, best[i]);
    }
    return std::to_string(overall);
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const auto ivs = intervals(inst);
    if (ivs.empty()) {
      throw TaskError(TaskErrorKind::IllegalInstance, id() + ": no intervals");
    }
    const auto sorted = interval_detail::sorted_by_end(ivs);
    const std::size_t n = sorted.size();

    std::vector<StepEvent> events;
    events.reserve(n + 1);

    {
      StepEvent ev;
      ev.subtask = "sort by end time";
      std::vector<OperandBinding> all;
      all.reserve(n);
      std::vector<std::string> uses;
      for (std::size_t i = 0; i < ivs.size(); ++i) {
        const std::string sym = "I_" + std::to_string(i);
        all.push_back(bind(sym, interval_detail::render_interval(ivs[i]), Origin::query()));
        uses.push_back(sym);
      }
      ev.review.push_back(bracketed_review(std::move(all)));
      ev.computation.text = "order the intervals by their right endpoints: $" +
                            interval_detail::render_intervals(sorted) + "$";
      ev.computation.result_symbol = "Sorted";
      ev.computation.result = interval_detail::render_intervals(sorted);
      ev.computation.uses = std::move(uses);
      ev.transition = Transition::to("interval 1");
      events.push_back(std::move(ev));
    }

    long long count = 0;
    long long last_end = 0;
    bool any = false;
    for (std::size_t j = 1; j <= n; ++j) {
      const auto& iv = sorted[j - 1];
      StepEvent ev;
      ev.subtask = "interval " + std::to_string(j);
      ev.loop_group = 1;
      const std::string iv_sym = "I'_" + std::to_string(j);
      const std::string prev_sym = "C_" + std::to_string(j - 1);
      const std::string cur_sym = "C_" + std::to_string(j);
      ev.review.push_back(
          single_review(iv_sym, interval_detail::render_interval(iv), Origin::output_of(1)));
      ev.computation.uses = {iv_sym};
      if (j > 1) {
        // C_{j-1} was produced by the previous step, which is step j
        ev.review.push_back(
            single_review(prev_sym, std::to_string(count), Origin::output_of(j)));
        ev.computation.uses.push_back(prev_sym);
      }
      const std::string lcur = latex_subscript(cur_sym);
      if (!any) {
        ++count;
        last_end = iv.end;
        any = true;
        ev.computation.text = "nothing chosen yet, take it: count $" + lcur +
                              " = 1$, last end becomes $" + std::to_string(iv.end) + "$";
      } else if (iv.start >= last_end) {
        ++count;
        ev.computation.text = "start $" + std::to_string(iv.start) + " \\ge " +
                              std::to_string(last_end) + "$ (last end), take it: count $" + lcur +
                              " = " + std::to_string(count) + "$, last end becomes $" +
                              std::to_string(iv.end) + "$";
        last_end = iv.end;
      } else {
        ev.computation.text = "start $" + std::to_string(iv.start) + " < " +
                              std::to_string(last_end) + "$ (last end), skip it: count stays $" +
                              lcur + " = " + std::to_string(count) + "$";
      }
      ev.computation.result_symbol = cur_sym;
      ev.computation.result = std::to_string(count);
      ev.transition =
          j == n ? Transition::final() : Transition::to("interval " + std::to_string(j + 1));
      events.push_back(std::move(ev));
    }

    Trace trace = build_trace(id(), std::move(events));
    trace.friendly_preamble = "Let's pick compatible intervals one at a time.";
    trace.friendly_conclusion =
        "At most $\\boxed{" + trace.final_answer + "}$ intervals fit without overlapping.";
    return trace;
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(intervals(inst).size());
  }

 private:
  std::vector<interval_detail::Interval> intervals(const TaskInstance& inst) const {
    return interval_detail::parse_intervals(inst.param("intervals"));
  }
};

}  // namespace tracegen

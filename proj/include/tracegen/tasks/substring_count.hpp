#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tracegen/task.hpp"

namespace tracegen {

// Count how often a pattern occurs in a text, overlaps included, by sliding
// a window one offset at a time.  Size metric: text length.
class SubstringCountTask final : public Task {
 public:
  std::string id() const override { return "substring-count"; }
  AlgorithmFamily family() const override { return AlgorithmFamily::Enumeration; }

  std::vector<std::string> query_templates() const override {
    return {
        "How many times does the pattern \"{pattern}\" occur in the text \"{text}\"? "
        "Occurrences may overlap.",
        "Count the occurrences of \"{pattern}\" inside \"{text}\", counting overlapping "
        "occurrences separately.",
        "In the string \"{text}\", at how many starting positions does the substring "
        "\"{pattern}\" appear?",
    };
  }

  TaskInstance sample(RangeTag range, std::uint64_t seed,
                      const RangeBounds& bounds) const override {
    if (seed == kReferenceSeed) return reference_instance();
    const LengthBounds& lb = bounds.at(range);
    if (lb.lo < 1) {
      throw TaskError(TaskErrorKind::EmptyRange, id() + ": need a nonempty text");
    }
    Rng rng(derive_seed(seed, id()));
    const int n = static_cast<int>(rng.range(static_cast<std::uint64_t>(lb.lo),
                                             static_cast<std::uint64_t>(lb.hi)));
    const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(4, n))));
    std::string text;
    for (int i = 0; i < n; ++i) text += letter(rng);
    std::string pattern;
    if (rng.chance(70)) {
      // lift the pattern out of the text so the count is at least one
      const std::size_t at = rng.below(static_cast<std::uint64_t>(n - m + 1));
      pattern = text.substr(at, static_cast<std::size_t>(m));
    } else {
      for (int i = 0; i < m; ++i) pattern += letter(rng);
    }
    TaskInstance inst;
    inst.task_id = id();
    inst.range = range;
    inst.params["text"] = text;
    inst.params["pattern"] = pattern;
    inst.length = n;
    return inst;
  }

  TaskInstance reference_instance() const override {
    TaskInstance inst;
    inst.task_id = id();
    inst.params["text"] = "abababa";
    inst.params["pattern"] = "aba";
    inst.length = 7;
    inst.range = RangeTag::S;
    return inst;
  }

  std::string solve(const TaskInstance& inst) const override {
    const std::string& text = inst.param("text");
    const std::string& pattern = inst.param("pattern");
    check(text, pattern);
    int count = 0;
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
      bool match = true;
      for (std::size_t k = 0; k < pattern.size(); ++k) {
        if (text[i + k] != pattern[k]) {
          match = false;
          break;
        }
      }
      if (match) ++count;
    }
    return std::to_string(count);
  }

  std::string brute_force_oracle(const TaskInstance& inst) const override {
    const std::string& text = inst.param("text");
    const std::string& pattern = inst.param("pattern");
    check(text, pattern);
    // tally every window of the pattern's length, then read one bucket
    std::map<std::string, int> buckets;
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
      ++buckets[text.substr(i, pattern.size())];
    }
    const auto it = buckets.find(pattern);
    return std::to_string(it == buckets.end() ? 0 : it->second);
  }

  Trace emit_trace(const TaskInstance& inst) const override {
    const std::string& text = inst.param("text");
    const std::string& pattern = inst.param("pattern");
    check(text, pattern);
    const std::size_t last = text.size() - pattern.size();
    std::vector<StepEvent> events;
    events.reserve(last + 1);
    int count = 0;
    for (std::size_t i = 0; i <= last; ++i) {
      const std::string window = text.substr(i, pattern.size());
      const bool match = window == pattern;
      if (match) ++count;
      StepEvent ev;
      ev.subtask = "offset " + std::to_string(i);
      ev.loop_group = 1;
      const std::string wi = "W_" + std::to_string(i);
      const std::string prev_sym = "C_" + std::to_string(i);
      const std::string cur_sym = "C_" + std::to_string(i + 1);
      ev.review.push_back(single_review(wi, window, Origin::query()));
      ev.review.push_back(single_review("P", pattern, Origin::query()));
      ev.computation.uses = {wi, "P"};
      if (i > 0) {
        // the running count entered this step as the previous step's output
        ev.review.push_back(
            single_review(prev_sym, std::to_string(match ? count - 1 : count),
                          Origin::output_of(i)));
        ev.computation.uses.push_back(prev_sym);
      }
      const std::string lcur = latex_subscript(cur_sym);
      if (match) {
        ev.computation.text = "window \"" + window + "\" equals \"" + pattern +
                              "\": one more occurrence, count $" + lcur + " = " +
                              std::to_string(count) + "$";
      } else {
        ev.computation.text = "window \"" + window + "\" differs from \"" + pattern +
                              "\": count stays $" + lcur + " = " + std::to_string(count) + "$";
      }
      ev.computation.result_symbol = cur_sym;
      ev.computation.result = std::to_string(count);
      ev.transition =
          i == last ? Transition::final() : Transition::to("offset " + std::to_string(i + 1));
      events.push_back(std::move(ev));
    }
    Trace trace = build_trace(id(), std::move(events));
    trace.friendly_preamble = "Let's slide the window across the text and keep a tally.";
    trace.friendly_conclusion =
        "The pattern occurs $\\boxed{" + trace.final_answer + "}$ times in total.";
    return trace;
  }

  int length_of(const TaskInstance& inst) const override {
    return static_cast<int>(inst.param("text").size());
  }

 private:
  static char letter(Rng& rng) { return static_cast<char>('a' + rng.below(4)); }

  void check(const std::string& text, const std::string& pattern) const {
    if (text.empty() || pattern.empty() || pattern.size() > text.size()) {
      throw TaskError(TaskErrorKind::IllegalInstance,
                      id() + ": pattern must be nonempty and fit inside the text");
    }
  }
};

}  // namespace tracegen

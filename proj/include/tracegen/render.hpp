#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/tasks/large_number_addition.hpp"
#include "tracegen/trace.hpp"
#include "tracegen/value.hpp"

namespace tracegen {

enum class RenderStyle { Minimalist, UserFriendly };

inline const char* style_name(RenderStyle s) {
  switch (s) {
    case RenderStyle::Minimalist: return "minimalist";
    case RenderStyle::UserFriendly: return "user-friendly";
  }
  return "?";
}

inline RenderStyle parse_style(std::string_view s) {
  if (s == "minimalist") return RenderStyle::Minimalist;
  if (s == "user-friendly") return RenderStyle::UserFriendly;
  throw std::invalid_argument("unknown style: " + std::string(s));
}

enum class RenderVariant {
  Full,
  NoLinearExpansion,
  NoAtomicState,
  NoDataReview,
  IndexHint,
  ReversedFormat,
};

inline const char* variant_name(RenderVariant v) {
  switch (v) {
    case RenderVariant::Full: return "full";
    case RenderVariant::NoLinearExpansion: return "no-linear-expansion";
    case RenderVariant::NoAtomicState: return "no-atomic-state";
    case RenderVariant::NoDataReview: return "no-data-review";
    case RenderVariant::IndexHint: return "index-hint";
    case RenderVariant::ReversedFormat: return "reversed-format";
  }
  return "?";
}

inline RenderVariant parse_variant(std::string_view s) {
  if (s == "full") return RenderVariant::Full;
  if (s == "no-linear-expansion") return RenderVariant::NoLinearExpansion;
  if (s == "no-atomic-state") return RenderVariant::NoAtomicState;
  if (s == "no-data-review") return RenderVariant::NoDataReview;
  if (s == "index-hint") return RenderVariant::IndexHint;
  if (s == "reversed-format") return RenderVariant::ReversedFormat;
  throw std::invalid_argument("unknown variant: " + std::string(s));
}

// Equation-reformatting baselines bypass the trace entirely.
inline bool is_baseline(RenderVariant v) {
  return v == RenderVariant::IndexHint || v == RenderVariant::ReversedFormat;
}

enum class RenderErrorKind { VariantNotApplicable, NotAddition };

class RenderError : public std::runtime_error {
 public:
  RenderError(RenderErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  RenderErrorKind kind() const { return kind_; }

 private:
  RenderErrorKind kind_;
};

struct RenderedSample {
  std::string query;
  std::string cot;
  std::string answer;
  RenderStyle style = RenderStyle::Minimalist;
  RenderVariant variant = RenderVariant::Full;
  std::size_t template_id = 0;
};

inline constexpr const char* kAtomicMarker = "<Atomic Subtask> ";
inline constexpr const char* kReviewMarker = "<Data Review> ";
inline constexpr const char* kExpansionMarker = "<Linear Expansion> ";

namespace render_detail {

// "Find" -> "\text{Find}", "s_10" -> "s_{10}", "Rem_3" -> "\text{Rem}_3".
inline std::string latex_symbol(const std::string& sym) {
  const std::size_t us = sym.find('_');
  const std::string base = us == std::string::npos ? sym : sym.substr(0, us);
  const bool word =
      base.size() >= 2 && std::all_of(base.begin(), base.end(), [](unsigned char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
      });
  std::string out = word ? "\\text{" + base + "}" : base;
  if (us != std::string::npos) {
    const std::string sub = sym.substr(us + 1);
    out += '_';
    out += sub.size() > 1 ? "{" + sub + "}" : sub;
  }
  return out;
}

inline std::string review_text(const ReviewGroup& group) {
  if (!group.bracketed) {
    const OperandBinding& b = group.bindings.front();
    return "$" + latex_symbol(b.symbol) + " = " + b.value + "$";
  }
  std::string out = "[";
  for (std::size_t i = 0; i < group.bindings.size(); ++i) {
    if (i > 0) out += ", ";
    out += "($" + latex_symbol(group.bindings[i].symbol) + "=" + group.bindings[i].value + "$)";
  }
  return out + "]";
}

inline std::string expansion_line(const std::string& subtask, const Transition& transition) {
  return kExpansionMarker + subtask + " $\\to$ " +
         (transition.halt ? "$F$" : transition.next);
}

// Consecutive steps sharing a nonzero loop_group collapse into one unit when
// a merging variant asks for it; everything else stays one step per unit.
inline std::vector<std::vector<const TraceStep*>> plan_units(const Trace& trace,
                                                             bool merge_loops) {
  std::vector<std::vector<const TraceStep*>> units;
  for (const TraceStep& step : trace.steps) {
    if (merge_loops && !units.empty() && step.loop_group != 0 &&
        units.back().back()->loop_group == step.loop_group) {
      units.back().push_back(&step);
    } else {
      units.push_back({&step});
    }
  }
  return units;
}

inline std::string combining_label(const TraceStep& first, const TraceStep& last) {
  return "Combining subtasks " + first.subtask + " through " + last.subtask + ": ";
}

inline std::string minimalist(const Trace& trace, RenderVariant variant) {
  const bool merge = variant == RenderVariant::NoLinearExpansion ||
                     variant == RenderVariant::NoAtomicState;
  const auto units = plan_units(trace, merge);
  std::vector<std::string> blocks;
  blocks.reserve(units.size());
  for (const auto& unit : units) {
    const TraceStep& first = *unit.front();
    const TraceStep& last = *unit.back();
    std::vector<std::string> lines;
    lines.push_back(kAtomicMarker + first.subtask);
    if (variant == RenderVariant::NoAtomicState) {
      for (const TraceStep* step : unit) {
        for (const ReviewGroup& group : step->review) {
          lines.push_back(kReviewMarker + review_text(group));
        }
        lines.push_back(step->computation.text);
      }
      lines.push_back(expansion_line(first.subtask, last.transition));
    } else if (variant == RenderVariant::NoLinearExpansion && unit.size() > 1) {
      for (const ReviewGroup& group : first.review) {
        lines.push_back(kReviewMarker + review_text(group));
      }
      lines.push_back(combining_label(first, last) + last.computation.text);
    } else {
      if (variant != RenderVariant::NoDataReview) {
        for (const ReviewGroup& group : first.review) {
          lines.push_back(kReviewMarker + review_text(group));
        }
      }
      lines.push_back(first.computation.text);
      if (variant != RenderVariant::NoLinearExpansion) {
        lines.push_back(expansion_line(first.subtask, first.transition));
      }
    }
    std::string block;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (i > 0) block += '\n';
      block += lines[i];
    }
    blocks.push_back(std::move(block));
  }
  std::string out;
  for (const std::string& block : blocks) {
    out += block;
    out += "\n\n";
  }
  out += "Final Answer: " + trace.answer_label + "$\\boxed{" + trace.final_answer + "}$.";
  return out;
}

struct FriendlyStep {
  std::vector<std::string> intro, review, body, transition;
};

inline FriendlyStep friendly_of(const TraceStep& step) {
  if (step.friendly) {
    return {step.friendly->intro, step.friendly->review, step.friendly->body,
            step.friendly->transition};
  }
  FriendlyStep out;
  out.intro.push_back("The current subtask is " + step.subtask + ".");
  for (const ReviewGroup& group : step.review) {
    out.review.push_back("We recall " + review_text(group) + ".");
  }
  out.body.push_back("We compute: " + step.computation.text + ".");
  if (step.transition.halt) {
    out.transition.push_back("This subtask ends the run.");
  } else {
    out.transition.push_back("We continue with " + step.transition.next + ".");
  }
  return out;
}

inline void append_all(std::vector<std::string>& into, const std::vector<std::string>& lines) {
  into.insert(into.end(), lines.begin(), lines.end());
}

inline std::string user_friendly(const Trace& trace, RenderVariant variant) {
  const bool merge = variant == RenderVariant::NoLinearExpansion ||
                     variant == RenderVariant::NoAtomicState;
  const auto units = plan_units(trace, merge);
  std::string out = trace.friendly_preamble.empty()
                        ? std::string("Let's work through the subtasks one by one.")
                        : trace.friendly_preamble;
  out += "\n\n";
  for (std::size_t u = 0; u < units.size(); ++u) {
    const auto& unit = units[u];
    const FriendlyStep first = friendly_of(*unit.front());
    const FriendlyStep last = friendly_of(*unit.back());
    std::vector<std::string> lines;
    append_all(lines, first.intro);
    if (variant == RenderVariant::NoAtomicState) {
      for (const TraceStep* step : unit) {
        const FriendlyStep fs = friendly_of(*step);
        append_all(lines, fs.review);
        append_all(lines, fs.body);
      }
      append_all(lines, last.transition);
    } else if (variant == RenderVariant::NoLinearExpansion && unit.size() > 1) {
      append_all(lines, first.review);
      std::vector<std::string> body = last.body;
      if (!body.empty()) {
        body.front() = combining_label(*unit.front(), *unit.back()) + body.front();
      }
      append_all(lines, body);
    } else {
      if (variant != RenderVariant::NoDataReview) append_all(lines, first.review);
      append_all(lines, first.body);
      if (variant != RenderVariant::NoLinearExpansion) append_all(lines, first.transition);
    }
    const std::string number = std::to_string(u + 1) + ". ";
    for (std::size_t i = 0; i < lines.size(); ++i) {
      out += i == 0 ? number + lines[i] : "   " + lines[i];
      out += '\n';
    }
    out += '\n';
  }
  out += trace.friendly_conclusion.empty()
             ? "The final answer is $\\boxed{" + trace.final_answer + "}$."
             : trace.friendly_conclusion;
  return out;
}

// Bijective base-26 column letters: 0 -> a, 25 -> z, 26 -> aa.
inline std::string hint_letter(std::size_t k) {
  std::string out;
  std::size_t n = k + 1;
  while (n > 0) {
    n -= 1;
    out += static_cast<char>('a' + n % 26);
    n /= 26;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// Position-indexed letters, usable only when all three numbers are integers
// of one shared width.
inline std::string hint_fixed(const std::string& digits) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    out += digits[i];
    out += hint_letter(i);
  }
  return out;
}

// Signed offsets from the decimal point: the digit left of the point gets
// (-a), the next (-b), ...; fractional digits get (a), (b), ...
inline std::string hint_signed(const std::string& number) {
  const DecimalParts parts = split_decimal(number);
  std::string out;
  const std::size_t w = parts.int_digits.size();
  for (std::size_t i = 0; i < w; ++i) {
    out += parts.int_digits[i];
    out += "(-" + hint_letter(w - 1 - i) + ")";
  }
  if (!parts.frac_digits.empty()) {
    out += '.';
    for (std::size_t i = 0; i < parts.frac_digits.size(); ++i) {
      out += parts.frac_digits[i];
      out += "(" + hint_letter(i) + ")";
    }
  }
  return out;
}

inline void require_addition(const TaskInstance& inst) {
  if (inst.task_id != "large-number-addition") {
    throw RenderError(RenderErrorKind::NotAddition,
                      "baseline formats only apply to large-number-addition, got " +
                          inst.task_id);
  }
}

}  // namespace render_detail

// The two chain styles with the three module ablations; the equation
// baselines are rendered by render_baseline_cot instead.
inline std::string render_cot(const Trace& trace, RenderStyle style, RenderVariant variant) {
  if (is_baseline(variant)) {
    throw RenderError(RenderErrorKind::VariantNotApplicable,
                      std::string("variant ") + variant_name(variant) +
                          " does not render a reasoning chain");
  }
  return style == RenderStyle::Minimalist ? render_detail::minimalist(trace, variant)
                                          : render_detail::user_friendly(trace, variant);
}

// "361 + 576 = 937" -> "3a6b1c+5a7b6c=9a3b7c"; decimals use signed offsets.
inline std::string apply_index_hint(const TaskInstance& inst) {
  render_detail::require_addition(inst);
  const std::string& a = inst.param("a");
  const std::string& b = inst.param("b");
  const std::string sum = LargeNumberAdditionTask().solve(inst);
  const bool integral = a.find('.') == std::string::npos &&
                        b.find('.') == std::string::npos &&
                        sum.find('.') == std::string::npos;
  if (integral && a.size() == b.size() && b.size() == sum.size()) {
    return render_detail::hint_fixed(a) + "+" + render_detail::hint_fixed(b) + "=" +
           render_detail::hint_fixed(sum);
  }
  return render_detail::hint_signed(a) + "+" + render_detail::hint_signed(b) + "=" +
         render_detail::hint_signed(sum);
}

// Inverse of apply_index_hint: drop parenthesised annotations and bare letters.
inline std::string strip_index_hints(const std::string& hinted) {
  std::string out;
  bool in_hint = false;
  for (char c : hinted) {
    if (in_hint) {
      if (c == ')') in_hint = false;
      continue;
    }
    if (c == '(') {
      in_hint = true;
      continue;
    }
    if (c >= 'a' && c <= 'z') continue;
    out += c;
  }
  return out;
}

// "123.45 + 67.89 = 191.34" -> "54.321+98.76=43.191".
inline std::string apply_reversed_format(const TaskInstance& inst) {
  render_detail::require_addition(inst);
  const auto flip = [](const std::string& s) { return std::string(s.rbegin(), s.rend()); };
  return flip(inst.param("a")) + "+" + flip(inst.param("b")) + "=" +
         flip(LargeNumberAdditionTask().solve(inst));
}

// Baselines train on the reformatted equation itself; the boxed answer stays
// in canonical digit order for uniform scoring.
inline std::string render_baseline_cot(const TaskInstance& inst, RenderVariant variant) {
  if (!is_baseline(variant)) {
    throw RenderError(RenderErrorKind::VariantNotApplicable,
                      std::string("variant ") + variant_name(variant) +
                          " is not an equation baseline");
  }
  const std::string equation = variant == RenderVariant::IndexHint
                                   ? apply_index_hint(inst)
                                   : apply_reversed_format(inst);
  const std::string answer = LargeNumberAdditionTask().solve(inst);
  return "Compute digit by digit:\n" + equation + "\nFinal Answer: $\\boxed{" + answer + "}$.";
}

}  // namespace tracegen

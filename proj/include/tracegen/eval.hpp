#pragma once

// Scoring of model responses against corpus answers: boxed-answer extraction,
// canonicalizing match, and per-range pass@1 accuracy reports.

#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tracegen/corpus.hpp"
#include "tracegen/task.hpp"

namespace tracegen {

enum class EvalErrorKind { UnknownSampleId, DuplicateResponse };

inline const char* eval_error_name(EvalErrorKind k) {
  switch (k) {
    case EvalErrorKind::UnknownSampleId: return "unknown-sample-id";
    case EvalErrorKind::DuplicateResponse: return "duplicate-response";
  }
  return "?";
}

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(eval_error_name(kind)) + ": " + detail), kind_(kind) {}
  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

struct ModelResponse {
  std::string sample_id;
  std::string response_text;

  bool operator==(const ModelResponse&) const = default;
};

inline std::vector<ModelResponse> load_responses(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CorpusError(CorpusErrorKind::IOFailure, "cannot read " + file.string());
  std::vector<ModelResponse> out;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      out.push_back({j.at("sample_id").get<std::string>(),
                     j.at("response_text").get<std::string>()});
    } catch (const std::exception& e) {
      throw CorpusError(CorpusErrorKind::ParseFailure,
                        file.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Answer extraction

namespace eval_detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// The last number or bracketed list literal on one line, if any.
inline std::optional<std::string> last_literal(const std::string& line) {
  std::optional<std::string> found;
  const auto digit = [](char c) { return c >= '0' && c <= '9'; };
  for (std::size_t i = 0; i < line.size();) {
    const char c = line[i];
    if (c == '[' || c == '(') {
      const char close = c == '[' ? ']' : ')';
      const std::size_t j = line.find(close, i + 1);
      if (j != std::string::npos) {
        const std::string inside = line.substr(i + 1, j - i - 1);
        bool has_digit = false, legal = true;
        for (char x : inside) {
          if (digit(x)) has_digit = true;
          else if (x != ',' && x != ' ' && x != '.' && x != '-' && x != '+') legal = false;
        }
        if (has_digit && legal) {
          found = line.substr(i, j - i + 1);
          i = j + 1;
          continue;
        }
      }
      ++i;
    } else if (digit(c) || ((c == '-' || c == '+') && i + 1 < line.size() && digit(line[i + 1]))) {
      std::size_t j = i + (digit(c) ? 0 : 1);
      while (j < line.size() && digit(line[j])) ++j;
      if (j + 1 < line.size() && line[j] == '.' && digit(line[j + 1])) {
        ++j;
        while (j < line.size() && digit(line[j])) ++j;
      }
      found = line.substr(i, j - i);
      i = j;
    } else {
      ++i;
    }
  }
  return found;
}

}  // namespace eval_detail

// The content of the LAST \boxed{...} (balanced braces); otherwise the last
// number or list literal on the final non-empty line; absent if neither.
inline std::optional<std::string> extract_answer(const std::string& response) {
  static const std::string kNeedle = "\\boxed{";
  std::size_t best = std::string::npos;
  for (std::size_t at = response.find(kNeedle); at != std::string::npos;
       at = response.find(kNeedle, at + 1)) {
    best = at;
  }
  if (best != std::string::npos) {
    const std::size_t open = best + kNeedle.size() - 1;
    int depth = 0;
    for (std::size_t i = open; i < response.size(); ++i) {
      if (response[i] == '{') {
        ++depth;
      } else if (response[i] == '}') {
        if (--depth == 0) {
          return eval_detail::trim(response.substr(open + 1, i - open - 1));
        }
      }
    }
    // unbalanced box: fall through to the line scan
  }
  std::size_t end = response.size();
  while (end > 0) {
    std::size_t start = response.rfind('\n', end - 1);
    start = start == std::string::npos ? 0 : start + 1;
    const std::string line = eval_detail::trim(response.substr(start, end - start));
    if (!line.empty()) return eval_detail::last_literal(line);
    if (start == 0) break;
    end = start - 1;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Matching

// Shape-driven canonical form: numbers lose padding zeros and plus signs,
// lists lose bracket style and spacing, text folds case.  Two answers match
// exactly when their canonical forms are equal, so flexibility can never turn
// one value into another.
inline std::string canonical_answer(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (c != '$') s += c;
  }
  s = eval_detail::trim(s);
  if (s.empty()) return s;

  const auto digit = [](char c) { return c >= '0' && c <= '9'; };

  // number?
  {
    std::size_t i = s[0] == '+' || s[0] == '-' ? 1 : 0;
    std::size_t digits = 0, dots = 0;
    bool ok = i < s.size();
    for (std::size_t j = i; j < s.size(); ++j) {
      if (digit(s[j])) ++digits;
      else if (s[j] == '.') ++dots;
      else ok = false;
    }
    if (ok && digits > 0 && dots <= 1) {
      const bool negative = s[0] == '-';
      std::string body = s.substr(i);
      const std::size_t dot = body.find('.');
      std::string ip = dot == std::string::npos ? body : body.substr(0, dot);
      std::string fp = dot == std::string::npos ? "" : body.substr(dot + 1);
      while (ip.size() > 1 && ip[0] == '0') ip.erase(ip.begin());
      if (ip.empty()) ip = "0";
      while (!fp.empty() && fp.back() == '0') fp.pop_back();
      std::string out = ip;
      if (!fp.empty()) out += "." + fp;
      if (negative && out != "0") out = "-" + out;
      return out;
    }
  }

  // list?
  if ((s.front() == '[' && s.back() == ']') || (s.front() == '(' && s.back() == ')')) {
    const std::string inside = s.substr(1, s.size() - 2);
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : inside) {
      if (c == '[' || c == '(') ++depth;
      if (c == ']' || c == ')') --depth;
      if (c == ',' && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!eval_detail::trim(cur).empty() || !parts.empty()) parts.push_back(cur);
    std::string out = "[";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += ", ";
      out += canonical_answer(parts[i]);
    }
    return out + "]";
  }

  // text: fold case, collapse whitespace runs
  std::string out;
  bool in_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += ' ';
    in_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

inline bool match_answer(const std::string& candidate, const std::string& gold,
                         [[maybe_unused]] const std::string& task_id) {
  return canonical_answer(candidate) == canonical_answer(gold);
}

// ---------------------------------------------------------------------------
// Scoring

struct Fraction {
  long long correct = 0;
  long long total = 0;

  double value() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
  bool operator==(const Fraction&) const = default;
};

struct RecordVerdict {
  std::string sample_id;
  bool correct = false;
  std::optional<std::string> extracted;

  bool operator==(const RecordVerdict&) const = default;
};

struct EvalResult {
  std::vector<RecordVerdict> verdicts;  // corpus record order
  std::map<std::string, std::array<Fraction, 3>> by_task;  // task -> S/M/L
  std::array<Fraction, 3> by_range{};
  Fraction overall;
};

// Pass@1 scoring: one response per record, missing responses count as wrong,
// so denominators are fixed by the corpus alone.
inline EvalResult score(const std::vector<ModelResponse>& responses,
                        const std::vector<SampleRecord>& records) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < records.size(); ++i) index[records[i].id] = i;

  std::vector<std::optional<std::string>> answers(records.size());
  std::set<std::string> seen;
  for (const ModelResponse& r : responses) {
    const auto it = index.find(r.sample_id);
    if (it == index.end()) throw EvalError(EvalErrorKind::UnknownSampleId, r.sample_id);
    if (!seen.insert(r.sample_id).second) {
      throw EvalError(EvalErrorKind::DuplicateResponse, r.sample_id);
    }
    answers[it->second] = r.response_text;
  }

  EvalResult result;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SampleRecord& rec = records[i];
    RecordVerdict verdict;
    verdict.sample_id = rec.id;
    if (answers[i]) {
      verdict.extracted = extract_answer(*answers[i]);
      verdict.correct =
          verdict.extracted && match_answer(*verdict.extracted, rec.answer, rec.task);
    }
    const std::size_t range_idx =
        rec.range == RangeTag::S ? 0 : rec.range == RangeTag::M ? 1 : 2;
    Fraction& task_cell = result.by_task[rec.task][range_idx];
    task_cell.total += 1;
    result.by_range[range_idx].total += 1;
    result.overall.total += 1;
    if (verdict.correct) {
      task_cell.correct += 1;
      result.by_range[range_idx].correct += 1;
      result.overall.correct += 1;
    }
    result.verdicts.push_back(std::move(verdict));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Reports

namespace eval_detail {

inline std::string accuracy_cell(const Fraction& f) {
  if (f.total == 0) return "-";
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << f.value();
  return out.str();
}

}  // namespace eval_detail

// Aligned accuracy table, one row per task, S/M/L/all columns.
inline std::string render_report(const EvalResult& result) {
  std::size_t name_width = std::string("overall").size();
  for (const auto& [task, cells] : result.by_task) {
    (void)cells;
    name_width = std::max(name_width, task.size());
  }
  std::ostringstream out;
  const auto row = [&](const std::string& name, const std::array<Fraction, 3>& cells,
                       const Fraction& all) {
    out << name << std::string(name_width - name.size(), ' ');
    for (const Fraction& f : cells) {
      const std::string cell = eval_detail::accuracy_cell(f);
      out << std::string(9 - std::min<std::size_t>(8, cell.size()), ' ') << cell;
    }
    const std::string cell = eval_detail::accuracy_cell(all);
    out << std::string(9 - std::min<std::size_t>(8, cell.size()), ' ') << cell << "\n";
  };
  out << std::string(name_width, ' ') << "        S        M        L      all\n";
  for (const auto& [task, cells] : result.by_task) {
    Fraction all;
    for (const Fraction& f : cells) {
      all.correct += f.correct;
      all.total += f.total;
    }
    row(task, cells, all);
  }
  row("overall", result.by_range, result.overall);
  return out.str();
}

// CSV rows (task, range, n, correct, accuracy) for every populated cell.
inline std::string render_report_csv(const EvalResult& result) {
  std::string out = "task,range,n,correct,accuracy\n";
  for (const auto& [task, cells] : result.by_task) {
    for (int i = 0; i < 3; ++i) {
      if (cells[i].total == 0) continue;
      out += task;
      out += ',';
      out += range_name(kAllRanges[i]);
      out += ',';
      out += std::to_string(cells[i].total);
      out += ',';
      out += std::to_string(cells[i].correct);
      out += ',';
      out += eval_detail::accuracy_cell(cells[i]);
      out += '\n';
    }
  }
  return out;
}

}  // namespace tracegen

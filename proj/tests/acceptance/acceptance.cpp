// Acceptance gate: one line per criterion, [PASS] or [FAIL], exercising the
// full stack end to end.  Run it from anywhere; it writes only under the
// system temp directory.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tracegen/config.hpp"
#include "tracegen/corpus.hpp"
#include "tracegen/eval.hpp"
#include "tracegen/render.hpp"
#include "tracegen/tasks.hpp"

using namespace tracegen;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (detail.empty()) detail = why;
  }
};

fs::path scratch_root() {
  static const fs::path root = [] {
    const fs::path p = fs::temp_directory_path() / "tracegen-acceptance";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string chomp(std::string text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

std::size_t count_marker(const std::string& text, const std::string& marker) {
  std::size_t count = 0;
  for (std::size_t at = text.find(marker); at != std::string::npos;
       at = text.find(marker, at + marker.size())) {
    ++count;
  }
  return count;
}

std::vector<std::string> blocks_of(const std::string& text) {
  std::vector<std::string> blocks;
  std::size_t start = 0;
  for (std::size_t at = text.find("\n\n"); at != std::string::npos;
       at = text.find("\n\n", start)) {
    blocks.push_back(text.substr(start, at - start));
    start = at + 2;
  }
  blocks.push_back(text.substr(start));
  return blocks;
}

// Round-robin pool over independent work units; first failure message wins.
void parallel_for(std::size_t units, const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::max(
      1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(units)));
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = cursor.fetch_add(1); i < units; i = cursor.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

// --------------------------------------------------------------------------

// 1: the pinned search exemplar renders byte-identically to the shipped
// reference texts, and walks the expected interval chain.
Outcome golden_fidelity() {
  Outcome out;
  const Task* task = find_task("binary-search");
  const Trace trace = task->emit_trace(task->reference_instance());

  const struct {
    RenderStyle style;
    RenderVariant variant;
    const char* file;
  } cases[] = {
      {RenderStyle::Minimalist, RenderVariant::Full, "binary_search_minimalist_full.txt"},
      {RenderStyle::UserFriendly, RenderVariant::Full, "binary_search_user_friendly_full.txt"},
      {RenderStyle::Minimalist, RenderVariant::NoDataReview,
       "binary_search_minimalist_no_data_review.txt"},
  };
  for (const auto& c : cases) {
    const std::string rendered = chomp(render_cot(trace, c.style, c.variant));
    const std::string golden = chomp(read_file(fs::path(GOLDEN_DIR) / c.file));
    if (golden.empty()) out.fail(std::string("missing reference text ") + c.file);
    if (rendered != golden) out.fail(std::string("render differs from ") + c.file);
  }

  const std::string text = render_cot(trace, RenderStyle::Minimalist, RenderVariant::Full);
  std::size_t at = 0;
  for (const char* needle :
       {"{0,10}", "\\text{Mid} = 5", "{0,4}", "\\text{Mid} = 2", "{0,1}", "\\text{Mid} = 0",
        "{1,1}", "\\text{Mid} = 1", "\\boxed{1}"}) {
    at = text.find(needle, at);
    if (at == std::string::npos) {
      out.fail(std::string("expected sequence element missing: ") + needle);
      break;
    }
  }
  return out;
}

// 2: across every task and range, 1,000 seeded instances agree between the
// efficient solver, the independent brute-force oracle, and the trace answer.
Outcome oracle_agreement(long long& instances) {
  Outcome out;
  struct Cell {
    const Task* task;
    RangeTag range;
  };
  std::vector<Cell> cells;
  for (const auto& task : all_tasks()) {
    for (RangeTag range : kAllRanges) cells.push_back({task.get(), range});
  }
  std::atomic<long long> done{0};
  std::atomic<int> failures{0};
  std::string first_failure;
  std::mutex failure_mutex;
  parallel_for(cells.size(), [&](std::size_t i) {
    const Cell& cell = cells[i];
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      try {
        const TaskInstance inst = cell.task->sample(cell.range, seed);
        const std::string solved = cell.task->solve(inst);
        const std::string oracle = cell.task->brute_force_oracle(inst);
        const Trace trace = cell.task->emit_trace(inst);
        if (solved != oracle || trace.final_answer != solved) {
          ++failures;
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (first_failure.empty()) {
            first_failure = cell.task->id() + " range " + range_name(cell.range) + " seed " +
                            std::to_string(seed);
          }
        }
      } catch (const std::exception& e) {
        ++failures;
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (first_failure.empty()) first_failure = cell.task->id() + ": " + e.what();
      }
      ++done;
    }
  });
  instances = done.load();
  if (failures.load() != 0) {
    out.fail(std::to_string(failures.load()) + " disagreements, first at " + first_failure);
  }
  return out;
}

CorpusSpec addition_spec(const fs::path& dir, long long train, long long eval) {
  CorpusSpec spec;
  spec.tasks = {"large-number-addition"};
  spec.train_size = train;
  spec.eval_size = eval;
  spec.ratio = {8, 1, 1};
  spec.master_seed = 20260822;
  spec.output_dir = dir.string();
  return spec;
}

// 3: the same 10,000-sample spec generated twice gives byte-identical files.
Outcome determinism(fs::path& kept_dir) {
  Outcome out;
  const fs::path a = scratch_root() / "det-a";
  const fs::path b = scratch_root() / "det-b";
  const CorpusManifest ma = generate_corpus(addition_spec(a, 10000, 500), 0);
  const CorpusManifest mb = generate_corpus(addition_spec(b, 10000, 500), 1);
  if (ma.files.size() != mb.files.size()) out.fail("file lists differ");
  for (std::size_t i = 0; i < ma.files.size() && out.ok; ++i) {
    if (ma.files[i].sha256 != mb.files[i].sha256) {
      out.fail("digest differs for " + ma.files[i].name);
    }
    if (read_file(a / ma.files[i].name) != read_file(b / mb.files[i].name)) {
      out.fail("bytes differ for " + ma.files[i].name);
    }
  }
  kept_dir = a;
  fs::remove_all(b);
  return out;
}

// 4: no duplicate keys, disjoint splits, and one key for all paraphrases of
// one instance.
Outcome dedup_and_split(const fs::path& corpus_dir) {
  Outcome out;
  if (corpus_dir.empty()) {
    out.fail("no corpus from the determinism step");
    return out;
  }
  const ValidationReport report = validate_corpus(corpus_dir, 0);
  if (report.duplicate_keys != 0) {
    out.fail(std::to_string(report.duplicate_keys) + " duplicate keys");
  }
  if (report.split_overlap != 0) {
    out.fail(std::to_string(report.split_overlap) + " train/eval overlaps");
  }

  const Task* search = find_task("binary-search");
  const TaskInstance inst = search->reference_instance();
  std::set<std::string> queries, keys;
  for (std::size_t t = 0; t < search->query_templates().size(); ++t) {
    queries.insert(render_query(*search, inst, t));
    keys.insert(dedup_key(search->id(), inst));
  }
  if (queries.size() < 3) out.fail("paraphrase templates collapsed");
  if (keys.size() != 1) out.fail("paraphrases produced distinct keys");
  return out;
}

// 5: each published mixing ratio apportions 10,000 samples within one unit
// of the exact split, verified on generated corpora.
Outcome ratio_fidelity() {
  Outcome out;
  const std::array<long long, 3> ratios[] = {
      {1, 0, 0}, {8, 1, 1}, {7, 2, 1}, {5, 3, 2}, {4, 3, 3}};
  for (const auto& ratio : ratios) {
    const std::string tag = std::to_string(ratio[0]) + "-" + std::to_string(ratio[1]) + "-" +
                            std::to_string(ratio[2]);
    CorpusSpec spec;
    spec.tasks = {"parity"};
    spec.train_size = 10000;
    spec.eval_size = 10;
    spec.ratio = ratio;
    spec.master_seed = 5;
    spec.output_dir = (scratch_root() / ("ratio-" + tag)).string();
    const CorpusManifest manifest = generate_corpus(spec, 0);
    const SplitCounts& train = manifest.counts.at("parity").train;
    const long long weight = ratio[0] + ratio[1] + ratio[2];
    for (int i = 0; i < 3; ++i) {
      const double target = 10000.0 * static_cast<double>(ratio[i]) / static_cast<double>(weight);
      if (std::abs(static_cast<double>(train.by_range[static_cast<std::size_t>(i)]) - target) >
          1.0) {
        out.fail("ratio " + tag + " range " + range_name(kAllRanges[i]) + " off target");
      }
    }
    if (train.total() != 10000) out.fail("ratio " + tag + " total drifted");
    fs::remove_all(spec.output_dir);
  }
  return out;
}

// 6: the digit-hint and reversed equation baselines reproduce their published
// forms and invert cleanly.
Outcome baseline_correctness() {
  Outcome out;
  const Task* addition = find_task("large-number-addition");
  if (apply_index_hint(addition->reference_instance()) != "3a6b1c+5a7b6c=9a3b7c") {
    out.fail("integer hint example mismatch");
  }
  TaskInstance decimal;
  decimal.task_id = "large-number-addition";
  decimal.params["a"] = "123.45";
  decimal.params["b"] = "67.89";
  decimal.length = 6;
  if (apply_index_hint(decimal) !=
      "1(-c)2(-b)3(-a).4(a)5(b)+6(-b)7(-a).8(a)9(b)=1(-c)9(-b)1(-a).3(a)4(b)") {
    out.fail("decimal hint example mismatch");
  }
  if (apply_reversed_format(decimal) != "54.321+98.76=43.191") {
    out.fail("reversed example mismatch");
  }

  int decimal_count = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const TaskInstance inst = addition->sample(kAllRanges[seed % 3], seed);
    if (inst.param("a").find('.') != std::string::npos) ++decimal_count;
    const std::string plain =
        inst.param("a") + "+" + inst.param("b") + "=" + addition->solve(inst);
    if (strip_index_hints(apply_index_hint(inst)) != plain) {
      out.fail("hint stripping failed at seed " + std::to_string(seed));
      break;
    }
  }
  if (decimal_count < 50) out.fail("sampler produced too few decimal additions");

  for (std::uint64_t seed = 1; seed <= 1000 && out.ok; ++seed) {
    const TaskInstance inst = addition->sample(kAllRanges[seed % 3], seed + 7000);
    const std::string once = apply_reversed_format(inst);
    // re-reversing every token must restore the plain equation
    std::string twice, token;
    for (char c : once + "+") {
      if (c == '+' || c == '=') {
        twice += std::string(token.rbegin(), token.rend());
        if (twice.size() < once.size()) twice += c;
        token.clear();
      } else {
        token += c;
      }
    }
    const std::string plain =
        inst.param("a") + "+" + inst.param("b") + "=" + addition->solve(inst);
    if (twice != plain) out.fail("reversal is not an involution at seed " + std::to_string(seed));
  }
  return out;
}

// 7: over 1,000 sampled traces, review ablation deletes every review marker,
// full renders echo each operand inside its own step, and state ablation
// merges loop runs into fewer blocks.
Outcome ablation_structure(long long& samples) {
  Outcome out;
  struct Unit {
    const Task* task;
    RangeTag range;
    std::uint64_t seed;
  };
  std::vector<Unit> units;
  std::uint64_t seed = 40000;
  while (units.size() < 1000) {
    for (const auto& task : all_tasks()) {
      for (RangeTag range : kAllRanges) {
        if (units.size() >= 1000) break;
        units.push_back({task.get(), range, ++seed});
      }
    }
  }
  std::atomic<int> failures{0};
  std::string first;
  std::mutex first_mutex;
  const auto record = [&](const std::string& why) {
    ++failures;
    std::lock_guard<std::mutex> lock(first_mutex);
    if (first.empty()) first = why;
  };
  parallel_for(units.size(), [&](std::size_t i) {
    const Unit& u = units[i];
    const std::string where = u.task->id() + " seed " + std::to_string(u.seed);
    try {
      const Trace trace = u.task->emit_trace(u.task->sample(u.range, u.seed));
      const std::string full =
          render_cot(trace, RenderStyle::Minimalist, RenderVariant::Full);
      const std::string bare =
          render_cot(trace, RenderStyle::Minimalist, RenderVariant::NoDataReview);
      if (count_marker(bare, "<Data Review> ") != 0) {
        record(where + ": review marker survived ablation");
        return;
      }
      const std::vector<std::string> blocks = blocks_of(full);
      if (blocks.size() != trace.steps.size() + 1) {
        record(where + ": block count mismatch");
        return;
      }
      for (std::size_t s = 0; s < trace.steps.size(); ++s) {
        for (const auto& group : trace.steps[s].review) {
          for (const auto& binding : group.bindings) {
            if (blocks[s].find(binding.value) == std::string::npos) {
              record(where + ": operand " + binding.symbol + " not echoed in step " +
                     std::to_string(s + 1));
              return;
            }
          }
        }
      }
      bool loop_bearing = false;
      for (std::size_t s = 1; s < trace.steps.size(); ++s) {
        if (trace.steps[s].loop_group != 0 &&
            trace.steps[s].loop_group == trace.steps[s - 1].loop_group) {
          loop_bearing = true;
        }
      }
      if (loop_bearing) {
        const std::string merged =
            render_cot(trace, RenderStyle::Minimalist, RenderVariant::NoAtomicState);
        if (count_marker(merged, "<Atomic Subtask> ") >= count_marker(full, "<Atomic Subtask> ")) {
          record(where + ": state ablation failed to shrink the block count");
        }
      }
    } catch (const std::exception& e) {
      record(where + ": " + e.what());
    }
  });
  samples = static_cast<long long>(units.size());
  if (failures.load() != 0) {
    out.fail(std::to_string(failures.load()) + " structural violations, first: " + first);
  }
  return out;
}

// 8: the scorer is exact on a planted 73/100 set, scores gold chains at one
// per range, and extracts the boxed index from the exemplar's final line.
Outcome evaluation_exactness() {
  Outcome out;
  std::vector<SampleRecord> records;
  std::vector<ModelResponse> responses;
  for (int i = 0; i < 100; ++i) {
    SampleRecord r;
    r.id = "planted" + std::to_string(i);
    r.task = "stub";
    r.range = i % 3 == 0 ? RangeTag::S : i % 3 == 1 ? RangeTag::M : RangeTag::L;
    r.answer = std::to_string(i);
    records.push_back(r);
    responses.push_back({r.id, i < 73 ? "Final Answer: $\\boxed{" + std::to_string(i) + "}$."
                                      : "Final Answer: $\\boxed{nope}$."});
  }
  const EvalResult planted = score(responses, records);
  if (planted.overall.correct != 73 || planted.overall.total != 100 ||
      planted.overall.value() != 0.73) {
    out.fail("planted set did not score exactly 0.73");
  }

  const fs::path dir = scratch_root() / "eval-gold";
  CorpusSpec spec;
  spec.tasks = {"large-number-addition"};
  spec.train_size = 30;
  spec.eval_size = 300;
  spec.ratio = {1, 1, 1};
  spec.master_seed = 77;
  spec.output_dir = dir.string();
  generate_corpus(spec, 0);
  std::vector<SampleRecord> gold = load_jsonl(dir / "large-number-addition.eval.jsonl");
  std::vector<ModelResponse> gold_responses;
  for (const SampleRecord& r : gold) gold_responses.push_back({r.id, r.cot});
  const EvalResult self = score(gold_responses, gold);
  for (int i = 0; i < 3; ++i) {
    if (self.by_range[static_cast<std::size_t>(i)].total == 0 ||
        self.by_range[static_cast<std::size_t>(i)].correct !=
            self.by_range[static_cast<std::size_t>(i)].total) {
      out.fail(std::string("gold chains missed range ") + range_name(kAllRanges[i]));
    }
  }
  fs::remove_all(dir);

  const std::string golden =
      read_file(fs::path(GOLDEN_DIR) / "binary_search_minimalist_full.txt");
  const std::size_t last_line = golden.rfind("Final Answer");
  if (last_line == std::string::npos ||
      extract_answer(golden.substr(last_line)) != std::optional<std::string>("1")) {
    out.fail("extraction missed the boxed index on the exemplar's final line");
  }
  return out;
}

// 9: the full-size addition corpus (100,000 train / 500 eval) generates and
// revalidates inside the time budget.
Outcome scale(const fs::path& dir, std::string& note) {
  Outcome out;
  const auto started = std::chrono::steady_clock::now();
  const CorpusManifest manifest = generate_corpus(addition_spec(dir, 100000, 500), 0);
  const auto generated = std::chrono::steady_clock::now();
  const ValidationReport report = validate_corpus(dir, 0);
  const auto validated = std::chrono::steady_clock::now();

  const auto seconds = [](auto from, auto to) {
    return std::chrono::duration<double>(to - from).count();
  };
  std::ostringstream detail;
  detail.setf(std::ios::fixed);
  detail.precision(1);
  detail << "generate " << seconds(started, generated) << "s, validate "
         << seconds(generated, validated) << "s";
  note = detail.str();

  if (manifest.counts.at("large-number-addition").train.total() != 100000 ||
      manifest.counts.at("large-number-addition").eval.total() != 500) {
    out.fail("corpus sizes drifted");
  }
  if (!report.clean() || report.records != 100500) {
    out.fail("validation found problems in the full-size corpus");
  }
  if (seconds(started, validated) > 600.0) out.fail("exceeded the ten-minute budget");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    std::string line;
    bool ok;
  };
  std::vector<Criterion> results;
  fs::path determinism_dir;
  const fs::path scale_dir = scratch_root() / "full-size";

  const auto run = [&](int number, const std::string& name,
                       const std::function<Outcome(std::string&)>& body) {
    const auto started = std::chrono::steady_clock::now();
    std::string extra;
    Outcome outcome;
    try {
      outcome = body(extra);
    } catch (const std::exception& e) {
      outcome.fail(e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::ostringstream line;
    line << (outcome.ok ? "[PASS] " : "[FAIL] ") << number << ". " << name;
    if (!extra.empty()) line << " (" << extra << ")";
    if (!outcome.ok) line << " -- " << outcome.detail;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << " [" << elapsed << "s]";
    std::puts(line.str().c_str());
    std::fflush(stdout);
    results.push_back({line.str(), outcome.ok});
  };

  run(1, "golden renders byte-match the shipped reference texts",
      [&](std::string&) { return golden_fidelity(); });
  run(2, "solver, oracle, and trace agree on 1,000 instances per task and range",
      [&](std::string& extra) {
        long long instances = 0;
        Outcome out = oracle_agreement(instances);
        extra = std::to_string(instances) + " instances";
        return out;
      });
  run(3, "identical specs produce byte-identical 10,000-sample corpora",
      [&](std::string&) { return determinism(determinism_dir); });
  run(4, "corpora are duplicate-free with disjoint splits and paraphrase-stable keys",
      [&](std::string&) { return dedup_and_split(determinism_dir); });
  run(5, "every published mixing ratio lands within one sample per range",
      [&](std::string&) { return ratio_fidelity(); });
  run(6, "digit-hint and reversed baselines reproduce their published forms and invert",
      [&](std::string&) { return baseline_correctness(); });
  run(7, "ablations keep their structural contracts over 1,000 sampled traces",
      [&](std::string& extra) {
        long long samples = 0;
        Outcome out = ablation_structure(samples);
        extra = std::to_string(samples) + " traces";
        return out;
      });
  run(8, "scoring is exact, self-consistent, and extracts the exemplar's answer",
      [&](std::string&) { return evaluation_exactness(); });
  run(9, "the full-size addition corpus generates and revalidates in budget",
      [&](std::string& extra) { return scale(scale_dir, extra); });

  int failures = 0;
  for (const Criterion& c : results) failures += c.ok ? 0 : 1;
  std::printf("acceptance: %zu/%zu passed\n", results.size() - failures, results.size());
  fs::remove_all(scratch_root());
  return failures == 0 ? 0 : 1;
}

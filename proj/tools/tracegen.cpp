// Command-line front end: task listing, corpus generation, spot rendering,
// validation, statistics, and response scoring.
//
// Exit codes: 0 success, 2 usage, 3 bad config, 4 I/O or parse failure,
// 5 instance space exhausted, 6 corpus violations found, 7 bad eval input.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracegen/config.hpp"
#include "tracegen/corpus.hpp"
#include "tracegen/eval.hpp"
#include "tracegen/render.hpp"
#include "tracegen/tasks.hpp"
#include "tracegen/version.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;
constexpr int kExitExhausted = 5;
constexpr int kExitViolations = 6;
constexpr int kExitEvalInput = 7;

using namespace tracegen;

std::array<long long, 3> parse_ratio(const std::string& text) {
  std::array<long long, 3> ratio{};
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t colon = text.find(':', start);
    const bool last = i == 2;
    if (last != (colon == std::string::npos)) {
      throw std::invalid_argument("ratio must look like S:M:L, e.g. 8:1:1");
    }
    const std::string part = text.substr(start, last ? std::string::npos : colon - start);
    try {
      std::size_t used = 0;
      ratio[static_cast<std::size_t>(i)] = std::stoll(part, &used);
      if (used != part.size() || ratio[static_cast<std::size_t>(i)] < 0) throw std::exception();
    } catch (const std::exception&) {
      throw std::invalid_argument("ratio components must be non-negative integers");
    }
    start = colon + 1;
  }
  if (ratio[0] + ratio[1] + ratio[2] == 0) {
    throw std::invalid_argument("ratio must have a positive component");
  }
  return ratio;
}

int run_tasks() {
  std::printf("%-28s %-20s %-5s %-8s %-8s %-8s\n", "task", "family", "hard", "S", "M", "L");
  for (const auto& task : all_tasks()) {
    const RangeBounds b = task->default_bounds();
    const auto span = [](const LengthBounds& lb) {
      return std::to_string(lb.lo) + "-" + std::to_string(lb.hi);
    };
    std::printf("%-28s %-20s %-5s %-8s %-8s %-8s\n", task->id().c_str(),
                family_name(task->family()), task->hard() ? "yes" : "no",
                span(b.s).c_str(), span(b.m).c_str(), span(b.l).c_str());
  }
  return 0;
}

struct GenerateArgs {
  std::string config_path;
  std::vector<std::string> tasks;
  long long train_size = 0;
  long long eval_size = 0;
  std::string ratio;
  std::string style;
  std::string variant;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string output_dir;
  unsigned jobs = 0;
};

int run_generate(const GenerateArgs& args) {
  CorpusSpec spec;
  if (!args.config_path.empty()) spec = load_config(args.config_path);
  if (spec.tasks.empty()) {
    for (const auto& task : all_tasks()) spec.tasks.push_back(task->id());
  }
  if (!args.tasks.empty()) spec.tasks = args.tasks;
  if (args.train_size > 0) spec.train_size = args.train_size;
  if (args.eval_size > 0) spec.eval_size = args.eval_size;
  if (!args.ratio.empty()) spec.ratio = parse_ratio(args.ratio);
  if (!args.style.empty()) spec.style = parse_style(args.style);
  if (!args.variant.empty()) spec.variant = parse_variant(args.variant);
  if (args.seed_set) spec.master_seed = args.seed;
  if (!args.output_dir.empty()) {
    spec.output_dir = args.output_dir;
  } else if (spec.output_dir.empty()) {
    const char* env = std::getenv("TRACEGEN_OUTPUT_DIR");
    spec.output_dir = env != nullptr && *env != '\0' ? env : "corpus";
  }

  const CorpusManifest manifest = generate_corpus(spec, args.jobs);
  std::printf("wrote corpus to %s\n", spec.output_dir.c_str());
  for (const FileEntry& f : manifest.files) {
    std::printf("%s lines=%lld sha256=%s\n", f.name.c_str(), f.lines, f.sha256.c_str());
  }
  std::printf("candidates=%lld deduplicated=%lld\n", manifest.generated, manifest.dropped);
  return 0;
}

struct RenderArgs {
  std::string task;
  std::uint64_t seed = 0;
  std::string range = "S";
  std::string style = "minimalist";
  std::string variant = "full";
  int template_id = 0;
};

int run_render(const RenderArgs& args) {
  const Task* task = find_task(args.task);
  if (task == nullptr) throw std::invalid_argument("unknown task: " + args.task);
  const TaskInstance inst = task->sample(parse_range(args.range), args.seed);
  const RenderStyle style = parse_style(args.style);
  const RenderVariant variant = parse_variant(args.variant);

  std::string cot, answer;
  if (is_baseline(variant)) {
    cot = render_baseline_cot(inst, variant);
    answer = task->solve(inst);
  } else {
    const Trace trace = task->emit_trace(inst);
    cot = render_cot(trace, style, variant);
    answer = trace.final_answer;
  }
  std::printf("=== query ===\n%s\n=== cot ===\n%s\n=== answer ===\n%s\n",
              render_query(*task, inst, static_cast<std::size_t>(args.template_id)).c_str(),
              cot.c_str(), answer.c_str());
  return 0;
}

int run_validate(const std::string& dir, unsigned jobs) {
  const ValidationReport report = validate_corpus(dir, jobs);
  std::printf("records=%lld mismatches=%lld trace_violations=%lld duplicates=%lld "
              "overlap=%lld manifest_mismatches=%lld\n",
              report.records, report.mismatches, report.trace_violations,
              report.duplicate_keys, report.split_overlap, report.manifest_mismatches);
  for (const std::string& note : report.notes) std::printf("  %s\n", note.c_str());
  return report.clean() ? 0 : kExitViolations;
}

int run_stats(const std::string& dir) {
  const CorpusStats stats = corpus_stats(dir);
  std::printf("%-28s %-6s %8s %8s %8s %10s\n", "task", "split", "S", "M", "L", "total");
  for (const auto& [task, counts] : stats.counts) {
    for (const char* split : {"train", "eval"}) {
      const SplitCounts& sc = split == std::string("train") ? counts.train : counts.eval;
      std::printf("%-28s %-6s %8lld %8lld %8lld %10lld\n", task.c_str(), split,
                  sc.by_range[0], sc.by_range[1], sc.by_range[2], sc.total());
    }
    const auto& histogram = stats.length_histogram.at(task);
    std::printf("%-28s lengths %d..%d over %zu distinct values\n", task.c_str(),
                histogram.begin()->first, histogram.rbegin()->first, histogram.size());
  }
  std::printf("records=%lld duplicates=%lld overlap=%lld\n", stats.records,
              stats.duplicate_keys, stats.split_overlap);
  for (const std::string& note : stats.notes) std::printf("  %s\n", note.c_str());
  return stats.clean() ? 0 : kExitViolations;
}

int run_evaluate(const std::string& dir, const std::string& responses_path,
                 const std::string& csv_path) {
  std::vector<SampleRecord> records;
  for (const auto& [task_id, split, path] : corpus_files(dir)) {
    (void)task_id;
    if (split != "eval") continue;
    for (SampleRecord& r : load_jsonl(path)) records.push_back(std::move(r));
  }
  if (records.empty()) {
    throw CorpusError(CorpusErrorKind::IOFailure, "no eval records under " + dir);
  }
  const EvalResult result = score(load_responses(responses_path), records);
  std::fputs(render_report(result).c_str(), stdout);
  std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
  csv << render_report_csv(result);
  csv.flush();
  if (!csv) throw CorpusError(CorpusErrorKind::IOFailure, "cannot write " + csv_path);
  std::printf("wrote %s\n", csv_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic chain-of-thought corpus toolkit"};
  app.set_version_flag("--version", std::string("tracegen ") + tracegen::kVersion);
  app.require_subcommand(1);

  app.add_subcommand("tasks", "list registered tasks and their size bands");

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "synthesize a corpus");
  generate->add_option("--config", gen.config_path, "JSON run configuration");
  generate->add_option("--task", gen.tasks, "restrict to these tasks (repeatable)");
  generate->add_option("--train-size", gen.train_size, "training samples per task");
  generate->add_option("--eval-size", gen.eval_size, "evaluation samples per task");
  generate->add_option("--ratio", gen.ratio, "S:M:L mix, e.g. 8:1:1");
  generate->add_option("--style", gen.style, "minimalist | user-friendly");
  generate->add_option("--variant", gen.variant,
                       "full | no-linear-expansion | no-atomic-state | no-data-review | "
                       "index-hint | reversed-format");
  generate->add_option("--seed", gen.seed, "master seed");
  generate->add_option("--output,-o", gen.output_dir,
                       "output directory (default: $TRACEGEN_OUTPUT_DIR or ./corpus)");
  generate->add_option("--jobs,-j", gen.jobs, "worker threads (0 = machine parallelism)");

  RenderArgs ren;
  CLI::App* render = app.add_subcommand("render", "print one rendered sample");
  render->add_option("--task", ren.task, "task id")->required();
  render->add_option("--seed", ren.seed, "instance seed (0 = pinned exemplar)");
  render->add_option("--range", ren.range, "S | M | L");
  render->add_option("--style", ren.style, "minimalist | user-friendly");
  render->add_option("--variant", ren.variant, "render variant");
  render->add_option("--template", ren.template_id, "query template index");

  std::string validate_dir;
  unsigned validate_jobs = 0;
  CLI::App* validate = app.add_subcommand("validate", "re-derive a corpus and diff it");
  validate->add_option("dir", validate_dir, "corpus directory")->required();
  validate->add_option("--jobs,-j", validate_jobs, "worker threads");

  std::string stats_dir;
  CLI::App* stats = app.add_subcommand("stats", "count and cross-check a corpus");
  stats->add_option("dir", stats_dir, "corpus directory")->required();

  std::string eval_dir, eval_responses, eval_csv = "report.csv";
  CLI::App* evaluate = app.add_subcommand("evaluate", "score responses against a corpus");
  evaluate->add_option("dir", eval_dir, "corpus directory")->required();
  evaluate->add_option("--responses", eval_responses, "JSON Lines of {sample_id, response_text}")
      ->required();
  evaluate->add_option("--csv", eval_csv, "where to write the CSV report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  gen.seed_set = generate->count("--seed") > 0;

  try {
    if (app.got_subcommand("tasks")) return run_tasks();
    if (app.got_subcommand(generate)) return run_generate(gen);
    if (app.got_subcommand(render)) return run_render(ren);
    if (app.got_subcommand(validate)) return run_validate(validate_dir, validate_jobs);
    if (app.got_subcommand(stats)) return run_stats(stats_dir);
    if (app.got_subcommand(evaluate)) return run_evaluate(eval_dir, eval_responses, eval_csv);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const CorpusError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == CorpusErrorKind::ExhaustedSpace ? kExitExhausted : kExitIo;
  } catch (const EvalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitEvalInput;
  } catch (const RenderError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const TaskError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

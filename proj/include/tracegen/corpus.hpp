#pragma once

// Corpus assembly: deduplicated, train/eval-split, ratio-mixed JSONL corpora
// with a manifest.  Everything is a pure function of the CorpusSpec, so two
// runs with the same CorpusSpec produce byte-identical files no matter how
// many worker threads are used.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "tracegen/digest.hpp"
#include "tracegen/render.hpp"
#include "tracegen/rng.hpp"
#include "tracegen/task.hpp"
#include "tracegen/tasks.hpp"
#include "tracegen/trace.hpp"
#include "tracegen/version.hpp"

namespace tracegen {

enum class CorpusErrorKind { ExhaustedSpace, IOFailure, ParseFailure };

inline const char* corpus_error_name(CorpusErrorKind k) {
  switch (k) {
    case CorpusErrorKind::ExhaustedSpace: return "exhausted-space";
    case CorpusErrorKind::IOFailure: return "io-failure";
    case CorpusErrorKind::ParseFailure: return "parse-failure";
  }
  return "?";
}

class CorpusError : public std::runtime_error {
 public:
  CorpusError(CorpusErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(corpus_error_name(kind)) + ": " + detail),
        kind_(kind) {}
  CorpusErrorKind kind() const { return kind_; }

 private:
  CorpusErrorKind kind_;
};

// ---------------------------------------------------------------------------
// Spec

struct CorpusSpec {
  std::vector<std::string> tasks;
  // 0 means "per-task default": 100,000 / 500, or 50,000 / 200 for tasks
  // flagged hard.
  long long train_size = 0;
  long long eval_size = 0;
  std::array<long long, 3> ratio{1, 0, 0};  // S : M : L, not all zero
  RenderStyle style = RenderStyle::Minimalist;
  RenderVariant variant = RenderVariant::Full;
  std::uint64_t master_seed = 0;
  std::string output_dir;
  // Optional per-task knobs; anything absent falls back to the registry.
  std::map<std::string, RangeBounds> bounds;
  std::map<std::string, bool> hard;

  bool operator==(const CorpusSpec&) const = default;
};

inline bool is_hard(const CorpusSpec& spec, const Task& task) {
  const auto it = spec.hard.find(task.id());
  return it != spec.hard.end() ? it->second : task.hard();
}

inline RangeBounds bounds_for(const CorpusSpec& spec, const Task& task) {
  const auto it = spec.bounds.find(task.id());
  return it != spec.bounds.end() ? it->second : task.default_bounds();
}

inline long long effective_train_size(const CorpusSpec& spec, const Task& task) {
  return spec.train_size > 0 ? spec.train_size : (is_hard(spec, task) ? 50000 : 100000);
}
inline long long effective_eval_size(const CorpusSpec& spec, const Task& task) {
  return spec.eval_size > 0 ? spec.eval_size : (is_hard(spec, task) ? 200 : 500);
}

// Splits `total` across S/M/L proportionally to `ratio` by largest remainder,
// so every range lands within one unit of its exact share.
inline std::array<long long, 3> apportion(long long total, const std::array<long long, 3>& ratio) {
  const long long weight = ratio[0] + ratio[1] + ratio[2];
  if (weight <= 0) throw std::invalid_argument("ratio must have a positive component");
  std::array<long long, 3> counts{};
  std::array<long long, 3> remainder{};
  long long assigned = 0;
  for (int i = 0; i < 3; ++i) {
    if (ratio[i] < 0) throw std::invalid_argument("ratio components must be non-negative");
    counts[i] = total * ratio[i] / weight;
    remainder[i] = total * ratio[i] % weight;
    assigned += counts[i];
  }
  int order[3] = {0, 1, 2};
  std::stable_sort(order, order + 3,
                   [&](int a, int b) { return remainder[a] > remainder[b]; });
  for (int i = 0; assigned < total; ++i) {
    counts[order[i % 3]] += 1;
    ++assigned;
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Records

// Identity of a sample by task and operand tuple only: phrasing, style, and
// render variant are deliberately excluded, so paraphrases of one instance
// collapse to one key.
inline std::string dedup_key(const std::string& task_id, const TaskInstance& inst) {
  std::string key = task_id;
  for (const auto& [name, value] : inst.params) {
    key += '|';
    key += name;
    key += '=';
    key += value;
  }
  return key;
}

inline std::string record_id(const std::string& key, RenderStyle style, RenderVariant variant,
                             int template_id) {
  const std::string material = key + '\x1f' + style_name(style) + '\x1f' +
                               variant_name(variant) + '\x1f' + std::to_string(template_id);
  return sha256_hex(material).substr(0, 16);
}

struct SampleRecord {
  std::string id;
  std::string task;
  std::string family;
  RangeTag range = RangeTag::S;
  int length = 0;
  std::uint64_t seed = 0;
  RenderStyle style = RenderStyle::Minimalist;
  RenderVariant variant = RenderVariant::Full;
  int template_id = 0;
  std::string query;
  std::string cot;
  std::string answer;

  bool operator==(const SampleRecord&) const = default;

  // Field order is frozen; the seed travels as a decimal string because JSON
  // numbers cannot hold the full 64-bit range.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["task"] = task;
    j["family"] = family;
    j["range"] = range_name(range);
    j["length"] = length;
    j["seed"] = std::to_string(seed);
    j["style"] = style_name(style);
    j["variant"] = variant_name(variant);
    j["template_id"] = template_id;
    j["query"] = query;
    j["cot"] = cot;
    j["answer"] = answer;
    return j;
  }

  static SampleRecord from_json(const nlohmann::json& j) {
    static const char* const kFields[] = {"id",      "task",    "family", "range",
                                          "length",  "seed",    "style",  "variant",
                                          "template_id", "query", "cot",  "answer"};
    if (!j.is_object()) throw std::invalid_argument("record is not an object");
    for (const char* field : kFields) {
      if (!j.contains(field)) throw std::invalid_argument(std::string("missing field: ") + field);
    }
    if (j.size() != std::size(kFields)) throw std::invalid_argument("unexpected extra fields");
    SampleRecord r;
    r.id = j.at("id").get<std::string>();
    r.task = j.at("task").get<std::string>();
    r.family = j.at("family").get<std::string>();
    r.range = parse_range(j.at("range").get<std::string>());
    r.length = j.at("length").get<int>();
    r.seed = std::stoull(j.at("seed").get<std::string>());
    r.style = parse_style(j.at("style").get<std::string>());
    r.variant = parse_variant(j.at("variant").get<std::string>());
    r.template_id = j.at("template_id").get<int>();
    r.query = j.at("query").get<std::string>();
    r.cot = j.at("cot").get<std::string>();
    r.answer = j.at("answer").get<std::string>();
    return r;
  }
};

// ---------------------------------------------------------------------------
// Manifest

struct SplitCounts {
  std::array<long long, 3> by_range{};
  long long total() const { return by_range[0] + by_range[1] + by_range[2]; }
  bool operator==(const SplitCounts&) const = default;
};

struct TaskCounts {
  SplitCounts train, eval;
  bool operator==(const TaskCounts&) const = default;
};

struct FileEntry {
  std::string name;
  long long lines = 0;
  std::string sha256;
  bool operator==(const FileEntry&) const = default;
};

struct CorpusManifest {
  std::string generator = std::string("tracegen ") + kVersion;
  CorpusSpec spec;
  std::map<std::string, TaskCounts> counts;
  long long generated = 0;  // candidate samples drawn, accepted or not
  long long dropped = 0;    // candidates rejected as dedup collisions
  std::vector<FileEntry> files;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["generator"] = generator;
    j["spec"]["tasks"] = spec.tasks;
    j["spec"]["train_size"] = spec.train_size;
    j["spec"]["eval_size"] = spec.eval_size;
    j["spec"]["ratio"] = spec.ratio;
    j["spec"]["style"] = style_name(spec.style);
    j["spec"]["variant"] = variant_name(spec.variant);
    j["spec"]["master_seed"] = std::to_string(spec.master_seed);
    j["spec"]["output_dir"] = spec.output_dir;
    if (!spec.bounds.empty()) {
      for (const auto& [task, rb] : spec.bounds) {
        j["spec"]["bounds"][task] = {{rb.s.lo, rb.s.hi}, {rb.m.lo, rb.m.hi}, {rb.l.lo, rb.l.hi}};
      }
    }
    if (!spec.hard.empty()) {
      for (const auto& [task, flag] : spec.hard) j["spec"]["hard"][task] = flag;
    }
    for (const auto& [task, tc] : counts) {
      for (const char* split : {"train", "eval"}) {
        const SplitCounts& sc = split == std::string("train") ? tc.train : tc.eval;
        nlohmann::ordered_json c;
        c["S"] = sc.by_range[0];
        c["M"] = sc.by_range[1];
        c["L"] = sc.by_range[2];
        c["total"] = sc.total();
        j["tasks"][task][split] = c;
      }
    }
    j["dedup"]["generated"] = generated;
    j["dedup"]["dropped"] = dropped;
    for (const FileEntry& f : files) {
      nlohmann::ordered_json e;
      e["name"] = f.name;
      e["lines"] = f.lines;
      e["sha256"] = f.sha256;
      j["files"].push_back(e);
    }
    return j;
  }

  static CorpusManifest from_json(const nlohmann::json& j) {
    CorpusManifest m;
    m.generator = j.at("generator").get<std::string>();
    const auto& s = j.at("spec");
    m.spec.tasks = s.at("tasks").get<std::vector<std::string>>();
    m.spec.train_size = s.at("train_size").get<long long>();
    m.spec.eval_size = s.at("eval_size").get<long long>();
    m.spec.ratio = s.at("ratio").get<std::array<long long, 3>>();
    m.spec.style = parse_style(s.at("style").get<std::string>());
    m.spec.variant = parse_variant(s.at("variant").get<std::string>());
    m.spec.master_seed = std::stoull(s.at("master_seed").get<std::string>());
    m.spec.output_dir = s.at("output_dir").get<std::string>();
    if (s.contains("bounds")) {
      for (const auto& [task, rb] : s.at("bounds").items()) {
        RangeBounds b;
        b.s = {rb.at(0).at(0).get<int>(), rb.at(0).at(1).get<int>()};
        b.m = {rb.at(1).at(0).get<int>(), rb.at(1).at(1).get<int>()};
        b.l = {rb.at(2).at(0).get<int>(), rb.at(2).at(1).get<int>()};
        m.spec.bounds[task] = b;
      }
    }
    if (s.contains("hard")) {
      for (const auto& [task, flag] : s.at("hard").items()) {
        m.spec.hard[task] = flag.get<bool>();
      }
    }
    if (j.contains("tasks")) {
      for (const auto& [task, splits] : j.at("tasks").items()) {
        TaskCounts tc;
        for (const char* split : {"train", "eval"}) {
          const auto& c = splits.at(split);
          SplitCounts& sc = split == std::string("train") ? tc.train : tc.eval;
          sc.by_range = {c.at("S").get<long long>(), c.at("M").get<long long>(),
                         c.at("L").get<long long>()};
        }
        m.counts[task] = tc;
      }
    }
    m.generated = j.at("dedup").at("generated").get<long long>();
    m.dropped = j.at("dedup").at("dropped").get<long long>();
    if (j.contains("files")) {
      for (const auto& e : j.at("files")) {
        m.files.push_back({e.at("name").get<std::string>(), e.at("lines").get<long long>(),
                           e.at("sha256").get<std::string>()});
      }
    }
    return m;
  }
};

// ---------------------------------------------------------------------------
// Generation

namespace corpus_detail {

inline constexpr int kMaxAttempts = 2000;
inline constexpr std::uint64_t kTrainSplit = 0;
inline constexpr std::uint64_t kEvalSplit = 1;

inline std::uint64_t slot_seed(const CorpusSpec& spec, const std::string& task_id,
                               std::uint64_t split, std::uint64_t range, std::uint64_t slot,
                               std::uint64_t attempt) {
  return derive_seed(spec.master_seed, task_id, {split, range, slot, attempt});
}

struct Candidate {
  SampleRecord record;
  std::string key;
};

// One fully rendered candidate for a slot.  Seed zero is reserved for the
// pinned exemplar instance, so it is never used for corpus slots.
inline std::optional<Candidate> make_candidate(const CorpusSpec& spec, const Task& task,
                                               std::uint64_t split, int range_idx,
                                               std::uint64_t slot, std::uint64_t attempt) {
  const std::uint64_t seed =
      slot_seed(spec, task.id(), split, static_cast<std::uint64_t>(range_idx), slot, attempt);
  if (seed == kReferenceSeed) return std::nullopt;
  const RangeTag range = kAllRanges[range_idx];
  const TaskInstance inst = task.sample(range, seed, bounds_for(spec, task));
  Candidate out;
  out.key = dedup_key(task.id(), inst);
  SampleRecord& r = out.record;
  const auto& templates = task.query_templates();
  r.template_id = static_cast<int>(derive_seed(seed, "template") % templates.size());
  r.task = task.id();
  r.family = family_name(task.family());
  r.range = range;
  r.length = inst.length;
  r.seed = seed;
  r.style = spec.style;
  r.variant = spec.variant;
  r.query = render_query(task, inst, static_cast<std::size_t>(r.template_id));
  if (is_baseline(spec.variant)) {
    r.cot = render_baseline_cot(inst, spec.variant);
    r.answer = task.solve(inst);
  } else {
    const Trace trace = task.emit_trace(inst);
    r.cot = render_cot(trace, spec.style, spec.variant);
    r.answer = trace.final_answer;
  }
  r.id = record_id(out.key, spec.style, spec.variant, r.template_id);
  return out;
}

// Speculative first attempts for every slot, computed in parallel.  The
// serialized commit pass below regenerates on collision, so the accepted
// content never depends on the worker count.
inline std::vector<std::optional<Candidate>> speculate(const CorpusSpec& spec, const Task& task,
                                                       std::uint64_t split, int range_idx,
                                                       long long slots, unsigned jobs) {
  std::vector<std::optional<Candidate>> out(static_cast<std::size_t>(slots));
  if (slots == 0) return out;
  const unsigned workers =
      std::max(1u, std::min(jobs, static_cast<unsigned>(std::min<long long>(slots, 256))));
  std::vector<std::thread> pool;
  std::atomic<long long> cursor{0};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (long long k = cursor.fetch_add(64); k < slots; k = cursor.fetch_add(64)) {
        const long long end = std::min(slots, k + 64);
        for (long long i = k; i < end; ++i) {
          out[static_cast<std::size_t>(i)] =
              make_candidate(spec, task, split, range_idx, static_cast<std::uint64_t>(i), 0);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace corpus_detail

inline void check_spec(const CorpusSpec& spec) {
  if (spec.tasks.empty()) throw std::invalid_argument("no tasks selected");
  if (spec.ratio[0] + spec.ratio[1] + spec.ratio[2] <= 0) {
    throw std::invalid_argument("ratio must have a positive component");
  }
  for (long long r : spec.ratio) {
    if (r < 0) throw std::invalid_argument("ratio components must be non-negative");
  }
  if (spec.train_size < 0 || spec.eval_size < 0) {
    throw std::invalid_argument("sizes must be positive");
  }
  if (spec.output_dir.empty()) throw std::invalid_argument("output_dir is required");
  std::set<std::string> seen;
  for (const std::string& id : spec.tasks) {
    if (find_task(id) == nullptr) throw std::invalid_argument("unknown task: " + id);
    if (!seen.insert(id).second) throw std::invalid_argument("task listed twice: " + id);
    if (is_baseline(spec.variant) && id != "large-number-addition") {
      throw std::invalid_argument("variant " + std::string(variant_name(spec.variant)) +
                                  " only applies to large-number-addition");
    }
  }
  for (const auto& [id, rb] : spec.bounds) {
    if (find_task(id) == nullptr) throw std::invalid_argument("bounds for unknown task: " + id);
    for (const LengthBounds& lb : {rb.s, rb.m, rb.l}) {
      if (lb.lo < 1 || lb.hi < lb.lo) {
        throw std::invalid_argument("bad length bounds for task: " + id);
      }
    }
  }
  for (const auto& [id, flag] : spec.hard) {
    (void)flag;
    if (find_task(id) == nullptr) throw std::invalid_argument("hard flag for unknown task: " + id);
  }
}

inline CorpusManifest generate_corpus(const CorpusSpec& spec, unsigned jobs = 0) {
  namespace fs = std::filesystem;
  check_spec(spec);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());

  std::error_code ec;
  fs::create_directories(spec.output_dir, ec);
  if (ec) throw CorpusError(CorpusErrorKind::IOFailure, spec.output_dir + ": " + ec.message());

  CorpusManifest manifest;
  manifest.spec = spec;

  for (const std::string& task_id : spec.tasks) {
    const Task& task = *find_task(task_id);
    std::set<std::string> used_keys;
    TaskCounts& counts = manifest.counts[task_id];

    // Eval first: every later train candidate that collides with an eval key
    // is rejected, which keeps the splits disjoint by construction.
    struct SplitPlan {
      std::uint64_t code;
      const char* name;
      long long size;
      SplitCounts* counts;
    };
    const SplitPlan plans[] = {
        {corpus_detail::kEvalSplit, "eval", effective_eval_size(spec, task), &counts.eval},
        {corpus_detail::kTrainSplit, "train", effective_train_size(spec, task), &counts.train},
    };

    std::map<std::string, std::vector<SampleRecord>> split_records;
    for (const SplitPlan& plan : plans) {
      const std::array<long long, 3> targets = apportion(plan.size, spec.ratio);
      std::vector<SampleRecord>& records = split_records[plan.name];
      for (int range_idx = 0; range_idx < 3; ++range_idx) {
        const long long slots = targets[range_idx];
        auto speculative =
            corpus_detail::speculate(spec, task, plan.code, range_idx, slots, jobs);
        for (long long slot = 0; slot < slots; ++slot) {
          std::optional<corpus_detail::Candidate> candidate =
              std::move(speculative[static_cast<std::size_t>(slot)]);
          bool accepted = false;
          for (std::uint64_t attempt = 0; attempt < corpus_detail::kMaxAttempts; ++attempt) {
            if (attempt > 0 || !candidate) {
              candidate = corpus_detail::make_candidate(spec, task, plan.code, range_idx,
                                                        static_cast<std::uint64_t>(slot), attempt);
            }
            if (!candidate) continue;  // reserved seed; draw again
            ++manifest.generated;
            if (used_keys.insert(candidate->key).second) {
              records.push_back(std::move(candidate->record));
              plan.counts->by_range[static_cast<std::size_t>(range_idx)] += 1;
              accepted = true;
              break;
            }
            ++manifest.dropped;
            candidate.reset();
          }
          if (!accepted) {
            throw CorpusError(CorpusErrorKind::ExhaustedSpace,
                              task_id + " " + plan.name + " range " +
                                  range_name(kAllRanges[range_idx]) +
                                  ": instance space exhausted by de-duplication");
          }
        }
      }
    }

    for (const char* split : {"train", "eval"}) {
      const fs::path path = fs::path(spec.output_dir) / (task_id + "." + split + ".jsonl");
      std::string blob;
      for (const SampleRecord& r : split_records[split]) {
        blob += r.to_json().dump();
        blob += '\n';
      }
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
      out.flush();
      if (!out) throw CorpusError(CorpusErrorKind::IOFailure, "cannot write " + path.string());
      manifest.files.push_back({path.filename().string(),
                                static_cast<long long>(split_records[split].size()),
                                sha256_hex(blob)});
    }
  }

  const fs::path manifest_path = fs::path(spec.output_dir) / "manifest.json";
  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  out << manifest.to_json().dump(2) << '\n';
  out.flush();
  if (!out) throw CorpusError(CorpusErrorKind::IOFailure, "cannot write " + manifest_path.string());
  return manifest;
}

// ---------------------------------------------------------------------------
// Loading, statistics, validation

inline std::vector<SampleRecord> load_jsonl(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CorpusError(CorpusErrorKind::IOFailure, "cannot read " + file.string());
  std::vector<SampleRecord> records;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(SampleRecord::from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw CorpusError(CorpusErrorKind::ParseFailure,
                        file.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

// The dedup key of an already-written record is recovered by re-sampling its
// instance from the stored seed; sampling is pure, so this is exact.  The
// spec matters only when it carries per-task bound overrides.
inline std::string record_key(const SampleRecord& r, const CorpusSpec& spec) {
  const Task* task = find_task(r.task);
  if (task == nullptr) {
    throw CorpusError(CorpusErrorKind::ParseFailure, "unknown task in record: " + r.task);
  }
  return dedup_key(r.task, task->sample(r.range, r.seed, bounds_for(spec, *task)));
}

// The CorpusSpec a directory's corpus was generated under: read back from its
// manifest when one is present, registry defaults otherwise.
inline CorpusSpec corpus_dir_spec(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / "manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    try {
      std::ifstream in(manifest_path, std::ios::binary);
      return CorpusManifest::from_json(nlohmann::json::parse(in)).spec;
    } catch (const std::exception&) {
      // fall through: a damaged manifest is reported by validate_corpus
    }
  }
  return CorpusSpec{};
}

struct CorpusStats {
  std::map<std::string, TaskCounts> counts;
  std::map<std::string, std::map<int, long long>> length_histogram;
  long long records = 0;
  long long duplicate_keys = 0;
  long long split_overlap = 0;
  std::vector<std::string> notes;  // first few diagnostics, human readable

  bool clean() const { return duplicate_keys == 0 && split_overlap == 0; }
};

// Which corpus files live in `dir`, as (task, split, path), in manifest order
// when a manifest exists and sorted-name order otherwise.
inline std::vector<std::tuple<std::string, std::string, std::filesystem::path>> corpus_files(
    const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw CorpusError(CorpusErrorKind::IOFailure, dir.string() + " is not a directory");
  }
  std::vector<std::tuple<std::string, std::string, fs::path>> out;
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".jsonl") names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  for (const std::string& name : names) {
    const std::size_t second_dot = name.rfind(".jsonl");
    const std::size_t first_dot = name.rfind('.', second_dot - 1);
    if (first_dot == std::string::npos) continue;
    const std::string split = name.substr(first_dot + 1, second_dot - first_dot - 1);
    if (split != "train" && split != "eval") continue;
    out.emplace_back(name.substr(0, first_dot), split, dir / name);
  }
  return out;
}

inline CorpusStats corpus_stats(const std::filesystem::path& dir) {
  CorpusStats stats;
  const CorpusSpec spec = corpus_dir_spec(dir);
  std::map<std::string, std::map<std::string, std::string>> first_owner;  // task -> key -> where
  for (const auto& [task_id, split, path] : corpus_files(dir)) {
    const std::vector<SampleRecord> records = load_jsonl(path);
    SplitCounts& sc =
        split == "train" ? stats.counts[task_id].train : stats.counts[task_id].eval;
    for (const SampleRecord& r : records) {
      ++stats.records;
      sc.by_range[static_cast<std::size_t>(r.range == RangeTag::S ? 0
                                           : r.range == RangeTag::M ? 1 : 2)] += 1;
      stats.length_histogram[task_id][r.length] += 1;
      const std::string key = record_key(r, spec);
      auto [it, fresh] = first_owner[task_id].emplace(key, split);
      if (!fresh) {
        if (it->second == split) {
          ++stats.duplicate_keys;
          if (stats.notes.size() < 10) {
            stats.notes.push_back("duplicate key in " + task_id + "." + split + ": " + key);
          }
        } else {
          ++stats.split_overlap;
          if (stats.notes.size() < 10) {
            stats.notes.push_back("train/eval overlap in " + task_id + ": " + key);
          }
        }
      }
    }
  }
  return stats;
}

struct ValidationReport {
  long long records = 0;
  long long mismatches = 0;        // stored bytes differ from regeneration
  long long trace_violations = 0;  // regenerated trace fails the well-formedness checks
  long long duplicate_keys = 0;
  long long split_overlap = 0;
  long long manifest_mismatches = 0;  // digests or counts disagree with manifest.json
  std::vector<std::string> notes;

  bool clean() const {
    return mismatches == 0 && trace_violations == 0 && duplicate_keys == 0 &&
           split_overlap == 0 && manifest_mismatches == 0;
  }
};

namespace corpus_detail {

// Rebuilds a record from (task, range, seed, style, variant, template_id) and
// reports any byte that disagrees with what was stored.
inline void validate_record(const SampleRecord& r, const CorpusSpec& spec,
                            ValidationReport& report, std::vector<std::string>& notes) {
  const Task* task = find_task(r.task);
  if (task == nullptr) {
    ++report.mismatches;
    notes.push_back("unknown task: " + r.task);
    return;
  }
  const TaskInstance inst = task->sample(r.range, r.seed, bounds_for(spec, *task));
  const std::string key = dedup_key(r.task, inst);
  SampleRecord fresh;
  fresh.id = record_id(key, r.style, r.variant, r.template_id);
  fresh.task = r.task;
  fresh.family = family_name(task->family());
  fresh.range = r.range;
  fresh.length = inst.length;
  fresh.seed = r.seed;
  fresh.style = r.style;
  fresh.variant = r.variant;
  fresh.template_id = r.template_id;
  fresh.query = render_query(*task, inst, static_cast<std::size_t>(r.template_id));
  if (is_baseline(r.variant)) {
    fresh.cot = render_baseline_cot(inst, r.variant);
    fresh.answer = task->solve(inst);
  } else {
    const Trace trace = task->emit_trace(inst);
    const std::vector<Violation> violations = validate_trace(trace, task->solve(inst));
    if (!violations.empty()) {
      ++report.trace_violations;
      notes.push_back(r.task + " seed " + std::to_string(r.seed) + ": " +
                      violation_name(violations.front().kind));
    }
    fresh.cot = render_cot(trace, r.style, r.variant);
    fresh.answer = trace.final_answer;
  }
  if (!(fresh == r)) {
    ++report.mismatches;
    notes.push_back(r.task + " id " + r.id + ": stored record differs from regeneration");
  }
}

}  // namespace corpus_detail

inline ValidationReport validate_corpus(const std::filesystem::path& dir, unsigned jobs = 0) {
  namespace fs = std::filesystem;
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  ValidationReport report;
  const CorpusSpec spec = corpus_dir_spec(dir);
  std::map<std::string, std::map<std::string, std::string>> first_owner;
  std::map<std::string, FileEntry> actual_files;

  for (const auto& [task_id, split, path] : corpus_files(dir)) {
    const std::vector<SampleRecord> records = load_jsonl(path);

    {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream blob;
      blob << in.rdbuf();
      actual_files[path.filename().string()] = {path.filename().string(),
                                                static_cast<long long>(records.size()),
                                                sha256_hex(blob.str())};
    }

    // Per-record regeneration is read-only and order-independent, so it runs
    // chunked across workers; diagnostics merge back in record order.
    std::vector<ValidationReport> parts(records.size());
    std::vector<std::vector<std::string>> part_notes(records.size());
    std::atomic<std::size_t> cursor{0};
    const unsigned workers = std::max(
        1u, std::min(jobs, static_cast<unsigned>(std::min<std::size_t>(records.size(), 256))));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = cursor.fetch_add(1); i < records.size();
             i = cursor.fetch_add(1)) {
          corpus_detail::validate_record(records[i], spec, parts[i], part_notes[i]);
        }
      });
    }
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < records.size(); ++i) {
      report.mismatches += parts[i].mismatches;
      report.trace_violations += parts[i].trace_violations;
      for (std::string& note : part_notes[i]) {
        if (report.notes.size() < 10) report.notes.push_back(std::move(note));
      }
    }

    for (const SampleRecord& r : records) {
      ++report.records;
      const std::string key = record_key(r, spec);
      auto [it, fresh] = first_owner[task_id].emplace(key, split);
      if (!fresh) {
        if (it->second == split) {
          ++report.duplicate_keys;
          if (report.notes.size() < 10) {
            report.notes.push_back("duplicate key in " + task_id + "." + split + ": " + key);
          }
        } else {
          ++report.split_overlap;
          if (report.notes.size() < 10) {
            report.notes.push_back("train/eval overlap in " + task_id + ": " + key);
          }
        }
      }
    }
  }

  const fs::path manifest_path = dir / "manifest.json";
  if (fs::exists(manifest_path)) {
    try {
      std::ifstream in(manifest_path, std::ios::binary);
      const CorpusManifest manifest = CorpusManifest::from_json(nlohmann::json::parse(in));
      for (const FileEntry& f : manifest.files) {
        auto it = actual_files.find(f.name);
        if (it == actual_files.end() || !(it->second == f)) {
          ++report.manifest_mismatches;
          if (report.notes.size() < 10) {
            report.notes.push_back("manifest entry disagrees with file: " + f.name);
          }
        }
      }
    } catch (const std::exception& e) {
      ++report.manifest_mismatches;
      if (report.notes.size() < 10) {
        report.notes.push_back(std::string("manifest unreadable: ") + e.what());
      }
    }
  }
  return report;
}

}  // namespace tracegen

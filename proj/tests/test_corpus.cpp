#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tracegen/corpus.hpp"
#include "tracegen/tasks.hpp"

using namespace tracegen;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("tracegen-test-" + std::to_string(Catch::rngSeed()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

CorpusSpec small_spec(const fs::path& dir) {
  CorpusSpec spec;
  spec.tasks = {"binary-search"};
  spec.train_size = 60;
  spec.eval_size = 12;
  spec.ratio = {8, 1, 1};
  spec.master_seed = 7;
  spec.output_dir = dir.string();
  return spec;
}

}  // namespace

TEST_CASE("apportionment splits totals by largest remainder within one unit") {
  CHECK(apportion(10000, {8, 1, 1}) == std::array<long long, 3>{8000, 1000, 1000});
  CHECK(apportion(10000, {1, 0, 0}) == std::array<long long, 3>{10000, 0, 0});
  CHECK(apportion(10000, {7, 2, 1}) == std::array<long long, 3>{7000, 2000, 1000});
  CHECK(apportion(10000, {5, 3, 2}) == std::array<long long, 3>{5000, 3000, 2000});
  CHECK(apportion(10000, {4, 3, 3}) == std::array<long long, 3>{4000, 3000, 3000});
  CHECK(apportion(10, {1, 1, 1}) == std::array<long long, 3>{4, 3, 3});
  CHECK(apportion(1, {1, 1, 1}) == std::array<long long, 3>{1, 0, 0});
  CHECK(apportion(0, {1, 1, 1}) == std::array<long long, 3>{0, 0, 0});
  // sweep: every range stays within one unit of its exact share
  for (long long total : {1, 7, 97, 500, 9999}) {
    for (const auto& ratio :
         std::vector<std::array<long long, 3>>{{1, 0, 0}, {8, 1, 1}, {7, 2, 1}, {5, 3, 2},
                                               {4, 3, 3}, {1, 2, 9}}) {
      const auto counts = apportion(total, ratio);
      const long long weight = ratio[0] + ratio[1] + ratio[2];
      CHECK(counts[0] + counts[1] + counts[2] == total);
      for (int i = 0; i < 3; ++i) {
        const double exact = static_cast<double>(total) * ratio[i] / weight;
        CHECK(std::abs(counts[i] - exact) <= 1.0);
      }
    }
  }
}

TEST_CASE("dedup keys see operands only, never phrasing or style") {
  const Task* search = find_task("binary-search");
  REQUIRE(search != nullptr);
  const TaskInstance inst = search->reference_instance();
  const std::string key = dedup_key("binary-search", inst);
  CHECK(key.starts_with("binary-search|"));
  CHECK(key == dedup_key("binary-search", inst));  // no hidden state

  // different operand order means a different instance for addition
  TaskInstance ab, ba;
  ab.task_id = ba.task_id = "large-number-addition";
  ab.params["a"] = "1";
  ab.params["b"] = "2";
  ba.params["a"] = "2";
  ba.params["b"] = "1";
  CHECK(dedup_key("large-number-addition", ab) != dedup_key("large-number-addition", ba));

  // record ids fold style, variant, and template in; the dedup key does not
  const std::string id_a = record_id(key, RenderStyle::Minimalist, RenderVariant::Full, 0);
  const std::string id_b = record_id(key, RenderStyle::UserFriendly, RenderVariant::Full, 0);
  const std::string id_c = record_id(key, RenderStyle::Minimalist, RenderVariant::Full, 1);
  CHECK(id_a.size() == 16);
  CHECK(id_a != id_b);
  CHECK(id_a != id_c);
}

TEST_CASE("sample records survive a JSON round trip byte for byte") {
  SampleRecord r;
  r.id = "0123456789abcdef";
  r.task = "binary-search";
  r.family = "divide-and-conquer";
  r.range = RangeTag::M;
  r.length = 21;
  r.seed = 18446744073709551615ULL;  // full 64-bit value must survive
  r.style = RenderStyle::UserFriendly;
  r.variant = RenderVariant::NoDataReview;
  r.template_id = 2;
  r.query = "Find $-5259$ in the list.";
  r.cot = "line one\nline two";
  r.answer = "1";
  const SampleRecord back = SampleRecord::from_json(nlohmann::json::parse(r.to_json().dump()));
  CHECK(back == r);

  auto mutated = r.to_json();
  mutated["extra"] = 1;
  CHECK_THROWS_AS(SampleRecord::from_json(mutated), std::invalid_argument);
  auto missing = r.to_json();
  missing.erase("cot");
  CHECK_THROWS_AS(SampleRecord::from_json(missing), std::invalid_argument);
}

TEST_CASE("generation is deterministic and ratio-faithful") {
  TempDir a, b;
  const CorpusManifest ma = generate_corpus(small_spec(a.path), 4);
  const CorpusManifest mb = generate_corpus(small_spec(b.path), 1);

  const TaskCounts& counts = ma.counts.at("binary-search");
  CHECK(counts.train.by_range == std::array<long long, 3>{48, 6, 6});
  CHECK(counts.eval.by_range == std::array<long long, 3>{10, 1, 1});

  // same spec, different worker counts and directories: identical bytes
  REQUIRE(ma.files.size() == 2);
  REQUIRE(mb.files.size() == 2);
  for (std::size_t i = 0; i < ma.files.size(); ++i) {
    CHECK(ma.files[i].name == mb.files[i].name);
    CHECK(ma.files[i].sha256 == mb.files[i].sha256);
    CHECK(slurp(a.path / ma.files[i].name) == slurp(b.path / mb.files[i].name));
  }

  // manifest counts match actual line counts
  for (const FileEntry& f : ma.files) {
    const std::string blob = slurp(a.path / f.name);
    CHECK(static_cast<long long>(std::count(blob.begin(), blob.end(), '\n')) == f.lines);
    CHECK(sha256_hex(blob) == f.sha256);
  }

  // manifest file round-trips
  const CorpusManifest parsed =
      CorpusManifest::from_json(nlohmann::json::parse(slurp(a.path / "manifest.json")));
  CHECK(parsed.counts.at("binary-search") == counts);
  CHECK(parsed.spec == ma.spec);
  CHECK(parsed.files == ma.files);
}

TEST_CASE("generated corpora hold the documented record invariants") {
  TempDir dir;
  CorpusSpec spec = small_spec(dir.path);
  spec.tasks = {"binary-search", "parity"};
  spec.train_size = 30;
  spec.eval_size = 9;
  spec.ratio = {1, 1, 1};
  generate_corpus(spec, 4);

  for (const std::string& task_id : spec.tasks) {
    const Task* task = find_task(task_id);
    std::set<std::string> train_keys, eval_keys;
    for (const char* split : {"train", "eval"}) {
      const auto records = load_jsonl(dir.path / (task_id + "." + split + ".jsonl"));
      CHECK(records.size() == (split == std::string("train") ? 30u : 9u));
      for (const SampleRecord& r : records) {
        CHECK(r.task == task_id);
        CHECK(r.family == family_name(task->family()));
        CHECK(r.seed != kReferenceSeed);
        const TaskInstance inst = task->sample(r.range, r.seed);
        CHECK(r.length == inst.length);
        CHECK(r.query == render_query(*task, inst, static_cast<std::size_t>(r.template_id)));
        const Trace trace = task->emit_trace(inst);
        CHECK(r.cot == render_cot(trace, r.style, r.variant));
        CHECK(r.answer == trace.final_answer);
        const std::string key = dedup_key(task_id, inst);
        CHECK(r.id == record_id(key, r.style, r.variant, r.template_id));
        (split == std::string("train") ? train_keys : eval_keys).insert(key);
      }
    }
    CHECK(train_keys.size() == 30u);
    CHECK(eval_keys.size() == 9u);
    for (const std::string& key : eval_keys) CHECK(!train_keys.contains(key));
  }
}

TEST_CASE("specs that cannot be honored are rejected up front") {
  TempDir dir;
  CorpusSpec spec = small_spec(dir.path);

  spec.tasks = {};
  CHECK_THROWS_AS(generate_corpus(spec), std::invalid_argument);
  spec.tasks = {"no-such-task"};
  CHECK_THROWS_AS(generate_corpus(spec), std::invalid_argument);
  spec.tasks = {"binary-search", "binary-search"};
  CHECK_THROWS_AS(generate_corpus(spec), std::invalid_argument);
  spec = small_spec(dir.path);
  spec.ratio = {0, 0, 0};
  CHECK_THROWS_AS(generate_corpus(spec), std::invalid_argument);
  spec = small_spec(dir.path);
  spec.variant = RenderVariant::IndexHint;
  CHECK_THROWS_AS(generate_corpus(spec), std::invalid_argument);
  spec = small_spec(dir.path);
  spec.output_dir.clear();
  CHECK_THROWS_AS(generate_corpus(spec), std::invalid_argument);
}

TEST_CASE("too small an operand space exhausts into a distinct error") {
  TempDir dir;
  CorpusSpec spec;
  // parity over bit strings of length one to three: 14 distinct operands
  spec.tasks = {"parity"};
  spec.train_size = 100;
  spec.eval_size = 10;
  spec.ratio = {1, 0, 0};
  spec.master_seed = 3;
  spec.output_dir = dir.path.string();
  spec.bounds["parity"] = RangeBounds{{1, 3}, {16, 35}, {36, 60}};
  try {
    generate_corpus(spec, 4);
    FAIL("expected exhaustion");
  } catch (const CorpusError& e) {
    CHECK(e.kind() == CorpusErrorKind::ExhaustedSpace);
  }
}

TEST_CASE("bound overrides steer sampling and survive the manifest round trip") {
  TempDir dir;
  CorpusSpec spec;
  spec.tasks = {"parity"};
  spec.train_size = 8;
  spec.eval_size = 4;
  spec.ratio = {1, 1, 1};
  spec.master_seed = 5;
  spec.output_dir = dir.path.string();
  spec.bounds["parity"] = RangeBounds{{2, 3}, {4, 5}, {6, 7}};
  spec.hard["parity"] = true;
  generate_corpus(spec, 2);

  for (const char* split : {"train", "eval"}) {
    for (const SampleRecord& r : load_jsonl(dir.path / (std::string("parity.") + split + ".jsonl"))) {
      CHECK(spec.bounds["parity"].at(r.range).contains(r.length));
    }
  }
  // validation re-samples with the overridden bounds read back from the manifest
  const ValidationReport report = validate_corpus(dir.path, 2);
  CHECK(report.clean());
  CHECK(corpus_dir_spec(dir.path) == spec);
}

TEST_CASE("hard task flags shrink the default corpus sizes") {
  const Task* parity = find_task("parity");
  const Task* subset = find_task("subset-sum");
  CorpusSpec spec;
  CHECK(effective_train_size(spec, *parity) == 100000);
  CHECK(effective_eval_size(spec, *parity) == 500);
  CHECK(effective_train_size(spec, *subset) == 50000);
  CHECK(effective_eval_size(spec, *subset) == 200);
  spec.hard["parity"] = true;
  spec.hard["subset-sum"] = false;
  CHECK(effective_train_size(spec, *parity) == 50000);
  CHECK(effective_eval_size(spec, *parity) == 200);
  CHECK(effective_train_size(spec, *subset) == 100000);
  CHECK(effective_eval_size(spec, *subset) == 500);
  spec.train_size = 77;
  spec.eval_size = 9;
  CHECK(effective_train_size(spec, *parity) == 77);
  CHECK(effective_eval_size(spec, *subset) == 9);
}

TEST_CASE("baseline corpora carry the transformed equations for addition") {
  TempDir dir;
  CorpusSpec spec;
  spec.tasks = {"large-number-addition"};
  spec.train_size = 20;
  spec.eval_size = 5;
  spec.ratio = {1, 1, 1};
  spec.variant = RenderVariant::IndexHint;
  spec.master_seed = 11;
  spec.output_dir = dir.path.string();
  generate_corpus(spec, 2);
  const Task* addition = find_task("large-number-addition");
  for (const SampleRecord& r :
       load_jsonl(dir.path / "large-number-addition.train.jsonl")) {
    CHECK(r.cot.starts_with("Compute digit by digit:\n"));
    const TaskInstance inst = addition->sample(r.range, r.seed);
    CHECK(r.cot.find(apply_index_hint(inst)) != std::string::npos);
    CHECK(r.answer == addition->solve(inst));
  }
}

TEST_CASE("statistics and validation pass a pristine corpus") {
  TempDir dir;
  CorpusSpec spec = small_spec(dir.path);
  generate_corpus(spec, 4);

  const CorpusStats stats = corpus_stats(dir.path);
  CHECK(stats.clean());
  CHECK(stats.records == 72);
  CHECK(stats.counts.at("binary-search").train.total() == 60);
  CHECK(stats.counts.at("binary-search").eval.total() == 12);
  long long histogram_mass = 0;
  for (const auto& [len, n] : stats.length_histogram.at("binary-search")) {
    CHECK(len > 0);
    histogram_mass += n;
  }
  CHECK(histogram_mass == 72);

  const ValidationReport report = validate_corpus(dir.path, 4);
  CHECK(report.clean());
  CHECK(report.records == 72);
  CHECK(report.mismatches == 0);
}

TEST_CASE("planted defects are counted exactly") {
  TempDir dir;
  CorpusSpec spec = small_spec(dir.path);
  spec.train_size = 20;
  spec.eval_size = 5;
  generate_corpus(spec, 4);

  const fs::path train = dir.path / "binary-search.train.jsonl";
  const fs::path eval = dir.path / "binary-search.eval.jsonl";

  SECTION("one duplicated train line means one duplicate key") {
    std::string blob = slurp(train);
    const std::string first_line = blob.substr(0, blob.find('\n') + 1);
    std::ofstream(train, std::ios::binary | std::ios::app) << first_line;
    const CorpusStats stats = corpus_stats(dir.path);
    CHECK(stats.duplicate_keys == 1);
    CHECK(stats.split_overlap == 0);
  }

  SECTION("one eval line copied into train means one overlap") {
    std::string blob = slurp(eval);
    const std::string first_line = blob.substr(0, blob.find('\n') + 1);
    std::ofstream(train, std::ios::binary | std::ios::app) << first_line;
    const CorpusStats stats = corpus_stats(dir.path);
    CHECK(stats.duplicate_keys == 0);
    CHECK(stats.split_overlap == 1);
    const ValidationReport report = validate_corpus(dir.path, 2);
    CHECK(report.split_overlap == 1);
    CHECK(report.manifest_mismatches > 0);  // line count no longer matches
  }

  SECTION("a corrupted answer is caught by regeneration") {
    std::string blob = slurp(train);
    const std::size_t at = blob.find("\"answer\":\"");
    REQUIRE(at != std::string::npos);
    blob[at + 10] = blob[at + 10] == '9' ? '8' : '9';
    std::ofstream(train, std::ios::binary | std::ios::trunc) << blob;
    const ValidationReport report = validate_corpus(dir.path, 2);
    CHECK(report.mismatches == 1);
    CHECK(report.manifest_mismatches > 0);  // digest changed
  }

  SECTION("a malformed line reports its number") {
    std::ofstream(train, std::ios::binary | std::ios::app) << "{not json\n";
    try {
      corpus_stats(dir.path);
      FAIL("expected parse failure");
    } catch (const CorpusError& e) {
      CHECK(e.kind() == CorpusErrorKind::ParseFailure);
      CHECK(std::string(e.what()).find(":21:") != std::string::npos);
    }
  }
}

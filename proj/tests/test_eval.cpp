#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "tracegen/corpus.hpp"
#include "tracegen/eval.hpp"
#include "tracegen/render.hpp"
#include "tracegen/tasks.hpp"

using namespace tracegen;
namespace fs = std::filesystem;

namespace {

SampleRecord stub_record(const std::string& id, const std::string& task, RangeTag range,
                         const std::string& answer) {
  SampleRecord r;
  r.id = id;
  r.task = task;
  r.range = range;
  r.answer = answer;
  return r;
}

}  // namespace

TEST_CASE("answer extraction prefers the last boxed value") {
  CHECK(extract_answer("... Final Answer: Index $\\boxed{1}$.") == "1");
  CHECK(extract_answer("\\boxed{2} and later \\boxed{3}") == "3");
  CHECK(extract_answer("nested \\boxed{\\frac{1}{2}} stays balanced") == "\\frac{1}{2}");
  CHECK(extract_answer("\\boxed{ -42 }") == "-42");
}

TEST_CASE("answer extraction falls back to the final line's last literal") {
  CHECK(extract_answer("the answer is 42") == "42");
  CHECK(extract_answer("steps above\n\nresult: [3, 9, 10]\n\n") == "[3, 9, 10]");
  CHECK(extract_answer("first 7 then 9.") == "9");
  CHECK(extract_answer("position (-3, 2) reached") == "(-3, 2)");
  CHECK(extract_answer("maybe 5 on an early line\nbut text only here") == std::nullopt);
  CHECK(extract_answer("") == std::nullopt);
  CHECK(extract_answer("no digits at all") == std::nullopt);
}

TEST_CASE("canonicalization normalizes padding without changing values") {
  CHECK(canonical_answer("191.340") == canonical_answer("191.34"));
  CHECK(canonical_answer("[1,2,3]") == canonical_answer("[1, 2, 3]"));
  CHECK(canonical_answer("007") == canonical_answer("7"));
  CHECK(canonical_answer("+5") == canonical_answer("5"));
  CHECK(canonical_answer("-0") == canonical_answer("0"));
  CHECK(canonical_answer("-0.50") == canonical_answer("-.5"));
  CHECK(canonical_answer("$1$") == canonical_answer("1"));
  CHECK(canonical_answer("YES") == canonical_answer("yes"));
  CHECK(canonical_answer("(-3, 2)") == canonical_answer("[-3, 2]"));
  CHECK(canonical_answer(" even ") == canonical_answer("even"));

  CHECK(canonical_answer("190.34") != canonical_answer("191.34"));
  CHECK(canonical_answer("[1, 2]") != canonical_answer("[2, 1]"));
  CHECK(canonical_answer("12") != canonical_answer("120"));
  CHECK(canonical_answer("yes") != canonical_answer("no"));
}

TEST_CASE("matching accepts formatting slack and nothing else") {
  CHECK(match_answer("191.340", "191.34", "large-number-addition"));
  CHECK(match_answer("[1,2,3]", "[1, 2, 3]", "bubble-sort"));
  CHECK_FALSE(match_answer("190.34", "191.34", "large-number-addition"));
  CHECK(match_answer("Odd", "odd", "parity"));
  CHECK_FALSE(match_answer("even", "odd", "parity"));
}

TEST_CASE("scoring partitions by range and keeps missing responses in the denominator") {
  std::vector<SampleRecord> records;
  std::vector<ModelResponse> responses;
  // 100 records: 40 S, 40 M, 20 L; plant exactly 73 correct answers
  for (int i = 0; i < 100; ++i) {
    const RangeTag range = i < 40 ? RangeTag::S : i < 80 ? RangeTag::M : RangeTag::L;
    records.push_back(stub_record("id" + std::to_string(i), "stub-task", range,
                                  std::to_string(i)));
    if (i < 73) {
      responses.push_back({"id" + std::to_string(i),
                           "thinking...\nFinal Answer: $\\boxed{" + std::to_string(i) + "}$."});
    } else if (i < 90) {
      responses.push_back({"id" + std::to_string(i), "Final Answer: $\\boxed{wrong}$."});
    }
    // ids 90..99 get no response at all
  }
  const EvalResult result = score(responses, records);
  CHECK(result.overall.correct == 73);
  CHECK(result.overall.total == 100);
  CHECK(result.overall.value() == 0.73);
  CHECK(result.by_range[0] == Fraction{40, 40});
  CHECK(result.by_range[1] == Fraction{33, 40});
  CHECK(result.by_range[2] == Fraction{0, 20});
  CHECK(result.overall.correct ==
        result.by_range[0].correct + result.by_range[1].correct + result.by_range[2].correct);
  CHECK(result.verdicts.size() == 100);
  CHECK(result.verdicts[95].extracted == std::nullopt);
  CHECK_FALSE(result.verdicts[95].correct);

  const std::string table = render_report(result);
  CHECK(table.find("stub-task") != std::string::npos);
  CHECK(table.find("overall") != std::string::npos);
  CHECK(table.find("0.7300") != std::string::npos);
  const std::string csv = render_report_csv(result);
  CHECK(csv.find("task,range,n,correct,accuracy\n") == 0);
  CHECK(csv.find("stub-task,S,40,40,1.0000") != std::string::npos);
  CHECK(csv.find("stub-task,M,40,33,0.8250") != std::string::npos);
  CHECK(csv.find("stub-task,L,20,0,0.0000") != std::string::npos);
}

TEST_CASE("unknown ids and duplicate responses are hard errors") {
  std::vector<SampleRecord> records = {stub_record("a", "t", RangeTag::S, "1")};
  try {
    score({{"ghost", "x"}}, records);
    FAIL("expected unknown-id error");
  } catch (const EvalError& e) {
    CHECK(e.kind() == EvalErrorKind::UnknownSampleId);
  }
  try {
    score({{"a", "x"}, {"a", "y"}}, records);
    FAIL("expected duplicate error");
  } catch (const EvalError& e) {
    CHECK(e.kind() == EvalErrorKind::DuplicateResponse);
  }
}

TEST_CASE("gold chains fed back as responses score a clean one") {
  struct TempDir {
    fs::path path;
    TempDir() {
      path = fs::temp_directory_path() / "tracegen-eval-gold";
      fs::remove_all(path);
      fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
  } dir;

  CorpusSpec spec;
  spec.tasks = {"binary-search", "parity", "large-number-addition"};
  spec.train_size = 6;
  spec.eval_size = 12;
  spec.ratio = {1, 1, 1};
  spec.style = RenderStyle::UserFriendly;
  spec.master_seed = 99;
  spec.output_dir = dir.path.string();
  generate_corpus(spec, 2);

  std::vector<SampleRecord> records;
  std::vector<ModelResponse> responses;
  for (const std::string& task : spec.tasks) {
    for (const SampleRecord& r : load_jsonl(dir.path / (task + ".eval.jsonl"))) {
      responses.push_back({r.id, r.cot});
      records.push_back(r);
    }
  }
  const EvalResult result = score(responses, records);
  CHECK(result.overall == Fraction{36, 36});
  for (int i = 0; i < 3; ++i) CHECK(result.by_range[i] == Fraction{12, 12});
  for (const auto& [task, cells] : result.by_task) {
    (void)task;
    for (const Fraction& f : cells) CHECK(f.correct == f.total);
  }
}

TEST_CASE("response files parse as id and text lines") {
  const fs::path file = fs::temp_directory_path() / "tracegen-responses.jsonl";
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << R"({"sample_id":"a","response_text":"\\boxed{1}"})" << "\n";
    out << "\n";
    out << R"({"sample_id":"b","response_text":"two"})" << "\n";
  }
  const std::vector<ModelResponse> responses = load_responses(file);
  REQUIRE(responses.size() == 2);
  CHECK(responses[0] == ModelResponse{"a", "\\boxed{1}"});
  CHECK(responses[1] == ModelResponse{"b", "two"});

  {
    std::ofstream out(file, std::ios::binary | std::ios::app);
    out << "{broken\n";
  }
  try {
    load_responses(file);
    FAIL("expected parse failure");
  } catch (const CorpusError& e) {
    CHECK(e.kind() == CorpusErrorKind::ParseFailure);
    CHECK(std::string(e.what()).find(":4:") != std::string::npos);
  }
  fs::remove(file);
}

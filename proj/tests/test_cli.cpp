// Drives the installed command-line binary end to end and checks its output
// and exit codes.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "tracegen/corpus.hpp"

using namespace tracegen;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path capture =
      fs::temp_directory_path() / ("tracegen-cli-out-" + std::to_string(counter++) + ".txt");
  const std::string command =
      std::string(CLI_PATH) + " " + args + " >" + capture.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(capture, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  result.output = out.str();
  fs::remove(capture);
  return result;
}

std::string chomp(std::string text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return chomp(out.str());
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("tracegen-cli-" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("the task listing covers the whole registry") {
  const RunResult r = run_cli("tasks");
  CHECK(r.code == 0);
  CHECK(r.output.find("binary-search") != std::string::npos);
  CHECK(r.output.find("divide-and-conquer") != std::string::npos);
  CHECK(r.output.find("large-number-addition") != std::string::npos);
  CHECK(r.output.find("simulation") != std::string::npos);
  int lines = 0;
  for (char c : r.output) lines += c == '\n';
  CHECK(lines == 19);  // header plus eighteen tasks
}

TEST_CASE("generating twice prints identical digests") {
  TempDir a("gen-a"), b("gen-b");
  const std::string flags =
      "generate --task binary-search --train-size 24 --eval-size 6 --ratio 8:1:1 --seed 7 -o ";
  const RunResult ra = run_cli(flags + a.path.string());
  const RunResult rb = run_cli(flags + b.path.string() + " --jobs 1");
  CHECK(ra.code == 0);
  CHECK(rb.code == 0);
  const auto digests = [](const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const std::size_t at = line.find("sha256=");
      if (at != std::string::npos) out.push_back(line.substr(at));
    }
    return out;
  };
  const auto da = digests(ra.output);
  CHECK(da.size() == 2);
  CHECK(da == digests(rb.output));
}

TEST_CASE("spot renders match the shipped reference texts") {
  const RunResult minimalist = run_cli("render --task binary-search --seed 0");
  CHECK(minimalist.code == 0);
  const std::size_t cot_at = minimalist.output.find("=== cot ===\n");
  const std::size_t answer_at = minimalist.output.find("\n=== answer ===\n");
  REQUIRE(cot_at != std::string::npos);
  REQUIRE(answer_at != std::string::npos);
  const std::string cot =
      minimalist.output.substr(cot_at + 12, answer_at - cot_at - 12);
  CHECK(chomp(cot) == read_golden("binary_search_minimalist_full.txt"));
  CHECK(minimalist.output.ends_with("=== answer ===\n1\n"));

  const RunResult friendly =
      run_cli("render --task binary-search --seed 0 --style user-friendly");
  CHECK(friendly.code == 0);
  CHECK(friendly.output.find(read_golden("binary_search_user_friendly_full.txt")) !=
        std::string::npos);

  const RunResult bare =
      run_cli("render --task binary-search --seed 0 --variant no-data-review");
  CHECK(bare.code == 0);
  CHECK(bare.output.find(read_golden("binary_search_minimalist_no_data_review.txt")) !=
        std::string::npos);
  CHECK(bare.output.find("<Data Review>") == std::string::npos);
}

TEST_CASE("usage problems exit with the usage code") {
  CHECK(run_cli("render --task no-such-task").code == 2);
  CHECK(run_cli("generate --variant index-hint --task bubble-sort -o /tmp/never").code == 2);
  CHECK(run_cli("generate --ratio 0:0:0 --task parity -o /tmp/never").code == 2);
  CHECK(run_cli("generate --ratio banana --task parity -o /tmp/never").code == 2);
  CHECK(run_cli("render --task binary-search --style cursive").code == 2);
  CHECK(run_cli("no-such-subcommand").code == 2);
  CHECK(run_cli("render").code == 2);  // --task is required
  CHECK(run_cli("--version").code == 0);
}

TEST_CASE("config problems exit with the config code") {
  TempDir dir("config");
  const fs::path bad = dir.path / "bad.json";
  std::ofstream(bad) << R"({"task": ["parity"]})";  // typo for "tasks"
  CHECK(run_cli("generate --config " + bad.string() + " -o " + dir.path.string()).code == 3);
  CHECK(run_cli("generate --config " + (dir.path / "absent.json").string() + " -o " +
                dir.path.string())
            .code == 3);
}

TEST_CASE("an exhausted instance space exits with its own code") {
  TempDir dir("exhaust");
  const fs::path config = dir.path / "config.json";
  std::ofstream(config) << R"({
    "tasks": ["parity"],
    "train_size": 100,
    "eval_size": 10,
    "task_overrides": {"parity": {"bounds": {"S": [1, 3]}}}
  })";
  const RunResult r = run_cli("generate --config " + config.string() + " -o " +
                              (dir.path / "out").string());
  CHECK(r.code == 5);
  CHECK(r.output.find("exhausted") != std::string::npos);
}

TEST_CASE("validation and statistics flag planted defects") {
  TempDir dir("validate");
  const std::string base = dir.path.string();
  REQUIRE(run_cli("generate --task parity --train-size 12 --eval-size 4 --ratio 1:1:1 "
                  "--seed 11 -o " +
                  base)
              .code == 0);
  CHECK(run_cli("validate " + base).code == 0);
  CHECK(run_cli("stats " + base).code == 0);

  // plant a train/eval overlap
  std::string eval_line;
  {
    std::ifstream in(dir.path / "parity.eval.jsonl", std::ios::binary);
    std::getline(in, eval_line);
  }
  std::ofstream(dir.path / "parity.train.jsonl", std::ios::binary | std::ios::app)
      << eval_line << "\n";
  const RunResult validate = run_cli("validate " + base);
  CHECK(validate.code == 6);
  CHECK(validate.output.find("overlap=1") != std::string::npos);
  CHECK(run_cli("stats " + base).code == 6);

  // now corrupt a line outright
  std::ofstream(dir.path / "parity.train.jsonl", std::ios::binary | std::ios::app)
      << "{broken\n";
  CHECK(run_cli("stats " + base).code == 4);
  CHECK(run_cli("validate /no/such/directory").code == 4);
}

TEST_CASE("scoring gold chains through the binary reports a perfect table") {
  TempDir dir("evaluate");
  const std::string base = dir.path.string();
  REQUIRE(run_cli("generate --task parity --task gcd --train-size 6 --eval-size 6 "
                  "--ratio 1:1:1 --seed 13 -o " +
                  base)
              .code == 0);
  const fs::path responses = dir.path / "responses.jsonl";
  {
    std::ofstream out(responses, std::ios::binary);
    for (const std::string& task : {std::string("parity"), std::string("gcd")}) {
      for (const SampleRecord& r : load_jsonl(dir.path / (task + ".eval.jsonl"))) {
        nlohmann::ordered_json j;
        j["sample_id"] = r.id;
        j["response_text"] = r.cot;
        out << j.dump() << "\n";
      }
    }
  }
  const fs::path csv = dir.path / "report.csv";
  const RunResult r =
      run_cli("evaluate " + base + " --responses " + responses.string() + " --csv " +
              csv.string());
  CHECK(r.code == 0);
  CHECK(r.output.find("overall") != std::string::npos);
  CHECK(r.output.find("0.") == std::string::npos);  // nothing below 1.0 anywhere
  CHECK(r.output.find("1.0000") != std::string::npos);
  std::ifstream csv_in(csv, std::ios::binary);
  std::ostringstream csv_text;
  csv_text << csv_in.rdbuf();
  CHECK(csv_text.str().find("task,range,n,correct,accuracy") == 0);
  CHECK(csv_text.str().find("parity,S,2,2,1.0000") != std::string::npos);

  // one response pointing at a ghost id is an input error
  std::ofstream(responses, std::ios::binary | std::ios::app)
      << R"({"sample_id":"feedfeedfeedfeed","response_text":"x"})" << "\n";
  CHECK(run_cli("evaluate " + base + " --responses " + responses.string() + " --csv " +
                csv.string())
            .code == 7);
  CHECK(run_cli("evaluate " + base + " --responses " + (dir.path / "absent.jsonl").string())
            .code == 4);
}

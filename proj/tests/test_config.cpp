#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "tracegen/config.hpp"
#include "tracegen/tasks.hpp"

using namespace tracegen;
using nlohmann::json;

TEST_CASE("an empty config selects every task with registry defaults") {
  const CorpusSpec spec = parse_config(json::object());
  CHECK(spec.tasks.size() == all_tasks().size());
  CHECK(spec.train_size == 0);
  CHECK(spec.eval_size == 0);
  CHECK(spec.ratio == std::array<long long, 3>{1, 0, 0});
  CHECK(spec.style == RenderStyle::Minimalist);
  CHECK(spec.variant == RenderVariant::Full);
  CHECK(spec.master_seed == 0);
  CHECK(spec.bounds.empty());
  CHECK(spec.hard.empty());
}

TEST_CASE("a full config maps onto every spec field") {
  const json j = json::parse(R"({
    "tasks": ["binary-search", "parity"],
    "train_size": 1000,
    "eval_size": 50,
    "ratio": [7, 2, 1],
    "style": "user-friendly",
    "variant": "no-data-review",
    "master_seed": "18446744073709551615",
    "output_dir": "out",
    "task_overrides": {
      "parity": {"hard": true, "bounds": {"S": [2, 4], "L": [50, 80]}}
    }
  })");
  const CorpusSpec spec = parse_config(j);
  CHECK(spec.tasks == std::vector<std::string>{"binary-search", "parity"});
  CHECK(spec.train_size == 1000);
  CHECK(spec.eval_size == 50);
  CHECK(spec.ratio == std::array<long long, 3>{7, 2, 1});
  CHECK(spec.style == RenderStyle::UserFriendly);
  CHECK(spec.variant == RenderVariant::NoDataReview);
  CHECK(spec.master_seed == 18446744073709551615ULL);
  CHECK(spec.output_dir == "out");
  CHECK(spec.hard.at("parity") == true);
  const RangeBounds& bounds = spec.bounds.at("parity");
  CHECK(bounds.s == LengthBounds{2, 4});
  CHECK(bounds.m == find_task("parity")->default_bounds().m);  // untouched range keeps its default
  CHECK(bounds.l == LengthBounds{50, 80});
}

TEST_CASE("numeric seeds parse directly") {
  CHECK(parse_config(json::parse(R"({"master_seed": 7})")).master_seed == 7);
}

TEST_CASE("misshapen configs are rejected with the offending key named") {
  const auto rejects = [](const char* text, const char* needle) {
    try {
      parse_config(json::parse(text));
      FAIL(text);
    } catch (const ConfigError& e) {
      INFO(text);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  rejects(R"({"task": ["parity"]})", "task");                       // top-level typo
  rejects(R"({"tasks": ["no-such"]})", "no-such");                  // unknown task
  rejects(R"({"train_size": 0})", "train_size");                    // non-positive
  rejects(R"({"train_size": -5})", "train_size");
  rejects(R"({"ratio": [1, 2]})", "ratio");                         // wrong arity
  rejects(R"({"ratio": [0, 0, 0]})", "ratio");                      // all zero
  rejects(R"({"ratio": [1, -1, 0]})", "ratio");                     // negative
  rejects(R"({"style": "fancy"})", "fancy");                        // unknown style
  rejects(R"({"variant": "super"})", "super");                      // unknown variant
  rejects(R"({"master_seed": "ten"})", "master_seed");              // non-numeric string
  rejects(R"({"master_seed": 1.5})", "master_seed");                // fractional
  rejects(R"({"task_overrides": {"no-such": {}}})", "no-such");     // unknown override target
  rejects(R"({"task_overrides": {"parity": {"speed": 1}}})", "speed");
  rejects(R"({"task_overrides": {"parity": {"bounds": {"X": [1, 2]}}}})", "X");
  rejects(R"({"task_overrides": {"parity": {"bounds": {"S": [4, 2]}}}})", "lo <= hi");
  rejects(R"({"task_overrides": {"parity": {"bounds": {"S": [1]}}}})", "pair");
  rejects(R"({"task_overrides": {"parity": {"hard": "yes"}}})", "hard");
  rejects(R"([1, 2])", "object");                                   // not an object at all
}

TEST_CASE("config files load from disk and report read failures") {
  namespace fs = std::filesystem;
  const fs::path file = fs::temp_directory_path() / "tracegen-config-test.json";
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << R"({"tasks": ["gcd"], "master_seed": 3})";
  }
  const CorpusSpec spec = load_config(file);
  CHECK(spec.tasks == std::vector<std::string>{"gcd"});
  CHECK(spec.master_seed == 3);
  fs::remove(file);

  CHECK_THROWS_AS(load_config(file), ConfigError);  // gone now
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << "{not json";
  }
  CHECK_THROWS_AS(load_config(file), ConfigError);
  fs::remove(file);
}

#pragma once

// JSON run configuration -> CorpusSpec.  Strict by design: unknown keys and
// unknown task names are rejected so a typo cannot silently fall back to a
// default.  Command-line flags override config values, which override the
// registry defaults; the merge itself happens in the command-line tool.

#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tracegen/corpus.hpp"
#include "tracegen/tasks.hpp"

namespace tracegen {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& detail)
      : std::runtime_error("config: " + detail) {}
};

namespace config_detail {

inline void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.contains(key)) throw ConfigError("unknown key \"" + key + "\" in " + where);
  }
}

inline LengthBounds parse_length_bounds(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j.at(0).is_number_integer() ||
      !j.at(1).is_number_integer()) {
    throw ConfigError(where + " must be a [lo, hi] pair");
  }
  const LengthBounds lb{j.at(0).get<int>(), j.at(1).get<int>()};
  if (lb.lo < 1 || lb.hi < lb.lo) throw ConfigError(where + " must satisfy 1 <= lo <= hi");
  return lb;
}

}  // namespace config_detail

inline CorpusSpec parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("document must be an object");
  config_detail::require_keys(j,
                              {"tasks", "train_size", "eval_size", "ratio", "style", "variant",
                               "master_seed", "output_dir", "task_overrides"},
                              "the top level");

  CorpusSpec spec;
  if (j.contains("tasks")) {
    if (!j.at("tasks").is_array()) throw ConfigError("\"tasks\" must be an array");
    for (const auto& t : j.at("tasks")) {
      if (!t.is_string()) throw ConfigError("\"tasks\" entries must be strings");
      spec.tasks.push_back(t.get<std::string>());
    }
  } else {
    for (const auto& task : all_tasks()) spec.tasks.push_back(task->id());
  }
  for (const std::string& id : spec.tasks) {
    if (find_task(id) == nullptr) throw ConfigError("unknown task \"" + id + "\"");
  }

  const auto read_size = [&](const char* key, long long& into) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer() || j.at(key).get<long long>() <= 0) {
      throw ConfigError(std::string("\"") + key + "\" must be a positive integer");
    }
    into = j.at(key).get<long long>();
  };
  read_size("train_size", spec.train_size);
  read_size("eval_size", spec.eval_size);

  if (j.contains("ratio")) {
    const auto& r = j.at("ratio");
    if (!r.is_array() || r.size() != 3) throw ConfigError("\"ratio\" must have three components");
    for (int i = 0; i < 3; ++i) {
      if (!r.at(i).is_number_integer() || r.at(i).get<long long>() < 0) {
        throw ConfigError("\"ratio\" components must be non-negative integers");
      }
      spec.ratio[static_cast<std::size_t>(i)] = r.at(i).get<long long>();
    }
    if (spec.ratio[0] + spec.ratio[1] + spec.ratio[2] == 0) {
      throw ConfigError("\"ratio\" must have a positive component");
    }
  }

  try {
    if (j.contains("style")) spec.style = parse_style(j.at("style").get<std::string>());
    if (j.contains("variant")) spec.variant = parse_variant(j.at("variant").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (j.contains("master_seed")) {
    const auto& seed = j.at("master_seed");
    if (seed.is_number_unsigned()) {
      spec.master_seed = seed.get<std::uint64_t>();
    } else if (seed.is_string()) {
      try {
        spec.master_seed = std::stoull(seed.get<std::string>());
      } catch (const std::exception&) {
        throw ConfigError("\"master_seed\" string must be a base-10 unsigned integer");
      }
    } else {
      throw ConfigError("\"master_seed\" must be an unsigned integer or decimal string");
    }
  }

  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) throw ConfigError("\"output_dir\" must be a string");
    spec.output_dir = j.at("output_dir").get<std::string>();
  }

  if (j.contains("task_overrides")) {
    const auto& overrides = j.at("task_overrides");
    if (!overrides.is_object()) throw ConfigError("\"task_overrides\" must be an object");
    for (const auto& [task_id, body] : overrides.items()) {
      const Task* task = find_task(task_id);
      if (task == nullptr) throw ConfigError("override for unknown task \"" + task_id + "\"");
      config_detail::require_keys(body, {"hard", "bounds"},
                                  "task_overrides." + task_id);
      if (body.contains("hard")) {
        if (!body.at("hard").is_boolean()) {
          throw ConfigError("task_overrides." + task_id + ".hard must be a boolean");
        }
        spec.hard[task_id] = body.at("hard").get<bool>();
      }
      if (body.contains("bounds")) {
        const auto& bj = body.at("bounds");
        config_detail::require_keys(bj, {"S", "M", "L"},
                                    "task_overrides." + task_id + ".bounds");
        RangeBounds bounds = task->default_bounds();
        const std::string where = "task_overrides." + task_id + ".bounds";
        if (bj.contains("S")) bounds.s = config_detail::parse_length_bounds(bj.at("S"), where + ".S");
        if (bj.contains("M")) bounds.m = config_detail::parse_length_bounds(bj.at("M"), where + ".M");
        if (bj.contains("L")) bounds.l = config_detail::parse_length_bounds(bj.at("L"), where + ".L");
        spec.bounds[task_id] = bounds;
      }
    }
  }
  return spec;
}

inline CorpusSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace tracegen

#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "tracegen/task.hpp"
#include "tracegen/tasks/any_substring.hpp"
#include "tracegen/tasks/binary_search.hpp"
#include "tracegen/tasks/bubble_sort.hpp"
#include "tracegen/tasks/coin_change.hpp"
#include "tracegen/tasks/compare_numbers.hpp"
#include "tracegen/tasks/diophantine_equation.hpp"
#include "tracegen/tasks/gcd.hpp"
#include "tracegen/tasks/interval_scheduling.hpp"
#include "tracegen/tasks/knapsack_01.hpp"
#include "tracegen/tasks/large_number_addition.hpp"
#include "tracegen/tasks/longest_common_subsequence.hpp"
#include "tracegen/tasks/merge_sort.hpp"
#include "tracegen/tasks/parity.hpp"
#include "tracegen/tasks/permutation_combination.hpp"
#include "tracegen/tasks/population_growth.hpp"
#include "tracegen/tasks/robot_walk.hpp"
#include "tracegen/tasks/subset_sum.hpp"
#include "tracegen/tasks/substring_count.hpp"

namespace tracegen {

// Every registered task, ordered by id.
inline const std::vector<std::unique_ptr<Task>>& all_tasks() {
  static const std::vector<std::unique_ptr<Task>> tasks = [] {
    std::vector<std::unique_ptr<Task>> out;
    out.push_back(std::make_unique<AnySubstringTask>());
    out.push_back(std::make_unique<BinarySearchTask>());
    out.push_back(std::make_unique<BubbleSortTask>());
    out.push_back(std::make_unique<CoinChangeTask>());
    out.push_back(std::make_unique<CompareNumbersTask>());
    out.push_back(std::make_unique<DiophantineEquationTask>());
    out.push_back(std::make_unique<GcdTask>());
    out.push_back(std::make_unique<IntervalSchedulingTask>());
    out.push_back(std::make_unique<Knapsack01Task>());
    out.push_back(std::make_unique<LargeNumberAdditionTask>());
    out.push_back(std::make_unique<LongestCommonSubsequenceTask>());
    out.push_back(std::make_unique<MergeSortTask>());
    out.push_back(std::make_unique<ParityTask>());
    out.push_back(std::make_unique<PermutationCombinationTask>());
    out.push_back(std::make_unique<PopulationGrowthTask>());
    out.push_back(std::make_unique<RobotWalkTask>());
    out.push_back(std::make_unique<SubsetSumTask>());
    out.push_back(std::make_unique<SubstringCountTask>());
    return out;
  }();
  return tasks;
}

// Look a task up by id; null when absent.
inline const Task* find_task(std::string_view id) {
  for (const auto& task : all_tasks()) {
    if (task->id() == id) return task.get();
  }
  return nullptr;
}

}  // namespace tracegen

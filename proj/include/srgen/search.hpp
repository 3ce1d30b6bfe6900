// search.hpp - many-objective evolutionary loop over coverage goals
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "srgen/interpreter.hpp"
#include "srgen/operators.hpp"
#include "srgen/testcase.hpp"

namespace srgen {

struct SearchConfig {
    int population_size = 50;            // >= 4 and even
    int64_t max_evaluations = 50000;
    double crossover_rate = 0.75;
    uint64_t seed = 1;
    Representation repr = Representation::Baseline;
    double fresh_rate = 0.10;            // fraction of offspring drawn fresh
    GenConfig chrom;
    ExecLimits limits;
};

struct ArchiveEntry {
    TestCase test;
    int covering_stmt = 0;      // 1-based statement index that covered the goal
    int64_t eval_number = 0;    // evaluation at which the entry was stored
    bool focal_owner = false;   // focal method declares the goal's method
};

// Best known test per covered goal. Replacement by strictly shorter tests;
// at equal length a test whose focal method owns the goal displaces one
// whose focal method merely reaches it; remaining ties keep the earlier
// entry. focal_owner is false for baseline tests.
class Archive {
public:
    bool offer(int goal, const TestCase& test, int covering_stmt, int64_t eval_number,
               bool focal_owner = false);
    const std::map<int, ArchiveEntry>& entries() const { return entries_; }
    std::set<int> covered() const;
    bool has(int goal) const { return entries_.count(goal) != 0; }
    // Distinct tests in goal order.
    std::vector<TestCase> suite() const;

private:
    std::map<int, ArchiveEntry> entries_;
};

struct CurvePoint {
    int generation;
    int64_t evaluations;
    int covered;
};

struct SearchStats {
    int64_t evaluations = 0;
    int generations = 0;
    std::vector<CurvePoint> curve;
};

struct SearchResult {
    Archive archive;
    SearchStats stats;
};

// Root goals plus every goal whose controlling branch outcome is covered.
std::vector<int> activate_targets(const std::set<int>& covered, const SubjectInfo& info);

struct RankedPopulation {
    std::vector<int> rank;          // per individual
    std::vector<double> crowding;   // per individual
    std::vector<std::vector<int>> fronts;
};

// Front 0 holds, per objective, one minimal-fitness individual (ties:
// shorter test, then lower index); the rest are non-dominated-sorted on
// the objective vectors. Crowding distances are computed within fronts.
RankedPopulation preference_sort(const std::vector<std::vector<double>>& fitness,
                                 const std::vector<int>& lengths, int n_objectives);

SearchResult run_search(const SubjectInfo& info, const SearchConfig& config);

}  // namespace srgen

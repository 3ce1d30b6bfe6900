#include "srgen/search.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "srgen/fitness.hpp"
#include "srgen/rng.hpp"

namespace srgen {

bool Archive::offer(int goal, const TestCase& test, int covering_stmt, int64_t eval_number,
                    bool focal_owner) {
    auto it = entries_.find(goal);
    if (it == entries_.end()) {
        entries_[goal] = {test, covering_stmt, eval_number, focal_owner};
        return true;
    }
    bool replace = test.size() < it->second.test.size() ||
                   (test.size() == it->second.test.size() && focal_owner && !it->second.focal_owner);
    if (replace) {
        it->second = {test, covering_stmt, eval_number, focal_owner};
        return true;
    }
    return false;
}

std::set<int> Archive::covered() const {
    std::set<int> out;
    for (auto& [goal, entry] : entries_) out.insert(goal);
    return out;
}

std::vector<TestCase> Archive::suite() const {
    std::vector<TestCase> out;
    for (auto& [goal, entry] : entries_) {
        bool seen = false;
        for (auto& t : out)
            if (t == entry.test) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(entry.test);
    }
    return out;
}

std::vector<int> activate_targets(const std::set<int>& covered, const SubjectInfo& info) {
    std::vector<int> active;
    for (int g = 0; g < info.goal_count(); ++g) {
        const CoverageGoal& goal = info.goals()[g];
        if (goal.parent_goal < 0 || covered.count(goal.parent_goal)) active.push_back(g);
    }
    return active;
}

RankedPopulation preference_sort(const std::vector<std::vector<double>>& fitness,
                                 const std::vector<int>& lengths, int n_objectives) {
    int n = static_cast<int>(fitness.size());
    RankedPopulation out;
    out.rank.assign(n, -1);
    out.crowding.assign(n, 0.0);
    if (n == 0) return out;

    // preference front: best individual per objective
    std::vector<int> front0;
    for (int obj = 0; obj < n_objectives; ++obj) {
        int best = 0;
        for (int i = 1; i < n; ++i) {
            double a = fitness[i][obj], b = fitness[best][obj];
            if (a < b || (a == b && (lengths[i] < lengths[best] ||
                                     (lengths[i] == lengths[best] && i < best))))
                best = i;
        }
        if (out.rank[best] != 0) {
            out.rank[best] = 0;
            front0.push_back(best);
        }
    }
    out.fronts.push_back(front0);

    // non-dominated sorting of the remainder
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (out.rank[i] != 0) rest.push_back(i);

    auto dominates = [&](int a, int b) {
        bool strict = false;
        for (int obj = 0; obj < n_objectives; ++obj) {
            if (fitness[a][obj] > fitness[b][obj]) return false;
            if (fitness[a][obj] < fitness[b][obj]) strict = true;
        }
        return strict;
    };

    int rank = 1;
    while (!rest.empty()) {
        std::vector<int> front, remaining;
        for (int i : rest) {
            bool dominated = false;
            for (int j : rest) {
                if (i != j && dominates(j, i)) {
                    dominated = true;
                    break;
                }
            }
            (dominated ? remaining : front).push_back(i);
        }
        if (front.empty()) {  // cannot happen with a strict dominance relation
            front = remaining;
            remaining.clear();
        }
        for (int i : front) out.rank[i] = rank;
        out.fronts.push_back(front);
        rest = std::move(remaining);
        ++rank;
    }

    // crowding distance per front
    for (auto& front : out.fronts) {
        if (front.empty()) continue;
        for (int obj = 0; obj < n_objectives; ++obj) {
            std::vector<int> order = front;
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return fitness[a][obj] < fitness[b][obj];
            });
            double lo = fitness[order.front()][obj];
            double hi = fitness[order.back()][obj];
            out.crowding[order.front()] = std::numeric_limits<double>::infinity();
            out.crowding[order.back()] = std::numeric_limits<double>::infinity();
            if (hi <= lo) continue;
            for (size_t k = 1; k + 1 < order.size(); ++k)
                out.crowding[order[k]] +=
                    (fitness[order[k + 1]][obj] - fitness[order[k - 1]][obj]) / (hi - lo);
        }
    }
    return out;
}

namespace {

struct Evaluator {
    const SubjectInfo& info;
    const SearchConfig& cfg;
    Archive& archive;
    int64_t evaluations = 0;

    bool budget_left() const { return evaluations < cfg.max_evaluations; }

    // Executes, archives covered goals and returns the trace.
    ExecTrace evaluate(const TestCase& t) {
        ExecResult run = execute_test(info, t, cfg.limits);
        ++evaluations;
        if (!run.trace.timeout) {
            StmtWindow w = scoring_window(t);
            for (int g = 0; g < info.goal_count(); ++g) {
                if (!run.trace.covered_in(g, w)) continue;
                int stmt = 0;
                for (uint16_t s : run.trace.covered_at[g])
                    if (w.contains(s)) {
                        stmt = s;
                        break;
                    }
                bool owner = t.repr == Representation::Focal &&
                             info.goals()[g].method == t.focal_method;
                archive.offer(g, t, stmt, evaluations, owner);
            }
        }
        return std::move(run.trace);
    }
};

}  // namespace

SearchResult run_search(const SubjectInfo& info, const SearchConfig& config) {
    if (config.population_size < 4 || config.population_size % 2 != 0)
        throw std::invalid_argument("population size must be even and >= 4");

    SearchResult result;
    Rng rng(config.seed);
    Evaluator eval{info, config, result.archive};
    int total_goals = info.goal_count();

    auto active_uncovered = [&]() {
        std::set<int> covered = result.archive.covered();
        std::vector<int> active;
        for (int g : activate_targets(covered, info))
            if (!covered.count(g)) active.push_back(g);
        return active;
    };

    auto sample_target = [&](const std::vector<int>& pool) {
        if (pool.empty()) return 0;
        return pool[rng.index(pool.size())];
    };

    // initial population
    std::vector<TestCase> pop;
    std::vector<ExecTrace> traces;
    {
        std::vector<int> pool = active_uncovered();
        for (int i = 0; i < config.population_size && eval.budget_left(); ++i) {
            TestCase t = random_test(info, config.repr, sample_target(pool), config.chrom, rng);
            traces.push_back(eval.evaluate(t));
            pop.push_back(std::move(t));
        }
    }
    result.stats.curve.push_back({0, eval.evaluations,
                                  static_cast<int>(result.archive.covered().size())});

    while (eval.budget_left() &&
           static_cast<int>(result.archive.covered().size()) < total_goals && !pop.empty()) {
        ++result.stats.generations;
        std::vector<int> objectives = active_uncovered();
        int n_obj = static_cast<int>(objectives.size());

        // fitness matrix on active uncovered goals
        std::vector<std::vector<double>> fit(pop.size(), std::vector<double>(n_obj, 0.0));
        std::vector<int> lengths(pop.size());
        for (size_t i = 0; i < pop.size(); ++i) {
            StmtWindow w = scoring_window(pop[i]);
            lengths[i] = pop[i].size();
            for (int k = 0; k < n_obj; ++k) fit[i][k] = fitness(info, objectives[k], traces[i], w);
        }
        RankedPopulation ranked = preference_sort(fit, lengths, n_obj);

        auto tournament = [&]() {
            int a = static_cast<int>(rng.index(pop.size()));
            int b = static_cast<int>(rng.index(pop.size()));
            if (ranked.rank[a] != ranked.rank[b]) return ranked.rank[a] < ranked.rank[b] ? a : b;
            if (ranked.crowding[a] != ranked.crowding[b])
                return ranked.crowding[a] > ranked.crowding[b] ? a : b;
            return a < b ? a : b;
        };

        int n_fresh = config.population_size / 10;
        int n_var = config.population_size - n_fresh;

        std::vector<TestCase> offspring;
        while (static_cast<int>(offspring.size()) < n_var) {
            const TestCase& pa = pop[tournament()];
            const TestCase& pb = pop[tournament()];
            TestCase c1, c2;
            if (rng.chance(config.crossover_rate)) {
                auto [x1, x2] = crossover(pa, pb, info, config.chrom, rng);
                c1 = std::move(x1);
                c2 = std::move(x2);
            } else {
                c1 = pa;
                c2 = pb;
            }
            offspring.push_back(mutate(c1, info, config.chrom, rng));
            if (static_cast<int>(offspring.size()) < n_var)
                offspring.push_back(mutate(c2, info, config.chrom, rng));
        }
        {
            std::vector<int> pool = active_uncovered();
            for (int i = 0; i < n_fresh; ++i)
                offspring.push_back(
                    random_test(info, config.repr, sample_target(pool), config.chrom, rng));
        }

        std::vector<TestCase> next_pop;
        std::vector<ExecTrace> next_traces;
        for (auto& child : offspring) {
            if (!eval.budget_left()) break;
            next_traces.push_back(eval.evaluate(child));
            next_pop.push_back(std::move(child));
        }
        pop = std::move(next_pop);
        traces = std::move(next_traces);
        result.stats.curve.push_back({result.stats.generations, eval.evaluations,
                                      static_cast<int>(result.archive.covered().size())});
    }

    result.stats.evaluations = eval.evaluations;
    return result;
}

}  // namespace srgen

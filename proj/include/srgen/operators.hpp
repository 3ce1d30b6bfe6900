// operators.hpp - chromosome construction and variation
#pragma once

#include <utility>

#include "srgen/rng.hpp"
#include "srgen/testcase.hpp"

namespace srgen {

Value sample_primitive(ValueKind kind, Rng& rng);

// Fresh chromosome. For the focal representation the last statement calls
// the method owning target_goal (the constructor statement itself when the
// target is a constructor goal) with freshly sampled arguments.
TestCase random_test(const SubjectInfo& info, Representation repr, int target_goal,
                     const GenConfig& cfg, Rng& rng);

// Single-point crossover. Focal parents exchange setup segments only and
// each child keeps its own parent's focal statement.
std::pair<TestCase, TestCase> crossover(const TestCase& p1, const TestCase& p2,
                                        const SubjectInfo& info, const GenConfig& cfg, Rng& rng);

// Crossover at explicit cut points: child1 = p1[0, cut1) ++ p2[cut2, end),
// child2 symmetric. Cuts index the setup segment for focal parents. The
// rng only backs repair sampling.
std::pair<TestCase, TestCase> crossover_at(const TestCase& p1, const TestCase& p2, int cut1,
                                           int cut2, const SubjectInfo& info, const GenConfig& cfg,
                                           Rng& rng);

// Delete / change / insert phases; the focal statement is never deleted
// and its method identity never changes.
TestCase mutate(const TestCase& t, const SubjectInfo& info, const GenConfig& cfg, Rng& rng);

// Forward pass restoring every chromosome invariant: dangling or
// kind-mismatched references are rebound to the earliest compatible
// variable, statements beyond saving are dropped, and a missing focal
// receiver is rebuilt in place. Idempotent.
TestCase repair(const TestCase& t, const SubjectInfo& info, const GenConfig& cfg, Rng& rng);

}  // namespace srgen

// pipeline.hpp - one generation or evaluation cell, end to end
#pragma once

#include <string>
#include <vector>

#include "srgen/emitter.hpp"
#include "srgen/metrics.hpp"
#include "srgen/search.hpp"

namespace srgen {

struct RunConfig {
    Representation repr = Representation::Baseline;
    uint64_t seed = 1;
    int population = 50;
    int64_t budget = 50000;
    double crossover_rate = 0.75;
    GenConfig chrom;
    ExecLimits limits;
    double tolerance = 1e-6;
    bool aaa_comments = true;
    bool dump_traces = false;
};

struct GenerateOutput {
    std::vector<TestCase> suite;
    std::vector<std::string> names;
    std::vector<std::vector<Assertion>> kept;
    SuiteMetrics metrics;
    SearchStats stats;
    std::string report_json;   // deterministic for equal inputs
    std::string rendered;      // the suite file
    std::string traces_json;   // only when dump_traces is set
};

// parse is assumed done; subject_label names the subject in reports
// (conventionally the file stem).
GenerateOutput run_generate(const SubjectInfo& info, const std::string& subject_label,
                            const RunConfig& cfg);

struct EvaluateOutput {
    SuiteMetrics metrics;
    int failed_assertions = 0;
    std::vector<std::string> failures;
    std::string report_json;
};

// Re-runs a rendered suite against the subject and its mutants; assertion
// expectations come from the file, not from regeneration.
EvaluateOutput run_evaluate(const SubjectInfo& info, const std::string& subject_label,
                            const ParsedSuite& suite, const ExecLimits& limits);

std::string manifest_json(const std::string& subject_path, const RunConfig& cfg,
                          const std::string& out_dir, const std::string& timestamp);

}  // namespace srgen

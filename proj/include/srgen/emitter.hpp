// emitter.hpp - readable test source output and its parser
#pragma once

#include <string>
#include <vector>

#include "srgen/assertions.hpp"
#include "srgen/subject_info.hpp"
#include "srgen/testcase.hpp"

namespace srgen {

struct RenderStyle {
    bool aaa_comments = true;
};

struct RenderedSuite {
    std::string subject;
    Representation repr = Representation::Baseline;
    std::vector<std::string> names;    // unique; focal: test_<method>_<k>, baseline: test_<k>
    std::vector<std::string> sources;  // one block per test
    std::string file_text;
};

// Deterministic text: variables named v0, v1, ... in definition order,
// statements first, assertions last, optional arrange/act/assert markers.
RenderedSuite render_suite(const std::vector<TestCase>& suite,
                           const std::vector<std::vector<Assertion>>& assertions,
                           const SubjectInfo& info, const RenderStyle& style = {});

struct ParsedSuite {
    std::string subject;
    Representation repr = Representation::Baseline;
    std::vector<std::string> names;
    std::vector<TestCase> tests;
    std::vector<std::vector<Assertion>> assertions;
};

// Parses rendered (or hand-written) suite files. Statement-level round
// trip: parse_suite(render_suite(s).file_text) reproduces s exactly.
// default_tolerance applies to real-valued assertions without a tol
// clause. Throws ParseError on malformed input.
ParsedSuite parse_suite(const std::string& text, const SubjectInfo& info,
                        double default_tolerance = 1e-6);

}  // namespace srgen

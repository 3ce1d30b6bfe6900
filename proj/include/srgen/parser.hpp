// parser.hpp - subject-language front end
#pragma once

#include <string>

#include "srgen/ast.hpp"
#include "srgen/lexer.hpp"

namespace srgen {

// Parses one unit definition, resolves every name, kind-checks every
// expression and assigns preorder node ids. Throws ParseError on syntax,
// resolution, kind and duplicate-name errors; the message carries the
// offending identifier or the expected token set.
SubjectUnit parse_subject(const std::string& source);

// Canonical source form; parse(pretty_print(parse(s))) is the identity
// on the AST.
std::string pretty_print(const SubjectUnit& unit);
std::string pretty_print(const Expr& e);

}  // namespace srgen

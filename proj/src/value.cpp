#include "srgen/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace srgen {

const char* kind_name(ValueKind k) {
    switch (k) {
        case ValueKind::Int: return "int";
        case ValueKind::Float: return "float";
        case ValueKind::Bool: return "bool";
        case ValueKind::Text: return "string";
        case ValueKind::UnitRef: return "unit";
        case ValueKind::None: return "none";
    }
    return "?";
}

Value Value::default_of(ValueKind k) {
    switch (k) {
        case ValueKind::Int: return of_int(0);
        case ValueKind::Float: return of_float(0.0);
        case ValueKind::Bool: return of_bool(false);
        case ValueKind::Text: return of_text("");
        case ValueKind::UnitRef: return of_ref(nullptr);
        case ValueKind::None: return none();
    }
    return none();
}

ValueKind Value::kind() const {
    switch (data_.index()) {
        case 1: return ValueKind::Int;
        case 2: return ValueKind::Float;
        case 3: return ValueKind::Bool;
        case 4: return ValueKind::Text;
        case 5: return ValueKind::UnitRef;
        default: return ValueKind::None;
    }
}

bool Value::operator==(const Value& o) const {
    if (data_.index() != o.data_.index()) return false;
    switch (data_.index()) {
        case 1: return as_int() == o.as_int();
        case 2: return as_float() == o.as_float();
        case 3: return as_bool() == o.as_bool();
        case 4: return as_text() == o.as_text();
        case 5: return as_ref() == o.as_ref();
        default: return true;
    }
}

std::string format_float(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string format_literal(const Value& v) {
    switch (v.kind()) {
        case ValueKind::Int: return std::to_string(v.as_int());
        case ValueKind::Float: return format_float(v.as_float());
        case ValueKind::Bool: return v.as_bool() ? "true" : "false";
        case ValueKind::Text: return "\"" + escape_text(v.as_text()) + "\"";
        default: return "none";
    }
}

std::string escape_text(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace srgen

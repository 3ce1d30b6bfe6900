// value.hpp - runtime values of the subject language
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace srgen {

enum class ValueKind { Int, Float, Bool, Text, UnitRef, None };

const char* kind_name(ValueKind k);

struct Instance;
using InstanceRef = std::shared_ptr<Instance>;

// Tagged value. Arithmetic promotion (int op float -> float) happens in the
// interpreter, not here; Value itself is inert data.
class Value {
public:
    Value() : data_(std::monostate{}) {}

    static Value none() { return Value(); }
    static Value of_int(int64_t v) { return Value(v); }
    static Value of_float(double v) { return Value(v); }
    static Value of_bool(bool v) { return Value(v); }
    static Value of_text(std::string v) { return Value(std::move(v)); }
    static Value of_ref(InstanceRef v) { return Value(std::move(v)); }
    static Value default_of(ValueKind k);

    ValueKind kind() const;

    bool is_none() const { return kind() == ValueKind::None; }
    bool is_numeric() const {
        ValueKind k = kind();
        return k == ValueKind::Int || k == ValueKind::Float;
    }

    int64_t as_int() const { return std::get<int64_t>(data_); }
    double as_float() const { return std::get<double>(data_); }
    bool as_bool() const { return std::get<bool>(data_); }
    const std::string& as_text() const { return std::get<std::string>(data_); }
    const InstanceRef& as_ref() const { return std::get<InstanceRef>(data_); }

    // Numeric content as double (int or float). Caller checks is_numeric().
    double numeric() const {
        return kind() == ValueKind::Int ? static_cast<double>(as_int()) : as_float();
    }

    // Exact structural equality. Unit references compare by identity;
    // floats compare bitwise-style via == (NaN never equals NaN).
    bool operator==(const Value& o) const;
    bool operator!=(const Value& o) const { return !(*this == o); }

private:
    explicit Value(int64_t v) : data_(v) {}
    explicit Value(double v) : data_(v) {}
    explicit Value(bool v) : data_(v) {}
    explicit Value(std::string v) : data_(std::move(v)) {}
    explicit Value(InstanceRef v) : data_(std::move(v)) {}

    std::variant<std::monostate, int64_t, double, bool, std::string, InstanceRef> data_;
};

// Heap object backing a unit-reference value; fields in declaration order.
struct Instance {
    std::vector<Value> fields;
};

// Shortest decimal text that parses back to exactly the same double.
// Always contains a '.', an exponent, or a special word so the token
// stays a float literal ("150" renders as "150.0").
std::string format_float(double v);

// Literal text for a value as it appears in rendered tests.
std::string format_literal(const Value& v);

std::string escape_text(const std::string& s);

}  // namespace srgen

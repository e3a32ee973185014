#pragma once

#include <cstdint>
#include <string>

#include "twocenter/errors.hpp"

namespace twocenter {

/// Exact half-integer arithmetic on doubled values. 2*value is stored, so
/// comparisons and sums never touch floating point.
struct HalfInteger {
    std::int64_t doubled = 0;

    HalfInteger() = default;
    static HalfInteger from_int(std::int64_t v) { return HalfInteger{2 * v}; }
    static HalfInteger from_doubled(std::int64_t d) { return HalfInteger{d}; }

    bool is_integer() const { return doubled % 2 == 0; }
    std::int64_t as_integer() const {
        if (!is_integer()) throw NumericError("half-integer " + str() + " is not an integer");
        return doubled / 2;
    }
    double value() const { return 0.5 * static_cast<double>(doubled); }

    HalfInteger operator+(HalfInteger o) const { return HalfInteger{doubled + o.doubled}; }
    HalfInteger operator-(HalfInteger o) const { return HalfInteger{doubled - o.doubled}; }
    HalfInteger operator*(std::int64_t s) const { return HalfInteger{doubled * s}; }
    bool operator==(HalfInteger o) const { return doubled == o.doubled; }
    bool operator!=(HalfInteger o) const { return doubled != o.doubled; }
    bool operator<(HalfInteger o) const { return doubled < o.doubled; }

    std::string str() const {
        if (doubled % 2 == 0) return std::to_string(doubled / 2);
        return std::to_string(doubled) + "/2";
    }

private:
    explicit HalfInteger(std::int64_t d) : doubled(d) {}
};

inline HalfInteger half(std::int64_t numerator) { return HalfInteger::from_doubled(numerator); }

}  // namespace twocenter

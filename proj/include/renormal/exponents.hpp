#pragma once

#include <string>

namespace renormal {

/// A Lebesgue exponent in [1, inf]. Infinity is a distinct state, never a
/// large float.
class Exponent {
public:
    static Exponent finite(double value);
    static Exponent infinity() { return Exponent(); }
    /// Accepts a number or "inf".
    static Exponent parse(const std::string& text);

    bool is_infinite() const { return infinite_; }
    /// Throws std::logic_error when infinite.
    double value() const;
    std::string to_string() const;

    bool operator==(const Exponent&) const = default;

private:
    Exponent() = default;
    bool infinite_ = true;
    double value_ = 0.0;
};

/// Integrability pair (p, q) with the derived Sobolev exponents
/// r1 = pq/(p-q) and r2 = 2pq/(p-q), both infinite when p == q.
struct Exponents {
    double p;
    double q;
    Exponent r1;
    Exponent r2;
};

/// Requires p >= 2 and 1 <= q <= p; throws std::invalid_argument otherwise.
Exponents exponents(double p, double q);

}  // namespace renormal

#include "renormal/exponents.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace renormal {

Exponent Exponent::finite(double value) {
    if (!std::isfinite(value))
        throw std::invalid_argument("finite exponent expected");
    Exponent e;
    e.infinite_ = false;
    e.value_ = value;
    return e;
}

Exponent Exponent::parse(const std::string& text) {
    if (text == "inf" || text == "infinity")
        return infinity();
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size())
        throw std::invalid_argument("bad exponent: " + text);
    return finite(v);
}

double Exponent::value() const {
    if (infinite_)
        throw std::logic_error("exponent is infinite");
    return value_;
}

std::string Exponent::to_string() const {
    if (infinite_)
        return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value_);
    return buf;
}

Exponents exponents(double p, double q) {
    if (!(p >= 2.0) || !std::isfinite(p))
        throw std::invalid_argument("p must be a finite real >= 2");
    if (!(q >= 1.0))
        throw std::invalid_argument("q must be >= 1");
    if (q > p)
        throw std::invalid_argument("q must not exceed p");
    if (p == q)
        return {p, q, Exponent::infinity(), Exponent::infinity()};
    const double r1 = p * q / (p - q);
    return {p, q, Exponent::finite(r1), Exponent::finite(2.0 * r1)};
}

}  // namespace renormal

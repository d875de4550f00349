#include "riskspec/alpha.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "riskspec/errors.hpp"

namespace riskspec {

Alpha Alpha::finite(double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw DomainError("Alpha::finite requires a strictly positive finite value");
    return Alpha(Kind::finite, value);
}

Alpha Alpha::parse(std::string_view token) {
    if (token == "inf") return inf();
    if (token == "0") return zero();
    try {
        std::size_t pos = 0;
        const std::string s(token);
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw DomainError("trailing characters in alpha token '" + s + "'");
        if (v == 0.0) return zero();
        return finite(v);
    } catch (const std::invalid_argument&) {
        throw DomainError("cannot parse alpha token '" + std::string(token) + "'");
    } catch (const std::out_of_range&) {
        throw DomainError("alpha token out of range: '" + std::string(token) + "'");
    }
}

double Alpha::value() const {
    if (kind_ != Kind::finite) throw DomainError("Alpha::value() called on a non-finite tag");
    return value_;
}

std::string Alpha::str() const {
    switch (kind_) {
        case Kind::zero: return "0";
        case Kind::infinite: return "inf";
        case Kind::finite: {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "%.17g", value_);
            return buf;
        }
    }
    return "?";
}

} // namespace riskspec

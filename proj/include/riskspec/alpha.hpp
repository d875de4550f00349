#pragma once

#include <string>
#include <string_view>

namespace riskspec {

/// The spectrum parameter alpha in [0, inf].
///
/// alpha = 0 selects the exact tail probability / plain quantile, finite
/// alpha the power-moment bounds, alpha = inf the exponential (Chernoff)
/// bound. Finite values must be strictly positive.
class Alpha {
public:
    enum class Kind { zero, finite, infinite };

    static Alpha zero() { return Alpha(Kind::zero, 0.0); }
    static Alpha finite(double value);
    static Alpha inf() { return Alpha(Kind::infinite, 0.0); }

    /// Parses the CLI token grammar: "0", a positive decimal literal, or "inf".
    static Alpha parse(std::string_view token);

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::zero; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_inf() const { return kind_ == Kind::infinite; }

    /// The finite value; throws DomainError for the zero/infinite tags.
    double value() const;

    std::string str() const;

    friend bool operator==(const Alpha& a, const Alpha& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
    }

private:
    Alpha(Kind k, double v) : kind_(k), value_(v) {}
    Kind kind_;
    double value_;
};

} // namespace riskspec

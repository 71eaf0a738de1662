#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "fod/errors.hpp"

namespace fod {

/// Derivative order. Either an exact rational beta/delta (delta != 0, stored
/// in lowest terms with delta > 0) or a plain real. The distinction matters
/// for negative power bases: an odd denominator selects the real root branch,
/// everything else the principal complex branch.
class FractionalOrder {
public:
    static FractionalOrder real(double alpha) {
        FractionalOrder o;
        o.rational_ = false;
        o.alpha_ = alpha;
        return o;
    }

    static FractionalOrder rational(std::int64_t beta, std::int64_t delta) {
        if (delta == 0) throw DomainError("rational order requires delta != 0");
        if (delta < 0) {
            beta = -beta;
            delta = -delta;
        }
        const std::int64_t g = std::gcd(beta < 0 ? -beta : beta, delta);
        FractionalOrder o;
        o.rational_ = true;
        o.beta_ = g ? beta / g : beta;
        o.delta_ = g ? delta / g : delta;
        return o;
    }

    bool is_rational() const { return rational_; }
    std::int64_t beta() const { return beta_; }
    std::int64_t delta() const { return delta_; }
    bool odd_delta() const { return rational_ && (delta_ % 2 != 0); }

    double value() const {
        return rational_ ? static_cast<double>(beta_) / static_cast<double>(delta_) : alpha_;
    }

    /// Exponent alpha - 1 used by the closed form, computed without an
    /// intermediate rounding for rational orders.
    double shifted() const {
        return rational_ ? static_cast<double>(beta_ - delta_) / static_cast<double>(delta_)
                         : alpha_ - 1.0;
    }

    bool is_one() const { return rational_ ? (beta_ == 1 && delta_ == 1) : alpha_ == 1.0; }

    std::string to_string() const {
        if (rational_) return std::to_string(beta_) + "/" + std::to_string(delta_);
        return std::to_string(alpha_);
    }

private:
    FractionalOrder() = default;

    bool rational_ = false;
    std::int64_t beta_ = 0;
    std::int64_t delta_ = 1;
    double alpha_ = 0.0;
};

/// Accepts "beta/delta" (exact rational) or a plain real literal.
inline FractionalOrder parse_order(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::size_t done1 = 0, done2 = 0;
            const std::int64_t beta = std::stoll(text.substr(0, slash), &done1);
            const std::int64_t delta = std::stoll(text.substr(slash + 1), &done2);
            if (done1 != slash || done2 != text.size() - slash - 1)
                throw DomainError("malformed order '" + text + "'");
            return FractionalOrder::rational(beta, delta);
        }
        std::size_t done = 0;
        const double v = std::stod(text, &done);
        if (done != text.size()) throw DomainError("malformed order '" + text + "'");
        return FractionalOrder::real(v);
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed order '" + text + "'");
    } catch (const std::out_of_range&) {
        throw DomainError("order out of range '" + text + "'");
    }
}

} // namespace fod

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "fod/errors.hpp"
#include "fod/expr.hpp"
#include "fod/fractional_order.hpp"

namespace fod {

// The generalized fractional-order derivative
//
//   f^(alpha)(x) = lim_{h->0} (f^alpha(x+h) - f^alpha(x)) / ((x+h)^alpha - x^alpha)
//                = f'(x) * (f(x)/x)^(alpha-1)
//
// where the second line is the limit resolved by differentiating numerator
// and denominator with respect to h. For a negative base r = f(x)/x the
// power r^(alpha-1) is taken on the real root branch when alpha is rational
// with odd denominator, and on the principal complex branch otherwise.

/// Complex result g(x) + i h(x) of an order-alpha evaluation.
struct CValue {
    double re = 0.0;
    double im = 0.0;
};

struct FodResult {
    CValue value{};
    Status status = Status::ok;

    bool is_ok() const { return status == Status::ok; }
    static FodResult ok(double re, double im = 0.0) { return {{re, im}, Status::ok}; }
    static FodResult error(Status s) { return {{}, s}; }
};

enum class Classification { real, complex };

struct ClassifyResult {
    Classification cls = Classification::real;
    Status status = Status::ok;

    bool is_ok() const { return status == Status::ok; }
};

namespace detail {

struct BranchPower {
    std::complex<double> w{};
    Status status = Status::ok;
};

// r^s with the branch selection described above. s is alpha - 1 except in
// the raw difference quotient, which uses alpha itself. The numerator parity
// fixing the sign of the odd-denominator root is passed explicitly.
inline BranchPower branch_pow(double r, double s, const FractionalOrder& order,
                              std::int64_t root_parity) {
    BranchPower out;
    if (r > 0.0) {
        out.w = std::pow(r, s);
    } else if (r == 0.0) {
        if (s > 0.0) {
            out.w = 0.0;
        } else if (s == 0.0) {
            out.w = 1.0;
        } else {
            out.status = Status::pole;
            return out;
        }
    } else if (order.is_rational() && order.odd_delta()) {
        // Real delta-th root of r^(numerator): negative exactly when the
        // integer numerator is odd.
        const double mag = std::pow(-r, s);
        out.w = (root_parity % 2 != 0) ? -mag : mag;
    } else {
        // Principal branch: r = |r| e^{i pi}.
        out.w = std::polar(std::pow(-r, s), M_PI * s);
    }
    if (!std::isfinite(out.w.real()) || !std::isfinite(out.w.imag()))
        out.status = Status::pole;
    return out;
}

inline BranchPower branch_pow_shifted(double r, const FractionalOrder& order) {
    return branch_pow(r, order.shifted(), order,
                      order.is_rational() ? order.beta() - order.delta() : 0);
}

inline FodResult combine(double fprime, const BranchPower& p) {
    if (p.status != Status::ok) return FodResult::error(p.status);
    const double re = fprime * p.w.real();
    const double im = fprime * p.w.imag();
    if (std::isnan(re) || std::isnan(im)) return FodResult::error(Status::domain_error);
    if (!std::isfinite(re) || !std::isfinite(im)) return FodResult::error(Status::pole);
    return FodResult::ok(re, im);
}

} // namespace detail

/// Order-alpha derivative of f at x by the closed form. alpha = 1 reduces
/// exactly to the classical derivative (the power factor is skipped), for
/// every x including 0.
inline FodResult fod_value(const Expr& f, const FractionalOrder& alpha, double x) {
    Expr df;
    try {
        df = derivative(f);
    } catch (const DomainError&) {
        return FodResult::error(Status::domain_error);
    }
    const EvalResult fp = evaluate(df, x);
    if (alpha.is_one()) {
        if (!fp.is_ok()) return FodResult::error(fp.status);
        return FodResult::ok(fp.value);
    }
    if (x == 0.0) return FodResult::error(Status::domain_error);
    // A syntactically constant f has an identically zero difference quotient,
    // so the result is 0 regardless of the power factor.
    if (df.is_constant(0.0)) return FodResult::ok(0.0);
    if (!fp.is_ok()) return FodResult::error(fp.status);
    const EvalResult fv = evaluate(f, x);
    if (!fv.is_ok()) return FodResult::error(fv.status);
    const double ratio = fv.value / x;
    if (!std::isfinite(ratio)) return FodResult::error(Status::pole);
    return detail::combine(fp.value, detail::branch_pow_shifted(ratio, alpha));
}

/// Branch classification of fod_value without computing it: nonnegative base
/// and odd-denominator rational orders stay real, a negative base is complex
/// otherwise.
inline ClassifyResult classify(const Expr& f, const FractionalOrder& alpha, double x) {
    if (alpha.is_one()) return {Classification::real, Status::ok};
    if (x == 0.0) return {Classification::real, Status::domain_error};
    const EvalResult fv = evaluate(f, x);
    if (!fv.is_ok()) return {Classification::real, fv.status};
    const double ratio = fv.value / x;
    if (!std::isfinite(ratio)) return {Classification::real, Status::pole};
    if (ratio == 0.0 && alpha.shifted() < 0.0) return {Classification::real, Status::pole};
    if (ratio >= 0.0) return {Classification::real, Status::ok};
    if (alpha.is_rational() && alpha.odd_delta()) return {Classification::real, Status::ok};
    return {Classification::complex, Status::ok};
}

/// Symbolic form derivative(f) * (f/x)^(alpha-1) with constant folding; at
/// alpha = 1 the power folds away and the classical derivative is returned.
inline Expr fod_symbolic(const Expr& f, const FractionalOrder& alpha) {
    const Expr df = derivative(f);
    const Expr ratio = detail::mk_div(f, Expr::variable());
    const Expr power = detail::mk_pow(ratio, Expr::constant(alpha.shifted()));
    return detail::mk_mul(df, power);
}

struct OracleConfig {
    double h0 = 1e-2;   ///< initial probe step
    int max_levels = 20;
    double tol = 1e-9;  ///< step-to-step tolerance on the extrapolant
};

/// Defining-limit evaluation: samples the post-L'Hospital quotient
/// q(h) = f'(x+h) (f(x+h)/(x+h))^(alpha-1) on h_k = h0 2^-k and Richardson-
/// extrapolates h -> 0. Agrees with fod_value on smooth regions; failure to
/// settle is reported as no_convergence, distinct from domain errors.
inline FodResult fod_limit_oracle(const Expr& f, const FractionalOrder& alpha, double x,
                                  const OracleConfig& cfg = {}) {
    Expr df;
    try {
        df = derivative(f);
    } catch (const DomainError&) {
        return FodResult::error(Status::domain_error);
    }
    if (x == 0.0 && !alpha.is_one()) return FodResult::error(Status::domain_error);

    auto probe = [&](double h, std::complex<double>& out) -> Status {
        const double xe = x + h;
        const EvalResult fp = evaluate(df, xe);
        if (!fp.is_ok()) return fp.status;
        if (alpha.is_one()) {
            out = fp.value;
            return Status::ok;
        }
        const EvalResult fv = evaluate(f, xe);
        if (!fv.is_ok()) return fv.status;
        const double ratio = fv.value / xe;
        if (!std::isfinite(ratio)) return Status::pole;
        const auto p = detail::branch_pow_shifted(ratio, alpha);
        if (p.status != Status::ok) return p.status;
        out = fp.value * p.w;
        if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) return Status::pole;
        return Status::ok;
    };

    std::vector<std::complex<double>> prev, cur;
    std::complex<double> best{};
    double best_diff = std::numeric_limits<double>::infinity();
    double h = cfg.h0;
    for (int k = 0; k <= cfg.max_levels; ++k, h *= 0.5) {
        std::complex<double> q;
        if (Status st = probe(h, q); st != Status::ok) return FodResult::error(st);
        cur.assign(1, q);
        double weight = 1.0;
        for (int j = 1; j <= k; ++j) {
            weight *= 2.0;
            cur.push_back(cur[j - 1] + (cur[j - 1] - prev[j - 1]) / (weight - 1.0));
        }
        if (k >= 1) {
            const double diff = std::abs(cur[k] - prev[k - 1]);
            if (diff < best_diff) {
                best_diff = diff;
                best = cur[k];
            }
            if (diff <= cfg.tol * (1.0 + std::abs(cur[k])))
                return FodResult::ok(cur[k].real(), cur[k].imag());
        }
        prev = cur;
    }
    return {{best.real(), best.imag()}, Status::no_convergence};
}

/// Diagnostic only: the raw difference quotient of the defining limit at a
/// finite step h, before any limit resolution. Near h = 0 it degenerates to
/// 0/0; the oracle above is the usable form.
inline FodResult fod_raw_quotient(const Expr& f, const FractionalOrder& alpha, double x,
                                  double h) {
    if (h <= 0.0) return FodResult::error(Status::domain_error);
    auto powered = [&](double v) -> detail::BranchPower {
        return detail::branch_pow(v, alpha.value(), alpha,
                                  alpha.is_rational() ? alpha.beta() : 0);
    };
    const EvalResult f1 = evaluate(f, x + h);
    if (!f1.is_ok()) return FodResult::error(f1.status);
    const EvalResult f0 = evaluate(f, x);
    if (!f0.is_ok()) return FodResult::error(f0.status);
    const auto pf1 = powered(f1.value);
    if (pf1.status != Status::ok) return FodResult::error(pf1.status);
    const auto pf0 = powered(f0.value);
    if (pf0.status != Status::ok) return FodResult::error(pf0.status);
    const auto px1 = powered(x + h);
    if (px1.status != Status::ok) return FodResult::error(px1.status);
    const auto px0 = powered(x);
    if (px0.status != Status::ok) return FodResult::error(px0.status);
    const std::complex<double> den = px1.w - px0.w;
    if (den == std::complex<double>(0.0, 0.0)) return FodResult::error(Status::pole);
    const std::complex<double> q = (pf1.w - pf0.w) / den;
    if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
        return FodResult::error(Status::pole);
    return FodResult::ok(q.real(), q.imag());
}

} // namespace fod

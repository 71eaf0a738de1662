#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fod/errors.hpp"
#include "fod/expr.hpp"
#include "fod/fractional_order.hpp"
#include "fod/karci.hpp"

namespace fod {

// Executable ordering laws. For r = f(x)/x > 0 the map
// alpha -> f'(x) r^(alpha-1) is monotone in alpha; it is nondecreasing
// exactly when f'(x) ln r >= 0. A grid point where the sign of f'(x) ln r
// contradicts the expected direction is marked skipped: the ordering claim
// is not applicable there, rather than violated.

enum class Direction { nondecreasing_in_alpha, nonincreasing_in_alpha, constant_in_alpha };

/// Direction of alpha -> fod_value(f, alpha, x) at fixed x. Requires
/// f(x)/x > 0; constant when f'(x) = 0 or f(x)/x = 1.
inline Direction monotone_direction(const Expr& f, double x) {
    if (x == 0.0) throw DomainError("monotone direction undefined at x = 0");
    const EvalResult fv = evaluate(f, x);
    if (!fv.is_ok())
        throw DomainError(std::string("f not evaluable: ") + status_name(fv.status));
    const double ratio = fv.value / x;
    if (!(ratio > 0.0)) throw DomainError("monotone direction requires f(x)/x > 0");
    const EvalResult fp = evaluate(derivative(f), x);
    if (!fp.is_ok())
        throw DomainError(std::string("f' not evaluable: ") + status_name(fp.status));
    const double sign = fp.value * std::log(ratio);
    if (sign > 0.0) return Direction::nondecreasing_in_alpha;
    if (sign < 0.0) return Direction::nonincreasing_in_alpha;
    return Direction::constant_in_alpha;
}

enum class Expect { ascending, descending };
enum class Verdict { ordered_ascending, ordered_descending, violated, skipped };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ordered_ascending: return "ordered-ascending";
        case Verdict::ordered_descending: return "ordered-descending";
        case Verdict::violated: return "violated";
        case Verdict::skipped: return "skipped";
    }
    return "unknown";
}

struct OrderingPoint {
    double x = 0.0;
    std::vector<FodResult> values;  ///< one per order, in input order
    Verdict verdict = Verdict::skipped;
    std::string note;               ///< reason when skipped
};

struct OrderingReport {
    std::string function;
    std::vector<FractionalOrder> orders;
    Expect expect = Expect::ascending;
    std::vector<OrderingPoint> points;
    std::size_t ascending = 0;
    std::size_t descending = 0;
    std::size_t violated = 0;
    std::size_t skipped = 0;

    std::size_t size() const { return points.size(); }
};

/// Evaluates fod_value across a strictly ascending order list on each grid
/// point and classifies the observed ordering. Ties are accepted within a
/// 1e-12 relative tolerance (the identity function produces exact ties).
inline OrderingReport ordering_check(const Expr& f, const std::vector<FractionalOrder>& orders,
                                     const std::vector<double>& grid, Expect expect) {
    if (orders.size() < 2) throw DomainError("ordering check needs at least two orders");
    for (std::size_t i = 1; i < orders.size(); ++i)
        if (!(orders[i - 1].value() < orders[i].value()))
            throw DomainError("orders must be strictly ascending");

    OrderingReport report;
    report.function = to_string(f);
    report.orders = orders;
    report.expect = expect;

    const Expr df = derivative(f);
    constexpr double kTieTol = 1e-12;

    for (const double x : grid) {
        OrderingPoint pt;
        pt.x = x;
        pt.values.reserve(orders.size());
        bool eval_error = false;
        bool complex_value = false;
        for (const auto& a : orders) {
            FodResult r = fod_value(f, a, x);
            if (!r.is_ok()) {
                eval_error = true;
                pt.note = std::string("evaluation error (") + status_name(r.status) +
                          ") at alpha=" + a.to_string();
            } else if (r.value.im != 0.0) {
                complex_value = true;
            }
            pt.values.push_back(r);
            if (eval_error) break;
        }
        if (eval_error) {
            pt.verdict = Verdict::skipped;
        } else if (complex_value) {
            pt.verdict = Verdict::skipped;
            pt.note = "complex value";
        } else {
            const EvalResult fv = evaluate(f, x);
            const EvalResult fp = evaluate(df, x);
            const double ratio = fv.is_ok() && x != 0.0 ? fv.value / x : -1.0;
            if (!fv.is_ok() || !fp.is_ok() || !(ratio > 0.0)) {
                pt.verdict = Verdict::skipped;
                pt.note = "nonpositive or undefined ratio f(x)/x";
            } else {
                const double sign = fp.value * std::log(ratio);
                const bool applicable = expect == Expect::ascending ? sign >= 0.0 : sign <= 0.0;
                if (!applicable) {
                    pt.verdict = Verdict::skipped;
                    pt.note = "ratio condition fails";
                } else {
                    bool nondecr = true, nonincr = true;
                    for (std::size_t i = 1; i < pt.values.size(); ++i) {
                        const double lo = pt.values[i - 1].value.re;
                        const double hi = pt.values[i].value.re;
                        const double tol =
                            kTieTol * std::max({1.0, std::abs(lo), std::abs(hi)});
                        if (hi < lo - tol) nondecr = false;
                        if (hi > lo + tol) nonincr = false;
                    }
                    if (expect == Expect::ascending) {
                        pt.verdict = nondecr ? Verdict::ordered_ascending
                                   : nonincr ? Verdict::ordered_descending
                                             : Verdict::violated;
                    } else {
                        pt.verdict = nonincr ? Verdict::ordered_descending
                                   : nondecr ? Verdict::ordered_ascending
                                             : Verdict::violated;
                    }
                }
            }
        }
        switch (pt.verdict) {
            case Verdict::ordered_ascending: ++report.ascending; break;
            case Verdict::ordered_descending: ++report.descending; break;
            case Verdict::violated: ++report.violated; break;
            case Verdict::skipped: ++report.skipped; break;
        }
        report.points.push_back(std::move(pt));
    }
    return report;
}

struct FinitenessIssue {
    double x = 0.0;
    Status status = Status::ok;
};

struct FinitenessReport {
    std::size_t total = 0;
    std::size_t finite = 0;
    std::vector<FinitenessIssue> issues;

    bool all_finite() const { return issues.empty(); }
};

/// Asserts every fod_value on the grid is finite in both components;
/// violations become report entries rather than errors.
inline FinitenessReport finiteness_check(const Expr& f, const FractionalOrder& alpha,
                                         const std::vector<double>& grid) {
    FinitenessReport report;
    report.total = grid.size();
    for (const double x : grid) {
        const FodResult r = fod_value(f, alpha, x);
        if (r.is_ok() && std::isfinite(r.value.re) && std::isfinite(r.value.im)) {
            ++report.finite;
        } else {
            report.issues.push_back({x, r.status});
        }
    }
    return report;
}

} // namespace fod

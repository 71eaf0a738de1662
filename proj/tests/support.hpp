#pragma once

// Shared helpers for the test suites: independent oracles (quadrature gamma,
// finite differences), the function gallery with per-function smooth grids,
// and a deterministic random expression generator.

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fod/expr.hpp"
#include "fod/fractional_order.hpp"

namespace testsupport {

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs;
    xs.reserve(n);
    if (n == 1) {
        xs.push_back(lo);
        return xs;
    }
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) xs.push_back(lo + i * step);
    return xs;
}

// ---------------------------------------------------------------------------
// Independent gamma oracle: direct quadrature of int_0^inf t^(z-1) e^-t dt.
// Series expansion on [0,1] plus adaptive Simpson on [1,60]; no shared code
// with the Lanczos path.
// ---------------------------------------------------------------------------

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& g, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = g(lm);
    const double frm = g(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(g, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive_simpson(g, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

} // namespace detail

inline double adaptive_integral(const std::function<double(double)>& g, double a, double b,
                                double tol) {
    const double fa = g(a);
    const double fb = g(b);
    const double fm = g(0.5 * (a + b));
    const double whole = detail::simpson(a, b, fa, fm, fb);
    return detail::adaptive_simpson(g, a, b, fa, fm, fb, whole, tol, 40);
}

inline double gamma_integral_oracle(double z) {
    // int_0^1 t^(z-1) e^-t dt = sum_k (-1)^k / (k! (z+k))
    double lower = 0.0;
    double kfact = 1.0;
    for (int k = 0; k <= 60; ++k) {
        if (k > 0) kfact *= k;
        const double term = ((k % 2) ? -1.0 : 1.0) / (kfact * (z + k));
        lower += term;
        if (std::abs(term) < 1e-20) break;
    }
    const auto g = [z](double t) { return std::pow(t, z - 1.0) * std::exp(-t); };
    const double upper = adaptive_integral(g, 1.0, 60.0, 1e-13);
    return lower + upper;
}

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

inline std::optional<double> central_difference(const fod::Expr& f, double x, double h = 1e-6) {
    const auto hi = fod::evaluate(f, x + h);
    const auto lo = fod::evaluate(f, x - h);
    if (!hi.is_ok() || !lo.is_ok()) return std::nullopt;
    const double d = (hi.value - lo.value) / (2.0 * h);
    if (!std::isfinite(d)) return std::nullopt;
    return d;
}

// ---------------------------------------------------------------------------
// Function gallery: the functions exercised throughout, each with a grid on
// which it and its order-alpha derivatives are smooth (no zeros of f for
// alpha < 1, no poles of f or f').
// ---------------------------------------------------------------------------

struct GalleryEntry {
    std::string expr;
    double lo;
    double hi;
};

inline const std::vector<GalleryEntry>& gallery() {
    static const std::vector<GalleryEntry> entries = {
        {"x^2", 0.5, 5.0},
        {"x^3", 0.5, 5.0},
        {"x^4", 0.5, 5.0},
        {"e^x", 0.1, 5.0},
        {"2^x", 0.1, 5.0},
        {"sin(x)", 0.3, 2.8},
        {"cos(x)", 0.15, 1.35},
        {"tan(x)", 0.15, 1.3},
        {"cot(x)", 0.15, 1.3},
        {"ln(x)", 1.5, 5.0},
        {"x^2+3*x+4", 0.5, 10.0},
        {"x^4-5*x^3+x-2", 0.5, 4.5},
        {"1/(x^2+3*x+4)", 0.5, 10.0},
        {"1/(x^4-5*x^3+x-2)", 0.5, 4.5},
    };
    return entries;
}

// ---------------------------------------------------------------------------
// Round-trip corpus: covers every node kind.
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& roundtrip_corpus() {
    static const std::vector<std::string> corpus = {
        "x",
        "42",
        "3.25",
        "x^2+3*x+4",
        "x^4-5*x^3+x-2",
        "1/(x^2+3*x+4)",
        "sin(x)",
        "cos(x)",
        "tan(x)",
        "cot(x)",
        "sec(x)",
        "csc(x)",
        "exp(x)",
        "ln(x)",
        "e^x",
        "2^x",
        "0.5^(x+1)",
        "-x^2",
        "-(x+1)*(x-1)",
        "x^-2",
        "2^3^2",
        "(x^2)^3",
        "sin(cos(x))+tan(x/2)",
        "x/(1+x^2)",
        "ln(x)*e^x-cot(x)/sec(x)",
        "1e-3*x+2.5E2",
    };
    return corpus;
}

// ---------------------------------------------------------------------------
// Random expression generator (deterministic under a fixed seed)
// ---------------------------------------------------------------------------

inline fod::Expr random_expr(std::mt19937& rng, int depth) {
    using fod::Expr;
    using fod::ExprKind;
    std::uniform_real_distribution<double> con(-3.0, 3.0);
    std::uniform_int_distribution<int> leaf(0, 2);
    if (depth <= 0) {
        return leaf(rng) == 0 ? Expr::constant(std::round(con(rng) * 4.0) / 4.0)
                              : Expr::variable();
    }
    std::uniform_int_distribution<int> pick(0, 13);
    switch (pick(rng)) {
        case 0: return Expr::binary(ExprKind::add, random_expr(rng, depth - 1),
                                    random_expr(rng, depth - 1));
        case 1: return Expr::binary(ExprKind::sub, random_expr(rng, depth - 1),
                                    random_expr(rng, depth - 1));
        case 2: return Expr::binary(ExprKind::mul, random_expr(rng, depth - 1),
                                    random_expr(rng, depth - 1));
        case 3: return Expr::binary(ExprKind::div, random_expr(rng, depth - 1),
                                    random_expr(rng, depth - 1));
        case 4: {
            std::uniform_int_distribution<int> ex(2, 3);
            return Expr::binary(ExprKind::pow, random_expr(rng, depth - 1),
                                Expr::constant(ex(rng)));
        }
        case 5: {
            std::uniform_int_distribution<int> base(0, 1);
            return Expr::powbase(base(rng) ? 2.0 : 0.5, random_expr(rng, depth - 1));
        }
        case 6: return Expr::unary(ExprKind::neg, random_expr(rng, depth - 1));
        case 7: return Expr::unary(ExprKind::sin, random_expr(rng, depth - 1));
        case 8: return Expr::unary(ExprKind::cos, random_expr(rng, depth - 1));
        case 9: return Expr::unary(ExprKind::tan, random_expr(rng, depth - 1));
        case 10: return Expr::unary(ExprKind::cot, random_expr(rng, depth - 1));
        case 11: return Expr::unary(ExprKind::exp, random_expr(rng, depth - 1));
        case 12: return Expr::unary(ExprKind::ln, random_expr(rng, depth - 1));
        default: return random_expr(rng, 0);
    }
}

/// Sample points where f is smooth enough for a finite-difference check:
/// f evaluable in a window, first difference finite and moderate, curvature
/// bounded (keeps the h^2 truncation term inside the tolerance).
inline std::vector<double> fd_checkable_points(const fod::Expr& f, std::mt19937& rng,
                                               int wanted, int max_tries) {
    std::uniform_real_distribution<double> xs(-3.0, 3.0);
    std::vector<double> pts;
    const double h = 1e-6;
    fod::Expr df;
    try {
        df = fod::derivative(f);
    } catch (const fod::DomainError&) {
        return pts;
    }
    for (int tries = 0; tries < max_tries && static_cast<int>(pts.size()) < wanted; ++tries) {
        const double x = xs(rng);
        const auto vc = fod::evaluate(f, x);
        const auto vp = fod::evaluate(f, x + h);
        const auto vm = fod::evaluate(f, x - h);
        const auto dv = fod::evaluate(df, x);
        if (!vc.is_ok() || !vp.is_ok() || !vm.is_ok() || !dv.is_ok()) continue;
        if (std::abs(vc.value) > 1e6 || std::abs(dv.value) > 1e6) continue;
        const double curvature = std::abs(vp.value - 2.0 * vc.value + vm.value) / (h * h);
        if (curvature > 1e8) continue;
        // The difference quotient itself must have converged at this step,
        // otherwise the point is too rough for a meaningful comparison.
        const auto fd1 = central_difference(f, x, h);
        const auto fd2 = central_difference(f, x, 0.5 * h);
        if (!fd1 || !fd2) continue;
        if (std::abs(*fd1 - *fd2) > 1e-6 * (1.0 + std::abs(*fd2))) continue;
        pts.push_back(x);
    }
    return pts;
}

} // namespace testsupport

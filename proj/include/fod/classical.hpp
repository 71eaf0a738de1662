#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fod/errors.hpp"
#include "fod/expr.hpp"
#include "fod/fractional_order.hpp"
#include "fod/gamma.hpp"

namespace fod {

// Classical fractional operators of order 0 < alpha < 1:
//
//   Euler (power rule)     c Gamma(m+1)/Gamma(m-alpha+1) x^(m-alpha)
//   Riemann-Liouville      1/Gamma(1-alpha) d/dt  int_a^t f(v) (t-v)^-alpha dv
//   Caputo                 1/Gamma(1-alpha)       int_a^t f'(v) (t-v)^-alpha dv
//
// The weakly singular integrals use product trapezoid quadrature: f (or f')
// is interpolated linearly on each panel and the kernel weight (t-v)^-alpha
// is integrated exactly, so the endpoint singularity costs no accuracy order.
// The outer d/dt of Riemann-Liouville is a central difference with step equal
// to the panel width.

/// Lower limit a, evaluation point t > a, and order with ceil(alpha) = 1.
struct ClassicalParams {
    double a = 0.0;
    double t = 1.0;
    FractionalOrder alpha = FractionalOrder::rational(2, 3);

    int n() const { return static_cast<int>(std::ceil(alpha.value())); }
};

struct QuadratureConfig {
    int panels = 4096;
    int refine_levels = 6;  ///< doublings reported by convergence_table
};

namespace detail {

inline void require_classical(const ClassicalParams& p) {
    if (!(p.t > p.a)) throw DomainError("requires t > a");
    const double al = p.alpha.value();
    if (!(al > 0.0 && al < 1.0))
        throw DomainError("numeric path supports 0 < alpha < 1, got " + p.alpha.to_string());
}

inline void require_panels(const QuadratureConfig& q) {
    if (q.panels < 8) throw DomainError("need at least 8 panels");
}

inline double eval_or_throw(const Expr& f, double x) {
    const EvalResult r = evaluate(f, x);
    if (!r.is_ok())
        throw DomainError(std::string("integrand not evaluable at ") + std::to_string(x) +
                          " (" + status_name(r.status) + ")");
    return r.value;
}

/// int_a^T g(v) (T-v)^-alpha dv by product trapezoid on N panels.
inline double weakly_singular_integral(const Expr& g, double a, double T, double alpha,
                                       int panels) {
    const double dt = (T - a) / panels;
    double sum = 0.0, comp = 0.0;  // Kahan
    double f_lo = eval_or_throw(g, a);
    for (int i = 0; i < panels; ++i) {
        const double tau_lo = (panels - i) * dt;        // T - v_i
        const double tau_hi = (panels - i - 1) * dt;    // T - v_{i+1}
        const double f_hi = eval_or_throw(g, a + (i + 1) * dt);
        const double m0 =
            (std::pow(tau_lo, 1.0 - alpha) - std::pow(tau_hi, 1.0 - alpha)) / (1.0 - alpha);
        const double m1 =
            (std::pow(tau_lo, 2.0 - alpha) - std::pow(tau_hi, 2.0 - alpha)) / (2.0 - alpha);
        const double slope = (f_hi - f_lo) / dt;
        const double term = f_lo * m0 + slope * (tau_lo * m0 - m1);
        const double y = term - comp;
        const double t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
        f_lo = f_hi;
    }
    return sum;
}

} // namespace detail

/// Power-rule operator on the monomial c x^m, exact formula evaluation.
inline double euler_fod(double m, double alpha, double x, double c = 1.0) {
    if (!(x > 0.0)) throw DomainError("euler operator requires x > 0");
    const double z = m - alpha + 1.0;
    if (z <= 0.0 && z == std::floor(z))
        throw DomainError("gamma pole: m - alpha + 1 is a non-positive integer");
    return c * gamma_fn(m + 1.0) / gamma_fn(z) * std::pow(x, m - alpha);
}

/// Riemann-Liouville derivative: fractional integral by product trapezoid,
/// then a central difference in t with step tied to the panel width.
inline double rl_fod(const Expr& f, const ClassicalParams& p, const QuadratureConfig& q = {}) {
    detail::require_classical(p);
    detail::require_panels(q);
    const double alpha = p.alpha.value();
    const double dt = (p.t - p.a) / q.panels;
    const double hi = detail::weakly_singular_integral(f, p.a, p.t + dt, alpha, q.panels);
    const double lo = detail::weakly_singular_integral(f, p.a, p.t - dt, alpha, q.panels);
    const double value = (hi - lo) / (2.0 * dt) / gamma_fn(1.0 - alpha);
    if (!std::isfinite(value)) throw NonConvergenceError("riemann-liouville quadrature blew up");
    return value;
}

/// Caputo derivative: product-trapezoid integral of f'(v) (t-v)^-alpha.
inline double caputo_fod(const Expr& f, const ClassicalParams& p, const QuadratureConfig& q = {}) {
    detail::require_classical(p);
    detail::require_panels(q);
    const Expr df = derivative(f);
    const double alpha = p.alpha.value();
    const double value =
        detail::weakly_singular_integral(df, p.a, p.t, alpha, q.panels) / gamma_fn(1.0 - alpha);
    if (!std::isfinite(value)) throw NonConvergenceError("caputo quadrature blew up");
    return value;
}

/// Grunwald-Letnikov finite-difference form of the Riemann-Liouville
/// derivative; an independent discretization used to cross-check rl_fod.
inline double rl_fod_gl(const Expr& f, const ClassicalParams& p, int steps = 4096) {
    detail::require_classical(p);
    if (steps < 8) throw DomainError("need at least 8 steps");
    const double alpha = p.alpha.value();
    const double h = (p.t - p.a) / steps;
    double w = 1.0;
    double sum = detail::eval_or_throw(f, p.t), comp = 0.0;
    for (int j = 1; j <= steps; ++j) {
        w *= (static_cast<double>(j) - 1.0 - alpha) / static_cast<double>(j);
        const double term = w * detail::eval_or_throw(f, p.t - j * h);
        const double y = term - comp;
        const double t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
    }
    const double value = sum * std::pow(h, -alpha);
    if (!std::isfinite(value)) throw NonConvergenceError("grunwald-letnikov sum blew up");
    return value;
}

enum class ClassicalMethod { euler, riemann_liouville, caputo };
enum class RefFamily { constant, identity };

/// Analytic values of the three operators on f = c and f = x, used as the
/// quadrature oracle. General closed forms for 0 < alpha < 1:
///   euler  c:   c t^-alpha / Gamma(1-alpha)
///   euler  x:   Gamma(2)/Gamma(2-alpha) t^(1-alpha)
///   rl     c:   c (t-a)^-alpha / Gamma(1-alpha)
///   rl     x:   [alpha/(1-alpha) (t-a)^(1-alpha) + t (t-a)^-alpha] / Gamma(1-alpha)
///   caputo c:   0
///   caputo x:   (t-a)^(1-alpha) / Gamma(2-alpha)
inline double reference_value(ClassicalMethod method, RefFamily family,
                              const ClassicalParams& p, double c = 1.0) {
    const double alpha = p.alpha.value();
    if (method == ClassicalMethod::euler) {
        if (!(p.t > 0.0)) throw DomainError("euler reference requires t > 0");
        if (family == RefFamily::constant) return euler_fod(0.0, alpha, p.t, c);
        return euler_fod(1.0, alpha, p.t, 1.0);
    }
    detail::require_classical(p);
    const double d = p.t - p.a;
    switch (method) {
        case ClassicalMethod::riemann_liouville:
            if (family == RefFamily::constant)
                return c * std::pow(d, -alpha) / gamma_fn(1.0 - alpha);
            return (alpha / (1.0 - alpha) * std::pow(d, 1.0 - alpha) +
                    p.t * std::pow(d, -alpha)) /
                   gamma_fn(1.0 - alpha);
        case ClassicalMethod::caputo:
            if (family == RefFamily::constant) return 0.0;
            return std::pow(d, 1.0 - alpha) / gamma_fn(2.0 - alpha);
        default:
            throw DomainError("unsupported method/family combination");
    }
}

/// Errors |numeric - reference| while panels double, starting at q.panels,
/// one row per refinement level. Used to measure the observed order.
inline std::vector<double> convergence_table(const Expr& f, ClassicalMethod method,
                                             const ClassicalParams& p, RefFamily family,
                                             double c, const QuadratureConfig& q) {
    if (method == ClassicalMethod::euler)
        throw DomainError("convergence table applies to the quadrature methods");
    std::vector<double> errs;
    const double ref = reference_value(method, family, p, c);
    int panels = q.panels;
    for (int l = 0; l < q.refine_levels; ++l, panels *= 2) {
        QuadratureConfig level{panels, 1};
        const double v = method == ClassicalMethod::caputo ? caputo_fod(f, p, level)
                                                           : rl_fod(f, p, level);
        errs.push_back(std::abs(v - ref));
    }
    return errs;
}

} // namespace fod

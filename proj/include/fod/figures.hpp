#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "fod/classical.hpp"
#include "fod/csv.hpp"
#include "fod/errors.hpp"
#include "fod/expr.hpp"
#include "fod/fractional_order.hpp"
#include "fod/gamma.hpp"
#include "fod/karci.hpp"

namespace fod {

// Built-in figure specifications and the CSV builders behind the CLI
// `figure`, `grid`, and `compare` commands.
//
// Figures 1-3 replay the original Matlab listings verbatim on the integer
// grid i = 1..100 (figure 2 keeps the listing's negated kernel antiderivative
// even though direct evaluation of the fractional integral gives the opposite
// sign; see README). Figures 4-16 sample the order-alpha derivative across
// a fixed order set plus the function itself.

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int count = 200;
};

inline std::vector<double> make_grid(const GridSpec& g) {
    if (g.count < 1 || !(g.max >= g.min)) throw DomainError("bad grid");
    std::vector<double> xs;
    xs.reserve(g.count);
    if (g.count == 1) {
        xs.push_back(g.min);
        return xs;
    }
    const double step = (g.max - g.min) / (g.count - 1);
    for (int i = 0; i < g.count; ++i) xs.push_back(g.min + i * step);
    return xs;
}

struct FigureSpec {
    int id = 0;
    std::string description;
    std::string function;                 ///< empty for the constant-family figures
    std::vector<FractionalOrder> orders;  ///< karci figures only
    GridSpec grid;
};

struct NumericOptions {
    int panels = 4096;
    OracleConfig oracle{};
};

enum class Method { karci, karci_oracle, euler, rl, caputo };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::karci: return "karci";
        case Method::karci_oracle: return "karci-oracle";
        case Method::euler: return "euler";
        case Method::rl: return "rl";
        case Method::caputo: return "caputo";
    }
    return "?";
}

inline Method parse_method(const std::string& name) {
    if (name == "karci") return Method::karci;
    if (name == "karci-oracle") return Method::karci_oracle;
    if (name == "euler") return Method::euler;
    if (name == "rl") return Method::rl;
    if (name == "caputo") return Method::caputo;
    throw DomainError("unknown method '" + name + "'");
}

namespace detail {

/// Matlab-style power: principal complex branch for a negative base.
inline std::complex<double> principal_pow(double base, double expo) {
    if (base >= 0.0) return std::pow(base, expo);
    return std::polar(std::pow(-base, expo), M_PI * expo);
}

inline std::string alpha_series(const FractionalOrder& a) {
    return "alpha=" + format_value(a.value());
}

inline void append_gallery_series(std::vector<CsvRecord>& out, const Expr& f,
                                  const std::vector<FractionalOrder>& orders,
                                  const std::vector<double>& xs) {
    for (const auto& a : orders) {
        const std::string name = alpha_series(a);
        for (const double x : xs) {
            const FodResult r = fod_value(f, a, x);
            if (!r.is_ok()) continue;
            const auto cls = classify(f, a, x);
            out.push_back({x, name, r.value.re, r.value.im,
                           cls.cls == Classification::complex ? "complex" : "real"});
        }
    }
    for (const double x : xs) {
        const EvalResult v = evaluate(f, x);
        if (!v.is_ok()) continue;
        out.push_back({x, "f", v.value, 0.0, "real"});
    }
}

} // namespace detail

inline FigureSpec figure_spec(int id) {
    switch (id) {
        case 1:
            return {1, "power-rule operator on f(x)=c, alpha=2/3, c in {5,10,-5,-10}", "",
                    {}, {1.0, 100.0, 100}};
        case 2:
            return {2, "riemann-liouville listing on f(x)=c, alpha=2/3, a=0.5", "",
                    {}, {1.0, 100.0, 100}};
        case 3:
            return {3, "euler/riemann-liouville/caputo listings on f(x)=x, a=2.5", "x",
                    {}, {1.0, 100.0, 100}};
        case 4:
            return {4, "orders -0.5..2.5 on x^2+3x+4", "x^2+3*x+4",
                    {FractionalOrder::rational(-1, 2), FractionalOrder::rational(1, 2),
                     FractionalOrder::rational(1, 1), FractionalOrder::rational(3, 2),
                     FractionalOrder::rational(5, 2)},
                    {0.5, 10.0, 200}};
        case 5:
            return {5, "orders -0.5..2.5 on 1/(x^2+3x+4)", "1/(x^2+3*x+4)",
                    {FractionalOrder::rational(-1, 2), FractionalOrder::rational(1, 2),
                     FractionalOrder::rational(1, 1), FractionalOrder::rational(3, 2),
                     FractionalOrder::rational(5, 2)},
                    {0.005, 1.0, 200}};
        case 6:
            return {6, "orders -2.5..-0.5 on x^2+3x+0.001", "x^2+3*x+0.001",
                    {FractionalOrder::rational(-5, 2), FractionalOrder::rational(-2, 1),
                     FractionalOrder::rational(-3, 2), FractionalOrder::rational(-1, 1),
                     FractionalOrder::rational(-1, 2)},
                    {0.001, 0.1, 200}};
        case 7:
            return {7, "orders -2.5..-0.5 on 1/(x^2+3x+0.001)", "1/(x^2+3*x+0.001)",
                    {FractionalOrder::rational(-5, 2), FractionalOrder::rational(-2, 1),
                     FractionalOrder::rational(-3, 2), FractionalOrder::rational(-1, 1),
                     FractionalOrder::rational(-1, 2)},
                    {0.001, 0.1, 200}};
        default: {
            if (id < 8 || id > 16) throw DomainError("figure id must be in 1..16");
            static const char* exprs[9] = {
                "sin(x)", "cos(x)", "tan(x)", "cot(x)", "x^4-5*x^3+x-2",
                "1/(x^4-5*x^3+x-2)", "ln(x)", "e^x", "2^x"};
            static const GridSpec grids[9] = {
                {0.1, 6.3, 200}, {0.1, 6.3, 200}, {0.1, 1.5, 200}, {0.1, 3.0, 200},
                {0.1, 6.0, 200}, {0.1, 4.5, 200}, {0.1, 10.0, 200}, {0.1, 5.0, 200},
                {0.1, 5.0, 200}};
            FigureSpec s;
            s.id = id;
            s.function = exprs[id - 8];
            s.description = std::string("orders 0.5..2.5 on ") + exprs[id - 8];
            s.orders = {FractionalOrder::rational(1, 2), FractionalOrder::rational(1, 1),
                        FractionalOrder::rational(3, 2), FractionalOrder::rational(2, 1),
                        FractionalOrder::rational(5, 2)};
            s.grid = grids[id - 8];
            return s;
        }
    }
}

/// Rows for one figure; the flag says whether the classification column is
/// present (it is for the order-gallery figures 4-16).
inline std::pair<std::vector<CsvRecord>, bool> figure_records(int id) {
    const FigureSpec spec = figure_spec(id);
    std::vector<CsvRecord> out;
    if (id == 1 || id == 2) {
        static const double cs[4] = {5.0, 10.0, -5.0, -10.0};
        const double g13 = gamma_fn(1.0 / 3.0);
        for (const double c : cs) {
            const std::string name = "c=" + format_value(c);
            for (int i = 1; i <= 100; ++i) {
                const double x = i;
                double v;
                if (id == 1) {
                    v = c / g13 * std::pow(x, -2.0 / 3.0);
                } else {
                    v = c / g13 * (-1.0 / std::pow(x - 0.5, 2.0 / 3.0));
                }
                out.push_back({x, name, v, 0.0, ""});
            }
        }
        return {std::move(out), false};
    }
    if (id == 3) {
        const double a = 2.5;
        const double g13 = gamma_fn(1.0 / 3.0);
        const double euler_coeff = gamma_fn(2.0) / gamma_fn(4.0 / 3.0);
        for (int i = 1; i <= 100; ++i)
            out.push_back({static_cast<double>(i), "euler",
                           euler_coeff * std::pow(static_cast<double>(i), 1.0 / 3.0), 0.0, ""});
        for (int i = 1; i <= 100; ++i) {
            const double d = i - a;
            const std::complex<double> v =
                (3.0 * a * detail::principal_pow(d, 2.0 / 3.0) +
                 2.25 * detail::principal_pow(d, 4.0 / 3.0)) /
                g13;
            out.push_back({static_cast<double>(i), "riemann-liouville", v.real(), v.imag(), ""});
        }
        for (int i = 1; i <= 100; ++i) {
            const double d = i - a;
            const std::complex<double> v = 3.0 * detail::principal_pow(d, 1.0 / 3.0) / g13;
            out.push_back({static_cast<double>(i), "caputo", v.real(), v.imag(), ""});
        }
        return {std::move(out), false};
    }
    const Expr f = parse(spec.function);
    detail::append_gallery_series(out, f, spec.orders, make_grid(spec.grid));
    return {std::move(out), true};
}

/// Writes figure_<id>.csv into `dir` (created if absent); returns the path.
inline std::filesystem::path emit_figure(int id, const std::filesystem::path& dir) {
    auto [records, with_cls] = figure_records(id);
    std::filesystem::create_directories(dir);
    char name[32];
    std::snprintf(name, sizeof(name), "figure_%02d.csv", id);
    const std::filesystem::path path = dir / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open " + path.string() + " for writing");
    write_csv(os, records, with_cls);
    if (!os) throw DomainError("write failed for " + path.string());
    return path;
}

/// Companion gnuplot script plotting the real component of each series in
/// the figure's CSV. Convenience only; the CSV is the product.
inline std::filesystem::path emit_gnuplot_script(int id, const std::filesystem::path& dir) {
    auto [records, with_cls] = figure_records(id);
    (void)with_cls;
    std::vector<std::string> series;
    for (const auto& r : records)
        if (std::find(series.begin(), series.end(), r.series) == series.end())
            series.push_back(r.series);
    std::filesystem::create_directories(dir);
    char csv_name[32], gp_name[32];
    std::snprintf(csv_name, sizeof(csv_name), "figure_%02d.csv", id);
    std::snprintf(gp_name, sizeof(gp_name), "figure_%02d.gp", id);
    const std::filesystem::path path = dir / gp_name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open " + path.string() + " for writing");
    os << "set datafile separator ','\n";
    os << "set key outside\n";
    os << "set title '" << figure_spec(id).description << "'\n";
    os << "plot \\\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        os << "  '" << csv_name << "' using (strcol(2) eq '" << series[i]
           << "' ? $1 : NaN):3 with lines title '" << series[i] << "'";
        os << (i + 1 < series.size() ? ", \\\n" : "\n");
    }
    if (!os) throw DomainError("write failed for " + path.string());
    return path;
}

/// Single-series sweep used by the CLI `grid` command.
inline std::pair<std::vector<CsvRecord>, bool> grid_records(const Expr& f, Method method,
                                                            const FractionalOrder& alpha,
                                                            const GridSpec& grid, double a,
                                                            const NumericOptions& opt = {}) {
    std::vector<CsvRecord> out;
    const std::string name = method_name(method);
    const bool karci_family = method == Method::karci || method == Method::karci_oracle;
    for (const double x : make_grid(grid)) {
        switch (method) {
            case Method::karci:
            case Method::karci_oracle: {
                const FodResult r = method == Method::karci
                                        ? fod_value(f, alpha, x)
                                        : fod_limit_oracle(f, alpha, x, opt.oracle);
                if (!r.is_ok()) continue;
                const auto cls = classify(f, alpha, x);
                out.push_back({x, name, r.value.re, r.value.im,
                               cls.cls == Classification::complex ? "complex" : "real"});
                break;
            }
            case Method::euler: {
                const auto mono = extract_monomial(f);
                if (!mono) throw DomainError("euler method needs a monomial c*x^m");
                if (!(x > 0.0)) continue;
                out.push_back({x, name,
                               euler_fod(mono->exponent, alpha.value(), x, mono->coefficient),
                               0.0, "real"});
                break;
            }
            case Method::rl:
            case Method::caputo: {
                if (!(x > a)) continue;
                ClassicalParams p{a, x, alpha};
                QuadratureConfig q{opt.panels, 1};
                const double v = method == Method::rl ? rl_fod(f, p, q) : caputo_fod(f, p, q);
                out.push_back({x, name, v, 0.0, "real"});
                break;
            }
        }
    }
    return {std::move(out), karci_family};
}

/// Method-comparison sweep used by the CLI `compare` command: one series per
/// applicable method. euler appears only for monomials, rl/caputo only for
/// 0 < alpha < 1 with the grid above the lower limit.
inline std::vector<CsvRecord> compare_records(const Expr& f, const FractionalOrder& alpha,
                                              const GridSpec& grid, double a,
                                              const NumericOptions& opt = {}) {
    std::vector<CsvRecord> out;
    const std::vector<double> xs = make_grid(grid);
    for (const double x : xs) {
        const FodResult r = fod_value(f, alpha, x);
        if (!r.is_ok()) continue;
        const auto cls = classify(f, alpha, x);
        out.push_back({x, "karci", r.value.re, r.value.im,
                       cls.cls == Classification::complex ? "complex" : "real"});
    }
    for (const double x : xs) {
        const FodResult r = fod_limit_oracle(f, alpha, x, opt.oracle);
        if (!r.is_ok()) continue;
        const auto cls = classify(f, alpha, x);
        out.push_back({x, "karci-oracle", r.value.re, r.value.im,
                       cls.cls == Classification::complex ? "complex" : "real"});
    }
    if (const auto mono = extract_monomial(f)) {
        for (const double x : xs) {
            if (!(x > 0.0)) continue;
            const double z = mono->exponent - alpha.value() + 1.0;
            if (z <= 0.0 && z == std::floor(z)) continue;
            out.push_back({x, "euler",
                           euler_fod(mono->exponent, alpha.value(), x, mono->coefficient), 0.0,
                           "real"});
        }
    }
    const double av = alpha.value();
    if (av > 0.0 && av < 1.0) {
        QuadratureConfig q{opt.panels, 1};
        for (const double x : xs) {
            if (!(x > a)) continue;
            ClassicalParams p{a, x, alpha};
            out.push_back({x, "rl", rl_fod(f, p, q), 0.0, "real"});
        }
        for (const double x : xs) {
            if (!(x > a)) continue;
            ClassicalParams p{a, x, alpha};
            out.push_back({x, "caputo", caputo_fod(f, p, q), 0.0, "real"});
        }
    }
    return out;
}

} // namespace fod

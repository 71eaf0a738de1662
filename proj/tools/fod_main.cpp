// Command-line front end: point evaluation, grid sweeps, method comparison,
// and the bundled figure datasets. Exit codes: 0 ok, 2 expression parse
// error, 3 domain error or pole, 4 non-convergence.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fod/fod.hpp"

namespace {

std::string sig12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%#.12g", v);
    return buf;
}

std::string format_cvalue(const fod::CValue& v, fod::Classification cls) {
    std::string out = sig12(v.re);
    if (v.im == 0.0) {
        out += " + 0i";
    } else if (v.im < 0.0) {
        out += " - " + sig12(-v.im) + "i";
    } else {
        out += " + " + sig12(v.im) + "i";
    }
    out += cls == fod::Classification::complex ? " (complex)" : " (real)";
    return out;
}

int exit_for(fod::Status s) {
    switch (s) {
        case fod::Status::ok: return 0;
        case fod::Status::no_convergence: return 4;
        default: return 3;
    }
}

int fail(fod::Status s) {
    std::cerr << "error: " << fod::status_name(s) << "\n";
    return exit_for(s);
}

void write_records(const std::vector<fod::CsvRecord>& records, bool with_cls,
                   const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        fod::write_csv(std::cout, records, with_cls);
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw fod::DomainError("cannot open " + out_path + " for writing");
    fod::write_csv(os, records, with_cls);
}

struct EvalArgs {
    std::string expr;
    std::string method = "karci";
    std::string alpha = "1";
    double x = 1.0;
    std::optional<double> a;
    std::optional<double> m;
    double c = 1.0;
    int panels = 4096;
    double h0 = 1e-2;
    double tol = 1e-9;
    int kmax = 20;
};

fod::OracleConfig oracle_config(const EvalArgs& args) {
    return {args.h0, args.kmax, args.tol};
}

int run_eval(const EvalArgs& args) {
    const fod::FractionalOrder alpha = fod::parse_order(args.alpha);
    const fod::Method method = fod::parse_method(args.method);
    switch (method) {
        case fod::Method::karci:
        case fod::Method::karci_oracle: {
            const fod::Expr f = fod::parse(args.expr);
            const fod::FodResult r = method == fod::Method::karci
                                         ? fod::fod_value(f, alpha, args.x)
                                         : fod::fod_limit_oracle(f, alpha, args.x,
                                                                 oracle_config(args));
            if (!r.is_ok()) return fail(r.status);
            const auto cls = fod::classify(f, alpha, args.x);
            std::cout << format_cvalue(r.value, cls.cls) << "\n";
            return 0;
        }
        case fod::Method::euler: {
            double m = 0.0, c = 1.0;
            if (args.m) {
                m = *args.m;
                c = args.c;
            } else {
                const auto mono = fod::extract_monomial(fod::parse(args.expr));
                if (!mono)
                    throw fod::DomainError("euler method needs a monomial c*x^m (or --m/--c)");
                m = mono->exponent;
                c = mono->coefficient;
            }
            std::cout << sig12(fod::euler_fod(m, alpha.value(), args.x, c)) << "\n";
            return 0;
        }
        case fod::Method::rl:
        case fod::Method::caputo: {
            if (!args.a) throw fod::DomainError("rl/caputo require --a (lower limit)");
            const fod::Expr f = fod::parse(args.expr);
            fod::ClassicalParams p{*args.a, args.x, alpha};
            fod::QuadratureConfig q{args.panels, 1};
            const double v = method == fod::Method::rl ? fod::rl_fod(f, p, q)
                                                       : fod::caputo_fod(f, p, q);
            std::cout << sig12(v) << "\n";
            return 0;
        }
    }
    return 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional-order derivative calculator"};
    app.require_subcommand(1);

    EvalArgs ev;
    CLI::App* eval = app.add_subcommand("eval", "evaluate one derivative at a point");
    eval->add_option("--expr", ev.expr, "expression in x")->required();
    eval->add_option("--method", ev.method, "karci|karci-oracle|euler|rl|caputo");
    eval->add_option("--alpha", ev.alpha, "order, real or beta/delta")->required();
    eval->add_option("--x", ev.x, "evaluation point")->required();
    eval->add_option("--a", ev.a, "lower limit for rl/caputo");
    eval->add_option("--m", ev.m, "monomial exponent for euler");
    eval->add_option("--c", ev.c, "monomial coefficient for euler");
    eval->add_option("--panels", ev.panels, "quadrature panels");
    eval->add_option("--h0", ev.h0, "oracle initial step");
    eval->add_option("--tol", ev.tol, "oracle step-to-step tolerance");
    eval->add_option("--kmax", ev.kmax, "oracle extrapolation depth");

    EvalArgs gr;
    fod::GridSpec grid_spec;
    std::string grid_out;
    CLI::App* grid = app.add_subcommand("grid", "sweep one method over a grid, CSV out");
    grid->add_option("--expr", gr.expr, "expression in x")->required();
    grid->add_option("--method", gr.method, "karci|karci-oracle|euler|rl|caputo");
    grid->add_option("--alpha", gr.alpha, "order, real or beta/delta")->required();
    grid->add_option("--min", grid_spec.min, "grid start")->required();
    grid->add_option("--max", grid_spec.max, "grid end")->required();
    grid->add_option("--count", grid_spec.count, "grid points");
    grid->add_option("--a", gr.a, "lower limit for rl/caputo");
    grid->add_option("--panels", gr.panels, "quadrature panels");
    grid->add_option("--h0", gr.h0, "oracle initial step");
    grid->add_option("--tol", gr.tol, "oracle step-to-step tolerance");
    grid->add_option("--kmax", gr.kmax, "oracle extrapolation depth");
    grid->add_option("--out", grid_out, "output file ('-' for stdout)");

    int figure_id = 0;
    std::string figure_out = ".";
    bool figure_gnuplot = false;
    CLI::App* figure = app.add_subcommand("figure", "emit a bundled figure dataset as CSV");
    figure->add_option("--id", figure_id, "figure id, 1..16")->required();
    figure->add_option("--out", figure_out, "output directory");
    figure->add_flag("--gnuplot", figure_gnuplot, "also write a companion gnuplot script");

    EvalArgs cp;
    fod::GridSpec cp_grid;
    std::string cp_out;
    CLI::App* compare = app.add_subcommand("compare", "all applicable methods over a grid");
    compare->add_option("--expr", cp.expr, "expression in x")->required();
    compare->add_option("--alpha", cp.alpha, "order, real or beta/delta")->required();
    compare->add_option("--min", cp_grid.min, "grid start")->required();
    compare->add_option("--max", cp_grid.max, "grid end")->required();
    compare->add_option("--count", cp_grid.count, "grid points");
    compare->add_option("--a", cp.a, "lower limit for rl/caputo (default 0.5)");
    compare->add_option("--panels", cp.panels, "quadrature panels");
    compare->add_option("--out", cp_out, "output file ('-' for stdout)");

    EvalArgs orc;
    bool raw = false;
    double raw_h = 1e-3;
    CLI::App* oracle = app.add_subcommand("oracle", "defining-limit evaluation at a point");
    oracle->add_option("--expr", orc.expr, "expression in x")->required();
    oracle->add_option("--alpha", orc.alpha, "order, real or beta/delta")->required();
    oracle->add_option("--x", orc.x, "evaluation point")->required();
    oracle->add_option("--h0", orc.h0, "initial step");
    oracle->add_option("--tol", orc.tol, "step-to-step tolerance");
    oracle->add_option("--kmax", orc.kmax, "extrapolation depth");
    oracle->add_flag("--raw", raw, "print the raw difference quotient at --step instead");
    oracle->add_option("--step", raw_h, "finite step for --raw");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return run_eval(ev);
        if (grid->parsed()) {
            const fod::Expr f = fod::parse(gr.expr);
            const fod::Method method = fod::parse_method(gr.method);
            if ((method == fod::Method::rl || method == fod::Method::caputo) && !gr.a)
                throw fod::DomainError("rl/caputo require --a (lower limit)");
            fod::NumericOptions opt{gr.panels, oracle_config(gr)};
            auto [records, with_cls] =
                fod::grid_records(f, method, fod::parse_order(gr.alpha), grid_spec,
                                  gr.a.value_or(0.0), opt);
            write_records(records, with_cls, grid_out);
            return 0;
        }
        if (figure->parsed()) {
            const auto path = fod::emit_figure(figure_id, figure_out);
            std::cerr << "wrote " << path.string() << "\n";
            if (figure_gnuplot) {
                const auto gp = fod::emit_gnuplot_script(figure_id, figure_out);
                std::cerr << "wrote " << gp.string() << "\n";
            }
            return 0;
        }
        if (compare->parsed()) {
            const fod::Expr f = fod::parse(cp.expr);
            fod::NumericOptions opt{cp.panels, oracle_config(cp)};
            auto records = fod::compare_records(f, fod::parse_order(cp.alpha), cp_grid,
                                                cp.a.value_or(0.5), opt);
            write_records(records, true, cp_out);
            return 0;
        }
        if (oracle->parsed()) {
            const fod::Expr f = fod::parse(orc.expr);
            const fod::FractionalOrder alpha = fod::parse_order(orc.alpha);
            const fod::FodResult r =
                raw ? fod::fod_raw_quotient(f, alpha, orc.x, raw_h)
                    : fod::fod_limit_oracle(f, alpha, orc.x, oracle_config(orc));
            if (!r.is_ok()) return fail(r.status);
            const auto cls = fod::classify(f, alpha, orc.x);
            std::cout << format_cvalue(r.value, cls.cls) << "\n";
            return 0;
        }
    } catch (const fod::ParseError& e) {
        std::cerr << "parse error at position " << e.position() << ": " << e.what() << "\n";
        return 2;
    } catch (const fod::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const fod::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

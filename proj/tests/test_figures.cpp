#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fod/figures.hpp"
#include "support.hpp"

using namespace fod;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<CsvRecord> series_of(const std::vector<CsvRecord>& records,
                                 const std::string& name) {
    std::vector<CsvRecord> out;
    for (const auto& r : records)
        if (r.series == name) out.push_back(r);
    return out;
}

} // namespace

TEST_CASE("figure 1 replays the power-rule listing") {
    auto [records, with_cls] = figure_records(1);
    CHECK(!with_cls);
    CHECK(records.size() == 400);
    const double g13 = gamma_fn(1.0 / 3.0);
    CHECK(records[0].x == 1.0);
    CHECK(records[0].series == "c=5");
    CHECK(records[0].re == doctest::Approx(5.0 / g13).epsilon(1e-14));
    for (const auto& r : series_of(records, "c=-10")) {
        CHECK(r.re == doctest::Approx(-10.0 / g13 * std::pow(r.x, -2.0 / 3.0)).epsilon(1e-14));
        CHECK(r.im == 0.0);
    }
}

TEST_CASE("figure 2 replays the riemann-liouville listing verbatim") {
    auto [records, with_cls] = figure_records(2);
    CHECK(!with_cls);
    REQUIRE(records.size() == 400);
    const double g13 = gamma_fn(1.0 / 3.0);
    // the listing carries a negated kernel antiderivative: c>0 rows are negative
    const auto c5 = series_of(records, "c=5");
    REQUIRE(c5.size() == 100);
    for (const auto& r : c5) {
        CHECK(r.re == doctest::Approx(5.0 / g13 * (-1.0 / std::pow(r.x - 0.5, 2.0 / 3.0)))
                          .epsilon(1e-14));
        CHECK(r.re < 0.0);
    }
}

TEST_CASE("figure 3 replays the three-method listing with a = 2.5") {
    auto [records, with_cls] = figure_records(3);
    CHECK(!with_cls);
    REQUIRE(records.size() == 300);
    const double g13 = gamma_fn(1.0 / 3.0);
    const auto euler = series_of(records, "euler");
    REQUIRE(euler.size() == 100);
    for (const auto& r : euler)
        CHECK(r.re == doctest::Approx(euler_fod(1.0, 2.0 / 3.0, r.x)).epsilon(1e-13));
    const auto riemann = series_of(records, "riemann-liouville");
    REQUIRE(riemann.size() == 100);
    // below the lower limit the listing's powers go complex (principal branch)
    CHECK(riemann[0].x == 1.0);
    CHECK(riemann[0].im != 0.0);
    for (const auto& r : riemann) {
        if (r.x <= 2.5) continue;
        const double d = r.x - 2.5;
        const double want =
            (3.0 * 2.5 * std::pow(d, 2.0 / 3.0) + 2.25 * std::pow(d, 4.0 / 3.0)) / g13;
        CHECK(r.re == doctest::Approx(want).epsilon(1e-13));
        CHECK(r.im == 0.0);
    }
    const auto caputo = series_of(records, "caputo");
    REQUIRE(caputo.size() == 100);
    for (const auto& r : caputo) {
        if (r.x <= 2.5) continue;
        CHECK(r.re ==
              doctest::Approx(3.0 * std::pow(r.x - 2.5, 1.0 / 3.0) / g13).epsilon(1e-13));
    }
}

TEST_CASE("gallery figures carry the classification column and complex lobes") {
    auto [records, with_cls] = figure_records(8);
    CHECK(with_cls);
    bool saw_complex = false;
    for (const auto& r : series_of(records, "alpha=0.5")) {
        if (r.classification == "complex") {
            saw_complex = true;
            CHECK(r.im != 0.0);
        }
    }
    CHECK(saw_complex);  // sin has negative lobes on the grid
}

TEST_CASE("order-1 series of every gallery figure matches the classical derivative") {
    for (int id = 8; id <= 16; ++id) {
        const FigureSpec spec = figure_spec(id);
        const Expr f = parse(spec.function);
        const Expr df = derivative(f);
        auto [records, with_cls] = figure_records(id);
        const auto series = series_of(records, "alpha=1");
        CHECK(series.size() > 0);
        for (const auto& r : series) {
            const auto d = evaluate(df, r.x);
            REQUIRE(d.is_ok());
            CAPTURE(id);
            CAPTURE(r.x);
            CHECK(std::abs(r.re - d.value) <= 1e-12 * std::max(1.0, std::abs(d.value)));
            CHECK(r.im == 0.0);
        }
    }
}

TEST_CASE("figure emission is byte-deterministic") {
    namespace fs = std::filesystem;
    const fs::path a = "fig_out_a", b = "fig_out_b";
    for (const int id : {1, 3, 4, 8, 13}) {
        const auto pa = emit_figure(id, a);
        const auto pb = emit_figure(id, b);
        CAPTURE(id);
        CHECK(slurp(pa) == slurp(pb));
    }
    CHECK(slurp(a / "figure_01.csv").rfind("x,series,re,im\n", 0) == 0);
    CHECK(slurp(a / "figure_08.csv").rfind("x,series,re,im,classification\n", 0) == 0);
    CHECK(slurp(a / "figure_08.csv").find("\r") == std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("figure ids outside 1..16 are rejected") {
    CHECK_THROWS_AS(figure_spec(0), DomainError);
    CHECK_THROWS_AS(figure_spec(17), DomainError);
    CHECK_THROWS_AS(figure_records(42), DomainError);
}

TEST_CASE("companion gnuplot script lists every series") {
    namespace fs = std::filesystem;
    const fs::path dir = "fig_gp_out";
    emit_figure(8, dir);
    const auto gp = emit_gnuplot_script(8, dir);
    const std::string script = slurp(gp);
    CHECK(script.find("plot") != std::string::npos);
    for (const char* name : {"alpha=0.5", "alpha=1", "alpha=2.5", "f"})
        CHECK(script.find(std::string("'") + name + "'") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("grid sweep on the identity is exactly 1") {
    auto [records, with_cls] = grid_records(parse("x"), Method::karci,
                                            FractionalOrder::rational(2, 3),
                                            {1.0, 3.0, 20}, 0.0);
    CHECK(with_cls);
    REQUIRE(records.size() == 20);
    for (const auto& r : records) {
        CHECK(r.re == 1.0);
        CHECK(r.im == 0.0);
        CHECK(r.classification == "real");
        CHECK(r.series == "karci");
    }
}

TEST_CASE("compare on a constant: local operator and caputo vanish, the others do not") {
    NumericOptions opt;
    opt.panels = 512;
    const auto records = compare_records(parse("5"), FractionalOrder::rational(2, 3),
                                         {1.0, 3.0, 9}, 0.5, opt);
    const auto karci = series_of(records, "karci");
    REQUIRE(karci.size() == 9);
    for (const auto& r : karci) CHECK(r.re == 0.0);
    for (const auto& r : series_of(records, "karci-oracle"))
        CHECK(std::abs(r.re) <= 1e-12);
    const auto euler = series_of(records, "euler");
    REQUIRE(euler.size() == 9);
    for (const auto& r : euler) CHECK(std::abs(r.re) > 0.5);
    const auto rl = series_of(records, "rl");
    REQUIRE(rl.size() == 9);
    for (const auto& r : rl) CHECK(std::abs(r.re) > 0.5);
    const auto caputo = series_of(records, "caputo");
    REQUIRE(caputo.size() == 9);
    for (const auto& r : caputo) CHECK(std::abs(r.re) <= 1e-12);
}

TEST_CASE("compare on the identity: local operator is exactly 1, the others are not") {
    NumericOptions opt;
    opt.panels = 512;
    const auto records = compare_records(parse("x"), FractionalOrder::rational(2, 3),
                                         {1.0, 3.0, 9}, 0.5, opt);
    for (const auto& r : series_of(records, "karci")) CHECK(r.re == 1.0);
    for (const auto& r : series_of(records, "karci-oracle"))
        CHECK(r.re == doctest::Approx(1.0).epsilon(1e-9));
    // the other methods may cross 1 at isolated points but are nowhere
    // identically 1 on the grid
    for (const auto& name : {"euler", "rl", "caputo"}) {
        const auto series = series_of(records, name);
        REQUIRE(series.size() == 9);
        double max_dev = 0.0;
        for (const auto& r : series) max_dev = std::max(max_dev, std::abs(r.re - 1.0));
        CAPTURE(name);
        CHECK(max_dev > 0.05);
    }
}

TEST_CASE("compare at order 1 restricts to the applicable methods") {
    const auto records = compare_records(parse("x"), FractionalOrder::rational(1, 1),
                                         {1.0, 3.0, 5}, 0.5);
    CHECK(series_of(records, "rl").empty());
    CHECK(series_of(records, "caputo").empty());
    for (const auto& r : series_of(records, "karci")) CHECK(r.re == 1.0);
    const auto euler = series_of(records, "euler");
    REQUIRE(euler.size() == 5);
    for (const auto& r : euler) CHECK(r.re == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("value formatting is shortest round-trip") {
    CHECK(format_value(0.5) == "0.5");
    CHECK(format_value(1.0) == "1");
    CHECK(format_value(-2.5) == "-2.5");
    CHECK(format_value(1.0 / 3.0) == "0.3333333333333333");
    double v = 0.1 + 0.2;
    char* end = nullptr;
    const std::string s = format_value(v);
    CHECK(std::strtod(s.c_str(), &end) == v);
}

TEST_CASE("euler grid requires a monomial") {
    CHECK_THROWS_AS(grid_records(parse("sin(x)"), Method::euler,
                                 FractionalOrder::rational(1, 2), {1.0, 2.0, 3}, 0.0),
                    DomainError);
    CHECK(parse_method("karci-oracle") == Method::karci_oracle);
    CHECK_THROWS_AS(parse_method("bogus"), DomainError);
}

#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

namespace fod {

/// Shortest representation that round-trips the double exactly (never more
/// than 17 significant digits). Keeps CSV output byte-deterministic.
inline std::string format_value(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

struct CsvRecord {
    double x = 0.0;
    std::string series;
    double re = 0.0;
    double im = 0.0;
    std::string classification;  ///< empty when the column is absent
};

/// Header `x,series,re,im[,classification]`, UTF-8, '\n' line endings.
inline void write_csv(std::ostream& os, const std::vector<CsvRecord>& records,
                      bool with_classification) {
    os << (with_classification ? "x,series,re,im,classification" : "x,series,re,im") << '\n';
    for (const auto& r : records) {
        os << format_value(r.x) << ',' << r.series << ',' << format_value(r.re) << ','
           << format_value(r.im);
        if (with_classification) os << ',' << r.classification;
        os << '\n';
    }
}

} // namespace fod

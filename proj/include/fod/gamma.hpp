#pragma once

#include <cmath>

#include "fod/errors.hpp"

namespace fod {

namespace detail {

// 13-term Lanczos rational approximation for double precision,
// g = 6.024680040776729583740234375 (Godfrey's coefficient set).
// Numerator/denominator coefficients in ascending degree; the denominator
// is z(z+1)...(z+11).
inline double lanczos_sum(double z) {
    static const double num[13] = {
        23531376880.41075968857200767445163675473,
        42919803642.64909876895789904700198885093,
        35711959237.35566804944018545154716670596,
        17921034426.03720969991975575445893111267,
        6039542586.35202800506429164430729792107,
        1439720407.311721673663223072794912393972,
        248874557.8620541565114603864132294232163,
        31426415.58540019438061423162831820536287,
        2876370.628935372441225409051620849613599,
        186056.2653952234950402949897160456992822,
        8071.672002365816210638002902272250613822,
        210.8242777515793458725097339207133627117,
        2.506628274631000270164908177133837338626,
    };
    static const double den[13] = {
        0.0,
        39916800.0,
        120543840.0,
        150917976.0,
        105258076.0,
        45995730.0,
        13339535.0,
        2637558.0,
        357423.0,
        32670.0,
        1925.0,
        66.0,
        1.0,
    };
    double p = 0.0, q = 0.0;
    for (int i = 12; i >= 0; --i) {
        p = p * z + num[i];
        q = q * z + den[i];
    }
    return p / q;
}

inline constexpr double lanczos_g = 6.024680040776729583740234375;

} // namespace detail

/// Gamma function via the Lanczos rational approximation, with the reflection
/// formula for z < 0.5. Poles at the non-positive integers raise DomainError.
inline double gamma_fn(double z) {
    if (z <= 0.0 && z == std::floor(z))
        throw DomainError("gamma pole at non-positive integer " + std::to_string(z));
    if (z < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return M_PI / (std::sin(M_PI * z) * gamma_fn(1.0 - z));
    }
    const double zgh = z + detail::lanczos_g - 0.5;
    return detail::lanczos_sum(z) * std::pow(zgh, z - 0.5) * std::exp(-zgh);
}

} // namespace fod

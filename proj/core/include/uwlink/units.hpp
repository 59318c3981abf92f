#pragma once

#include <cmath>
#include <limits>

#include "uwlink/errors.hpp"

namespace uwlink {

// Speed of light in nm*THz (equivalently um*GHz * 1e-3): f[THz] = C_NM_THZ / lambda[nm].
inline constexpr double kSpeedOfLightNmThz = 299792.458;
inline constexpr double kPlanckJs = 6.62607015e-34;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double wavelength_to_frequency_thz(double lambda_nm) {
    if (!(lambda_nm > 0.0))
        throw ValidationError("wavelength must be positive, got " + std::to_string(lambda_nm));
    return kSpeedOfLightNmThz / lambda_nm;
}

inline double frequency_to_wavelength_nm(double f_thz) {
    if (!(f_thz > 0.0))
        throw ValidationError("frequency must be positive, got " + std::to_string(f_thz));
    return kSpeedOfLightNmThz / f_thz;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin) {
    if (lin <= 0.0) return -kInf;
    return 10.0 * std::log10(lin);
}

inline double dbm_to_mw(double dbm) {
    if (dbm == -kInf) return 0.0;
    return std::pow(10.0, dbm / 10.0);
}

inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

}  // namespace uwlink

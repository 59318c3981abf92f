#include "uwlink/plan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uwlink/errors.hpp"
#include "uwlink/units.hpp"

namespace uwlink {

double Channel::wavelength_nm() const { return frequency_to_wavelength_nm(center_thz); }

double ChannelPlan::occupied_bandwidth_thz() const {
    return static_cast<double>(channels.size()) * spacing_ghz * 1e-3;
}

double ChannelPlan::min_frequency_thz() const {
    return channels.empty() ? 0.0 : channels.front().center_thz;
}

double ChannelPlan::max_frequency_thz() const {
    return channels.empty() ? 0.0 : channels.back().center_thz;
}

double ChannelPlan::total_power_dbm() const {
    double mw = 0.0;
    for (const auto& ch : channels)
        if (!ch.suppressed) mw += dbm_to_mw(ch.launch_dbm);
    return mw_to_dbm(mw);
}

double ChannelPlan::band_power_dbm(const std::string& band) const {
    double mw = 0.0;
    for (const auto& ch : channels)
        if (ch.band == band && !ch.suppressed) mw += dbm_to_mw(ch.launch_dbm);
    return mw_to_dbm(mw);
}

std::vector<int> ChannelPlan::band_channel_indices(const std::string& band) const {
    std::vector<int> idx;
    for (const auto& ch : channels)
        if (ch.band == band) idx.push_back(ch.index);
    return idx;
}

namespace {

struct BandExtent {
    double f_lo, f_hi;  // THz, from the wavelength edges
};

BandExtent extent_of(const Band& b) {
    return {wavelength_to_frequency_thz(b.end_nm), wavelength_to_frequency_thz(b.start_nm)};
}

}  // namespace

ChannelPlan build_plan(std::vector<Band> bands, double spacing_ghz, double symbol_rate_gbaud) {
    if (bands.empty()) throw ValidationError("build_plan: no bands given");
    if (!(spacing_ghz > 0.0)) throw ValidationError("build_plan: spacing must be positive");
    if (symbol_rate_gbaud > spacing_ghz)
        throw ValidationError("build_plan: symbol rate exceeds grid spacing");

    for (const auto& b : bands) {
        if (!(b.start_nm < b.end_nm))
            throw ValidationError("band " + b.name + ": start_nm must be below end_nm");
        if (b.channel_count < 1)
            throw ValidationError("band " + b.name + ": channel_count must be >= 1");
    }
    // ascending frequency == descending wavelength
    std::sort(bands.begin(), bands.end(),
              [](const Band& a, const Band& b) { return a.end_nm > b.end_nm; });
    for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
        if (extent_of(bands[i]).f_hi > extent_of(bands[i + 1]).f_lo)
            throw ValidationError("bands " + bands[i].name + " and " + bands[i + 1].name +
                                  " overlap in frequency");
    }

    ChannelPlan plan;
    plan.bands = bands;
    plan.spacing_ghz = spacing_ghz;
    plan.symbol_rate_gbaud = symbol_rate_gbaud;
    const double spacing_thz = spacing_ghz * 1e-3;

    int index = 0;
    for (const auto& b : bands) {
        const auto ext = extent_of(b);
        const double required = (b.channel_count - 1) * spacing_thz;
        const double available = ext.f_hi - ext.f_lo;
        if (required > available + spacing_thz) {
            std::ostringstream os;
            os << "band " << b.name << ": " << b.channel_count << " channels need "
               << required << " THz but the wavelength edges span only " << available
               << " THz (counts kept, short-wavelength edge extended)";
            plan.warnings.push_back(os.str());
        }
        for (int k = 0; k < b.channel_count; ++k) {
            Channel ch;
            ch.index = index++;
            ch.center_thz = ext.f_lo + k * spacing_thz;  // anchored at long-wavelength edge
            ch.band = b.name;
            ch.symbol_rate_gbaud = symbol_rate_gbaud;
            ch.launch_dbm = -kInf;
            plan.channels.push_back(ch);
        }
    }
    return plan;
}

ChannelPlan apply_launch_profile(const ChannelPlan& plan, const LaunchProfile& profile) {
    if (plan.empty()) throw ValidationError("apply_launch_profile: empty plan");
    if (profile.total_dbm > profile.safety_cap_dbm && !profile.allow_over_cap) {
        std::ostringstream os;
        os << "launch power " << profile.total_dbm << " dBm exceeds the safety cap "
           << profile.safety_cap_dbm << " dBm; set allow_over_cap to override";
        throw ValidationError(os.str());
    }

    ChannelPlan out = plan;
    const double f_lo = out.min_frequency_thz();
    const double f_hi = out.max_frequency_thz();
    const double slope = (f_hi > f_lo) ? profile.tilt_db / (f_hi - f_lo) : 0.0;

    // Unnormalized shape in dB, then one common offset fixes the budget.
    double sum_mw = 0.0;
    std::vector<double> shape_db(out.size(), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& ch = out.channels[i];
        if (ch.suppressed) continue;
        double db = slope * (ch.center_thz - f_lo);
        auto it = profile.per_band_offset_db.find(ch.band);
        if (it != profile.per_band_offset_db.end()) db += it->second;
        shape_db[i] = db;
        sum_mw += dbm_to_mw(db);
    }
    if (sum_mw <= 0.0)
        throw ValidationError("apply_launch_profile: no unsuppressed channels to power");
    const double offset_db = profile.total_dbm - mw_to_dbm(sum_mw);
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto& ch = out.channels[i];
        ch.launch_dbm = ch.suppressed ? -kInf : shape_db[i] + offset_db;
    }
    return out;
}

ChannelPlan carve_notches(const ChannelPlan& plan, const NotchPlan& notch_plan) {
    ChannelPlan out = plan;
    if (notch_plan.notches.empty()) return out;

    for (const auto& n : notch_plan.notches) {
        if (!(n.width_ghz > 0.0)) throw ValidationError("notch width must be positive");
        bool inside = false;
        for (const auto& b : out.bands) {
            const double f_lo = wavelength_to_frequency_thz(b.end_nm);
            // counts may extend past the declared short-wavelength edge
            double f_hi = wavelength_to_frequency_thz(b.start_nm);
            for (const auto& ch : out.channels)
                if (ch.band == b.name) f_hi = std::max(f_hi, ch.center_thz);
            if (n.center_thz >= f_lo && n.center_thz <= f_hi) inside = true;
        }
        if (!inside) {
            std::ostringstream os;
            os << "notch at " << n.center_thz << " THz lies outside every band";
            throw ValidationError(os.str());
        }
    }

    const double eps = 1e-9;  // THz, guards float comparison at slot boundaries
    for (const auto& n : notch_plan.notches) {
        const double half = 0.5e-3 * n.width_ghz;
        for (auto& ch : out.channels) {
            const double sig_half = 0.5e-3 * ch.symbol_rate_gbaud;
            if (ch.center_thz - sig_half >= n.center_thz - half - eps &&
                ch.center_thz + sig_half <= n.center_thz + half + eps) {
                ch.suppressed = true;
                ch.launch_dbm = -kInf;
            }
        }
        out.carved_notches.push_back(n);
    }
    return out;
}

}  // namespace uwlink

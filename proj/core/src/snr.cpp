#include "uwlink/snr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uwlink/errors.hpp"
#include "uwlink/units.hpp"

namespace uwlink {

double combine_snr_db(double a_db, double b_db, double c_db) {
    double inv = 0.0;
    for (double s : {a_db, b_db, c_db}) {
        if (s == kInf) continue;
        inv += 1.0 / db_to_linear(s);
    }
    return inv > 0.0 ? linear_to_db(1.0 / inv) : kInf;
}

double shannon_rate_gbps(double snr_db, double symbol_rate_gbaud) {
    if (snr_db == -kInf) return 0.0;
    return 2.0 * symbol_rate_gbaud * std::log2(1.0 + db_to_linear(snr_db));
}

namespace {

// Linear interpolation of y(f) from scattered (f, y) samples, nearest beyond
// the hull. Samples must be ascending in f.
double interp(const std::vector<std::pair<double, double>>& fy, double f) {
    if (fy.empty()) throw ValidationError("notch_sweep: nothing to interpolate");
    if (f <= fy.front().first) return fy.front().second;
    if (f >= fy.back().first) return fy.back().second;
    auto it = std::upper_bound(fy.begin(), fy.end(), f,
                               [](double v, const auto& p) { return v < p.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (f - lo.first) / (hi.first - lo.first);
    return lo.second + t * (hi.second - lo.second);
}

}  // namespace

NotchProbeResult notch_sweep(const ChannelPlan& plan, const std::vector<double>& received_mw,
                             const AseRecord& ase_at_rx, const std::vector<double>& snr_nli_db,
                             const std::map<std::string, double>& trx_snr_db) {
    const std::size_t n = plan.size();
    if (received_mw.size() != n || ase_at_rx.ase_mw.size() != n || snr_nli_db.size() != n)
        throw ValidationError("notch_sweep: per-channel vectors do not match the plan");
    if (plan.carved_notches.empty())
        throw ValidationError("notch_sweep: the plan carries no carved notches");

    const double rs_ghz = plan.symbol_rate_gbaud;
    // receiver-referred PSDs, mW per GHz, versus frequency
    std::vector<std::pair<double, double>> ase_psd, nli_psd, sig_psd;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& ch = plan.channels[i];
        ase_psd.emplace_back(ch.center_thz,
                             ase_at_rx.ase_mw[i] / ase_at_rx.reference_bandwidth_ghz);
        if (!ch.suppressed && received_mw[i] > 0.0) {
            const double psd = received_mw[i] / rs_ghz;
            sig_psd.emplace_back(ch.center_thz, psd);
            const double nli =
                snr_nli_db[i] == kInf ? 0.0 : psd / db_to_linear(snr_nli_db[i]);
            nli_psd.emplace_back(ch.center_thz, nli);
        }
    }
    if (sig_psd.empty()) throw ValidationError("notch_sweep: no loaded channels");

    NotchProbeResult res;
    const double osnr_shift_db = linear_to_db(rs_ghz / 12.5);
    for (const auto& notch : plan.carved_notches) {
        // band of the notch = band of the nearest channel
        const Channel* nearest = nullptr;
        for (const auto& ch : plan.channels)
            if (!nearest || std::abs(ch.center_thz - notch.center_thz) <
                                std::abs(nearest->center_thz - notch.center_thz))
                nearest = &ch;
        const double floor_psd =
            interp(ase_psd, notch.center_thz) + interp(nli_psd, notch.center_thz);
        const double signal_psd = interp(sig_psd, notch.center_thz);
        NotchProbe probe;
        probe.frequency_thz = notch.center_thz;
        probe.wavelength_nm = frequency_to_wavelength_nm(notch.center_thz);
        probe.osnr_db = linear_to_db(signal_psd / floor_psd) + osnr_shift_db;
        res.per_band[nearest->band].push_back(probe);
    }
    for (auto& [band, probes] : res.per_band) {
        std::sort(probes.begin(), probes.end(),
                  [](const NotchProbe& a, const NotchProbe& b) {
                      return a.wavelength_nm < b.wavelength_nm;
                  });
        if (probes.size() < 2) {
            std::ostringstream os;
            os << "band " << band << " has " << probes.size()
               << " probe notch(es); at least 2 are required for interpolation";
            throw ValidationError(os.str());
        }
    }

    res.interpolated_link_snr_db.assign(n, kInf);
    res.interpolated_snr_db.assign(n, kInf);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& ch = plan.channels[i];
        auto it = res.per_band.find(ch.band);
        if (it == res.per_band.end()) continue;  // band without probes: no estimate
        std::vector<std::pair<double, double>> wl_osnr;
        for (const auto& p : it->second) wl_osnr.emplace_back(p.wavelength_nm, p.osnr_db);
        const double osnr = interp(wl_osnr, ch.wavelength_nm());
        const double link_snr = osnr - osnr_shift_db;
        res.interpolated_link_snr_db[i] = link_snr;
        auto trx = trx_snr_db.find(ch.band);
        const double trx_db = trx != trx_snr_db.end() ? trx->second : kInf;
        res.interpolated_snr_db[i] = combine_snr_db(trx_db, link_snr, kInf);
    }
    return res;
}

}  // namespace uwlink

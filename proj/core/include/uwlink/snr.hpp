#pragma once

#include <map>
#include <string>
#include <vector>

#include "uwlink/amplifier.hpp"
#include "uwlink/nli.hpp"
#include "uwlink/plan.hpp"

namespace uwlink {

// Per-channel SNR decomposition. All entries in dB; +inf marks an absent
// contribution (it drops out of the inverse-linear sum).
struct SnrBudget {
    std::vector<double> snr_trx_db;
    std::vector<double> snr_ase_db;
    std::vector<double> snr_nli_db;
    std::vector<double> snr_total_db;
};

// Inverse-linear combination: 1/total = 1/a + 1/b + 1/c.
double combine_snr_db(double a_db, double b_db, double c_db);

// Dual-polarization Shannon rate, Gb/s.
double shannon_rate_gbps(double snr_db, double symbol_rate_gbaud);

struct NotchProbe {
    double frequency_thz = 0.0;
    double wavelength_nm = 0.0;
    double osnr_db = 0.0;  // in the 12.5 GHz reference bandwidth
};

struct NotchProbeResult {
    std::map<std::string, std::vector<NotchProbe>> per_band;  // sorted by wavelength
    std::vector<double> interpolated_link_snr_db;  // per channel, floor-based
    std::vector<double> interpolated_snr_db;       // combined with the transceiver SNR
};

// Emulates the notch-probe OSNR estimation: the in-notch noise floor PSD
// (ASE + NLI, interpolated at the notch centre) against the neighbouring
// signal PSD, converted to the 12.5 GHz OSNR convention, then interpolated
// linearly in dB versus wavelength to every channel of the band.
NotchProbeResult notch_sweep(const ChannelPlan& plan,
                             const std::vector<double>& received_mw,
                             const AseRecord& ase_at_rx,
                             const std::vector<double>& snr_nli_db,
                             const std::map<std::string, double>& trx_snr_db);

}  // namespace uwlink

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwlink/plan.hpp"

namespace uwlink {

// Rate-adaptation model of the decoded pipeline: a near-continuous code-rate
// grid, fixed pilot and outer-code overheads, and a calibrated implementation
// penalty standing in for the FEC operating point.
struct FecModel {
    std::vector<double> rate_grid;           // ascending, in (0, 1]
    double pilot_overhead = 0.0464;
    double outer_overhead = 0.005;
    double implementation_penalty = 0.048;

    // DVB-S2X nominal rates augmented with a 1/100 puncturing ladder.
    static std::vector<double> default_rate_grid();
    void validate() const;
};

// AIR after pilot deduction: 2 * Rs * gmi * (1 - pilot_overhead), Gb/s.
double air_gbps(double gmi_bits, double symbol_rate_gbaud, const FecModel& fec);

struct RateSelection {
    double code_rate = 0.0;  // 0 when no grid rate is feasible
    double net_gbps = 0.0;
};

// Largest grid rate with Rc <= (gmi/m) * (1 - implementation_penalty);
// net rate = 2 * Rs * m * Rc * (1 - pilot) * (1 - outer).
RateSelection select_code_rate(double gmi_bits, int mod_bits, double symbol_rate_gbaud,
                               const FecModel& fec);

struct ChannelThroughput {
    int index = 0;
    std::string band;
    double wavelength_nm = 0.0;
    double snr_db = 0.0;
    double gmi_bits = 0.0;   // per polarization
    double air_gbps = 0.0;
    double code_rate = 0.0;
    double net_gbps = 0.0;
};

struct BandThroughput {
    std::string band;
    int channels = 0;
    double air_tbps = 0.0;
    double net_tbps = 0.0;
};

struct ThroughputReport {
    std::vector<ChannelThroughput> channels;
    std::vector<BandThroughput> bands;  // ascending frequency, matching the plan
    double total_air_tbps = 0.0;
    double total_net_tbps = 0.0;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
};

// Per-band sums and grand totals. Suppressed channels contribute zero.
ThroughputReport aggregate(const ChannelPlan& plan, const std::vector<double>& snr_total_db,
                           const std::vector<double>& gmi_bits,
                           const std::vector<int>& mod_bits, const FecModel& fec);

}  // namespace uwlink

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uwlink/fibre.hpp"
#include "uwlink/plan.hpp"

namespace uwlink {

struct NliParams {
    double gamma_per_w_km = 1.2;
    double dispersion_ps_nm_km = 17.0;
    double dispersion_slope_ps_nm2_km = 0.067;
    double reference_nm = 1550.0;
    int span_count = 1;  // incoherent accumulation across identical spans
};

// Per-channel nonlinear-interference power, referred to the span input
// (after any z=0 point losses). snr_nli = P_ch / P_nli is attenuation
// invariant, so the reference point does not matter downstream.
struct NliEstimate {
    std::vector<double> nli_mw;      // in the channel bandwidth
    std::vector<double> snr_nli_db;  // +inf for dark channels
    std::vector<std::string> warnings;
};

// Closed-form Gaussian-noise estimate for one span with lumped amplification.
// Self- and cross-channel islands are integrated analytically (inverse-tangent
// integral / arctangent forms) with a first-order correction for the
// Raman-induced tilt of each interferer's power profile.
NliEstimate nli_closed_form(const ChannelPlan& plan, const FibreSpec& fibre,
                            const NliParams& params);

struct OracleOptions {
    double step_km = 0.5;        // z sampling of the power profile
    int u_points = 160;          // outer trapezoid points per interference island
    int phi_points = 96;         // kernel-table points per decade region
    std::size_t max_channels = 9;
};

// Direct numeric evaluation of the GN double integral over interfering PSD
// pairs, with the z-dependent power profile taken from propagate(). Cost grows
// quadratically with channel count; plans above max_channels are refused.
NliEstimate nli_integral_oracle(const ChannelPlan& plan, const FibreSpec& fibre,
                                const NliParams& params, const OracleOptions& opt = {});

}  // namespace uwlink

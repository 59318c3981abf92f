#pragma once

#include <optional>
#include <string>
#include <vector>

namespace uwlink {

struct AmplifierSpec {
    enum class GainMode { PerChannelTarget, FlatGain };
    std::string band;
    double noise_figure_db = 5.0;     // quantum limit floor ~3.01 dB
    double max_total_output_dbm = 23.0;
    double max_gain_db = 30.0;
    GainMode gain_mode = GainMode::PerChannelTarget;
    double flat_gain_db = 0.0;        // used in FlatGain mode
};

struct AseRecord {
    std::vector<double> ase_mw;       // per channel, in reference_bandwidth
    double reference_bandwidth_ghz = 32.0;
};

struct ClampEvent {
    std::string band;
    double scale_db = 0.0;  // common gain reduction applied to meet the output cap
};

struct AmplifyResult {
    std::vector<double> output_mw;
    std::vector<double> gain_linear;  // per channel, after any clamp
    AseRecord ase;
    std::optional<ClampEvent> clamp;
};

// Lumped amplifier. Per-channel gains hit `target_dbm` (or the flat gain),
// clamped to max_gain and jointly rescaled so the summed output respects
// max_total_output; the rescale preserves channel ratios and is reported as a
// clamp event, not an error. Channels with zero input keep zero output but
// still contribute ASE at the gain interpolated from their loaded neighbours
// (the amplifier emits noise inside carved notches too).
// ASE per channel: 2 * (NF_lin/2) * h*f * (G-1) * B, both polarizations.
AmplifyResult amplify(const std::vector<double>& input_mw,
                      const std::vector<double>& freq_thz,
                      const std::vector<double>& target_dbm,
                      const AmplifierSpec& spec, double ref_bandwidth_ghz);

// signal / (ASE rescaled to ref_bandwidth_ghz), per channel in dB.
// Zero ASE reports +inf.
std::vector<double> osnr_db(const std::vector<double>& signal_mw, const AseRecord& ase,
                            double ref_bandwidth_ghz = 12.5);

}  // namespace uwlink

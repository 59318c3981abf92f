#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uwlink {

// One amplification band (S, C or L). Wavelength edges are descriptive;
// channel_count is authoritative when they disagree at the grid spacing.
struct Band {
    std::string name;
    double start_nm = 0.0;  // short-wavelength edge
    double end_nm = 0.0;    // long-wavelength edge
    int channel_count = 0;
};

struct Channel {
    int index = 0;  // global, ascending frequency
    double center_thz = 0.0;
    std::string band;
    double symbol_rate_gbaud = 0.0;
    double launch_dbm = 0.0;  // -inf when suppressed
    bool suppressed = false;

    double wavelength_nm() const;
};

struct Notch {
    double center_thz = 0.0;
    double width_ghz = 0.0;
};

enum class NotchPurpose { SignalPlacement, OsnrProbe };

struct NotchPlan {
    std::vector<Notch> notches;
    NotchPurpose purpose = NotchPurpose::OsnrProbe;
};

// Launch spectrum: total budget, linear-in-dB tilt versus frequency across the
// whole occupied spectrum, plus optional per-band trim offsets.
// tilt_db = P(highest f) - P(lowest f); >= 0 launches shorter wavelengths hotter.
struct LaunchProfile {
    double total_dbm = 0.0;
    double tilt_db = 0.0;
    std::map<std::string, double> per_band_offset_db;
    double safety_cap_dbm = 20.9;
    bool allow_over_cap = false;
};

struct ChannelPlan {
    std::vector<Channel> channels;       // sorted by index == frequency order
    std::vector<Band> bands;             // sorted by ascending frequency
    double spacing_ghz = 0.0;
    double symbol_rate_gbaud = 0.0;
    std::vector<Notch> carved_notches;   // geometry kept for the OSNR-probe procedure
    std::vector<std::string> warnings;   // plan metadata

    std::size_t size() const { return channels.size(); }
    bool empty() const { return channels.empty(); }

    // count * spacing, in THz
    double occupied_bandwidth_thz() const;
    double min_frequency_thz() const;
    double max_frequency_thz() const;
    // Sum of unsuppressed per-channel powers, in dBm.
    double total_power_dbm() const;
    double band_power_dbm(const std::string& band) const;
    std::vector<int> band_channel_indices(const std::string& band) const;
};

// Grid construction. Channels of each band are anchored at the band's
// long-wavelength (low-frequency) edge and step up by `spacing_ghz`.
ChannelPlan build_plan(std::vector<Band> bands, double spacing_ghz, double symbol_rate_gbaud);

// Assigns per-channel launch powers: linear in frequency with the requested
// end-to-end tilt, per-band offsets added, then normalized so the summed
// linear power of unsuppressed channels equals total_dbm.
ChannelPlan apply_launch_profile(const ChannelPlan& plan, const LaunchProfile& profile);

// Marks channels whose signal band lies fully inside a notch as suppressed
// (zero launch power) and records the notch geometry on the plan.
ChannelPlan carve_notches(const ChannelPlan& plan, const NotchPlan& notch_plan);

}  // namespace uwlink

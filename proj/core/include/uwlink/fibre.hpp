#pragma once

#include <utility>
#include <vector>

#include "uwlink/plan.hpp"

namespace uwlink {

// Triangular approximation of the Raman gain spectrum: linear rise to the peak
// at peak_shift_thz, mirrored descent to zero at twice the shift. A tabulated
// profile can be supplied instead.
struct RamanProfile {
    enum class Shape { Triangular, Tabulated };
    Shape shape = Shape::Triangular;
    double slope_per_w_km_thz = 0.028;  // normalized by effective area
    double peak_shift_thz = 14.0;
    std::vector<std::pair<double, double>> table;  // (df THz, gain 1/(W km)), ascending df

    // Pump-probe gain coefficient at frequency offset df >= 0, in 1/(W km).
    double gain(double df_thz) const;
};

struct PointLoss {
    double position_km = 0.0;
    double loss_db = 0.0;
};

struct FibreSpec {
    double length_km = 0.0;
    // (wavelength nm, attenuation dB/km), ascending wavelength
    std::vector<std::pair<double, double>> attenuation_db_km;
    double effective_area_um2 = 80.0;
    RamanProfile raman;
    std::vector<PointLoss> point_losses;

    double total_point_loss_db() const;
};

struct PowerEvolution {
    std::vector<double> distances_km;
    // powers_mw[sample][channel]; first sample equals the launch powers
    std::vector<std::vector<double>> powers_mw;
    std::vector<std::string> warnings;

    const std::vector<double>& launch_mw() const { return powers_mw.front(); }
    const std::vector<double>& output_mw() const { return powers_mw.back(); }
};

// Piecewise-linear interpolation of the attenuation table; queries outside the
// hull clamp to the nearest entry and record a warning when a sink is given.
double attenuation_at(const FibreSpec& spec, double lambda_nm,
                      std::vector<std::string>* warnings = nullptr);

// Integrates the coupled attenuation + inter-channel Raman power equations
// with a fixed-step 4th-order Runge-Kutta scheme. Point losses are applied as
// instantaneous drops snapped to the nearest step boundary.
PowerEvolution propagate(const ChannelPlan& plan, const FibreSpec& spec, double step_km = 0.1);

// Launch minus output, per channel, in dB. Suppressed channels report 0.
std::vector<double> net_loss_db(const ChannelPlan& plan, const PowerEvolution& evo);

}  // namespace uwlink

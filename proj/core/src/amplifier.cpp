#include "uwlink/amplifier.hpp"

#include <algorithm>
#include <cmath>

#include "uwlink/errors.hpp"
#include "uwlink/units.hpp"

namespace uwlink {

namespace {

// dB-linear interpolation of gain versus frequency for channels that carry no
// signal; nearest value beyond the loaded hull.
double interp_gain_db(const std::vector<double>& freq_thz, const std::vector<double>& gain_db,
                      const std::vector<bool>& loaded, double f) {
    double f_prev = 0, g_prev = 0, f_next = 0, g_next = 0;
    bool have_prev = false, have_next = false;
    for (std::size_t j = 0; j < freq_thz.size(); ++j) {
        if (!loaded[j]) continue;
        if (freq_thz[j] <= f) {
            f_prev = freq_thz[j];
            g_prev = gain_db[j];
            have_prev = true;
        } else if (!have_next) {
            f_next = freq_thz[j];
            g_next = gain_db[j];
            have_next = true;
        }
    }
    if (have_prev && have_next && f_next > f_prev)
        return g_prev + (g_next - g_prev) * (f - f_prev) / (f_next - f_prev);
    if (have_prev) return g_prev;
    if (have_next) return g_next;
    return 0.0;
}

}  // namespace

AmplifyResult amplify(const std::vector<double>& input_mw, const std::vector<double>& freq_thz,
                      const std::vector<double>& target_dbm, const AmplifierSpec& spec,
                      double ref_bandwidth_ghz) {
    const std::size_t n = input_mw.size();
    if (freq_thz.size() != n || target_dbm.size() != n)
        throw ValidationError("amplify: input/frequency/target sizes differ");
    if (!(ref_bandwidth_ghz > 0.0))
        throw ValidationError("amplify: reference bandwidth must be positive");
    for (double p : input_mw)
        if (p < 0.0 || !std::isfinite(p)) throw ValidationError("amplify: negative input power");

    AmplifyResult res;
    res.gain_linear.assign(n, 1.0);
    res.output_mw.assign(n, 0.0);
    res.ase.ase_mw.assign(n, 0.0);
    res.ase.reference_bandwidth_ghz = ref_bandwidth_ghz;

    const double g_max = db_to_linear(spec.max_gain_db);
    std::vector<bool> loaded(n, false);
    std::vector<double> gain_db(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (input_mw[i] > 0.0) {
            double g;
            if (spec.gain_mode == AmplifierSpec::GainMode::FlatGain) {
                g = db_to_linear(spec.flat_gain_db);
            } else {
                const double tgt = dbm_to_mw(target_dbm[i]);
                g = tgt > 0.0 ? tgt / input_mw[i] : 1.0;
            }
            g = std::clamp(g, 1e-12, g_max);
            res.gain_linear[i] = g;
            gain_db[i] = linear_to_db(g);
            loaded[i] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!loaded[i]) {
            gain_db[i] = interp_gain_db(freq_thz, gain_db, loaded, freq_thz[i]);
            res.gain_linear[i] = db_to_linear(gain_db[i]);
        }
    }

    double total_mw = 0.0;
    for (std::size_t i = 0; i < n; ++i) total_mw += input_mw[i] * res.gain_linear[i];
    const double cap_mw = dbm_to_mw(spec.max_total_output_dbm);
    if (total_mw > cap_mw) {
        const double scale = cap_mw / total_mw;
        for (auto& g : res.gain_linear) g *= scale;
        res.clamp = ClampEvent{spec.band, -linear_to_db(scale)};
    }

    const double nf_lin = db_to_linear(spec.noise_figure_db);
    const double b_hz = ref_bandwidth_ghz * 1e9;
    for (std::size_t i = 0; i < n; ++i) {
        res.output_mw[i] = input_mw[i] * res.gain_linear[i];
        const double g = res.gain_linear[i];
        const double f_hz = freq_thz[i] * 1e12;
        const double w = 2.0 * (nf_lin / 2.0) * kPlanckJs * f_hz * std::max(g - 1.0, 0.0) * b_hz;
        res.ase.ase_mw[i] = w * 1e3;
    }
    return res;
}

std::vector<double> osnr_db(const std::vector<double>& signal_mw, const AseRecord& ase,
                            double ref_bandwidth_ghz) {
    if (signal_mw.size() != ase.ase_mw.size())
        throw ValidationError("osnr: signal/ASE sizes differ");
    std::vector<double> out(signal_mw.size());
    const double rescale = ref_bandwidth_ghz / ase.reference_bandwidth_ghz;
    for (std::size_t i = 0; i < signal_mw.size(); ++i) {
        const double noise = ase.ase_mw[i] * rescale;
        out[i] = noise > 0.0 ? linear_to_db(signal_mw[i] / noise) : kInf;
    }
    return out;
}

}  // namespace uwlink

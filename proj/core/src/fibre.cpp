#include "uwlink/fibre.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "uwlink/errors.hpp"
#include "uwlink/units.hpp"

namespace uwlink {

double RamanProfile::gain(double df_thz) const {
    if (df_thz <= 0.0) return 0.0;
    if (shape == Shape::Tabulated) {
        if (table.empty()) throw ValidationError("tabulated Raman profile has no entries");
        if (df_thz <= table.front().first) {
            // interpolate down to gain(0) = 0
            return table.front().second * df_thz / table.front().first;
        }
        if (df_thz >= table.back().first) return 0.0;
        for (std::size_t i = 0; i + 1 < table.size(); ++i) {
            if (df_thz <= table[i + 1].first) {
                const double t =
                    (df_thz - table[i].first) / (table[i + 1].first - table[i].first);
                return table[i].second + t * (table[i + 1].second - table[i].second);
            }
        }
        return 0.0;
    }
    if (df_thz <= peak_shift_thz) return slope_per_w_km_thz * df_thz;
    if (df_thz >= 2.0 * peak_shift_thz) return 0.0;
    return slope_per_w_km_thz * (2.0 * peak_shift_thz - df_thz);
}

double FibreSpec::total_point_loss_db() const {
    double s = 0.0;
    for (const auto& pl : point_losses) s += pl.loss_db;
    return s;
}

double attenuation_at(const FibreSpec& spec, double lambda_nm,
                      std::vector<std::string>* warnings) {
    const auto& tab = spec.attenuation_db_km;
    if (tab.empty()) throw ValidationError("fibre attenuation table is empty");
    if (lambda_nm <= tab.front().first) {
        if (lambda_nm < tab.front().first && warnings) {
            std::ostringstream os;
            os << "attenuation query at " << lambda_nm << " nm below table hull, clamped to "
               << tab.front().first << " nm";
            warnings->push_back(os.str());
        }
        return tab.front().second;
    }
    if (lambda_nm >= tab.back().first) {
        if (lambda_nm > tab.back().first && warnings) {
            std::ostringstream os;
            os << "attenuation query at " << lambda_nm << " nm above table hull, clamped to "
               << tab.back().first << " nm";
            warnings->push_back(os.str());
        }
        return tab.back().second;
    }
    for (std::size_t i = 0; i + 1 < tab.size(); ++i) {
        if (lambda_nm <= tab[i + 1].first) {
            const double t = (lambda_nm - tab[i].first) / (tab[i + 1].first - tab[i].first);
            return tab[i].second + t * (tab[i + 1].second - tab[i].second);
        }
    }
    return tab.back().second;
}

namespace {

constexpr double kDbToNat = 0.23025850929940457;  // ln(10)/10

// Pairwise Raman coupling, precomputed for the fixed channel grid.
// For a pair (lo, hi): dP_lo += g*P_lo*P_hi, dP_hi -= (f_hi/f_lo)*g*P_hi*P_lo.
struct RamanCoupling {
    std::vector<double> gain;        // g(f_hi - f_lo) per pair, 1/(W km)
    std::vector<double> photon_ratio;  // f_hi / f_lo per pair
    std::vector<std::pair<int, int>> pairs;
    bool active = false;
};

RamanCoupling build_coupling(const ChannelPlan& plan, const FibreSpec& spec) {
    RamanCoupling c;
    const std::size_t n = plan.size();
    for (std::size_t lo = 0; lo < n; ++lo) {
        for (std::size_t hi = lo + 1; hi < n; ++hi) {
            const double df = plan.channels[hi].center_thz - plan.channels[lo].center_thz;
            const double g = spec.raman.gain(df);
            if (g == 0.0) continue;
            c.pairs.emplace_back(static_cast<int>(lo), static_cast<int>(hi));
            c.gain.push_back(g);
            c.photon_ratio.push_back(plan.channels[hi].center_thz /
                                     plan.channels[lo].center_thz);
        }
    }
    c.active = !c.pairs.empty();
    return c;
}

// dP/dz in W/km for every channel.
void rhs(const std::vector<double>& p_w, const std::vector<double>& alpha_nat,
         const RamanCoupling& c, std::vector<double>& out) {
    const std::size_t n = p_w.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = -alpha_nat[i] * p_w[i];
    if (!c.active) return;
    for (std::size_t k = 0; k < c.pairs.size(); ++k) {
        const auto [lo, hi] = c.pairs[k];
        const double x = c.gain[k] * p_w[lo] * p_w[hi];
        out[lo] += x;
        out[hi] -= c.photon_ratio[k] * x;
    }
}

}  // namespace

PowerEvolution propagate(const ChannelPlan& plan, const FibreSpec& spec, double step_km) {
    if (plan.empty()) throw ValidationError("propagate: empty plan");
    if (!(step_km > 0.0)) throw ValidationError("propagate: step must be positive");
    if (spec.length_km < 0.0) throw ValidationError("propagate: fibre length must be >= 0");
    if (spec.length_km == 0.0) {
        // degenerate zero-length span: output equals launch
        PowerEvolution evo;
        evo.distances_km.push_back(0.0);
        std::vector<double> mw(plan.size());
        for (std::size_t i = 0; i < plan.size(); ++i)
            mw[i] = dbm_to_mw(plan.channels[i].launch_dbm);
        evo.powers_mw.push_back(std::move(mw));
        return evo;
    }
    for (const auto& pl : spec.point_losses) {
        if (pl.loss_db < 0.0 || pl.position_km < 0.0 || pl.position_km > spec.length_km)
            throw ValidationError("point loss outside [0, length] or negative");
    }

    PowerEvolution evo;
    const std::size_t n = plan.size();
    const int steps = std::max(1, static_cast<int>(std::llround(spec.length_km / step_km)));
    const double h = spec.length_km / steps;

    std::vector<double> alpha_nat(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a_db =
            attenuation_at(spec, plan.channels[i].wavelength_nm(), &evo.warnings);
        if (!(a_db > 0.0)) throw ValidationError("attenuation must be positive");
        alpha_nat[i] = a_db * kDbToNat;
    }
    const RamanCoupling coupling = build_coupling(plan, spec);

    // point losses grouped by nearest step node, as linear factors
    std::map<int, double> drop_at_node;
    for (const auto& pl : spec.point_losses) {
        const int node = static_cast<int>(std::llround(pl.position_km / h));
        double& f = drop_at_node.try_emplace(node, 1.0).first->second;
        f *= db_to_linear(-pl.loss_db);
    }

    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = dbm_to_mw(plan.channels[i].launch_dbm) * 1e-3;  // W

    evo.distances_km.reserve(steps + 1);
    evo.powers_mw.reserve(steps + 1);
    auto record = [&](double z) {
        evo.distances_km.push_back(z);
        std::vector<double> mw(n);
        for (std::size_t i = 0; i < n; ++i) mw[i] = p[i] * 1e3;
        evo.powers_mw.push_back(std::move(mw));
    };
    auto apply_drop = [&](int node) {
        auto it = drop_at_node.find(node);
        if (it == drop_at_node.end()) return;
        for (auto& v : p) v *= it->second;
    };
    auto check = [&](double z) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(p[i]) || p[i] < 0.0) {
                std::ostringstream os;
                os << "integration produced invalid power " << p[i] << " W for channel "
                   << plan.channels[i].index << " near z=" << z
                   << " km; reduce the step size";
                throw NumericError(os.str());
            }
        }
    };

    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    record(0.0);        // first sample = launch powers
    apply_drop(0);      // z=0 events sit between the launch sample and the fibre

    for (int s = 0; s < steps; ++s) {
        rhs(p, alpha_nat, coupling, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k1[i];
        rhs(tmp, alpha_nat, coupling, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k2[i];
        rhs(tmp, alpha_nat, coupling, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + h * k3[i];
        rhs(tmp, alpha_nat, coupling, k4);
        for (std::size_t i = 0; i < n; ++i)
            p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        const double z = (s + 1) * h;
        check(z);
        apply_drop(s + 1);
        record(z);
    }
    return evo;
}

std::vector<double> net_loss_db(const ChannelPlan& plan, const PowerEvolution& evo) {
    if (evo.powers_mw.empty() || evo.powers_mw.front().size() != plan.size())
        throw ValidationError("net_loss: evolution does not match the plan");
    const auto& out = evo.output_mw();
    std::vector<double> loss(plan.size(), 0.0);
    for (std::size_t i = 0; i < plan.size(); ++i) {
        if (plan.channels[i].suppressed) continue;
        loss[i] = plan.channels[i].launch_dbm - mw_to_dbm(out[i]);
    }
    return loss;
}

}  // namespace uwlink

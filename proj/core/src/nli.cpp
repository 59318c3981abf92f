#include "uwlink/nli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "uwlink/errors.hpp"
#include "uwlink/units.hpp"

namespace uwlink {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDbToNat = 0.23025850929940457;  // ln(10)/10

// Everything below works in SI: Hz, m, W.
struct SiParams {
    double gamma = 0.0;  // 1/(W m)
    double beta2 = 0.0;  // s^2/m
    double beta3 = 0.0;  // s^3/m
    double f_ref = 0.0;  // Hz
    double cr = 0.0;     // 1/(W m Hz), triangular Raman slope
};

SiParams to_si(const NliParams& p, const FibreSpec& fibre) {
    SiParams si;
    si.gamma = p.gamma_per_w_km * 1e-3;
    const double lambda = p.reference_nm * 1e-9;
    const double c = 2.99792458e8;
    const double d = p.dispersion_ps_nm_km * 1e-6;          // s/m^2
    const double s = p.dispersion_slope_ps_nm2_km * 1e3;    // s/m^3
    si.beta2 = -d * lambda * lambda / (2.0 * kPi * c);
    const double lf = lambda * lambda / (2.0 * kPi * c);
    si.beta3 = lf * lf * (s + 2.0 * d / lambda);
    si.f_ref = c / lambda;
    si.cr = fibre.raman.shape == RamanProfile::Shape::Triangular
                ? fibre.raman.slope_per_w_km_thz * 1e-15
                : 0.0;  // tabulated profiles: tilt correction omitted
    return si;
}

struct LoadedChannel {
    int idx = 0;        // plan index
    double f = 0.0;     // Hz
    double p = 0.0;     // W at span input
    double alpha = 0.0; // 1/m
    double bw = 0.0;    // Hz
};

// Launch powers after point losses located at z=0.
std::vector<LoadedChannel> span_input_channels(const ChannelPlan& plan, const FibreSpec& fibre,
                                               std::vector<std::string>& warnings) {
    double drop0 = 1.0;
    for (const auto& pl : fibre.point_losses)
        if (pl.position_km == 0.0) drop0 *= db_to_linear(-pl.loss_db);
    std::vector<LoadedChannel> out;
    for (const auto& ch : plan.channels) {
        const double p_mw = dbm_to_mw(ch.launch_dbm);
        if (p_mw <= 0.0) continue;
        LoadedChannel lc;
        lc.idx = ch.index;
        lc.f = ch.center_thz * 1e12;
        lc.p = p_mw * 1e-3 * drop0;
        lc.alpha = attenuation_at(fibre, ch.wavelength_nm(), &warnings) * kDbToNat * 1e-3;
        lc.bw = ch.symbol_rate_gbaud * 1e9;
        out.push_back(lc);
    }
    return out;
}

double power_centroid_hz(const std::vector<LoadedChannel>& chs) {
    double pf = 0.0, pt = 0.0;
    for (const auto& c : chs) {
        pf += c.p * c.f;
        pt += c.p;
    }
    return pt > 0.0 ? pf / pt : 0.0;
}

// Inverse tangent integral Ti2(x) = int_0^x atan(t)/t dt, x >= 0.
double ti2_series(double x) {
    // converges quickly for x <= 0.6
    double term = x, sum = 0.0;
    const double x2 = x * x;
    for (int k = 0; k < 60; ++k) {
        const double d = 2.0 * k + 1.0;
        sum += (k % 2 ? -1.0 : 1.0) * term / (d * d);
        term *= x2;
        if (term / ((d + 2) * (d + 2)) < 1e-17) break;
    }
    return sum;
}

double ti2(double x) {
    if (x <= 0.0) return 0.0;
    if (x > 1.0) return kPi / 2.0 * std::log(x) + ti2(1.0 / x);
    if (x <= 0.6) return ti2_series(x);
    // composite Simpson over [0.6, x] on the smooth integrand
    const int n = 256;
    const double a = 0.6, h = (x - a) / n;
    double s = std::atan(a) / a + std::atan(x) / x;
    for (int i = 1; i < n; ++i) {
        const double t = a + i * h;
        s += (i % 2 ? 4.0 : 2.0) * std::atan(t) / t;
    }
    return ti2_series(a) + s * h / 3.0;
}

double atanc(double x) {  // atan(x)/x
    const double ax = std::abs(x);
    if (ax < 1e-6) return 1.0 - x * x / 3.0;
    return std::atan(ax) / ax;
}

// First-order Raman-tilt kernel coefficients: the normalized power profile of
// an interferer at frequency offset df from the power centroid is
//   rho(z) ~ exp(-a z) * (1 - delta * (1 - exp(-a z)) / a),  delta = Ptot*Cr*df,
// giving |kernel|^2 = C1/(a^2+phi^2) + C2/(4a^2+phi^2) after the z integral.
struct KernelCoeffs {
    double c1 = 1.0, c2 = 0.0;
};

KernelCoeffs kernel_coeffs(double delta, double a) {
    const double ba = delta / a;
    const double av = 1.0 - ba;
    KernelCoeffs k;
    k.c1 = av * av + (2.0 / 3.0) * av * ba;
    k.c2 = ba * ba + (4.0 / 3.0) * av * ba;
    return k;
}

}  // namespace

NliEstimate nli_closed_form(const ChannelPlan& plan, const FibreSpec& fibre,
                            const NliParams& params) {
    if (params.span_count < 1) throw ValidationError("nli: span_count must be >= 1");
    if (!(params.gamma_per_w_km > 0.0)) throw ValidationError("nli: gamma must be positive");

    NliEstimate est;
    est.nli_mw.assign(plan.size(), 0.0);
    est.snr_nli_db.assign(plan.size(), kInf);

    const SiParams si = to_si(params, fibre);
    const auto chs = span_input_channels(plan, fibre, est.warnings);
    if (chs.empty()) return est;
    double p_tot = 0.0;
    for (const auto& c : chs) p_tot += c.p;
    const double f_c = power_centroid_hz(chs);

    for (const auto& coi : chs) {
        const double b2_spm = si.beta2 + 2.0 * kPi * si.beta3 * (coi.f - si.f_ref);
        if (std::abs(b2_spm) < 1e-28) {
            std::ostringstream os;
            os << "channel " << coi.idx
               << " sits near the dispersion zero; closed-form estimate degraded";
            est.warnings.push_back(os.str());
        }
        const double bw = coi.bw;
        double p_nli = 0.0;

        {  // self-channel island
            const double a = coi.alpha;
            const auto kc = kernel_coeffs(p_tot * si.cr * (coi.f - f_c), a);
            const double b = 4.0 * kPi * kPi * std::abs(b2_spm);
            auto j_of = [&](double aa) {
                if (b <= 0.0) return bw * bw / (4.0 * aa * aa);  // zero-dispersion limit
                return 4.0 / (aa * b) * ti2(b * bw * bw / (4.0 * aa));
            };
            p_nli += (16.0 / 27.0) * si.gamma * si.gamma * coi.p * coi.p * coi.p /
                     (bw * bw) * (kc.c1 * j_of(a) + kc.c2 * j_of(2.0 * a));
        }

        for (const auto& intf : chs) {  // cross-channel islands
            if (intf.idx == coi.idx) continue;
            const double a = intf.alpha;
            const auto kc = kernel_coeffs(p_tot * si.cr * (intf.f - f_c), a);
            const double phi = 2.0 * kPi * kPi * (intf.f - coi.f) *
                               (si.beta2 + kPi * si.beta3 * (intf.f + coi.f - 2.0 * si.f_ref));
            const double x1 = std::abs(phi) * bw / a;
            const double x2 = std::abs(phi) * bw / (2.0 * a);
            const double island = kc.c1 * atanc(x1) + 0.25 * kc.c2 * atanc(x2);
            p_nli += (32.0 / 27.0) * si.gamma * si.gamma * coi.p * intf.p * intf.p *
                     (bw / intf.bw) / (a * a) * island;
        }

        p_nli *= params.span_count;
        est.nli_mw[coi.idx] = p_nli * 1e3;
        est.snr_nli_db[coi.idx] = p_nli > 0.0 ? linear_to_db(coi.p / p_nli) : kInf;
    }
    return est;
}

// ---------------------------------------------------------------------------
// Numeric oracle: trapezoidal double integration of the GN integrand with the
// z-resolved power profile.
// ---------------------------------------------------------------------------

namespace {

// Exact integral of a piecewise-linear kernel times exp(j phi z) on a uniform
// z grid (Filon-type rule): robust for phi*h >> 1.
struct FilonWeights {
    std::complex<double> e0, e1;  // int_0^1 e^{j t s} ds, int_0^1 s e^{j t s} ds
};

FilonWeights filon_weights(double theta) {
    FilonWeights w;
    if (std::abs(theta) < 1e-4) {
        const std::complex<double> jt(0.0, theta);
        w.e0 = 1.0 + jt / 2.0 + jt * jt / 6.0 + jt * jt * jt / 24.0;
        w.e1 = 0.5 + jt / 3.0 + jt * jt / 8.0 + jt * jt * jt / 30.0;
        return w;
    }
    const std::complex<double> j(0.0, 1.0);
    const std::complex<double> ejt = std::exp(j * theta);
    w.e0 = (ejt - 1.0) / (j * theta);
    w.e1 = (ejt - w.e0) / (j * theta);
    return w;
}

struct KernelTable {
    std::vector<double> phi;   // ascending, phi >= 0
    std::vector<double> cum;   // cumulative integral of |Z(phi)|^2 from 0
    std::vector<double> g;     // |Z(phi)|^2 at the nodes
    // odd antiderivative with quadratic tail beyond the table
    double eval(double x) const {
        const double ax = std::abs(x);
        const double s = x < 0.0 ? -1.0 : 1.0;
        if (ax >= phi.back()) {
            const double tail = g.back() * phi.back() * (1.0 - phi.back() / ax);
            return s * (cum.back() + tail);
        }
        auto it = std::upper_bound(phi.begin(), phi.end(), ax);
        const std::size_t hi = static_cast<std::size_t>(it - phi.begin());
        const std::size_t lo = hi - 1;
        const double t = (ax - phi[lo]) / (phi[hi] - phi[lo]);
        // trapezoid-consistent interpolation of the cumulative
        const double gmid = g[lo] + t * (g[hi] - g[lo]);
        return s * (cum[lo] + 0.5 * (g[lo] + gmid) * (ax - phi[lo]));
    }
    double g0() const { return g.front(); }
};

}  // namespace

NliEstimate nli_integral_oracle(const ChannelPlan& plan, const FibreSpec& fibre,
                                const NliParams& params, const OracleOptions& opt) {
    NliEstimate est;
    est.nli_mw.assign(plan.size(), 0.0);
    est.snr_nli_db.assign(plan.size(), kInf);

    const SiParams si = to_si(params, fibre);
    const auto chs = span_input_channels(plan, fibre, est.warnings);
    if (chs.size() > opt.max_channels) {
        std::ostringstream os;
        os << "nli_integral_oracle: " << chs.size() << " loaded channels exceed the limit of "
           << opt.max_channels << "; use nli_closed_form for large plans";
        throw ValidationError(os.str());
    }
    if (chs.empty()) return est;
    if (!(si.gamma > 0.0)) return est;  // zero nonlinearity -> zero NLI

    const PowerEvolution evo = propagate(plan, fibre, opt.step_km);
    const std::size_t m_samples = evo.powers_mw.size();
    const double h_m = m_samples > 1
                           ? (evo.distances_km[1] - evo.distances_km[0]) * 1e3
                           : 0.0;

    // normalized power profiles at span input
    double drop0 = 1.0;
    for (const auto& pl : fibre.point_losses)
        if (pl.position_km == 0.0) drop0 *= db_to_linear(-pl.loss_db);
    std::map<int, std::vector<double>> rho;  // plan index -> profile
    for (const auto& c : chs) {
        std::vector<double> r(m_samples);
        const double p0 = evo.powers_mw[0][c.idx] * drop0;
        for (std::size_t m = 0; m < m_samples; ++m) {
            double v = evo.powers_mw[m][c.idx] / p0;
            if (m == 0) v = 1.0;  // the first sample is recorded before z=0 losses
            r[m] = v;
        }
        rho[c.idx] = std::move(r);
    }

    const std::size_t n = chs.size();
    for (std::size_t ci = 0; ci < n; ++ci) {
        const auto& coi = chs[ci];
        const double f = coi.f;
        const double bw = coi.bw;
        const auto& rho_f = rho.at(coi.idx);
        double p_nli = 0.0;

        std::map<std::tuple<std::size_t, std::size_t, std::size_t>, KernelTable> tables;

        for (std::size_t i1 = 0; i1 < n; ++i1) {
            const auto& c1 = chs[i1];
            const double u_lo = c1.f - f - 0.5 * c1.bw;
            const double u_hi = c1.f - f + 0.5 * c1.bw;
            for (std::size_t i2 = 0; i2 < n; ++i2) {
                const auto& c2 = chs[i2];
                const double v_lo = c2.f - f - 0.5 * c2.bw;
                const double v_hi = c2.f - f + 0.5 * c2.bw;
                const double cc = -4.0 * kPi * kPi *
                                  (si.beta2 + kPi * si.beta3 * (c1.f + c2.f - 2.0 * si.f_ref));
                for (std::size_t i3 = 0; i3 < n; ++i3) {
                    const auto& c3 = chs[i3];
                    const double w_lo = c3.f - f - 0.5 * c3.bw;
                    const double w_hi = c3.f - f + 0.5 * c3.bw;
                    if (u_lo + v_lo >= w_hi || u_hi + v_hi <= w_lo) continue;

                    auto key = std::make_tuple(i1, i2, i3);
                    auto found = tables.find(key);
                    if (found == tables.end()) {
                        // kappa(z) = sqrt(rho1 rho2 rho3 / rho_f)
                        std::vector<double> kappa(m_samples);
                        const auto& r1 = rho.at(c1.idx);
                        const auto& r2 = rho.at(c2.idx);
                        const auto& r3 = rho.at(c3.idx);
                        for (std::size_t m = 0; m < m_samples; ++m)
                            kappa[m] = std::sqrt(r1[m] * r2[m] * r3[m] /
                                                 std::max(rho_f[m], 1e-300));

                        const double alpha_ref = coi.alpha;
                        const double phi_max =
                            1.05 * std::abs(cc) *
                                std::max(std::abs(u_lo), std::abs(u_hi)) *
                                std::max(std::abs(v_lo), std::abs(v_hi)) +
                            16.0 * alpha_ref;
                        KernelTable tab;
                        // dense linear region out to 8*alpha, geometric beyond
                        const int n_lin = opt.phi_points;
                        const double lin_max = 8.0 * alpha_ref;
                        for (int q = 0; q <= n_lin; ++q)
                            tab.phi.push_back(lin_max * q / n_lin);
                        double v = lin_max;
                        while (v < phi_max) {
                            v *= 1.12;
                            tab.phi.push_back(std::min(v, phi_max));
                        }
                        tab.g.resize(tab.phi.size());
                        for (std::size_t q = 0; q < tab.phi.size(); ++q) {
                            const double theta = tab.phi[q] * h_m;
                            const FilonWeights fw = filon_weights(theta);
                            std::complex<double> s0 = 0.0, s1 = 0.0;
                            for (std::size_t m = 0; m + 1 < m_samples; ++m) {
                                const double z = m * h_m;
                                const std::complex<double> ph =
                                    std::polar(1.0, tab.phi[q] * z);
                                s0 += kappa[m] * ph;
                                s1 += (kappa[m + 1] - kappa[m]) * ph;
                            }
                            const std::complex<double> z_int = h_m * (fw.e0 * s0 + fw.e1 * s1);
                            tab.g[q] = std::norm(z_int);
                        }
                        tab.cum.resize(tab.phi.size());
                        tab.cum[0] = 0.0;
                        for (std::size_t q = 1; q < tab.phi.size(); ++q)
                            tab.cum[q] = tab.cum[q - 1] + 0.5 * (tab.g[q] + tab.g[q - 1]) *
                                                              (tab.phi[q] - tab.phi[q - 1]);
                        found = tables.emplace(key, std::move(tab)).first;
                    }
                    const KernelTable& tab = found->second;

                    const double psd = (c1.p / c1.bw) * (c2.p / c2.bw) * (c3.p / c3.bw);
                    // inner v integral folded through the antiderivative of |Z|^2
                    double island = 0.0;
                    const int nu = opt.u_points;
                    const double du = (u_hi - u_lo) / nu;
                    for (int q = 0; q <= nu; ++q) {
                        const double u = u_lo + q * du;
                        const double va = std::max(v_lo, w_lo - u);
                        const double vb = std::min(v_hi, w_hi - u);
                        if (vb <= va) continue;
                        const double cu = cc * u;
                        double inner;
                        if (std::abs(cu) * std::max(std::abs(va), std::abs(vb)) < 1e-12) {
                            inner = tab.g0() * (vb - va);
                        } else {
                            inner = (tab.eval(cu * vb) - tab.eval(cu * va)) / cu;
                        }
                        island += (q == 0 || q == nu) ? 0.5 * inner : inner;
                    }
                    island *= du;
                    p_nli += psd * island;
                }
            }
        }
        p_nli *= (16.0 / 27.0) * si.gamma * si.gamma * bw * params.span_count;
        est.nli_mw[coi.idx] = p_nli * 1e3;
        est.snr_nli_db[coi.idx] = p_nli > 0.0 ? linear_to_db(coi.p / p_nli) : kInf;
    }
    return est;
}

}  // namespace uwlink

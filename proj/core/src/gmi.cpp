#include "uwlink/gmi.hpp"

#include <cmath>
#include <vector>

#include "uwlink/errors.hpp"
#include "uwlink/units.hpp"

namespace uwlink {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// xoshiro-free, self-contained generator: splitmix whitening of a counter.
// Fixed consumption per draw keeps the stream layout stable across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() { return splitmix64(state_++); }
    double next_unit() {  // [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    // Box-Muller pair, two uniforms per pair
    void next_gauss(double& g1, double& g2) {
        double u1 = next_unit();
        while (u1 <= 0.0) u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        g1 = r * std::cos(6.283185307179586 * u2);
        g2 = r * std::sin(6.283185307179586 * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace

std::uint64_t channel_seed(std::uint64_t base_seed, int channel_index) {
    return splitmix64(base_seed ^ (0x9E3779B97F4A7C15ULL *
                                   static_cast<std::uint64_t>(channel_index + 1)));
}

double gmi_monte_carlo(const Constellation& c, double snr_db, std::size_t samples,
                       std::uint64_t seed) {
    if (!std::isfinite(snr_db)) throw ValidationError("gmi: SNR must be finite");
    if (samples == 0) throw ValidationError("gmi: need at least one sample");
    const std::size_t m_points = c.size();
    const int m = c.bits;
    if (m_points == 0) throw ValidationError("gmi: empty constellation");

    const double snr = db_to_linear(snr_db);
    const double sigma2 = 1.0 / snr;      // total complex noise power
    const double sdim = std::sqrt(sigma2 / 2.0);
    const double inv_s2 = 1.0 / sigma2;
    // terms below exp(-46) of the per-symbol maximum cannot move the result
    const double cutoff = 46.0 * sigma2;

    std::vector<double> xr(m_points), xi(m_points), d2(m_points);
    for (std::size_t j = 0; j < m_points; ++j) {
        xr[j] = c.points[j].real();
        xi[j] = c.points[j].imag();
    }

    Rng rng(seed);
    double acc = 0.0;
    std::vector<double> sub(m);
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t tx = std::min<std::size_t>(
            static_cast<std::size_t>(rng.next_unit() * m_points), m_points - 1);
        double n1, n2;
        rng.next_gauss(n1, n2);
        const double yr = xr[tx] + sdim * n1;
        const double yi = xi[tx] + sdim * n2;

        double dmin = kInf;
        for (std::size_t j = 0; j < m_points; ++j) {
            const double dr = yr - xr[j];
            const double di = yi - xi[j];
            const double d = dr * dr + di * di;
            d2[j] = d;
            if (d < dmin) dmin = d;
        }
        double total = 0.0;
        for (int k = 0; k < m; ++k) sub[k] = 0.0;
        const std::uint32_t txlab = c.labels[tx];
        const double thr = dmin + cutoff;
        for (std::size_t j = 0; j < m_points; ++j) {
            if (d2[j] > thr) continue;
            const double e = std::exp(-(d2[j] - dmin) * inv_s2);
            total += e;
            const std::uint32_t agree = ~(c.labels[j] ^ txlab);
            for (int k = 0; k < m; ++k)
                sub[k] += e * static_cast<double>((agree >> k) & 1u);
        }
        const double log_total = std::log2(total);
        for (int k = 0; k < m; ++k) {
            if (sub[k] > 0.0) {
                acc += log_total - std::log2(sub[k]);
                continue;
            }
            // all same-bit points fell below the cutoff: redo this subset with
            // its own shift (rare deep-noise outlier)
            double dmin_k = kInf;
            for (std::size_t j = 0; j < m_points; ++j)
                if (((c.labels[j] >> k) & 1u) == ((txlab >> k) & 1u))
                    dmin_k = std::min(dmin_k, d2[j]);
            double sub_k = 0.0;
            for (std::size_t j = 0; j < m_points; ++j)
                if (((c.labels[j] >> k) & 1u) == ((txlab >> k) & 1u))
                    sub_k += std::exp(-(d2[j] - dmin_k) * inv_s2);
            acc += log_total - (std::log2(sub_k) - (dmin_k - dmin) * inv_s2 / 0.6931471805599453);
        }
    }
    return m - acc / static_cast<double>(samples);
}

}  // namespace uwlink

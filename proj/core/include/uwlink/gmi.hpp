#pragma once

#include <cstdint>
#include <cstddef>

#include "uwlink/constellation.hpp"

namespace uwlink {

// Deterministic per-channel stream split: the same base seed and channel
// index always yield the same substream, so parallel and serial evaluation
// orders agree bit-exactly.
std::uint64_t channel_seed(std::uint64_t base_seed, int channel_index);

// Bit-metric-decoding GMI over an AWGN channel at the given SNR, estimated by
// Monte Carlo with `samples` transmitted symbols. Unit-energy normalization:
// the complex noise variance is 1/snr. Returns bits/symbol per polarization.
double gmi_monte_carlo(const Constellation& c, double snr_db, std::size_t samples,
                       std::uint64_t seed);

}  // namespace uwlink

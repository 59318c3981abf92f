#pragma once

#include <complex>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace uwlink {

// Labeled constellation, normalized to unit average energy.
struct Constellation {
    std::string name;
    std::vector<std::complex<double>> points;
    std::vector<std::uint32_t> labels;  // bit strings, MSB first
    int bits = 0;                       // m = log2(points)

    std::size_t size() const { return points.size(); }
    double average_energy() const;
};

// Text format: header "m=<bits>", then one "<bit-label> <real> <imag>" line
// per point. Parse failures carry the offending line number.
Constellation load_constellation(const std::string& path);
Constellation parse_constellation(std::istream& in, const std::string& name);

// Built-in square (even m) or rectangular (odd m) QAM with per-axis Gray
// labels, m in [2, 12].
Constellation square_qam(int bits);

// "qam16", "qam1024", ... resolve to builtins; anything else is a file path.
Constellation constellation_by_name_or_file(const std::string& spec);

}  // namespace uwlink

#include "uwlink/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "uwlink/errors.hpp"

namespace uwlink {

double Constellation::average_energy() const {
    double e = 0.0;
    for (const auto& p : points) e += std::norm(p);
    return points.empty() ? 0.0 : e / points.size();
}

namespace {

void normalize(Constellation& c) {
    const double e = c.average_energy();
    if (!(e > 0.0)) throw ValidationError(c.name + ": constellation has zero energy");
    const double s = 1.0 / std::sqrt(e);
    for (auto& p : c.points) p *= s;
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& what) {
    std::ostringstream os;
    os << name << ":" << line << ": " << what;
    throw ValidationError(os.str());
}

}  // namespace

Constellation parse_constellation(std::istream& in, const std::string& name) {
    Constellation c;
    c.name = name;
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) fail(name, 1, "empty constellation file");
    ++lineno;
    if (line.rfind("m=", 0) != 0) fail(name, lineno, "expected header 'm=<bits>'");
    try {
        c.bits = std::stoi(line.substr(2));
    } catch (const std::exception&) {
        fail(name, lineno, "bad bit count in header");
    }
    if (c.bits < 1 || c.bits > 20) fail(name, lineno, "unsupported bit count");

    std::set<std::uint32_t> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string lab;
        double re = 0.0, im = 0.0;
        if (!(ls >> lab >> re >> im)) fail(name, lineno, "expected '<label> <re> <im>'");
        if (static_cast<int>(lab.size()) != c.bits)
            fail(name, lineno, "label length does not match m=" + std::to_string(c.bits));
        std::uint32_t v = 0;
        for (char ch : lab) {
            if (ch != '0' && ch != '1') fail(name, lineno, "label must be a 0/1 string");
            v = (v << 1) | static_cast<std::uint32_t>(ch - '0');
        }
        if (!seen.insert(v).second) fail(name, lineno, "duplicate label " + lab);
        if (!std::isfinite(re) || !std::isfinite(im))
            fail(name, lineno, "non-finite coordinates");
        c.labels.push_back(v);
        c.points.emplace_back(re, im);
    }
    const std::size_t expect = std::size_t{1} << c.bits;
    if (c.points.size() != expect) {
        std::ostringstream os;
        os << "cardinality " << c.points.size() << " is not 2^" << c.bits << " = " << expect
           << " (cardinality must be a power of two matching the header)";
        fail(name, lineno, os.str());
    }
    normalize(c);
    return c;
}

Constellation load_constellation(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open constellation file: " + path);
    return parse_constellation(f, path);
}

namespace {

std::uint32_t gray(std::uint32_t n) { return n ^ (n >> 1); }

}  // namespace

Constellation square_qam(int bits) {
    if (bits < 2 || bits > 12) throw ValidationError("square_qam: bits must be in [2, 12]");
    const int bi = (bits + 1) / 2;  // I axis gets the extra bit when m is odd
    const int bq = bits / 2;
    const int ki = 1 << bi, kq = 1 << bq;
    Constellation c;
    c.name = "qam" + std::to_string(1 << bits);
    c.bits = bits;
    for (int i = 0; i < ki; ++i) {
        for (int q = 0; q < kq; ++q) {
            const double re = 2.0 * i - (ki - 1);
            const double im = 2.0 * q - (kq - 1);
            c.points.emplace_back(re, im);
            c.labels.push_back((gray(static_cast<std::uint32_t>(i)) << bq) |
                               gray(static_cast<std::uint32_t>(q)));
        }
    }
    normalize(c);
    return c;
}

Constellation constellation_by_name_or_file(const std::string& spec) {
    if (spec.rfind("qam", 0) == 0) {
        const std::string num = spec.substr(3);
        if (!num.empty() && std::all_of(num.begin(), num.end(), ::isdigit)) {
            const long n = std::stol(num);
            int bits = 0;
            while ((1L << bits) < n) ++bits;
            if ((1L << bits) != n)
                throw ValidationError("builtin QAM size must be a power of two: " + spec);
            return square_qam(bits);
        }
    }
    return load_constellation(spec);
}

}  // namespace uwlink

#pragma once

#include "rational.hpp"

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace stargraph {

/// Problem parameters: number of edges of the star graph and the spectral
/// data (two momenta and the interaction strength on the diagonal).
///
/// Invariants: n >= 2, k1 != 0, k2 != 0, |k1| != |k2|, c != 0.
struct Params {
    int n;
    Rat k1, k2, c;

    Params(int n_, Rat k1_, Rat k2_, Rat c_) : n(n_), k1(std::move(k1_)), k2(std::move(k2_)), c(std::move(c_)) {
        if (n < 2) throw std::invalid_argument("n must be at least 2");
        if (k1 == 0 || k2 == 0) throw std::invalid_argument("momenta must be nonzero");
        if (abs(k1) == abs(k2)) throw std::invalid_argument("momenta must differ in absolute value");
        if (c == 0) throw std::invalid_argument("coupling must be nonzero");
    }

    friend bool operator==(const Params& a, const Params& b) {
        return a.n == b.n && a.k1 == b.k1 && a.k2 == b.k2 && a.c == b.c;
    }
};

/// A region of the cut two-particle configuration space. The off-diagonal
/// quadrants Q_ij (particle one on edge i, particle two on edge j, i != j)
/// stay whole; each diagonal quadrant Q_ii is sliced along x = y into a
/// Lower (x > y) and an Upper (x < y) triangle. That gives n^2 + n regions.
enum class RegionKind { Off, Lower, Upper };

struct Region {
    RegionKind kind;
    int i;  // edge of particle one (x coordinate)
    int j;  // edge of particle two (y coordinate); equals i for triangles

    static Region off(int i, int j) { return {RegionKind::Off, i, j}; }
    static Region lower(int i) { return {RegionKind::Lower, i, i}; }
    static Region upper(int i) { return {RegionKind::Upper, i, i}; }

    // Canonical order: all off-diagonal quadrants in lexicographic (i, j)
    // order, then per edge the Lower and Upper triangle.
    std::tuple<int, int, int, int> key() const {
        const int block = kind == RegionKind::Off ? 0 : 1;
        const int half = kind == RegionKind::Upper ? 1 : 0;
        return {block, i, j, half};
    }
    friend bool operator<(const Region& a, const Region& b) { return a.key() < b.key(); }
    friend bool operator==(const Region& a, const Region& b) { return a.key() == b.key(); }
    friend bool operator!=(const Region& a, const Region& b) { return !(a == b); }
};

inline void check_region(const Region& r, int n) {
    const bool edges_ok = r.i >= 1 && r.i <= n && r.j >= 1 && r.j <= n;
    const bool shape_ok = r.kind == RegionKind::Off ? r.i != r.j : r.i == r.j;
    if (!edges_ok || !shape_ok) throw std::invalid_argument("invalid region for n = " + std::to_string(n));
}

inline std::vector<Region> all_regions(int n) {
    std::vector<Region> out;
    out.reserve(static_cast<std::size_t>(n) * (n + 1));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) out.push_back(Region::off(i, j));
    for (int i = 1; i <= n; ++i) {
        out.push_back(Region::lower(i));
        out.push_back(Region::upper(i));
    }
    return out;
}

/// Position of a region in the canonical order above.
inline int region_index(const Region& r, int n) {
    check_region(r, n);
    if (r.kind == RegionKind::Off)
        return (r.i - 1) * (n - 1) + (r.j - 1) - (r.j > r.i ? 1 : 0);
    return n * (n - 1) + 2 * (r.i - 1) + (r.kind == RegionKind::Upper ? 1 : 0);
}

inline std::string region_label(const Region& r) {
    switch (r.kind) {
        case RegionKind::Off:
            return "off_" + std::to_string(r.i) + "_" + std::to_string(r.j);
        case RegionKind::Lower:
            return "lower_" + std::to_string(r.i);
        case RegionKind::Upper:
            return "upper_" + std::to_string(r.i);
    }
    throw std::logic_error("unreachable");
}

inline Region parse_region(const std::string& label) {
    const auto bad = [&] { return std::invalid_argument("malformed region label: '" + label + "'"); };
    const auto underscore = label.find('_');
    if (underscore == std::string::npos) throw bad();
    const std::string head = label.substr(0, underscore);
    const std::string rest = label.substr(underscore + 1);
    try {
        if (head == "lower") return Region::lower(std::stoi(rest));
        if (head == "upper") return Region::upper(std::stoi(rest));
        if (head == "off") {
            const auto sep = rest.find('_');
            if (sep == std::string::npos) throw bad();
            return Region::off(std::stoi(rest.substr(0, sep)), std::stoi(rest.substr(sep + 1)));
        }
    } catch (const std::invalid_argument&) {
        throw bad();
    } catch (const std::out_of_range&) {
        throw bad();
    }
    throw bad();
}

/// Which momentum rides on which coordinate: K12 puts k1 on x and k2 on y,
/// K21 swaps them.
enum class Assign { K12, K21 };

enum class Trig { Cos, Sin };

/// One of the eight products t_x(kx * x) * t_y(ky * y) with t in {cos, sin}
/// spanning the local solution space of a region.
struct TrigMonomial {
    Assign assign;
    Trig x, y;

    friend bool operator==(const TrigMonomial& a, const TrigMonomial& b) {
        return a.assign == b.assign && a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const TrigMonomial& a, const TrigMonomial& b) { return !(a == b); }
};

inline int monomial_index(const TrigMonomial& m) {
    return static_cast<int>(m.assign) * 4 + static_cast<int>(m.x) * 2 + static_cast<int>(m.y);
}

inline std::array<TrigMonomial, 8> all_monomials() {
    std::array<TrigMonomial, 8> out{};
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                out[static_cast<std::size_t>(a * 4 + x * 2 + y)] = {static_cast<Assign>(a), static_cast<Trig>(x),
                                                                   static_cast<Trig>(y)};
    return out;
}

/// Label "ccA", "csA", "scA", "ssA" with A in {12, 21}: first letter is the
/// x factor, second the y factor, suffix the momentum assignment. Example:
/// sc12 = sin(k1 x) cos(k2 y), sc21 = sin(k2 x) cos(k1 y).
inline std::string monomial_label(const TrigMonomial& m) {
    std::string s;
    s += m.x == Trig::Cos ? 'c' : 's';
    s += m.y == Trig::Cos ? 'c' : 's';
    s += m.assign == Assign::K12 ? "12" : "21";
    return s;
}

inline TrigMonomial parse_monomial(const std::string& label) {
    const auto bad = [&] { return std::invalid_argument("malformed monomial label: '" + label + "'"); };
    if (label.size() != 4) throw bad();
    TrigMonomial m{};
    if (label[0] == 'c') m.x = Trig::Cos;
    else if (label[0] == 's') m.x = Trig::Sin;
    else throw bad();
    if (label[1] == 'c') m.y = Trig::Cos;
    else if (label[1] == 's') m.y = Trig::Sin;
    else throw bad();
    const std::string suffix = label.substr(2);
    if (suffix == "12") m.assign = Assign::K12;
    else if (suffix == "21") m.assign = Assign::K21;
    else throw bad();
    return m;
}

/// A piecewise trig polynomial on the cut configuration space: per region a
/// length-8 coefficient vector over the monomial basis. Regions whose
/// coefficients are all zero are not stored, so equality of the stored maps
/// is equality of functions (region by region, coefficient by coefficient).
class Wave {
public:
    using Coeffs = std::array<Rat, 8>;

    explicit Wave(Params params) : params_(std::move(params)) {}

    const Params& params() const { return params_; }
    const std::map<Region, Coeffs>& regions() const { return regions_; }

    Rat coeff(const Region& r, const TrigMonomial& m) const {
        check_region(r, params_.n);
        const auto it = regions_.find(r);
        if (it == regions_.end()) return Rat(0);
        return it->second[static_cast<std::size_t>(monomial_index(m))];
    }

    void set_coeff(const Region& r, const TrigMonomial& m, Rat value) {
        check_region(r, params_.n);
        regions_[r][static_cast<std::size_t>(monomial_index(m))] = std::move(value);
        prune(r);
    }

    void add_coeff(const Region& r, const TrigMonomial& m, const Rat& value) {
        check_region(r, params_.n);
        regions_[r][static_cast<std::size_t>(monomial_index(m))] += value;
        prune(r);
    }

    bool is_zero() const { return regions_.empty(); }

    Wave& operator+=(const Wave& other) {
        require_same_params(other);
        for (const auto& [region, coeffs] : other.regions_) {
            auto& mine = regions_[region];
            for (std::size_t s = 0; s < 8; ++s) mine[s] += coeffs[s];
            prune(region);
        }
        return *this;
    }

    Wave& operator-=(const Wave& other) { return *this += (Rat(-1) * other); }

    Wave& operator*=(const Rat& scalar) {
        if (scalar == 0) {
            regions_.clear();
            return *this;
        }
        for (auto& [region, coeffs] : regions_)
            for (auto& q : coeffs) q *= scalar;
        return *this;
    }

    friend Wave operator+(Wave a, const Wave& b) { return a += b; }
    friend Wave operator-(Wave a, const Wave& b) { return a -= b; }
    friend Wave operator*(const Rat& s, Wave w) { return w *= s; }
    friend Wave operator-(Wave w) { return w *= Rat(-1); }

    friend bool operator==(const Wave& a, const Wave& b) {
        return a.params_ == b.params_ && a.regions_ == b.regions_;
    }
    friend bool operator!=(const Wave& a, const Wave& b) { return !(a == b); }

private:
    void require_same_params(const Wave& other) const {
        if (!(params_ == other.params_)) throw std::invalid_argument("wave parameter mismatch");
    }
    void prune(const Region& r) {
        const auto it = regions_.find(r);
        if (it == regions_.end()) return;
        for (const auto& q : it->second)
            if (q != 0) return;
        regions_.erase(it);
    }

    Params params_;
    std::map<Region, Coeffs> regions_;
};

/// Flattens a wave into the global coordinate vector of length 8 (n^2 + n):
/// regions in canonical order, monomials in index order within each region.
inline std::vector<Rat> to_coords(const Wave& w) {
    const int n = w.params().n;
    std::vector<Rat> out(static_cast<std::size_t>(8) * n * (n + 1), Rat(0));
    for (const auto& [region, coeffs] : w.regions()) {
        const std::size_t base = static_cast<std::size_t>(region_index(region, n)) * 8;
        for (std::size_t s = 0; s < 8; ++s) out[base + s] = coeffs[s];
    }
    return out;
}

inline Wave from_coords(const std::vector<Rat>& coords, const Params& params) {
    const int n = params.n;
    if (coords.size() != static_cast<std::size_t>(8) * n * (n + 1))
        throw std::invalid_argument("coordinate vector has wrong length for n = " + std::to_string(n));
    Wave w(params);
    const auto monomials = all_monomials();
    for (const Region& region : all_regions(n)) {
        const std::size_t base = static_cast<std::size_t>(region_index(region, n)) * 8;
        for (std::size_t s = 0; s < 8; ++s)
            if (coords[base + s] != 0) w.set_coeff(region, monomials[s], coords[base + s]);
    }
    return w;
}

/// Tab-separated dump of a list of waves, one row per nonzero coefficient:
///     member <TAB> region <TAB> monomial <TAB> coefficient
/// Member indices are zero-based positions in the list; rows appear in
/// canonical region/monomial order within each member.
inline void write_tsv(std::ostream& os, const std::vector<Wave>& waves, bool header = true) {
    if (header) os << "member\tregion\tmonomial\tcoefficient\n";
    const auto monomials = all_monomials();
    for (std::size_t w = 0; w < waves.size(); ++w) {
        for (const auto& [region, coeffs] : waves[w].regions()) {
            for (std::size_t s = 0; s < 8; ++s) {
                if (coeffs[s] == 0) continue;
                os << w << '\t' << region_label(region) << '\t' << monomial_label(monomials[s]) << '\t'
                   << rat_string(coeffs[s]) << '\n';
            }
        }
    }
}

inline std::string to_tsv(const std::vector<Wave>& waves, bool header = true) {
    std::ostringstream os;
    write_tsv(os, waves, header);
    return os.str();
}

/// Reads the format produced by write_tsv. Member indices must be
/// non-decreasing; gaps produce intermediate zero waves so that indices in
/// the file match positions in the returned list.
inline std::vector<Wave> read_tsv(std::istream& is, const Params& params) {
    std::vector<Wave> out;
    std::string line;
    bool first = true;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string member, region, monomial, coefficient;
        if (!std::getline(row, member, '\t') || !std::getline(row, region, '\t') ||
            !std::getline(row, monomial, '\t') || !std::getline(row, coefficient))
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 4 tab-separated fields");
        if (first && member == "member") {
            first = false;
            continue;
        }
        first = false;
        std::size_t index = 0;
        try {
            index = std::stoul(member);
        } catch (const std::exception&) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad member index '" + member + "'");
        }
        if (index + 1 < out.size())
            throw std::invalid_argument("line " + std::to_string(lineno) + ": member indices must be non-decreasing");
        while (out.size() <= index) out.emplace_back(params);
        out[index].add_coeff(parse_region(region), parse_monomial(monomial), parse_rational(coefficient));
    }
    return out;
}

}  // namespace stargraph

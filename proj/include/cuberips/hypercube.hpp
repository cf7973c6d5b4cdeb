#pragma once

// Hypercube graph vertex arithmetic: vertices of I_n are n-bit strings,
// edges join strings differing in one coordinate, graph distance equals
// Hamming distance.  Coordinates are 1-based at every API boundary and in
// file formats; bit i-1 of the encoding stores coordinate i, so the
// textual form prints coordinate 1 leftmost.

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuberips/util.hpp"

namespace cuberips {

constexpr int kMaxVertexDim = 20;   // vertex arithmetic fits one word
constexpr int kMaxComplexDim = 6;   // 2^6 vertex ids fit a 64-bit simplex mask

struct Vertex {
    std::uint32_t bits = 0;
    int dim = 0;

    Vertex() = default;
    Vertex(std::uint32_t b, int n) : bits(b), dim(n) {
        if (n < 1 || n > kMaxVertexDim) throw std::invalid_argument("vertex dimension out of range [1,20]");
        if (b >= (std::uint32_t{1} << n)) throw std::invalid_argument("vertex bits out of range for dimension");
    }

    // Coordinate value v(i), i in [1,n].
    int coord(int i) const {
        if (i < 1 || i > dim) throw std::invalid_argument("coordinate index out of range [1,n]");
        return (bits >> (i - 1)) & 1;
    }

    bool operator==(const Vertex& o) const { return bits == o.bits && dim == o.dim; }
    bool operator!=(const Vertex& o) const { return !(*this == o); }
    bool operator<(const Vertex& o) const { return bits < o.bits; }
};

inline void check_same_dim(const Vertex& v, const Vertex& w) {
    if (v.dim != w.dim) throw std::invalid_argument("dimension mismatch between vertices");
}

// v^{i_1,...,i_k}: flip the listed coordinates.
inline Vertex flip(const Vertex& v, const std::set<int>& coords) {
    std::uint32_t mask = 0;
    for (int i : coords) {
        if (i < 1 || i > v.dim) throw std::invalid_argument("flip index out of range [1,n]");
        mask |= std::uint32_t{1} << (i - 1);
    }
    return Vertex(v.bits ^ mask, v.dim);
}

inline Vertex flip(const Vertex& v, std::initializer_list<int> coords) {
    return flip(v, std::set<int>(coords));
}

// Hamming distance; equals graph distance in I_n.
inline int distance(const Vertex& v, const Vertex& w) {
    check_same_dim(v, w);
    return std::popcount(v.bits ^ w.bits);
}

inline std::vector<Vertex> neighborhood(const Vertex& v, bool closed) {
    std::vector<Vertex> out;
    out.reserve(static_cast<size_t>(v.dim) + (closed ? 1 : 0));
    if (closed) out.push_back(v);
    for (int i = 1; i <= v.dim; ++i) out.emplace_back(v.bits ^ (std::uint32_t{1} << (i - 1)), v.dim);
    return out;
}

// K_v^{i,j,k} = {v, v^{i,j}, v^{j,k}, v^{i,k}}; pairwise distances all 2.
inline std::vector<Vertex> k_set(const Vertex& v, int i, int j, int k) {
    if (i == j || j == k || i == k) throw std::invalid_argument("k_set indices must be distinct");
    return {v, flip(v, {i, j}), flip(v, {j, k}), flip(v, {i, k})};
}

// I_n^{(j_1,e_1),...,(j_t,e_t)}: the induced subcube with the listed
// coordinates fixed.  The spanned subcube has dimension n - |fixed|.
struct SubcubeSpec {
    int ambient_dim = 0;
    std::vector<std::pair<int, int>> fixed;  // (1-based coordinate, value in {0,1})

    SubcubeSpec() = default;
    SubcubeSpec(int n, std::vector<std::pair<int, int>> f) : ambient_dim(n), fixed(std::move(f)) {
        if (n < 1 || n > kMaxVertexDim) throw std::invalid_argument("subcube ambient dimension out of range");
        std::uint32_t seen = 0;
        for (auto& [i, e] : fixed) {
            if (i < 1 || i > n) throw std::invalid_argument("fixed coordinate out of range [1,n]");
            if (e != 0 && e != 1) throw std::invalid_argument("fixed value must be 0 or 1");
            std::uint32_t b = std::uint32_t{1} << (i - 1);
            if (seen & b) throw std::invalid_argument("fixed coordinates must be pairwise distinct");
            seen |= b;
        }
        std::sort(fixed.begin(), fixed.end());
    }

    int subcube_dim() const { return ambient_dim - static_cast<int>(fixed.size()); }

    std::uint32_t fixed_mask() const {
        std::uint32_t m = 0;
        for (auto& [i, e] : fixed) m |= std::uint32_t{1} << (i - 1);
        return m;
    }
    std::uint32_t fixed_values() const {
        std::uint32_t m = 0;
        for (auto& [i, e] : fixed) if (e) m |= std::uint32_t{1} << (i - 1);
        return m;
    }

    bool contains(const Vertex& v) const {
        if (v.dim != ambient_dim) return false;
        return (v.bits & fixed_mask()) == fixed_values();
    }

    bool operator==(const SubcubeSpec& o) const {
        return ambient_dim == o.ambient_dim && fixed == o.fixed;
    }
    bool operator<(const SubcubeSpec& o) const {
        if (ambient_dim != o.ambient_dim) return ambient_dim < o.ambient_dim;
        return fixed < o.fixed;
    }
};

inline std::vector<Vertex> subcube_vertices(const SubcubeSpec& spec) {
    int n = spec.ambient_dim;
    std::uint32_t fm = spec.fixed_mask(), fv = spec.fixed_values();
    std::vector<int> free_coords;
    for (int i = 0; i < n; ++i)
        if (!(fm >> i & 1)) free_coords.push_back(i);
    std::vector<Vertex> out;
    out.reserve(std::size_t{1} << free_coords.size());
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << free_coords.size()); ++x) {
        std::uint32_t b = fv;
        for (size_t t = 0; t < free_coords.size(); ++t)
            if (x >> t & 1) b |= std::uint32_t{1} << free_coords[t];
        out.emplace_back(b, n);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Coordinate projection onto the subcube: overwrite the fixed coordinates,
// leave the rest alone.  Idempotent, 1-Lipschitz in Hamming distance, and
// the identity on the subcube; composing single-coordinate projections in
// any order gives the same map.
inline Vertex retract_vertex(const Vertex& v, const SubcubeSpec& spec) {
    if (v.dim != spec.ambient_dim) throw std::invalid_argument("dimension mismatch in retract_vertex");
    return Vertex((v.bits & ~spec.fixed_mask()) | spec.fixed_values(), v.dim);
}

// --- textual formats -------------------------------------------------------

// Fixed-width binary string with coordinate 1 leftmost, e.g. "01101".
inline std::string vertex_to_string(const Vertex& v) {
    std::string s(static_cast<size_t>(v.dim), '0');
    for (int i = 0; i < v.dim; ++i)
        if (v.bits >> i & 1) s[static_cast<size_t>(i)] = '1';
    return s;
}

inline std::string vertex_to_string(std::uint32_t bits, int n) {
    return vertex_to_string(Vertex(bits, n));
}

inline Vertex vertex_from_string(const std::string& s) {
    if (s.empty() || s.size() > kMaxVertexDim) throw std::invalid_argument("vertex string length out of range");
    std::uint32_t b = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') b |= std::uint32_t{1} << i;
        else if (s[i] != '0') throw std::invalid_argument("vertex string must be binary: " + s);
    }
    return Vertex(b, static_cast<int>(s.size()));
}

// Comma-separated "i=e" pairs, e.g. "2=1,4=0".
inline std::string subcube_to_string(const SubcubeSpec& spec) {
    std::string s;
    for (auto& [i, e] : spec.fixed) {
        if (!s.empty()) s += ',';
        s += std::to_string(i) + "=" + std::to_string(e);
    }
    return s;
}

inline SubcubeSpec subcube_from_string(const std::string& s, int ambient_dim) {
    std::vector<std::pair<int, int>> fixed;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad subcube pair: " + item);
        fixed.emplace_back(std::stoi(item.substr(0, eq)), std::stoi(item.substr(eq + 1)));
    }
    return SubcubeSpec(ambient_dim, std::move(fixed));
}

}  // namespace cuberips

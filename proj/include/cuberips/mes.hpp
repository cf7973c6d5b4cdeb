#pragma once

// Minimal exclusion sequences.  Given a linear ordering s_1 < ... < s_m of
// the facets and a face sigma with smallest covering index i, the sequence
// is null when i = 1; otherwise v_1 = min(sigma \ s_1) and for k < i
//   v_k = min({v_1,...,v_{k-1}} n (sigma \ s_k))   when that set is nonempty,
//   v_k = min(sigma \ s_k)                         otherwise.
// M(sigma) is the set of vertices appearing, and d_prec = max |M(sigma)|
// over all faces; the complex is d_prec-collapsible.  Vertex order is the
// ascending integer encoding.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cuberips/complex.hpp"
#include "cuberips/facets.hpp"

namespace cuberips {

using FacetOrdering = std::vector<Vmask>;

struct MesResult {
    bool null_sequence = true;
    std::vector<int> sequence;  // vertex ids
    Vmask support = 0;          // M(sigma)
    int size() const { return popcount(support); }
};

inline MesResult mes(const FacetOrdering& ordering, Vmask sigma) {
    size_t cover = ordering.size();
    for (size_t k = 0; k < ordering.size(); ++k)
        if (is_subset(sigma, ordering[k])) { cover = k; break; }
    if (cover == ordering.size()) throw std::invalid_argument("sigma is not a face of the complex");
    MesResult out;
    if (cover == 0) return out;
    out.null_sequence = false;
    out.sequence.reserve(cover);
    Vmask support = 0;
    for (size_t k = 0; k < cover; ++k) {
        Vmask excluded = sigma & ~ordering[k];
        Vmask cand = (k == 0) ? excluded : (support & excluded);
        if (cand == 0) cand = excluded;
        int v = lowest_bit(cand);
        out.sequence.push_back(v);
        support |= Vmask{1} << v;
    }
    out.support = support;
    return out;
}

// Verify an ordering is a permutation of the complex's facet list.
inline void check_ordering(const Complex& c, const FacetOrdering& ordering) {
    std::vector<Vmask> a = c.facets, b = ordering;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw std::invalid_argument("ordering is not a permutation of the facet list");
}

struct DPrecResult {
    int value = 0;
    Vmask argmax_face = 0;
    MesResult argmax_mes;
    std::uint64_t faces_total = 0;
    std::uint64_t faces_scanned = 0;
};

// Exact maximum of |M(sigma)| over all nonempty faces.  Faces are scanned
// in decreasing cardinality; a face with |sigma| <= current max cannot
// raise the maximum since M(sigma) is a subset of sigma.
inline DPrecResult d_prec(const Complex& c, const FacetOrdering& ordering,
                          std::uint64_t face_budget = 10'000'000) {
    check_ordering(c, ordering);
    auto faces = enumerate_faces(c, -1, face_budget);
    std::stable_sort(faces.begin(), faces.end(),
                     [](Vmask a, Vmask b) { return popcount(a) > popcount(b); });
    DPrecResult out;
    out.faces_total = faces.size();
    for (Vmask f : faces) {
        if (popcount(f) <= out.value) break;
        ++out.faces_scanned;
        MesResult m = mes(ordering, f);
        if (m.size() > out.value) {
            out.value = m.size();
            out.argmax_face = f;
            out.argmax_mes = m;
        }
    }
    return out;
}

// --- class-major facet orderings ---------------------------------------------

// Class-major order: for r=2 the closed neighbourhoods come first; for r=3
// the B facets come first.  Ties inside a class break by canonical witness,
// unclassified facets are an error.
inline FacetOrdering paper_ordering(const Complex& c, int r) {
    struct Key {
        int rank;
        std::uint64_t a, b, d;
        Vmask mask;
        bool operator<(const Key& o) const {
            return std::tie(rank, a, b, d, mask) < std::tie(o.rank, o.a, o.b, o.d, o.mask);
        }
    };
    int n = c.n;
    std::vector<std::pair<Key, Vmask>> keyed;
    keyed.reserve(c.facets.size());
    for (Vmask f : c.facets) {
        Key key{0, 0, 0, 0, f};
        auto idx_key = [](const std::array<int, 3>& idx) {
            return (static_cast<std::uint64_t>(idx[0]) << 16) |
                   (static_cast<std::uint64_t>(idx[1]) << 8) | static_cast<std::uint64_t>(idx[2]);
        };
        if (r == 2) {
            if (auto m = match_closed_nbhd(f, n)) {
                key.rank = 0; key.a = m->v;
            } else if (auto m2 = match_square(f, n)) {
                key.rank = 1; key.a = m2->v; key.b = idx_key(m2->idx);
            } else if (auto m3 = match_k_set(f, n)) {
                key.rank = 2; key.a = m3->v; key.b = idx_key(m3->idx);
            } else {
                throw VerificationError("unclassified facet in r=2 ordering");
            }
        } else if (r == 3) {
            if (auto m = match_b_facet(f, n)) {
                key.rank = 0; key.a = m->v; key.b = m->w;
            } else if (auto m2 = match_a_facet(f, n)) {
                key.rank = 1; key.a = m2->v; key.b = idx_key(m2->idx);
            } else if (auto m3 = match_d_facet(f, n)) {
                key.rank = 3; key.a = m3->v; key.b = idx_key(m3->idx); key.d = static_cast<std::uint64_t>(m3->extra);
            } else if (popcount(f) == 8 && within_4_subcube(f, n)) {
                key.rank = 2;
            } else {
                throw VerificationError("unclassified facet in r=3 ordering");
            }
        } else {
            throw std::invalid_argument("the class-major ordering is defined for r in {2,3}");
        }
        keyed.emplace_back(key, f);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        if (x.first < y.first) return true;
        if (y.first < x.first) return false;
        return lex_less(x.second, y.second);
    });
    FacetOrdering out;
    out.reserve(keyed.size());
    for (auto& [k, f] : keyed) out.push_back(f);
    return out;
}

inline FacetOrdering canonical_ordering(const Complex& c) { return c.facets; }

}  // namespace cuberips

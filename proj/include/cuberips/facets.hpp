#pragma once

// Direct generators for the classified maximal-simplex families of
// VR(I_n;2) and VR(I_n;3), and classification of facets back to their
// defining witnesses.  The generators are verified elsewhere against the
// clique enumerator; the class formulas are:
//   r=2: N[v]; squares {v,v^i,v^j,v^{i,j}}; K-sets K_v^{i,j,k}
//   r=3: A_n = N(v) u K_v^{i,j,k}; B_n = N(v) u N(w) over edges;
//        C_n = dimension-7 facets, generated from 4-subcube facets and
//        filtered by global maximality; D_n = K_v^{i,j,k} u {v^i,v^j,v^k,v^l}
//        (post-collapse residuals, not facets of VR(I_n;3) itself).

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cuberips/complex.hpp"

namespace cuberips {

enum class FacetTag {
    R2_ClosedNbhd,
    R2_Square,
    R2_KSet,
    R3_A,
    R3_B,
    R3_C,
    R3_D,
    Unclassified,
};

inline const char* facet_tag_name(FacetTag t) {
    switch (t) {
        case FacetTag::R2_ClosedNbhd: return "N[v]";
        case FacetTag::R2_Square: return "square";
        case FacetTag::R2_KSet: return "K";
        case FacetTag::R3_A: return "A";
        case FacetTag::R3_B: return "B";
        case FacetTag::R3_C: return "C";
        case FacetTag::R3_D: return "D";
        default: return "unclassified";
    }
}

struct FacetClass {
    FacetTag tag = FacetTag::Unclassified;
    std::uint32_t v = 0;        // apex / corner / smaller edge endpoint
    std::uint32_t w = 0;        // larger edge endpoint (R3_B)
    std::array<int, 3> idx{};   // 1-based coordinate indices, ascending, where used
    int extra = 0;              // the l index of an R3_D residual
};

struct ClassifiedFacet {
    Vmask facet = 0;
    FacetClass cls;
};

// Vertex-id bitmasks per vertex: all ids within Hamming distance r.
inline std::vector<Vmask> distance_balls(int n, int r) {
    if (n > kMaxComplexDim) throw BudgetExceeded("complex-level operations support n <= 6");
    size_t nv = std::size_t{1} << n;
    std::vector<Vmask> balls(nv, 0);
    for (size_t v = 0; v < nv; ++v)
        for (size_t w = 0; w < nv; ++w)
            if (std::popcount(static_cast<std::uint32_t>(v ^ w)) <= r) balls[v] |= Vmask{1} << w;
    return balls;
}

// Vertices that extend sigma within scale r (empty iff sigma is maximal).
inline Vmask extension_set(Vmask sigma, const std::vector<Vmask>& balls) {
    Vmask ext = ~Vmask{0};
    if (balls.size() < 64) ext = (Vmask{1} << balls.size()) - 1;
    for_each_bit(sigma, [&](int v) { ext &= balls[static_cast<size_t>(v)]; });
    return ext & ~sigma;
}

inline Vmask closed_nbhd_mask(std::uint32_t v, int n) {
    Vmask m = Vmask{1} << v;
    for (int i = 0; i < n; ++i) m |= Vmask{1} << (v ^ (std::uint32_t{1} << i));
    return m;
}

inline Vmask open_nbhd_mask(std::uint32_t v, int n) {
    return closed_nbhd_mask(v, n) & ~(Vmask{1} << v);
}

inline Vmask k_set_mask(std::uint32_t v, int i, int j, int k) {
    std::uint32_t bi = std::uint32_t{1} << (i - 1), bj = std::uint32_t{1} << (j - 1),
                  bk = std::uint32_t{1} << (k - 1);
    return (Vmask{1} << v) | (Vmask{1} << (v ^ bi ^ bj)) | (Vmask{1} << (v ^ bj ^ bk)) |
           (Vmask{1} << (v ^ bi ^ bk));
}

inline Vmask square_mask(std::uint32_t v, int i, int j) {
    std::uint32_t bi = std::uint32_t{1} << (i - 1), bj = std::uint32_t{1} << (j - 1);
    return (Vmask{1} << v) | (Vmask{1} << (v ^ bi)) | (Vmask{1} << (v ^ bj)) |
           (Vmask{1} << (v ^ bi ^ bj));
}

// All facets of VR(I_n;2), n >= 3: 2^n closed neighbourhoods, one square per
// geometric square, two K-sets per 3-subcube.
inline std::vector<ClassifiedFacet> generate_facets_r2(int n) {
    if (n < 3) throw std::invalid_argument("r=2 facet classification requires n >= 3");
    if (n > kMaxComplexDim) throw BudgetExceeded("complex-level operations support n <= 6");
    std::vector<ClassifiedFacet> out;
    std::uint32_t nv = std::uint32_t{1} << n;
    for (std::uint32_t v = 0; v < nv; ++v)
        out.push_back({closed_nbhd_mask(v, n), {FacetTag::R2_ClosedNbhd, v, 0, {0, 0, 0}, 0}});
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            std::uint32_t bij = (std::uint32_t{1} << (i - 1)) | (std::uint32_t{1} << (j - 1));
            for (std::uint32_t v = 0; v < nv; ++v)
                if ((v & bij) == 0)  // canonical corner: 0 at both square coordinates
                    out.push_back({square_mask(v, i, j), {FacetTag::R2_Square, v, 0, {i, j, 0}, 0}});
        }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                std::uint32_t bijk = (std::uint32_t{1} << (i - 1)) | (std::uint32_t{1} << (j - 1)) |
                                     (std::uint32_t{1} << (k - 1));
                for (std::uint32_t v = 0; v < nv; ++v)
                    if ((v & bijk) == 0) {
                        out.push_back({k_set_mask(v, i, j, k), {FacetTag::R2_KSet, v, 0, {i, j, k}, 0}});
                        std::uint32_t u = v ^ (std::uint32_t{1} << (i - 1));
                        out.push_back({k_set_mask(u, i, j, k), {FacetTag::R2_KSet, u, 0, {i, j, k}, 0}});
                    }
            }
    return out;
}

inline Vmask a_facet_mask(std::uint32_t v, int i, int j, int k, int n) {
    return open_nbhd_mask(v, n) | k_set_mask(v, i, j, k);
}

inline Vmask b_facet_mask(std::uint32_t v, std::uint32_t w, int n) {
    return open_nbhd_mask(v, n) | open_nbhd_mask(w, n);
}

inline Vmask d_facet_mask(std::uint32_t v, int i, int j, int k, int l, int n) {
    Vmask m = k_set_mask(v, i, j, k);
    for (int t : {i, j, k, l}) m |= Vmask{1} << (v ^ (std::uint32_t{1} << (t - 1)));
    (void)n;
    return m;
}

// All facets of VR(I_n;3), n >= 4.  The C family is candidate-and-filter:
// every dimension-7 facet lies inside some 4-dimensional subcube, so the
// 4-subcube facets filtered by global maximality are exactly C_n.
inline std::vector<ClassifiedFacet> generate_facets_r3(int n, std::uint64_t cap = 10'000'000) {
    if (n < 4) throw std::invalid_argument("r=3 facet classification requires n >= 4");
    if (n > kMaxComplexDim) throw BudgetExceeded("complex-level operations support n <= 6");
    std::vector<ClassifiedFacet> out;
    std::uint32_t nv = std::uint32_t{1} << n;

    for (std::uint32_t v = 0; v < nv; ++v)
        for (int i = 1; i <= n; ++i) {
            std::uint32_t w = v ^ (std::uint32_t{1} << (i - 1));
            if (v < w) out.push_back({b_facet_mask(v, w, n), {FacetTag::R3_B, v, w, {0, 0, 0}, 0}});
        }
    for (std::uint32_t v = 0; v < nv; ++v)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k)
                    out.push_back({a_facet_mask(v, i, j, k, n), {FacetTag::R3_A, v, 0, {i, j, k}, 0}});

    std::vector<Vmask> emitted;
    for (const auto& cf : out) emitted.push_back(cf.facet);
    sort_canonical(emitted);

    // C candidates: all facets of VR(H;3) over 4-dimensional subcubes H,
    // deduplicated, kept only when no vertex of I_n extends them.
    auto balls = distance_balls(n, 3);
    std::vector<Vmask> candidates;
    if (n == 4) {
        candidates = vr_complex(4, 3, cap).facets;
    } else {
        Complex delta4 = vr_complex(4, 3, cap);
        for (std::uint32_t fixedset = 0; fixedset < nv; ++fixedset) {
            if (std::popcount(fixedset) != n - 4) continue;
            std::uint32_t choices = std::uint32_t{1} << (n - 4);
            for (std::uint32_t val = 0; val < choices; ++val) {
                std::vector<std::pair<int, int>> fixed;
                int t = 0;
                for (int i = 0; i < n; ++i)
                    if (fixedset >> i & 1) fixed.emplace_back(i + 1, (val >> t++) & 1);
                SubcubeSpec spec(n, fixed);
                for (Vmask f : delta4.facets) candidates.push_back(embed_simplex(f, spec));
            }
        }
        sort_canonical(candidates);
    }
    for (Vmask cand : candidates) {
        if (extension_set(cand, balls) != 0) continue;
        if (std::binary_search(emitted.begin(), emitted.end(), cand, LexLess{})) continue;
        out.push_back({cand, {FacetTag::R3_C, 0, 0, {0, 0, 0}, 0}});
    }
    return out;
}

// --- classification ---------------------------------------------------------

inline std::optional<FacetClass> match_closed_nbhd(Vmask sigma, int n) {
    std::optional<FacetClass> out;
    for_each_bit(sigma, [&](int v) {
        if (!out && closed_nbhd_mask(static_cast<std::uint32_t>(v), n) == sigma)
            out = FacetClass{FacetTag::R2_ClosedNbhd, static_cast<std::uint32_t>(v), 0, {0, 0, 0}, 0};
    });
    return out;
}

inline std::optional<FacetClass> match_square(Vmask sigma, int /*n*/) {
    if (popcount(sigma) != 4) return std::nullopt;
    auto vs = bits_of(sigma);
    std::uint32_t m = static_cast<std::uint32_t>(vs[0]);
    std::vector<int> nbr;
    for (int u : vs)
        if (std::popcount(static_cast<std::uint32_t>(u) ^ m) == 1) nbr.push_back(u);
    if (nbr.size() != 2) return std::nullopt;
    int i = lowest_bit(static_cast<std::uint32_t>(nbr[0]) ^ m) + 1;
    int j = lowest_bit(static_cast<std::uint32_t>(nbr[1]) ^ m) + 1;
    if (i > j) std::swap(i, j);
    if (square_mask(m, i, j) != sigma) return std::nullopt;
    return FacetClass{FacetTag::R2_Square, m, 0, {i, j, 0}, 0};
}

inline std::optional<FacetClass> match_k_set(Vmask sigma, int /*n*/) {
    if (popcount(sigma) != 4) return std::nullopt;
    auto vs = bits_of(sigma);
    std::uint32_t m = static_cast<std::uint32_t>(vs[0]);
    std::uint32_t support = 0;
    for (int u : vs) {
        std::uint32_t d = static_cast<std::uint32_t>(u) ^ m;
        if (u != vs[0] && std::popcount(d) != 2) return std::nullopt;
        support |= d;
    }
    if (std::popcount(support) != 3) return std::nullopt;
    auto idx = bits_of(support);
    int i = idx[0] + 1, j = idx[1] + 1, k = idx[2] + 1;
    if (k_set_mask(m, i, j, k) != sigma) return std::nullopt;
    return FacetClass{FacetTag::R2_KSet, m, 0, {i, j, k}, 0};
}

inline std::optional<FacetClass> match_b_facet(Vmask sigma, int n) {
    auto vs = bits_of(sigma);
    for (int v : vs)
        for (int w : vs) {
            if (v >= w || std::popcount(static_cast<std::uint32_t>(v ^ w)) != 1) continue;
            if (b_facet_mask(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(w), n) == sigma)
                return FacetClass{FacetTag::R3_B, static_cast<std::uint32_t>(v),
                                  static_cast<std::uint32_t>(w), {0, 0, 0}, 0};
        }
    return std::nullopt;
}

inline std::optional<FacetClass> match_a_facet(Vmask sigma, int n) {
    auto vs = bits_of(sigma);
    for (int v : vs) {
        std::uint32_t u = static_cast<std::uint32_t>(v);
        if (!is_subset(open_nbhd_mask(u, n), sigma)) continue;
        Vmask rest = sigma & ~closed_nbhd_mask(u, n);
        if (popcount(rest) != 3) continue;
        std::uint32_t support = 0;
        bool good = true;
        for_each_bit(rest, [&](int x) {
            std::uint32_t d = static_cast<std::uint32_t>(x) ^ u;
            if (std::popcount(d) != 2) good = false;
            support |= d;
        });
        if (!good || std::popcount(support) != 3) continue;
        auto idx = bits_of(support);
        if (a_facet_mask(u, idx[0] + 1, idx[1] + 1, idx[2] + 1, n) == sigma)
            return FacetClass{FacetTag::R3_A, u, 0, {idx[0] + 1, idx[1] + 1, idx[2] + 1}, 0};
    }
    return std::nullopt;
}

// D_n residual K_v^{i,j,k} u {v^i,v^j,v^k,v^l}; recognized post-collapse.
inline std::optional<FacetClass> match_d_facet(Vmask sigma, int n) {
    if (popcount(sigma) != 8) return std::nullopt;
    auto vs = bits_of(sigma);
    for (int v : vs) {
        std::uint32_t u = static_cast<std::uint32_t>(v);
        Vmask nbrs = open_nbhd_mask(u, n) & sigma;
        if (popcount(nbrs) != 4) continue;
        Vmask rest = sigma & ~nbrs & ~(Vmask{1} << u);
        if (popcount(rest) != 3) continue;
        std::uint32_t support = 0;
        bool good = true;
        for_each_bit(rest, [&](int x) {
            std::uint32_t d = static_cast<std::uint32_t>(x) ^ u;
            if (std::popcount(d) != 2) good = false;
            support |= d;
        });
        if (!good || std::popcount(support) != 3) continue;
        auto idx = bits_of(support);
        int i = idx[0] + 1, j = idx[1] + 1, k = idx[2] + 1;
        Vmask needed = (Vmask{1} << (u ^ (std::uint32_t{1} << (i - 1)))) |
                       (Vmask{1} << (u ^ (std::uint32_t{1} << (j - 1)))) |
                       (Vmask{1} << (u ^ (std::uint32_t{1} << (k - 1))));
        if (!is_subset(needed, nbrs)) continue;
        Vmask extra = nbrs & ~needed;
        if (popcount(extra) != 1) continue;
        int l = lowest_bit(static_cast<std::uint32_t>(lowest_bit(extra)) ^ u) + 1;
        if (d_facet_mask(u, i, j, k, l, n) == sigma)
            return FacetClass{FacetTag::R3_D, u, 0, {i, j, k}, l};
    }
    return std::nullopt;
}

// True when sigma lies inside some 4-dimensional subcube (>= n-4 constant
// coordinates).
inline bool within_4_subcube(Vmask sigma, int n) {
    std::uint32_t and_all = ~std::uint32_t{0}, or_all = 0;
    for_each_bit(sigma, [&](int v) {
        and_all &= static_cast<std::uint32_t>(v);
        or_all |= static_cast<std::uint32_t>(v);
    });
    std::uint32_t full = (std::uint32_t{1} << n) - 1;
    int varying = std::popcount((or_all & ~and_all) & full);
    return varying <= 4;
}

// Classify a verified facet of VR(I_n;r).  Throws when sigma is not a
// maximal simplex of the complex.
inline FacetClass classify_facet(Vmask sigma, int n, int r) {
    if (sigma == 0) throw std::invalid_argument("cannot classify the empty simplex");
    if (diameter(sigma) > r) throw std::invalid_argument("sigma is not a simplex of VR(I_n;r)");
    auto balls = distance_balls(n, r);
    if (extension_set(sigma, balls) != 0)
        throw std::invalid_argument("sigma is not maximal in VR(I_n;r)");
    if (r == 2) {
        if (auto c = match_closed_nbhd(sigma, n)) return *c;
        if (auto c = match_square(sigma, n)) return *c;
        if (auto c = match_k_set(sigma, n)) return *c;
        return FacetClass{};
    }
    if (r == 3) {
        if (auto c = match_b_facet(sigma, n)) return *c;
        if (auto c = match_a_facet(sigma, n)) return *c;
        if (popcount(sigma) == 8 && within_4_subcube(sigma, n))
            return FacetClass{FacetTag::R3_C, 0, 0, {0, 0, 0}, 0};
        return FacetClass{};
    }
    return FacetClass{};
}

// Histogram facet-size -> count over the clique-enumerated complex.
inline std::map<int, std::uint64_t> facet_size_histogram(int n, int r, std::uint64_t cap = 10'000'000) {
    std::map<int, std::uint64_t> hist;
    for (Vmask f : vr_complex(n, r, cap).facets) ++hist[popcount(f)];
    return hist;
}

}  // namespace cuberips

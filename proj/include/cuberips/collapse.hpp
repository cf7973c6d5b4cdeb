#pragma once

// Elementary d-collapse engine and the explicit collapse schedule that
// removes the A facets of VR(I_n;3).  An elementary d-collapse removes the
// interval [gamma, sigma] where |gamma| <= d and sigma is the unique facet
// containing gamma; removing a proper interval leaves the Euler
// characteristic unchanged (the alternating face-count sum of the interval
// is zero), removing a single top face changes it by +-1.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuberips/complex.hpp"
#include "cuberips/facets.hpp"
#include "cuberips/io.hpp"
#include "cuberips/mes.hpp"

namespace cuberips {

struct CollapseInfo {
    Complex result;
    CollapseStep step;
    // Change in Euler characteristic: 0 for gamma != sigma (the removed
    // interval has vanishing alternating sum), -(-1)^(|sigma|-1) when the
    // step deletes a single maximal face.
    std::int64_t euler_delta = 0;
};

inline CollapseInfo elementary_collapse(const Complex& c, Vmask gamma, int d,
                                        std::optional<Vmask> expected_sigma = std::nullopt) {
    if (c.is_void()) throw std::invalid_argument("elementary collapse on the void complex");
    if (popcount(gamma) > d)
        throw VerificationError("free face exceeds collapse parameter: |gamma| = " +
                                std::to_string(popcount(gamma)) + " > d = " + std::to_string(d));
    int containing = 0;
    Vmask sigma = 0;
    for (Vmask f : c.facets)
        if (is_subset(gamma, f)) {
            ++containing;
            sigma = f;
            if (containing > 1) break;
        }
    if (containing != 1)
        throw VerificationError("gamma is contained in " + std::to_string(containing) +
                                " facets; elementary collapse needs exactly one");
    if (expected_sigma && sigma != *expected_sigma)
        throw VerificationError("collapse step names a facet that is not the unique container");

    std::vector<Vmask> facets;
    facets.reserve(c.facets.size() + static_cast<size_t>(popcount(gamma)));
    for (Vmask f : c.facets)
        if (f != sigma) facets.push_back(f);
    for_each_bit(gamma, [&](int x) {
        Vmask candidate = sigma & ~(Vmask{1} << x);
        bool dominated = false;
        for (Vmask f : facets)
            if (is_subset(candidate, f)) { dominated = true; break; }
        if (!dominated) facets.push_back(candidate);
    });
    sort_canonical(facets);

    CollapseInfo out;
    out.result.n = c.n;
    out.result.r = c.r;
    out.result.num_vertices = c.num_vertices;
    out.result.origin = Origin::reduced;
    out.result.facets = std::move(facets);
    out.step = CollapseStep{gamma, sigma};
    out.euler_delta = (gamma == sigma) ? ((popcount(sigma) % 2 == 1) ? -1 : 1) : 0;
    return out;
}

// Replays a schedule from scratch, re-verifying the free-face condition at
// every step.
inline Complex replay_schedule(Complex c, const std::vector<CollapseStep>& steps, int d) {
    for (const auto& s : steps) c = elementary_collapse(c, s.gamma, d, s.sigma).result;
    return c;
}

// --- removing the A facets of VR(I_n;3) --------------------------------------

// The schedule behind "Delta_n collapses to Delta_n'": per A facet
// sigma = N(v) u K_v^{i,j,k} with free coordinates R = [n] \ {i,j,k} (sorted),
// stage s in 1..n-4 collapses, for every (s-1)-subset T of {R_1..R_s}, the
// pair (trio u {v^p, v^q}, sigma \ {v^t : t in T}) where {p,q} =
// {R_1..R_{s+1}} \ T and trio = {v^{i,j}, v^{i,k}, v^{j,k}}.  Every free
// face has size 5; the residual facets are K_v^{i,j,k} u {v^i,v^j,v^k,v^l}.
struct ReduceResult {
    Complex reduced;
    std::vector<CollapseStep> schedule;
};

inline ReduceResult reduce_A_family(int n, std::uint64_t cap = 10'000'000) {
    if (n < 4) throw std::invalid_argument("reduce_A_family requires n >= 4");
    Complex c = vr_complex(n, 3, cap);
    ReduceResult out;
    if (n == 4) {  // no A facets can be removed: the 5-element free faces need two spare coordinates
        out.reduced = std::move(c);
        return out;
    }

    std::vector<ClassifiedFacet> classified = generate_facets_r3(n, cap);
    for (const auto& cf : classified) {
        if (cf.cls.tag != FacetTag::R3_A) continue;
        std::uint32_t v = cf.cls.v;
        int i = cf.cls.idx[0], j = cf.cls.idx[1], k = cf.cls.idx[2];
        Vmask sigma = cf.facet;
        Vmask trio = (Vmask{1} << (v ^ (std::uint32_t{1} << (i - 1)) ^ (std::uint32_t{1} << (j - 1)))) |
                     (Vmask{1} << (v ^ (std::uint32_t{1} << (i - 1)) ^ (std::uint32_t{1} << (k - 1)))) |
                     (Vmask{1} << (v ^ (std::uint32_t{1} << (j - 1)) ^ (std::uint32_t{1} << (k - 1))));
        std::vector<int> rest;
        for (int t = 1; t <= n; ++t)
            if (t != i && t != j && t != k) rest.push_back(t);

        auto nb = [&](int t) { return Vmask{1} << (v ^ (std::uint32_t{1} << (t - 1))); };

        for (int stage = 1; stage <= n - 4; ++stage) {
            // (stage-1)-subsets of the first `stage` rest coordinates, lex order
            std::vector<std::vector<int>> subsets;
            std::vector<int> pool(rest.begin(), rest.begin() + stage);
            for (std::uint32_t bitsel = 0; bitsel < (std::uint32_t{1} << stage); ++bitsel) {
                if (std::popcount(bitsel) != stage - 1) continue;
                std::vector<int> t_set;
                for (int b = 0; b < stage; ++b)
                    if (bitsel >> b & 1) t_set.push_back(pool[static_cast<size_t>(b)]);
                subsets.push_back(std::move(t_set));
            }
            std::sort(subsets.begin(), subsets.end());
            for (const auto& t_set : subsets) {
                Vmask removed = 0;
                for (int t : t_set) removed |= nb(t);
                Vmask target = sigma & ~removed;
                Vmask gamma = trio;
                for (int s = 0; s <= stage; ++s) {
                    int coord = rest[static_cast<size_t>(s)];
                    if (std::find(t_set.begin(), t_set.end(), coord) == t_set.end()) gamma |= nb(coord);
                }
                if (popcount(gamma) != 5) throw VerificationError("A-family free face is not a 5-set");
                CollapseInfo info = elementary_collapse(c, gamma, 8, target);
                if (info.euler_delta != 0)
                    throw VerificationError("A-family step unexpectedly changed the Euler characteristic");
                c = std::move(info.result);
                out.schedule.push_back(info.step);
            }
        }
    }
    out.reduced = std::move(c);
    return out;
}

// Facet set of Delta_n' built directly: B_n u C_n u D_n.
inline std::vector<Vmask> reduced_facets_direct(int n, std::uint64_t cap = 10'000'000) {
    std::vector<Vmask> facets;
    for (const auto& cf : generate_facets_r3(n, cap))
        if (cf.cls.tag != FacetTag::R3_A) facets.push_back(cf.facet);
    std::uint32_t nv = std::uint32_t{1} << n;
    for (std::uint32_t v = 0; v < nv; ++v)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k)
                    for (int l = 1; l <= n; ++l) {
                        if (l == i || l == j || l == k) continue;
                        facets.push_back(d_facet_mask(v, i, j, k, l, n));
                    }
    sort_canonical(facets);
    return facets;
}

// --- greedy search for full collapse sequences --------------------------------

enum class CollapseStrategy { by_covering_index, smallest_free_face };

inline CollapseStrategy strategy_from_string(const std::string& s) {
    if (s == "by-covering-index") return CollapseStrategy::by_covering_index;
    if (s == "smallest-free-face-first") return CollapseStrategy::smallest_free_face;
    throw std::invalid_argument("unknown collapse strategy: " + s);
}

struct GreedyResult {
    bool reached_void = false;
    std::vector<CollapseStep> schedule;
};

namespace detail {

// Minimal-size free face of `sigma` (<= d) among the current facets, or
// nullopt.  Subsets are scanned size-ascending, lexicographic inside a size.
inline std::optional<Vmask> min_free_face_of(const Complex& c, Vmask sigma, int d) {
    auto verts = bits_of(sigma);
    int top = std::min<int>(d, static_cast<int>(verts.size()));
    for (int s = 0; s <= top; ++s) {
        std::vector<Vmask> candidates;
        std::vector<int> pick(static_cast<size_t>(s));
        // enumerate s-subsets of verts in lexicographic order
        std::function<void(size_t, int)> rec = [&](size_t start, int left) {
            if (left == 0) {
                Vmask g = 0;
                for (int t : pick) g |= Vmask{1} << t;
                candidates.push_back(g);
                return;
            }
            for (size_t q = start; q + static_cast<size_t>(left) <= verts.size(); ++q) {
                pick[static_cast<size_t>(s - left)] = verts[q];
                rec(q + 1, left - 1);
            }
        };
        rec(0, s);
        for (Vmask g : candidates) {
            int containing = 0;
            for (Vmask f : c.facets) {
                if (is_subset(g, f) && ++containing > 1) break;
            }
            if (containing == 1) return g;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Searches for a full d-collapse sequence to the void complex.  Failure is
// a false return, not an error.  by_covering_index walks facets from the
// end of the given ordering (canonical order when none is supplied) and
// collapses the last facet that still has a free face; smallest_free_face
// always removes the globally smallest free face.
inline GreedyResult greedy_collapse(Complex c, int d, CollapseStrategy strategy,
                                    std::optional<FacetOrdering> ordering = std::nullopt,
                                    std::uint64_t max_steps = 10'000'000) {
    GreedyResult out;
    std::vector<Vmask> order = ordering ? *ordering : c.facets;
    auto rank_of = [&](Vmask f) {
        auto it = std::find(order.begin(), order.end(), f);
        return it == order.end() ? order.size() : static_cast<size_t>(it - order.begin());
    };
    while (!c.is_void()) {
        if (out.schedule.size() >= max_steps) throw BudgetExceeded("greedy collapse step budget exceeded");
        std::optional<Vmask> gamma;
        std::optional<Vmask> sigma;
        if (strategy == CollapseStrategy::by_covering_index) {
            // current facets sorted by descending position in the reference
            // order; facets created mid-search rank past the end, ties keep
            // canonical order
            std::vector<std::pair<size_t, Vmask>> ranked;
            for (Vmask f : c.facets) ranked.emplace_back(rank_of(f), f);
            std::stable_sort(ranked.begin(), ranked.end(),
                             [](const auto& x, const auto& y) { return x.first > y.first; });
            for (auto& [rk, f] : ranked) {
                if (auto g = detail::min_free_face_of(c, f, d)) { gamma = g; sigma = f; break; }
            }
        } else {
            int best = d + 1;
            for (Vmask f : c.facets) {
                auto g = detail::min_free_face_of(c, f, std::min(d, best - 1));
                if (g && popcount(*g) < best) {
                    best = popcount(*g);
                    gamma = g;
                    sigma = f;
                    if (best == 0) break;
                }
            }
        }
        if (!gamma) return out;  // stuck
        CollapseInfo info = elementary_collapse(c, *gamma, d, sigma);
        c = std::move(info.result);
        out.schedule.push_back(info.step);
    }
    out.reached_void = true;
    return out;
}

}  // namespace cuberips

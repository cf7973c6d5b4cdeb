#pragma once

// Simplicial complexes represented by their facet (maximal simplex) lists.
// For hypercube complexes with n <= 6 a simplex is a bitmask over the 2^n
// vertex ids.  Vietoris-Rips complexes arise as the maximal cliques of the
// distance<=r graph; membership against a VR complex coincides with the
// diameter predicate.

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "cuberips/hypercube.hpp"
#include "cuberips/util.hpp"

namespace cuberips {

enum class Origin { vr, subcomplex, union_of_vr, reduced, explicit_ };

inline const char* origin_name(Origin o) {
    switch (o) {
        case Origin::vr: return "VR";
        case Origin::subcomplex: return "subcomplex";
        case Origin::union_of_vr: return "union";
        case Origin::reduced: return "reduced";
        default: return "explicit";
    }
}

// Facet-list complex.  The facet list is an antichain in canonical order
// (vertices ascending inside a facet, facets lexicographic).  An empty
// facet list is the void complex; the facet list {empty simplex} is the
// empty complex -- collapse sequences terminate at the void complex.
struct Complex {
    int n = 0;              // ambient hypercube dimension, 0 for non-hypercube universes
    int r = -1;             // VR scale when origin == vr
    int num_vertices = 0;   // universe size (2^n for hypercube complexes)
    Origin origin = Origin::explicit_;
    std::vector<Vmask> facets;

    bool is_void() const { return facets.empty(); }
    bool is_empty_complex() const { return facets.size() == 1 && facets[0] == 0; }

    // max |facet| - 1; -1 for the empty complex, meaningless for void.
    int dimension() const {
        int best = 0;
        for (Vmask f : facets) best = std::max(best, popcount(f));
        return best - 1;
    }
};

inline void sort_canonical(std::vector<Vmask>& facets) {
    std::sort(facets.begin(), facets.end(), LexLess{});
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
}

// Drop facets contained in another facet; keeps the antichain invariant.
inline void prune_dominated(std::vector<Vmask>& facets) {
    sort_canonical(facets);
    std::vector<Vmask> keep;
    keep.reserve(facets.size());
    for (size_t i = 0; i < facets.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < facets.size() && !dominated; ++j)
            if (i != j && is_subset(facets[i], facets[j])) dominated = true;
        if (!dominated) keep.push_back(facets[i]);
    }
    facets.swap(keep);
}

inline void check_antichain(const std::vector<Vmask>& facets) {
    for (size_t i = 0; i < facets.size(); ++i)
        for (size_t j = 0; j < facets.size(); ++j)
            if (i != j && is_subset(facets[i], facets[j]))
                throw std::invalid_argument("facet list is not an antichain");
}

inline Complex make_complex(int num_vertices, std::vector<Vmask> facets, Origin origin,
                            int n = 0, int r = -1) {
    sort_canonical(facets);
    check_antichain(facets);
    Complex c;
    c.n = n;
    c.r = r;
    c.num_vertices = num_vertices;
    c.origin = origin;
    c.facets = std::move(facets);
    return c;
}

inline bool member(const Complex& c, Vmask sigma) {
    for (Vmask f : c.facets)
        if (is_subset(sigma, f)) return true;
    return false;
}

inline Vmask vertex_set(const Complex& c) {
    Vmask u = 0;
    for (Vmask f : c.facets) u |= f;
    return u;
}

// Max pairwise Hamming distance of the vertex ids in sigma.
inline int diameter(Vmask sigma, int /*n*/ = 0) {
    if (sigma == 0) throw std::invalid_argument("diameter of the empty simplex");
    auto vs = bits_of(sigma);
    int best = 0;
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            best = std::max(best, std::popcount(static_cast<std::uint32_t>(vs[i] ^ vs[j])));
    return best;
}

// sigma covers all places if every coordinate sees both values among its
// vertices.
inline bool covers_all_places(Vmask sigma, int n) {
    if (sigma == 0) return n == 0;
    std::uint32_t and_all = ~std::uint32_t{0}, or_all = 0;
    for_each_bit(sigma, [&](int v) {
        and_all &= static_cast<std::uint32_t>(v);
        or_all |= static_cast<std::uint32_t>(v);
    });
    std::uint32_t full = (n >= 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
    return (or_all & ~and_all & full) == full;
}

// --- maximal clique enumeration --------------------------------------------

// Bron-Kerbosch with pivoting over bitmask candidate sets.  Vertex order is
// the integer encoding, so output order is deterministic; the result is
// returned canonically sorted.
class CliqueEnumerator {
  public:
    CliqueEnumerator(std::vector<Vmask> adjacency, std::uint64_t cap)
        : adj_(std::move(adjacency)), cap_(cap) {
        for (size_t v = 0; v < adj_.size(); ++v)
            if (adj_[v] & (Vmask{1} << v)) throw std::invalid_argument("adjacency has a loop");
        for (size_t v = 0; v < adj_.size(); ++v)
            for_each_bit(adj_[v], [&](int w) {
                if (!(adj_[static_cast<size_t>(w)] >> v & 1))
                    throw std::invalid_argument("adjacency is not symmetric");
            });
    }

    std::vector<Vmask> run() {
        out_.clear();
        Vmask all = (adj_.size() == 64) ? ~Vmask{0} : ((Vmask{1} << adj_.size()) - 1);
        expand(0, all, 0);
        sort_canonical(out_);
        return std::move(out_);
    }

  private:
    void expand(Vmask clique, Vmask cand, Vmask excluded) {
        if (!cand && !excluded) {
            if (out_.size() >= cap_) throw BudgetExceeded("maximal clique cap exceeded");
            out_.push_back(clique);
            return;
        }
        // pivot: vertex of cand|excluded with most candidate neighbours
        int pivot = -1, best = -1;
        for_each_bit(cand | excluded, [&](int u) {
            int deg = popcount(adj_[static_cast<size_t>(u)] & cand);
            if (deg > best) { best = deg; pivot = u; }
        });
        Vmask ext = cand & ~adj_[static_cast<size_t>(pivot)];
        for_each_bit(ext, [&](int v) {
            Vmask bit = Vmask{1} << v;
            expand(clique | bit, cand & adj_[static_cast<size_t>(v)], excluded & adj_[static_cast<size_t>(v)]);
            cand &= ~bit;
            excluded |= bit;
        });
    }

    std::vector<Vmask> adj_;
    std::uint64_t cap_;
    std::vector<Vmask> out_;
};

inline std::vector<Vmask> maximal_cliques(const std::vector<Vmask>& adjacency,
                                          std::uint64_t cap = 10'000'000) {
    return CliqueEnumerator(adjacency, cap).run();
}

// Adjacency of the distance<=r graph on V(I_n).
inline std::vector<Vmask> distance_graph(int n, int r) {
    if (n < 1 || n > kMaxComplexDim) throw BudgetExceeded("complex-level operations support n <= 6");
    size_t nv = std::size_t{1} << n;
    std::vector<Vmask> adj(nv, 0);
    for (size_t v = 0; v < nv; ++v)
        for (size_t w = v + 1; w < nv; ++w)
            if (std::popcount(static_cast<std::uint32_t>(v ^ w)) <= r) {
                adj[v] |= Vmask{1} << w;
                adj[w] |= Vmask{1} << v;
            }
    return adj;
}

// VR(I_n; r) as the flag complex of the distance<=r graph.
inline Complex vr_complex(int n, int r, std::uint64_t cap = 10'000'000) {
    if (n < 1) throw std::invalid_argument("vr_complex requires n >= 1");
    if (r < 0) throw std::invalid_argument("vr_complex requires r >= 0");
    std::vector<Vmask> facets;
    if (r >= n) {
        // diam(I_n) = n <= r: one facet on all vertices
        size_t nv = std::size_t{1} << n;
        if (n > kMaxComplexDim) throw BudgetExceeded("complex-level operations support n <= 6");
        facets.push_back(nv == 64 ? ~Vmask{0} : (Vmask{1} << nv) - 1);
    } else if (r == 0) {
        for (size_t v = 0; v < (std::size_t{1} << n); ++v) facets.push_back(Vmask{1} << v);
    } else {
        facets = maximal_cliques(distance_graph(n, r), cap);
    }
    return make_complex(1 << n, std::move(facets), Origin::vr, n, r);
}

// --- subcube complexes and unions -------------------------------------------

// The free coordinates of a subcube, ascending (0-based bit positions).
inline std::vector<int> free_coords(const SubcubeSpec& spec) {
    std::vector<int> out;
    std::uint32_t fm = spec.fixed_mask();
    for (int i = 0; i < spec.ambient_dim; ++i)
        if (!(fm >> i & 1)) out.push_back(i);
    return out;
}

// Embed a simplex over I_m vertex ids into the subcube's vertex ids,
// scattering bit t of each I_m vertex to the t-th free coordinate.
inline Vmask embed_simplex(Vmask sigma_m, const SubcubeSpec& spec) {
    auto fc = free_coords(spec);
    std::uint32_t fv = spec.fixed_values();
    Vmask out = 0;
    for_each_bit(sigma_m, [&](int v) {
        std::uint32_t w = fv;
        for (size_t t = 0; t < fc.size(); ++t)
            if (v >> t & 1) w |= std::uint32_t{1} << fc[t];
        out |= Vmask{1} << w;
    });
    return out;
}

// VR(H; r) for an m-dimensional subcube H of I_n, with facets expressed in
// I_n vertex ids.
inline Complex subcube_vr_complex(const SubcubeSpec& spec, int r, std::uint64_t cap = 10'000'000) {
    int n = spec.ambient_dim, m = spec.subcube_dim();
    if (n > kMaxComplexDim) throw BudgetExceeded("complex-level operations support n <= 6");
    std::vector<Vmask> facets;
    if (m == 0) {
        facets.push_back(Vmask{1} << spec.fixed_values());
    } else {
        Complex base = vr_complex(m, r, cap);
        facets.reserve(base.facets.size());
        for (Vmask f : base.facets) facets.push_back(embed_simplex(f, spec));
    }
    return make_complex(1 << n, std::move(facets), Origin::subcomplex, n, r);
}

inline Complex union_complex(const std::vector<Complex>& members, Origin origin = Origin::union_of_vr) {
    if (members.empty()) throw std::invalid_argument("union of zero complexes");
    std::vector<Vmask> facets;
    for (const Complex& m : members) facets.insert(facets.end(), m.facets.begin(), m.facets.end());
    prune_dominated(facets);
    Complex c;
    c.n = members.front().n;
    c.r = members.front().r;
    c.num_vertices = members.front().num_vertices;
    c.origin = origin;
    c.facets = std::move(facets);
    return c;
}

// Boundary subcomplex of Delta_n: the union of the 2n codimension-1 subcube
// VR complexes.  A simplex belongs exactly when it does not cover all places.
inline Complex boundary_union(int n, int r, std::uint64_t cap = 10'000'000) {
    if (n < 2) throw std::invalid_argument("boundary_union requires n >= 2");
    std::vector<Complex> members;
    members.reserve(2 * static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int e = 0; e <= 1; ++e)
            members.push_back(subcube_vr_complex(SubcubeSpec(n, {{i, e}}), r, cap));
    return union_complex(members);
}

// --- the W_n^m union families -----------------------------------------------

// A family of equal-dimension subcubes; the associated complex is the union
// of their scale-3 VR complexes.
struct CoverFamily {
    int ambient_dim = 0;
    std::vector<SubcubeSpec> members;
};

inline CoverFamily make_cover_family(int n, std::vector<SubcubeSpec> members) {
    if (members.empty()) throw std::invalid_argument("cover family needs at least one member");
    int m = members.front().subcube_dim();
    for (const auto& s : members) {
        if (s.ambient_dim != n) throw std::invalid_argument("cover member has wrong ambient dimension");
        if (s.subcube_dim() != m) throw std::invalid_argument("cover members must have equal subcube dimension");
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return CoverFamily{n, std::move(members)};
}

inline Complex union_family(const CoverFamily& family, int r = 3, std::uint64_t cap = 10'000'000) {
    std::vector<Complex> parts;
    parts.reserve(family.members.size());
    for (const auto& s : family.members) parts.push_back(subcube_vr_complex(s, r, cap));
    return union_complex(parts);
}

// Validates the W_n^m membership conditions: either m = n, or all members
// lie in a common (m+1)-dimensional subcube H and the union equals the
// boundary of VR(H;3) or is one-sided in some free coordinate of H.
// Containment of a full subcube complex in the union reduces to member-set
// membership because every VR(I_m;3) has a facet covering all m places.
// In strict mode, multi-member families with m = n are rejected (the
// definition constrains X only when m != n).
inline bool validate_W(const CoverFamily& family, bool strict = true) {
    int n = family.ambient_dim;
    int m = family.members.front().subcube_dim();
    if (m < 3) return false;
    if (m == n) return strict ? family.members.size() == 1 : true;

    // candidate H's: drop one fixed pair from member 0, keep those shared by all
    const auto& base = family.members.front().fixed;
    for (size_t drop = 0; drop < base.size(); ++drop) {
        std::vector<std::pair<int, int>> hf;
        for (size_t t = 0; t < base.size(); ++t)
            if (t != drop) hf.push_back(base[t]);
        bool all_inside = true;
        for (const auto& s : family.members) {
            bool contains_hf = true;
            for (auto& p : hf)
                if (std::find(s.fixed.begin(), s.fixed.end(), p) == s.fixed.end()) { contains_hf = false; break; }
            if (!contains_hf) { all_inside = false; break; }
        }
        if (!all_inside) continue;

        // each member = H with one extra fixed pair (lambda, eps)
        std::vector<std::pair<int, int>> extras;
        for (const auto& s : family.members) {
            for (auto& p : s.fixed)
                if (std::find(hf.begin(), hf.end(), p) == hf.end()) extras.push_back(p);
        }
        std::sort(extras.begin(), extras.end());
        extras.erase(std::unique(extras.begin(), extras.end()), extras.end());

        if (extras.size() == 2 * static_cast<size_t>(m + 1)) return true;  // X = boundary of VR(H;3)
        for (auto& [lambda, eps] : extras)
            if (std::find(extras.begin(), extras.end(), std::make_pair(lambda, 1 - eps)) == extras.end())
                return true;  // one-sided coordinate
    }
    return false;
}

// --- face enumeration --------------------------------------------------------

// All nonempty faces, optionally truncated to |face| <= max_card.  Dedup
// across facets; exceeding the cap is an error, not truncation.
inline std::vector<Vmask> enumerate_faces(const Complex& c, int max_card = -1,
                                          std::uint64_t cap = 10'000'000) {
    std::unordered_set<Vmask> seen;
    for (Vmask f : c.facets) {
        Vmask s = f;
        while (true) {
            if (s != 0 && (max_card < 0 || popcount(s) <= max_card)) {
                seen.insert(s);
                if (seen.size() > cap) throw BudgetExceeded("face enumeration cap exceeded");
            }
            if (s == 0) break;
            s = (s - 1) & f;
        }
    }
    std::vector<Vmask> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

// 1-skeleton connectivity of the facet union.
inline bool skeleton_connected(const Complex& c) {
    auto verts = bits_of(vertex_set(c));
    if (verts.size() <= 1) return true;
    std::unordered_set<int> todo(verts.begin() + 1, verts.end());
    std::vector<int> stack{verts[0]};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto it = todo.begin(); it != todo.end();) {
            int w = *it;
            bool edge = false;
            Vmask pair = (Vmask{1} << v) | (Vmask{1} << w);
            for (Vmask f : c.facets)
                if (is_subset(pair, f)) { edge = true; break; }
            if (edge) {
                stack.push_back(w);
                it = todo.erase(it);
            } else {
                ++it;
            }
        }
    }
    return todo.empty();
}

}  // namespace cuberips

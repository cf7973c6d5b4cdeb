#pragma once

// Exact integer reduced simplicial homology.  Two engines: "plain" runs
// Smith normal form on the raw boundary matrices; "coreduce" first shrinks
// the augmented chain complex by elementary coreductions and reductions
// (free-pair removals that preserve homology and keep all incidence
// coefficients at +-1), then runs SNF on whatever survives.  Reduced
// homology convention throughout: the chain complex is augmented by the
// empty simplex, so H~_0 counts components minus one.
//
// Orientation convention: ascending vertex order is positive; the face
// omitting the k-th vertex carries sign (-1)^k.

#include <chrono>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "cuberips/complex.hpp"
#include "cuberips/linalg.hpp"

namespace cuberips {

enum class Engine { plain, coreduce };

inline Engine engine_from_string(const std::string& s) {
    if (s == "plain") return Engine::plain;
    if (s == "coreduce") return Engine::coreduce;
    throw std::invalid_argument("unknown engine: " + s);
}

inline const char* engine_name(Engine e) { return e == Engine::plain ? "plain" : "coreduce"; }

struct DimHomology {
    int dim = 0;
    std::int64_t betti = 0;
    std::vector<std::string> torsion;  // invariant factors > 1, decimal
};

struct HomologyReport {
    int n = 0;
    int r = -1;
    std::string engine;
    int max_dim = -1;
    std::vector<DimHomology> dims;           // dims 0..max_dim
    std::vector<std::int64_t> face_counts;   // f_p for p = 0..top enumerated
    std::map<std::string, double> timings_ms;

    std::int64_t betti(int i) const {
        if (i < 0 || i >= static_cast<int>(dims.size())) return 0;
        return dims[static_cast<size_t>(i)].betti;
    }
    bool has_torsion() const {
        for (const auto& d : dims)
            if (!d.torsion.empty()) return true;
        return false;
    }
    std::vector<int> nonzero_dims() const {
        std::vector<int> out;
        for (const auto& d : dims)
            if (d.betti != 0 || !d.torsion.empty()) out.push_back(d.dim);
        return out;
    }
    int largest_nonzero_dim() const {
        int best = -1;
        for (const auto& d : dims)
            if (d.betti != 0 || !d.torsion.empty()) best = d.dim;
        return best;
    }
};

// Faces grouped by dimension with id lookup.
struct FaceTable {
    int top = -1;                                          // largest dimension enumerated
    std::vector<std::vector<Vmask>> faces;                 // per dim, lex sorted
    std::vector<std::unordered_map<Vmask, int>> index;

    static FaceTable build(const Complex& c, int max_dim, std::uint64_t cap) {
        FaceTable t;
        int max_card = (max_dim < 0) ? -1 : max_dim + 1;
        auto all = enumerate_faces(c, max_card, cap);
        for (Vmask f : all) t.top = std::max(t.top, popcount(f) - 1);
        t.faces.resize(static_cast<size_t>(t.top + 1));
        t.index.resize(static_cast<size_t>(t.top + 1));
        for (Vmask f : all) t.faces[static_cast<size_t>(popcount(f) - 1)].push_back(f);
        for (auto& level : t.faces) std::sort(level.begin(), level.end(), LexLess{});
        for (int p = 0; p <= t.top; ++p)
            for (size_t i = 0; i < t.faces[static_cast<size_t>(p)].size(); ++i)
                t.index[static_cast<size_t>(p)][t.faces[static_cast<size_t>(p)][i]] = static_cast<int>(i);
        return t;
    }

    std::int64_t count(int p) const {
        if (p < 0 || p > top) return 0;
        return static_cast<std::int64_t>(faces[static_cast<size_t>(p)].size());
    }
};

// Signed boundary of a simplex: f(vertex_index_k, face_mask, sign).
template <typename F>
inline void for_each_boundary_face(Vmask sigma, F&& f) {
    int k = 0;
    for_each_bit(sigma, [&](int v) {
        f(k, sigma & ~(Vmask{1} << v), (k % 2 == 0) ? +1 : -1);
        ++k;
    });
}

// Boundary matrix d_p: rows = (p-1)-faces, columns = p-faces.  For p = 0
// this is the augmentation row (all ones).
inline std::vector<SparseEntry> boundary_matrix(const FaceTable& t, int p) {
    std::vector<SparseEntry> entries;
    if (p < 0 || p > t.top) return entries;
    const auto& cols = t.faces[static_cast<size_t>(p)];
    if (p == 0) {
        for (size_t j = 0; j < cols.size(); ++j)
            entries.push_back({0, static_cast<int>(j), 1});
        return entries;
    }
    const auto& idx = t.index[static_cast<size_t>(p - 1)];
    for (size_t j = 0; j < cols.size(); ++j)
        for_each_boundary_face(cols[j], [&](int, Vmask face, int sign) {
            entries.push_back({idx.at(face), static_cast<int>(j), sign});
        });
    return entries;
}

inline std::vector<SparseEntry> boundary_matrix(const Complex& c, int p,
                                                std::uint64_t cap = 10'000'000) {
    return boundary_matrix(FaceTable::build(c, p, cap), p);
}

namespace homology_detail {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

inline HomologyReport assemble_report(const Complex& c, int max_dim, const char* engine,
                                      const std::vector<std::int64_t>& cell_counts,
                                      const std::vector<SnfSummary>& snf,  // snf[p] = SNF of d_p
                                      const FaceTable& table) {
    HomologyReport rep;
    rep.n = c.n;
    rep.r = c.r;
    rep.engine = engine;
    rep.max_dim = max_dim;
    for (int p = 0; p <= table.top; ++p) rep.face_counts.push_back(table.count(p));
    auto rank_of = [&](int p) -> std::int64_t {
        if (p < 0 || p >= static_cast<int>(snf.size())) return 0;
        return snf[static_cast<size_t>(p)].rank;
    };
    for (int p = 0; p <= max_dim; ++p) {
        DimHomology d;
        d.dim = p;
        std::int64_t cells = (p < static_cast<int>(cell_counts.size())) ? cell_counts[static_cast<size_t>(p)] : 0;
        d.betti = cells - rank_of(p) - rank_of(p + 1);
        if (p + 1 < static_cast<int>(snf.size()))
            for (const auto& f : snf[static_cast<size_t>(p + 1)].nontrivial_factors())
                d.torsion.push_back(f.get_str());
        rep.dims.push_back(std::move(d));
    }
    return rep;
}

}  // namespace homology_detail

// SNF on the raw boundary matrices.
inline HomologyReport plain_homology(const Complex& c, int max_dim, std::uint64_t cap = 10'000'000) {
    homology_detail::Timer timer;
    if (c.is_void() || c.is_empty_complex()) {
        HomologyReport rep;
        rep.n = c.n;
        rep.r = c.r;
        rep.engine = "plain";
        rep.max_dim = max_dim;
        for (int p = 0; p <= max_dim; ++p) rep.dims.push_back({p, 0, {}});
        return rep;
    }
    if (max_dim < 0) max_dim = c.dimension();
    FaceTable table = FaceTable::build(c, std::min(max_dim + 1, c.dimension()), cap);
    std::vector<std::int64_t> counts;
    for (int p = 0; p <= table.top; ++p) counts.push_back(table.count(p));
    std::vector<SnfSummary> snf(static_cast<size_t>(table.top + 1));
    for (int p = 0; p <= table.top; ++p) {
        auto entries = boundary_matrix(table, p);
        int nrows = (p == 0) ? 1 : static_cast<int>(table.count(p - 1));
        snf[static_cast<size_t>(p)] = sparse_snf(nrows, static_cast<int>(table.count(p)), entries);
    }
    auto rep = homology_detail::assemble_report(c, max_dim, "plain", counts, snf, table);
    rep.timings_ms["total"] = timer.ms();
    return rep;
}

// The surviving chain complex after coreduction preprocessing: cell counts
// per dimension and the restricted boundary matrices.  Its homology equals
// the homology of the input complex.
struct CoreducedComplex {
    int top = -1;
    std::int64_t surviving_empty = 0;                 // the augmentation cell
    std::vector<std::int64_t> cells;                  // survivors per dim 0..top
    std::vector<std::vector<SparseEntry>> boundaries; // restricted d_p, p = 0..top
    std::vector<std::int64_t> input_face_counts;      // f_p of the input, 0..top
    double reduce_ms = 0;

    std::int64_t total_cells() const {
        std::int64_t total = surviving_empty;
        for (auto s : cells) total += s;
        return total;
    }
};

// Elementary coreductions/reductions on the augmented complex.  A
// coreduction removes a pair (a,b) where b is the only surviving boundary
// cell of a; a reduction removes (b,a) where a is the only surviving
// coface of b.  Both keep the restricted boundary operator and the
// homology of the chain complex, and all incidences stay +-1.
inline CoreducedComplex coreduce(const Complex& c, int max_dim = -1,
                                 std::uint64_t cap = 10'000'000) {
    if (c.is_void() || c.is_empty_complex())
        throw std::invalid_argument("coreduce expects a complex with at least one vertex");
    if (max_dim < 0) max_dim = c.dimension();
    FaceTable table = FaceTable::build(c, std::min(max_dim + 1, c.dimension()), cap);
    homology_detail::Timer build_timer;

    // cell ids: 0 = empty simplex (dim -1), then faces by dimension
    std::vector<int> offset(static_cast<size_t>(table.top + 2), 0);
    offset[0] = 1;
    for (int p = 0; p <= table.top; ++p)
        offset[static_cast<size_t>(p + 1)] = offset[static_cast<size_t>(p)] + static_cast<int>(table.count(p));
    int total = offset[static_cast<size_t>(table.top + 1)];

    std::vector<std::vector<std::pair<int, std::int8_t>>> bd(static_cast<size_t>(total));
    std::vector<std::vector<int>> cobd(static_cast<size_t>(total));
    std::vector<std::int8_t> dim_of(static_cast<size_t>(total));
    dim_of[0] = -1;
    for (int p = 0; p <= table.top; ++p) {
        const auto& level = table.faces[static_cast<size_t>(p)];
        for (size_t i = 0; i < level.size(); ++i) {
            int id = offset[static_cast<size_t>(p)] + static_cast<int>(i);
            dim_of[static_cast<size_t>(id)] = static_cast<std::int8_t>(p);
            if (p == 0) {
                bd[static_cast<size_t>(id)].emplace_back(0, 1);
                cobd[0].push_back(id);
            } else {
                for_each_boundary_face(level[i], [&](int, Vmask face, int sign) {
                    int fid = offset[static_cast<size_t>(p - 1)] + table.index[static_cast<size_t>(p - 1)].at(face);
                    bd[static_cast<size_t>(id)].emplace_back(fid, static_cast<std::int8_t>(sign));
                    cobd[static_cast<size_t>(fid)].push_back(id);
                });
            }
        }
    }

    std::vector<bool> alive(static_cast<size_t>(total), true);
    std::vector<int> bd_count(static_cast<size_t>(total)), cobd_count(static_cast<size_t>(total));
    for (int id = 0; id < total; ++id) {
        bd_count[static_cast<size_t>(id)] = static_cast<int>(bd[static_cast<size_t>(id)].size());
        cobd_count[static_cast<size_t>(id)] = static_cast<int>(cobd[static_cast<size_t>(id)].size());
    }

    std::deque<int> core_q, red_q;
    for (int id = 0; id < total; ++id) {
        if (bd_count[static_cast<size_t>(id)] == 1) core_q.push_back(id);
        if (cobd_count[static_cast<size_t>(id)] == 1) red_q.push_back(id);
    }
    auto kill = [&](int x) {
        alive[static_cast<size_t>(x)] = false;
        for (auto& [y, s] : bd[static_cast<size_t>(x)])
            if (alive[static_cast<size_t>(y)] && --cobd_count[static_cast<size_t>(y)] == 1)
                red_q.push_back(y);
        for (int z : cobd[static_cast<size_t>(x)])
            if (alive[static_cast<size_t>(z)] && --bd_count[static_cast<size_t>(z)] == 1)
                core_q.push_back(z);
    };
    while (!core_q.empty() || !red_q.empty()) {
        if (!core_q.empty()) {
            int a = core_q.front();
            core_q.pop_front();
            if (!alive[static_cast<size_t>(a)] || bd_count[static_cast<size_t>(a)] != 1) continue;
            int b = -1;
            for (auto& [y, s] : bd[static_cast<size_t>(a)])
                if (alive[static_cast<size_t>(y)]) { b = y; break; }
            kill(a);
            kill(b);
        } else {
            int b = red_q.front();
            red_q.pop_front();
            if (!alive[static_cast<size_t>(b)] || cobd_count[static_cast<size_t>(b)] != 1) continue;
            int a = -1;
            for (int z : cobd[static_cast<size_t>(b)])
                if (alive[static_cast<size_t>(z)]) { a = z; break; }
            kill(b);
            kill(a);
        }
    }

    // survivors -> restricted boundary matrices
    CoreducedComplex out;
    out.top = table.top;
    out.surviving_empty = alive[0] ? 1 : 0;
    out.cells.assign(static_cast<size_t>(table.top + 1), 0);
    std::vector<std::unordered_map<int, int>> local(static_cast<size_t>(table.top + 2));  // dim+1 -> id -> index
    for (int id = 1; id < total; ++id)
        if (alive[static_cast<size_t>(id)]) {
            int p = dim_of[static_cast<size_t>(id)];
            local[static_cast<size_t>(p + 1)][id] = static_cast<int>(out.cells[static_cast<size_t>(p)]);
            ++out.cells[static_cast<size_t>(p)];
        }
    out.boundaries.resize(static_cast<size_t>(table.top + 1));
    for (int p = 0; p <= table.top; ++p) {
        auto& entries = out.boundaries[static_cast<size_t>(p)];
        for (auto& [id, j] : local[static_cast<size_t>(p + 1)]) {
            for (auto& [y, s] : bd[static_cast<size_t>(id)])
                if (alive[static_cast<size_t>(y)])
                    entries.push_back({p == 0 ? 0 : local[static_cast<size_t>(p)].at(y), j, s});
        }
        out.input_face_counts.push_back(table.count(p));
    }
    out.reduce_ms = build_timer.ms();
    return out;
}

// Coreduction preprocessing, then SNF on the surviving matrices.
inline HomologyReport coreduce_homology(const Complex& c, int max_dim, std::uint64_t cap = 10'000'000) {
    homology_detail::Timer timer;
    if (c.is_void() || c.is_empty_complex()) {
        HomologyReport rep;
        rep.n = c.n;
        rep.r = c.r;
        rep.engine = "coreduce";
        rep.max_dim = max_dim;
        for (int p = 0; p <= max_dim; ++p) rep.dims.push_back({p, 0, {}});
        return rep;
    }
    if (max_dim < 0) max_dim = c.dimension();
    CoreducedComplex reduced = coreduce(c, max_dim, cap);

    std::vector<SnfSummary> snf(static_cast<size_t>(reduced.top + 1));
    for (int p = 0; p <= reduced.top; ++p) {
        int nrows = (p == 0) ? static_cast<int>(reduced.surviving_empty)
                             : static_cast<int>(reduced.cells[static_cast<size_t>(p - 1)]);
        snf[static_cast<size_t>(p)] =
            sparse_snf(nrows, static_cast<int>(reduced.cells[static_cast<size_t>(p)]),
                       reduced.boundaries[static_cast<size_t>(p)]);
    }

    HomologyReport rep;
    rep.n = c.n;
    rep.r = c.r;
    rep.engine = "coreduce";
    rep.max_dim = max_dim;
    rep.face_counts = reduced.input_face_counts;
    auto rank_of = [&](int p) -> std::int64_t {
        if (p < 0 || p >= static_cast<int>(snf.size())) return 0;
        return snf[static_cast<size_t>(p)].rank;
    };
    for (int p = 0; p <= max_dim; ++p) {
        DimHomology d;
        d.dim = p;
        std::int64_t cells =
            (p <= reduced.top) ? reduced.cells[static_cast<size_t>(p)] : 0;
        d.betti = cells - rank_of(p) - rank_of(p + 1);
        if (p + 1 < static_cast<int>(snf.size()))
            for (const auto& f : snf[static_cast<size_t>(p + 1)].nontrivial_factors())
                d.torsion.push_back(f.get_str());
        rep.dims.push_back(std::move(d));
    }
    rep.timings_ms["reduce"] = reduced.reduce_ms;
    rep.timings_ms["total"] = timer.ms();
    rep.timings_ms["surviving_cells"] = static_cast<double>(reduced.total_cells());
    return rep;
}

inline HomologyReport reduced_homology(const Complex& c, int max_dim = -1,
                                       Engine engine = Engine::coreduce,
                                       std::uint64_t cap = 10'000'000) {
    return engine == Engine::plain ? plain_homology(c, max_dim, cap)
                                   : coreduce_homology(c, max_dim, cap);
}

// Euler-Poincare identity, reduced convention: sum (-1)^i f_i = 1 + sum (-1)^i b_i.
// Requires a report covering every dimension of the complex.
inline bool euler_poincare_holds(const Complex& c, const HomologyReport& rep,
                                 std::uint64_t cap = 10'000'000) {
    if (rep.max_dim < c.dimension()) throw std::invalid_argument("report does not cover the full complex");
    auto faces = enumerate_faces(c, -1, cap);
    std::int64_t chi = 0;
    for (Vmask f : faces) chi += (popcount(f) % 2 == 1) ? 1 : -1;
    std::int64_t rhs = 1;
    for (const auto& d : rep.dims) rhs += (d.dim % 2 == 0) ? d.betti : -d.betti;
    return chi == rhs;
}

// --- nerve of a cover ---------------------------------------------------------

// Nerve of a family of subcomplexes: one vertex per member, a simplex per
// set of members sharing a face.  Complexes are closed downward, so sharing
// a face is sharing a vertex; the facets are the maximal member-sets of the
// per-vertex incidence masks.
inline Complex nerve(const std::vector<Complex>& cover) {
    if (cover.empty()) throw std::invalid_argument("nerve of an empty cover");
    if (cover.size() > 64) throw BudgetExceeded("nerve supports at most 64 cover members");
    for (const auto& m : cover)
        if (vertex_set(m) == 0) throw std::invalid_argument("nerve cover members must be nonempty");
    std::map<Vmask, Vmask> member_mask_by_vertex;  // vertex id -> set of members
    for (size_t i = 0; i < cover.size(); ++i)
        for_each_bit(vertex_set(cover[i]), [&](int v) {
            member_mask_by_vertex[static_cast<Vmask>(v)] |= Vmask{1} << i;
        });
    std::vector<Vmask> facets;
    facets.reserve(member_mask_by_vertex.size());
    for (auto& [v, members] : member_mask_by_vertex) facets.push_back(members);
    prune_dominated(facets);
    Complex out;
    out.num_vertices = static_cast<int>(cover.size());
    out.origin = Origin::explicit_;
    out.facets = std::move(facets);
    return out;
}

// The 2n-member boundary cover {Delta_n^{(i,eps)}} of the boundary union.
inline std::vector<Complex> boundary_cover(int n, int r, std::uint64_t cap = 10'000'000) {
    std::vector<Complex> cover;
    for (int i = 1; i <= n; ++i)
        for (int e = 0; e <= 1; ++e)
            cover.push_back(subcube_vr_complex(SubcubeSpec(n, {{i, e}}), r, cap));
    return cover;
}

// --- W-family vanishing checks -----------------------------------------------

struct WVanishingReport {
    int n = 0;
    int m = 0;
    std::vector<int> checked_dims;
    std::vector<std::int64_t> betti;  // parallel to checked_dims
    bool all_vanish = true;
    HomologyReport homology;
};

// Dimensions where these unions are known to vanish: 0..3 for m >= 4 (0..2 when m = 3 and
// n = 4), plus 5 when m = 6 and 5,6 when m >= 7.
inline std::vector<int> w_prescribed_dims(int n, int m) {
    std::vector<int> dims;
    if (m >= 4)
        dims = {0, 1, 2, 3};
    else if (m == 3 && n == 4)
        dims = {0, 1, 2};
    if (m == 6) dims.push_back(5);
    if (m >= 7) { dims.push_back(5); dims.push_back(6); }
    return dims;
}

inline WVanishingReport check_W_vanishing(const CoverFamily& family,
                                          std::vector<int> dims = {},
                                          Engine engine = Engine::coreduce,
                                          std::uint64_t cap = 10'000'000, bool strict = true) {
    if (!validate_W(family, strict))
        throw std::invalid_argument("cover family does not satisfy the W membership conditions");
    WVanishingReport out;
    out.n = family.ambient_dim;
    out.m = family.members.front().subcube_dim();
    out.checked_dims = dims.empty() ? w_prescribed_dims(out.n, out.m) : std::move(dims);
    if (out.checked_dims.empty()) throw std::invalid_argument("no prescribed dimensions for this (n, m)");
    Complex x = union_family(family, 3, cap);
    int needed = *std::max_element(out.checked_dims.begin(), out.checked_dims.end());
    out.homology = reduced_homology(x, needed, engine, cap);
    for (int d : out.checked_dims) {
        std::int64_t b = out.homology.betti(d);
        bool torsion_here = !out.homology.dims[static_cast<size_t>(d)].torsion.empty();
        out.betti.push_back(b);
        if (b != 0 || torsion_here) out.all_vanish = false;
    }
    return out;
}

}  // namespace cuberips

#pragma once

// Exact integer linear algebra on sparse matrices: rank and Smith normal
// form invariant factors, and solving M x = b over the integers with an
// explicit witness.  Unit pivots (+-1) are eliminated sparsely with a
// min-fill heuristic; whatever remains is finished by a dense textbook SNF
// over GMP integers.  The sparse phase runs on int64 with overflow checks
// and restarts on GMP integers if an update would overflow.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "cuberips/util.hpp"

namespace cuberips {

struct SparseEntry {
    int row = 0;
    int col = 0;
    std::int64_t value = 0;
};

struct SnfSummary {
    std::int64_t rank = 0;
    std::vector<mpz_class> invariant_factors;  // d_1 | d_2 | ..., all positive

    std::vector<mpz_class> nontrivial_factors() const {
        std::vector<mpz_class> out;
        for (const auto& d : invariant_factors)
            if (d > 1) out.push_back(d);
        return out;
    }
};

namespace linalg_detail {

inline bool is_unit(const std::int64_t& v) { return v == 1 || v == -1; }
inline bool is_unit(const mpz_class& v) { return v == 1 || v == -1; }

inline void sub_scaled(std::int64_t& a, const std::int64_t& f, const std::int64_t& b) {
    a = checked_sub(a, checked_mul(f, b));
}
inline void sub_scaled(mpz_class& a, const mpz_class& f, const mpz_class& b) { a -= f * b; }

inline std::int64_t exact_div(const std::int64_t& a, const std::int64_t& b) { return a / b; }
inline mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Dense SNF over GMP with optional transform tracking: U*A*V = S where U, V
// are unimodular.  Intended for the small residue left after the sparse
// unit-pivot phase.
class DenseSnf {
  public:
    DenseSnf(std::vector<std::vector<mpz_class>> a, bool track)
        : a_(std::move(a)), track_(track) {
        rows_ = a_.size();
        cols_ = rows_ ? a_[0].size() : 0;
        if (track_) {
            u_.assign(rows_, std::vector<mpz_class>(rows_, 0));
            v_.assign(cols_, std::vector<mpz_class>(cols_, 0));
            for (size_t i = 0; i < rows_; ++i) u_[i][i] = 1;
            for (size_t i = 0; i < cols_; ++i) v_[i][i] = 1;
        }
    }

    void run() {
        size_t t = 0;
        while (t < rows_ && t < cols_) {
            if (!move_min_pivot(t)) break;
            while (true) {
                bool redo = false;
                for (size_t i = t + 1; i < rows_ && !redo; ++i)
                    while (a_[i][t] != 0) {
                        mpz_class q = quotient(a_[i][t], a_[t][t]);
                        row_op(i, t, q);
                        if (a_[i][t] != 0) { swap_rows(i, t); redo = true; break; }
                    }
                if (redo) continue;
                for (size_t j = t + 1; j < cols_ && !redo; ++j)
                    while (a_[t][j] != 0) {
                        mpz_class q = quotient(a_[t][j], a_[t][t]);
                        col_op(j, t, q);
                        if (a_[t][j] != 0) { swap_cols(j, t); redo = true; break; }
                    }
                if (redo) continue;
                // divisibility fixup: pivot must divide the rest of the block
                bool fixed = true;
                for (size_t i = t + 1; i < rows_ && fixed; ++i)
                    for (size_t j = t + 1; j < cols_ && fixed; ++j)
                        if (a_[i][j] % a_[t][t] != 0) {
                            add_row(t, i);
                            fixed = false;
                        }
                if (fixed) break;
            }
            if (a_[t][t] < 0) negate_row(t);
            ++t;
        }
        rank_ = t;
    }

    size_t rank() const { return rank_; }
    const mpz_class& diag(size_t t) const { return a_[t][t]; }

    // y = U * b
    std::vector<mpz_class> apply_u(const std::vector<mpz_class>& b) const {
        std::vector<mpz_class> out(rows_, 0);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < rows_; ++j)
                if (u_[i][j] != 0) out[i] += u_[i][j] * b[j];
        return out;
    }
    // x = V * y
    std::vector<mpz_class> apply_v(const std::vector<mpz_class>& y) const {
        std::vector<mpz_class> out(cols_, 0);
        for (size_t i = 0; i < cols_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (v_[i][j] != 0) out[i] += v_[i][j] * y[j];
        return out;
    }

  private:
    static mpz_class quotient(const mpz_class& a, const mpz_class& b) {
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    bool move_min_pivot(size_t t) {
        size_t bi = rows_, bj = cols_;
        mpz_class best = 0;
        for (size_t i = t; i < rows_; ++i)
            for (size_t j = t; j < cols_; ++j)
                if (a_[i][j] != 0 && (best == 0 || cmp_abs(a_[i][j], best) < 0)) {
                    best = a_[i][j];
                    bi = i;
                    bj = j;
                }
        if (bi == rows_) return false;
        swap_rows(bi, t);
        swap_cols(bj, t);
        return true;
    }
    static int cmp_abs(const mpz_class& x, const mpz_class& y) {
        return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t());
    }
    void row_op(size_t i, size_t t, const mpz_class& q) {  // row_i -= q * row_t
        if (q == 0) return;
        for (size_t j = 0; j < cols_; ++j) a_[i][j] -= q * a_[t][j];
        if (track_)
            for (size_t j = 0; j < rows_; ++j) u_[i][j] -= q * u_[t][j];
    }
    void col_op(size_t j, size_t t, const mpz_class& q) {  // col_j -= q * col_t
        if (q == 0) return;
        for (size_t i = 0; i < rows_; ++i) a_[i][j] -= q * a_[i][t];
        if (track_)
            for (size_t i = 0; i < cols_; ++i) v_[i][j] -= q * v_[i][t];
    }
    void add_row(size_t t, size_t i) {  // row_t += row_i
        for (size_t j = 0; j < cols_; ++j) a_[t][j] += a_[i][j];
        if (track_)
            for (size_t j = 0; j < rows_; ++j) u_[t][j] += u_[i][j];
    }
    void negate_row(size_t t) {
        for (size_t j = 0; j < cols_; ++j) a_[t][j] = -a_[t][j];
        if (track_)
            for (size_t j = 0; j < rows_; ++j) u_[t][j] = -u_[t][j];
    }
    void swap_rows(size_t i, size_t j) {
        if (i == j) return;
        std::swap(a_[i], a_[j]);
        if (track_) std::swap(u_[i], u_[j]);
    }
    void swap_cols(size_t i, size_t j) {
        if (i == j) return;
        for (size_t t = 0; t < rows_; ++t) std::swap(a_[t][i], a_[t][j]);
        if (track_)
            for (size_t t = 0; t < cols_; ++t) std::swap(v_[t][i], v_[t][j]);
    }

    std::vector<std::vector<mpz_class>> a_;
    std::vector<std::vector<mpz_class>> u_, v_;
    bool track_;
    size_t rows_ = 0, cols_ = 0, rank_ = 0;
};

// Sparse elimination of unit pivots.  Scalar is int64 or mpz_class; the
// int64 instantiation throws std::overflow_error and the caller restarts
// with mpz.
template <typename Scalar>
class SparseEliminator {
  public:
    SparseEliminator(int nrows, int ncols, const std::vector<SparseEntry>& entries, bool solving)
        : nrows_(nrows), ncols_(ncols), rows_(static_cast<size_t>(nrows)),
          cols_(static_cast<size_t>(ncols)), solving_(solving) {
        row_active_.assign(static_cast<size_t>(nrows), true);
        col_active_.assign(static_cast<size_t>(ncols), true);
        for (const auto& e : entries) {
            Scalar v = Scalar(static_cast<long>(e.value));
            if (v == 0) continue;
            auto [it, fresh] = rows_[static_cast<size_t>(e.row)].emplace(e.col, v);
            if (!fresh) throw std::invalid_argument("duplicate sparse entry");
            cols_[static_cast<size_t>(e.col)].insert(e.row);
        }
    }

    void set_rhs(std::vector<Scalar> rhs) { rhs_ = std::move(rhs); }

    // Eliminate unit pivots until none remain.
    void eliminate() {
        while (true) {
            auto pivot = pick_unit_pivot();
            if (!pivot) break;
            auto [r, c] = *pivot;
            Scalar pv = rows_[static_cast<size_t>(r)].at(c);
            // clear column c in the other rows
            std::vector<int> users(cols_[static_cast<size_t>(c)].begin(), cols_[static_cast<size_t>(c)].end());
            for (int r2 : users) {
                if (r2 == r) continue;
                Scalar f = exact_div(rows_[static_cast<size_t>(r2)].at(c), pv);
                combine_rows(r2, r, f);
            }
            // retire pivot row and column; remember the row for back-substitution
            if (solving_) {
                Pivot rec;
                rec.row = r;
                rec.col = c;
                rec.value = pv;
                for (auto& [cc, vv] : rows_[static_cast<size_t>(r)])
                    if (cc != c) rec.rest.emplace_back(cc, vv);
                pivots_.push_back(std::move(rec));
            }
            ++unit_rank_;
            deactivate_row(r);
            col_active_[static_cast<size_t>(c)] = false;
            cols_[static_cast<size_t>(c)].clear();
        }
    }

    // Rank and invariant factors of the whole matrix (unit pivots contribute
    // factor 1, the dense residue supplies the rest).
    SnfSummary snf() {
        eliminate();
        auto [dense, rmap, cmap] = residual_dense();
        DenseSnf d(std::move(dense), false);
        d.run();
        SnfSummary out;
        out.rank = unit_rank_ + static_cast<std::int64_t>(d.rank());
        for (std::int64_t i = 0; i < unit_rank_; ++i) out.invariant_factors.emplace_back(1);
        for (size_t t = 0; t < d.rank(); ++t) out.invariant_factors.push_back(d.diag(t));
        return out;
    }

    // Solve M x = rhs over the integers.  Returns the witness or nullopt
    // when no integer solution exists.
    std::optional<std::vector<mpz_class>> solve() {
        eliminate();
        auto [dense, rmap, cmap] = residual_dense();
        std::vector<mpz_class> rb;
        rb.reserve(rmap.size());
        for (int r : rmap) rb.push_back(to_mpz(rhs_[static_cast<size_t>(r)]));
        DenseSnf d(std::move(dense), true);
        d.run();
        std::vector<mpz_class> ub = d.apply_u(rb);
        std::vector<mpz_class> y(cmap.size(), 0);
        for (size_t i = 0; i < rmap.size(); ++i) {
            if (i < d.rank()) {
                if (ub[i] % d.diag(i) != 0) return std::nullopt;
                y[i] = ub[i] / d.diag(i);
            } else if (ub[i] != 0) {
                return std::nullopt;
            }
        }
        std::vector<mpz_class> xres = d.apply_v(y);
        std::vector<mpz_class> x(static_cast<size_t>(ncols_), 0);
        for (size_t j = 0; j < cmap.size(); ++j) x[static_cast<size_t>(cmap[j])] = xres[j];
        // back-substitute the unit pivots in reverse elimination order
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            mpz_class acc = to_mpz(rhs_[static_cast<size_t>(it->row)]);
            for (auto& [cc, vv] : it->rest) acc -= to_mpz(vv) * x[static_cast<size_t>(cc)];
            mpz_class pv = to_mpz(it->value);
            if (acc % pv != 0) return std::nullopt;
            x[static_cast<size_t>(it->col)] = acc / pv;
        }
        return x;
    }

  private:
    struct Pivot {
        int row = 0, col = 0;
        Scalar value{};
        std::vector<std::pair<int, Scalar>> rest;
    };

    static mpz_class to_mpz(const std::int64_t& v) { return mpz_class(static_cast<long>(v)); }
    static mpz_class to_mpz(const mpz_class& v) { return v; }

    std::optional<std::pair<int, int>> pick_unit_pivot() const {
        std::optional<std::pair<int, int>> best;
        std::uint64_t best_cost = ~std::uint64_t{0};
        for (int r = 0; r < nrows_; ++r) {
            if (!row_active_[static_cast<size_t>(r)]) continue;
            const auto& row = rows_[static_cast<size_t>(r)];
            for (auto& [c, v] : row) {
                if (!is_unit(v)) continue;
                std::uint64_t cost = (row.size() - 1) *
                                     (cols_[static_cast<size_t>(c)].size() - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = std::make_pair(r, c);
                    if (cost == 0) return best;
                }
            }
        }
        return best;
    }

    void combine_rows(int dst, int src, const Scalar& f) {  // row_dst -= f * row_src
        auto& d = rows_[static_cast<size_t>(dst)];
        for (auto& [c, v] : rows_[static_cast<size_t>(src)]) {
            auto it = d.find(c);
            if (it == d.end()) {
                Scalar nv{};
                sub_scaled(nv, f, v);
                if (nv != 0) {
                    d.emplace(c, nv);
                    cols_[static_cast<size_t>(c)].insert(dst);
                }
            } else {
                sub_scaled(it->second, f, v);
                if (it->second == 0) {
                    d.erase(it);
                    cols_[static_cast<size_t>(c)].erase(dst);
                }
            }
        }
        if (solving_) sub_scaled(rhs_[static_cast<size_t>(dst)], f, rhs_[static_cast<size_t>(src)]);
    }

    void deactivate_row(int r) {
        for (auto& [c, v] : rows_[static_cast<size_t>(r)]) cols_[static_cast<size_t>(c)].erase(r);
        rows_[static_cast<size_t>(r)].clear();
        row_active_[static_cast<size_t>(r)] = false;
    }

    std::tuple<std::vector<std::vector<mpz_class>>, std::vector<int>, std::vector<int>>
    residual_dense() const {
        std::vector<int> rmap, cmap;
        std::vector<int> cidx(static_cast<size_t>(ncols_), -1);
        for (int r = 0; r < nrows_; ++r)
            if (row_active_[static_cast<size_t>(r)]) rmap.push_back(r);
        for (int c = 0; c < ncols_; ++c)
            if (col_active_[static_cast<size_t>(c)]) {
                cidx[static_cast<size_t>(c)] = static_cast<int>(cmap.size());
                cmap.push_back(c);
            }
        std::vector<std::vector<mpz_class>> dense(rmap.size(), std::vector<mpz_class>(cmap.size(), 0));
        for (size_t i = 0; i < rmap.size(); ++i)
            for (auto& [c, v] : rows_[static_cast<size_t>(rmap[i])])
                dense[i][static_cast<size_t>(cidx[static_cast<size_t>(c)])] = to_mpz(v);
        return {std::move(dense), std::move(rmap), std::move(cmap)};
    }

    int nrows_, ncols_;
    std::vector<std::map<int, Scalar>> rows_;
    std::vector<std::set<int>> cols_;
    std::vector<bool> row_active_, col_active_;
    std::vector<Scalar> rhs_;
    std::vector<Pivot> pivots_;
    std::int64_t unit_rank_ = 0;
    bool solving_;
};

}  // namespace linalg_detail

// Rank and invariant factors of a sparse integer matrix.
inline SnfSummary sparse_snf(int nrows, int ncols, const std::vector<SparseEntry>& entries) {
    try {
        linalg_detail::SparseEliminator<std::int64_t> elim(nrows, ncols, entries, false);
        return elim.snf();
    } catch (const std::overflow_error&) {
        linalg_detail::SparseEliminator<mpz_class> elim(nrows, ncols, entries, false);
        return elim.snf();
    }
}

// Integer solution of M x = b, when one exists.
inline std::optional<std::vector<mpz_class>> sparse_solve(int nrows, int ncols,
                                                          const std::vector<SparseEntry>& entries,
                                                          const std::vector<std::int64_t>& b) {
    auto verify = [&](const std::vector<mpz_class>& x) {
        std::vector<mpz_class> acc(static_cast<size_t>(nrows), 0);
        for (const auto& e : entries)
            acc[static_cast<size_t>(e.row)] += mpz_class(static_cast<long>(e.value)) * x[static_cast<size_t>(e.col)];
        for (int r = 0; r < nrows; ++r)
            if (acc[static_cast<size_t>(r)] != static_cast<long>(b[static_cast<size_t>(r)]))
                throw VerificationError("solver produced an invalid witness");
    };
    auto run = [&](auto scalar_tag) -> std::optional<std::vector<mpz_class>> {
        using Scalar = decltype(scalar_tag);
        linalg_detail::SparseEliminator<Scalar> elim(nrows, ncols, entries, true);
        std::vector<Scalar> rhs;
        rhs.reserve(b.size());
        for (std::int64_t v : b) rhs.push_back(Scalar(static_cast<long>(v)));
        elim.set_rhs(std::move(rhs));
        return elim.solve();
    };
    std::optional<std::vector<mpz_class>> x;
    try {
        x = run(std::int64_t{});
    } catch (const std::overflow_error&) {
        x = run(mpz_class{});
    }
    if (x) verify(*x);
    return x;
}

}  // namespace cuberips

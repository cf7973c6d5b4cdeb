#pragma once

// Integer chains, the cycle-pushing procedure that moves a p-cycle of
// VR(I_n;3) into the boundary subcomplex, and integer boundary testing
// with explicit witnesses.
//
// Pushing: while some term sigma covers all places, take a facet tau
// containing it (an A facet if one exists, else B; a dimension-7 facet
// cannot contain an all-places-covering simplex), cone sigma off the
// facet's apex vertex (A: the centre v, which the covering bound forces
// outside sigma; B: an endpoint of the edge, both lie outside sigma) and
// subtract the matching multiple of Bd(sigma u {apex}).  Every replacement
// term contains the apex, hence misses a place, so |mu| strictly drops.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cuberips/complex.hpp"
#include "cuberips/facets.hpp"
#include "cuberips/homology.hpp"
#include "cuberips/linalg.hpp"

namespace cuberips {

struct Chain {
    int dim = -1;
    std::map<Vmask, std::int64_t, LexLess> terms;

    bool empty() const { return terms.empty(); }
    void add(Vmask sigma, std::int64_t coef) {
        if (coef == 0) return;
        auto [it, fresh] = terms.emplace(sigma, coef);
        if (!fresh) {
            it->second = checked_add(it->second, coef);
            if (it->second == 0) terms.erase(it);
        }
    }
    std::int64_t coef(Vmask sigma) const {
        auto it = terms.find(sigma);
        return it == terms.end() ? 0 : it->second;
    }
};

inline Chain operator-(const Chain& a, const Chain& b) {
    Chain out = a;
    out.dim = (a.dim >= 0) ? a.dim : b.dim;
    for (auto& [s, v] : b.terms) out.add(s, -v);
    return out;
}

inline bool operator==(const Chain& a, const Chain& b) { return a.terms == b.terms; }

inline Chain boundary_of_simplex(Vmask sigma) {
    Chain out;
    out.dim = popcount(sigma) - 2;
    for_each_boundary_face(sigma, [&](int, Vmask face, int sign) {
        if (face != 0) out.add(face, sign);
    });
    return out;
}

inline Chain boundary(const Chain& c) {
    Chain out;
    out.dim = c.dim - 1;
    for (auto& [sigma, coef] : c.terms)
        for_each_boundary_face(sigma, [&](int, Vmask face, int sign) {
            if (face != 0) out.add(face, checked_mul(coef, sign));
        });
    return out;
}

inline bool is_cycle(const Chain& c) { return boundary(c).empty(); }

// Off-boundary support: the terms covering all places.
inline std::vector<Vmask> mu_support(const Chain& c, int n) {
    std::vector<Vmask> out;
    for (auto& [sigma, coef] : c.terms)
        if (covers_all_places(sigma, n)) out.push_back(sigma);
    return out;
}

// Sign of sigma inside Bd(sigma u {apex}): (-1)^(position of apex).
inline int cone_sign(Vmask sigma, int apex) {
    Vmask below = (Vmask{1} << apex) - 1;
    return (popcount((sigma | (Vmask{1} << apex)) & below) % 2 == 0) ? +1 : -1;
}

struct PushResult {
    Chain pushed;        // supported in the boundary subcomplex
    Chain correction;    // (p+1)-chain with boundary(correction) = input - pushed
    int iterations = 0;
};

class CyclePusher {
  public:
    explicit CyclePusher(int n, std::uint64_t cap = 10'000'000) : n_(n) {
        if (n < 5) throw std::invalid_argument("cycle pushing requires n >= 5");
        for (const auto& cf : generate_facets_r3(n, cap)) {
            if (cf.cls.tag == FacetTag::R3_A) a_facets_.push_back(cf);
            if (cf.cls.tag == FacetTag::R3_B) b_facets_.push_back(cf);
        }
    }

    // Within the covering-bound range p <= n-2 the preferred apex always
    // succeeds and strictly shrinks mu.  For p = n-1 (where terms have n
    // vertices and can cover all places while containing the preferred
    // apex) the search widens to the other vertices of containing facets,
    // still demanding a strict |mu| decrease; exhausting every option is
    // an error.
    PushResult push(const Chain& input) const {
        if (input.dim > n_ - 1)
            throw std::invalid_argument("cycle pushing needs p <= n-1");
        if (!is_cycle(input)) throw std::invalid_argument("input chain is not a cycle");
        PushResult out;
        out.pushed = input;
        out.correction.dim = input.dim + 1;
        std::size_t mu = mu_support(out.pushed, n_).size();
        while (true) {
            auto offb = mu_support(out.pushed, n_);
            if (offb.empty()) break;
            bool advanced = false;
            for (Vmask sigma : offb) {  // lex order; the first term almost always pushes
                for (int apex : apex_candidates(sigma)) {
                    Chain trial = out.pushed;
                    Vmask cone = sigma | (Vmask{1} << apex);
                    std::int64_t a = trial.coef(sigma);
                    int s = cone_sign(sigma, apex);
                    Chain bd = boundary_of_simplex(cone);
                    for (auto& [face, sign] : bd.terms)
                        trial.add(face, checked_mul(checked_mul(-a, s), sign));
                    if (trial.coef(sigma) != 0)
                        throw VerificationError("pushed term failed to cancel");
                    if (mu_support(trial, n_).size() >= mu) continue;
                    out.pushed = std::move(trial);
                    out.correction.add(cone, checked_mul(a, s));
                    mu = mu_support(out.pushed, n_).size();
                    ++out.iterations;
                    advanced = true;
                    break;
                }
                if (advanced) break;
            }
            if (!advanced)
                throw VerificationError(
                    "no containing facet yields a cone apex that shrinks the off-boundary support");
        }
        Chain diff = input - out.pushed;
        if (!(boundary(out.correction) == diff))
            throw VerificationError("correction chain does not bound the pushed difference");
        return out;
    }

  private:
    // Apexes in preference order: A facets before B facets, canonical
    // witness order inside each class, the facet's distinguished vertices
    // (A: the centre; B: the edge endpoints) before its remaining ones.
    std::vector<int> apex_candidates(Vmask sigma) const {
        std::vector<int> apexes;
        Vmask seen = sigma;
        auto offer = [&](int v) {
            if (!(seen >> v & 1)) {
                apexes.push_back(v);
                seen |= Vmask{1} << v;
            }
        };
        for (const auto& cf : a_facets_)
            if (is_subset(sigma, cf.facet)) {
                offer(static_cast<int>(cf.cls.v));
                for_each_bit(cf.facet & ~seen, offer);
            }
        for (const auto& cf : b_facets_)
            if (is_subset(sigma, cf.facet)) {
                offer(static_cast<int>(cf.cls.v));
                offer(static_cast<int>(cf.cls.w));
                for_each_bit(cf.facet & ~seen, offer);
            }
        if (apexes.empty())
            throw VerificationError("no A or B facet contains an all-places-covering term");
        return apexes;
    }

    int n_;
    std::vector<ClassifiedFacet> a_facets_;
    std::vector<ClassifiedFacet> b_facets_;
};

// --- integer boundary testing --------------------------------------------------

struct BoundaryTest {
    bool value = false;
    std::optional<Chain> witness;  // boundary(witness) == chain, exactly
};

namespace cycles_detail {

inline std::optional<Chain> solve_in_subcomplex(const Chain& c, const std::vector<Vmask>& facets,
                                                std::uint64_t cap) {
    Complex sub;
    sub.num_vertices = 64;
    sub.facets = facets;
    int p = c.dim;
    FaceTable table = FaceTable::build(sub, p + 1, cap);
    if (table.top < p) return std::nullopt;
    const auto& rows = table.faces[static_cast<size_t>(p)];
    const auto& ridx = table.index[static_cast<size_t>(p)];
    for (auto& [sigma, coef] : c.terms)
        if (!ridx.count(sigma)) return std::nullopt;  // support outside this subcomplex
    if (table.top < p + 1) return std::nullopt;
    auto entries = boundary_matrix(table, p + 1);
    std::vector<std::int64_t> rhs(rows.size(), 0);
    for (auto& [sigma, coef] : c.terms) rhs[static_cast<size_t>(ridx.at(sigma))] = coef;
    auto x = sparse_solve(static_cast<int>(rows.size()),
                          static_cast<int>(table.count(p + 1)), entries, rhs);
    if (!x) return std::nullopt;
    Chain wit;
    wit.dim = p + 1;
    const auto& cols = table.faces[static_cast<size_t>(p + 1)];
    for (size_t j = 0; j < cols.size(); ++j) {
        const mpz_class& v = (*x)[j];
        if (v != 0) {
            if (!v.fits_slong_p()) throw BudgetExceeded("witness coefficient exceeds int64");
            wit.add(cols[j], static_cast<std::int64_t>(v.get_si()));
        }
    }
    return wit;
}

}  // namespace cycles_detail

// Whether the cycle bounds over the integers.  Solves on a subcomplex
// around the support first and grows it on failure; success anywhere is a
// witness for the whole complex, a definitive "no" requires the full
// matrix.  The returned witness always satisfies boundary(witness) == chain.
inline BoundaryTest is_boundary(const Chain& c, const Complex& complex,
                                std::uint64_t cap = 10'000'000) {
    if (!is_cycle(c)) throw std::invalid_argument("is_boundary requires a cycle");
    BoundaryTest out;
    if (c.empty()) {
        out.value = true;
        Chain zero;
        zero.dim = c.dim + 1;
        out.witness = zero;
        return out;
    }
    for (auto& [sigma, coef] : c.terms)
        if (!member(complex, sigma)) throw std::invalid_argument("chain has a term outside the complex");

    std::vector<Vmask> sub;
    for (Vmask f : complex.facets)
        for (auto& [sigma, coef] : c.terms)
            if (is_subset(sigma, f)) { sub.push_back(f); break; }
    while (true) {
        if (auto wit = cycles_detail::solve_in_subcomplex(c, sub, cap)) {
            if (!(boundary(*wit) == c)) throw VerificationError("boundary witness failed verification");
            out.value = true;
            out.witness = std::move(wit);
            return out;
        }
        if (sub.size() == complex.facets.size()) return out;  // solved over the whole complex: no
        Vmask verts = 0;
        for (Vmask f : sub) verts |= f;
        std::vector<Vmask> grown = sub;
        for (Vmask f : complex.facets)
            if ((f & verts) != 0) grown.push_back(f);
        sort_canonical(grown);
        if (grown.size() == sub.size()) grown = complex.facets;  // disconnected: jump to everything
        sub = std::move(grown);
    }
}

}  // namespace cuberips

#pragma once

// End-to-end collapsibility certification.  The upper bound is d_prec under
// the class-major facet ordering (computed on the reduced complex when
// r = 3 and the A-removal schedule applies), together with the schedule's
// largest free face; the lower bound is one past the largest dimension
// carrying nonzero reduced homology, since a d-collapsible complex is
// homotopy equivalent to a complex of dimension below d.

#include <cstdint>
#include <string>

#include "cuberips/collapse.hpp"
#include "cuberips/homology.hpp"
#include "cuberips/mes.hpp"

namespace cuberips {

struct CollapsibilityCertificate {
    int n = 0;
    int r = 0;
    int upper = 0;
    int lower = 0;
    bool certified = false;  // upper == lower == 2^r
    DPrecResult dprec;
    std::size_t schedule_steps = 0;
    int schedule_gamma_max = 0;
    bool reduced_facets_verified = false;  // facet set of Delta_n' matches B u C u D
    HomologyReport homology;
};

inline CollapsibilityCertificate certify_collapsibility(int n, int r,
                                                        Engine engine = Engine::coreduce,
                                                        std::uint64_t cap = 10'000'000) {
    CollapsibilityCertificate cert;
    cert.n = n;
    cert.r = r;
    Complex for_homology;
    if (r == 2) {
        if (n < 3) throw std::invalid_argument("certification for r=2 requires n >= 3");
        Complex c = vr_complex(n, 2, cap);
        cert.dprec = d_prec(c, paper_ordering(c, 2), cap);
        cert.upper = cert.dprec.value;
        for_homology = std::move(c);
    } else if (r == 3) {
        if (n < 4) throw std::invalid_argument("certification for r=3 requires n >= 4");
        ReduceResult red = reduce_A_family(n, cap);
        cert.schedule_steps = red.schedule.size();
        for (const auto& s : red.schedule)
            cert.schedule_gamma_max = std::max(cert.schedule_gamma_max, popcount(s.gamma));
        if (n >= 5) {
            cert.reduced_facets_verified = (red.reduced.facets == reduced_facets_direct(n, cap));
            if (!cert.reduced_facets_verified)
                throw VerificationError("reduced facet set differs from B u C u D");
        } else {
            cert.reduced_facets_verified = true;  // no-op reduction for n = 4
        }
        cert.dprec = d_prec(red.reduced, paper_ordering(red.reduced, 3), cap);
        cert.upper = std::max(cert.dprec.value, cert.schedule_gamma_max);
        for_homology = vr_complex(n, 3, cap);
    } else {
        throw std::invalid_argument("certification supports r in {2,3}");
    }
    cert.homology = reduced_homology(for_homology, -1, engine, cap);
    cert.lower = cert.homology.largest_nonzero_dim() + 1;
    cert.certified = (cert.upper == cert.lower) && (cert.upper == (1 << r));
    return cert;
}

}  // namespace cuberips

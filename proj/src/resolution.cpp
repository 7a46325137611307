#include "homkk/resolution.hpp"

#include <stdexcept>

namespace homkk {

CanonicalResolution canonical_resolution(const GradedGroup& g) {
    CanonicalResolution r;
    r.group = g;
    for (int p : {kEven, kOdd}) r.basis[p] = hnf_column_basis(g.rels[p]);
    return r;
}

FreeResolution as_free_resolution(const CanonicalResolution& r) {
    FreeResolution f;
    f.group = r.group;
    for (int p : {kEven, kOdd}) {
        f.r0[p] = r.group.gens(p);
        f.r1[p] = r.rank(p);
        f.boundary[p] = r.basis[p];
        f.cover[p] = IntMatrix::identity(r.group.gens(p));
    }
    return f;
}

namespace {

// Lattice of R0-vectors that die in G under the cover.
IntMatrix cover_kernel_lattice(const FreeResolution& r, int p) {
    IntMatrix stacked = IntMatrix::hstack(r.cover[p], r.group.rels[p]);
    IntMatrix ns = nullspace(stacked);
    return hnf_column_basis(ns.row_range(0, r.r0[p]));
}

}  // namespace

bool resolution_is_exact(const FreeResolution& r) {
    for (int p : {kEven, kOdd}) {
        if (r.boundary[p].rows() != r.r0[p] || r.boundary[p].cols() != r.r1[p]) return false;
        if (r.cover[p].rows() != r.group.gens(p) || r.cover[p].cols() != r.r0[p]) return false;
        if (nullspace(r.boundary[p]).cols() != 0) return false;  // injective
        // cover surjective: coordinates of G generators reachable mod relators
        if (!solve_modulo_matrix(r.cover[p], r.group.rels[p],
                                 IntMatrix::identity(r.group.gens(p))))
            return false;
        // ker(cover) = im(boundary), both as sublattices of Z^{r0}
        IntMatrix k = cover_kernel_lattice(r, p);
        if (!cols_in_column_lattice(r.boundary[p], k)) return false;
        if (!cols_in_column_lattice(k, r.boundary[p])) return false;
    }
    return true;
}

ResolutionComparison compare_with_canonical(const CanonicalResolution& canonical,
                                            const FreeResolution& r) {
    ResolutionComparison cmp;
    for (int p : {kEven, kOdd}) {
        // Lift each generator of G through the cover.
        auto u0 = solve_modulo_matrix(r.cover[p], r.group.rels[p],
                                      IntMatrix::identity(r.group.gens(p)));
        if (!u0)
            throw std::invalid_argument("compare_with_canonical: cover not surjective");
        cmp.level0[p] = *u0;
        // u0 . basis lands in ker(cover) = im(boundary); lift exactly.
        IntMatrix moved = cmp.level0[p] * canonical.basis[p];
        auto u1 = solve_linear_matrix(r.boundary[p], moved);
        if (!u1)
            throw std::invalid_argument("compare_with_canonical: resolution not exact at middle");
        cmp.level1[p] = *u1;
    }
    return cmp;
}

}  // namespace homkk

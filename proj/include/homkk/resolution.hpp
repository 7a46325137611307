#pragma once

#include "homkk/graded.hpp"

namespace homkk {

/// The canonical length-1 free resolution 0 -> Z^{k_p} -> Z^{gens_p} -> G_p -> 0
/// per parity, with basis[p] the column Hermite normal form of the relator
/// lattice. Deterministic, so Ext encodings are reproducible.
struct CanonicalResolution {
    GradedGroup group;
    std::array<IntMatrix, 2> basis;  // gens_p x k_p, independent columns

    std::size_t rank(int p) const { return basis[p].cols(); }
};

CanonicalResolution canonical_resolution(const GradedGroup& g);

/// A length-1 free resolution R1 --boundary--> R0 --cover--> G with free graded
/// R0, R1. Both maps are degree 0.
struct FreeResolution {
    GradedGroup group;
    std::array<std::size_t, 2> r0 = {0, 0}, r1 = {0, 0};
    std::array<IntMatrix, 2> boundary;  // r0[p] x r1[p]
    std::array<IntMatrix, 2> cover;     // gens_p(G) x r0[p]
};

/// The canonical resolution viewed as a FreeResolution (cover = identity coords).
FreeResolution as_free_resolution(const CanonicalResolution& r);

/// Exactness of a claimed resolution: boundary injective, cover surjective,
/// kernel of the cover equal to the image of the boundary.
bool resolution_is_exact(const FreeResolution& r);

/// Chain map from the canonical resolution of r.group down to r, lifting the
/// identity. level0[p]: Z^{gens_p} -> R0_p, level1[p]: Z^{k_p} -> R1_p.
struct ResolutionComparison {
    std::array<IntMatrix, 2> level0, level1;
};
ResolutionComparison compare_with_canonical(const CanonicalResolution& canonical,
                                            const FreeResolution& r);

}  // namespace homkk

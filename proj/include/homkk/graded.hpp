#pragma once

#include <array>
#include <optional>
#include <vector>

#include "homkk/int_matrix.hpp"

namespace homkk {

/// Parities of a Z/2-graded group; suspension swaps the two.
inline constexpr int kEven = 0;
inline constexpr int kOdd = 1;
inline int flip(int p) { return p ^ 1; }

/// Finitely generated Z/2-graded abelian group, one presentation per parity.
/// The parity-p component is the cokernel of rels[p] : Z^{cols} -> Z^{gens_p};
/// relator vectors are the columns.
struct GradedGroup {
    std::array<IntMatrix, 2> rels;  // rels[p] has gens(p) rows

    GradedGroup() : rels{IntMatrix(0, 0), IntMatrix(0, 0)} {}
    GradedGroup(IntMatrix even_rels, IntMatrix odd_rels)
        : rels{std::move(even_rels), std::move(odd_rels)} {}

    std::size_t gens(int p) const { return rels[p].rows(); }

    static GradedGroup trivial() { return GradedGroup(); }
    /// Z/m at the given parity (m = 0 gives Z).
    static GradedGroup cyclic(const Int& m, int parity = kEven);
    static GradedGroup free_group(std::size_t even_rank, std::size_t odd_rank);
    /// Direct sum with presentations stacked block-diagonally.
    static GradedGroup direct_sum(const std::vector<GradedGroup>& parts);

    GradedGroup suspended() const { return GradedGroup(rels[kOdd], rels[kEven]); }
    bool is_free() const { return rels[kEven].cols() == 0 && rels[kOdd].cols() == 0; }
};

/// Offsets of each summand inside a direct sum, per parity.
struct DirectSumLayout {
    GradedGroup total;
    std::vector<std::array<std::size_t, 2>> offsets;
    static DirectSumLayout of(const std::vector<GradedGroup>& parts);
};

/// Invariant factors d1 | d2 | ... with di > 1, followed by one 0 per free
/// summand. Empty list = trivial group.
std::vector<Int> invariant_factors(const IntMatrix& rels);
std::array<std::vector<Int>, 2> invariant_factors(const GradedGroup& g);

/// Number of elements of the parity-p component, if finite.
std::optional<Int> component_order(const GradedGroup& g, int p);
bool is_trivial(const GradedGroup& g);

/// Coordinate vectors of all elements of the parity-p component (finite only).
std::vector<std::vector<Int>> enumerate_elements(const GradedGroup& g, int p);

/// Is the coordinate vector v the zero element of the parity-p component?
bool element_is_zero(const GradedGroup& g, int p, const std::vector<Int>& v);
bool elements_equal(const GradedGroup& g, int p, const std::vector<Int>& a,
                    const std::vector<Int>& b);

/// Homomorphism of graded groups of degree 0 or 1, given on generators.
/// comp[p] maps parity-p generator coordinates of the source to parity-(p+degree)
/// generator coordinates of the target.
struct GradedMap {
    GradedGroup source, target;
    int degree = 0;
    std::array<IntMatrix, 2> comp;

    GradedMap() = default;
    GradedMap(GradedGroup src, GradedGroup tgt, int deg, std::array<IntMatrix, 2> c)
        : source(std::move(src)), target(std::move(tgt)), degree(deg), comp(std::move(c)) {}

    static GradedMap identity(const GradedGroup& g);
    static GradedMap zero(const GradedGroup& src, const GradedGroup& tgt, int degree = 0);

    /// Shapes line up with source/target generator counts.
    bool shapes_ok() const;
    /// Every relator of the source lands in the relator lattice of the target.
    bool is_relation_compatible() const;

    GradedMap suspended() const;  // same map between suspended groups
};

GradedMap compose(const GradedMap& g, const GradedMap& f);  // g after f
GradedMap map_sum(const GradedMap& a, const GradedMap& b);
GradedMap map_diff(const GradedMap& a, const GradedMap& b);
GradedMap map_negate(const GradedMap& a);

/// Equality as homomorphisms (difference of components lands in target relators).
bool maps_equal(const GradedMap& a, const GradedMap& b);
bool map_is_zero(const GradedMap& a);

struct SubgroupResult {
    GradedGroup group;
    GradedMap inclusion;  // degree 0 into the ambient group
};
struct QuotientResult {
    GradedGroup group;
    GradedMap projection;  // degree 0 from the ambient group
};

/// Kernel with its inclusion. Throws if f is not relation-compatible.
SubgroupResult kernel_of(const GradedMap& f);
/// Cokernel with its projection. Throws if f is not relation-compatible.
QuotientResult cokernel_of(const GradedMap& f);
/// Cokernel of the joint image of several maps into one target.
QuotientResult cokernel_of_family(const std::vector<GradedMap>& fs, const GradedGroup& target);

bool is_injective(const GradedMap& f);
bool is_surjective(const GradedMap& f);
bool is_isomorphism(const GradedMap& f);

/// Inverse of an isomorphism (same degree). Throws if not invertible.
GradedMap invert_isomorphism(const GradedMap& f);

/// Map A -> K through the kernel inclusion: incl . u = f, when im f lies in K.
std::optional<GradedMap> factor_through_kernel(const SubgroupResult& kernel, const GradedMap& f);

/// Exactness of A --f--> B --g--> C at B (checks g.f = 0 and ker g = im f).
bool is_exact_at(const GradedMap& f, const GradedMap& g);

}  // namespace homkk

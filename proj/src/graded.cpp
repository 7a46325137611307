#include "homkk/graded.hpp"

#include <stdexcept>

namespace homkk {

GradedGroup GradedGroup::cyclic(const Int& m, int parity) {
    GradedGroup g;
    IntMatrix rel(1, m == 0 ? 0 : 1);
    if (m != 0) rel(0, 0) = m;
    g.rels[parity] = rel;
    g.rels[flip(parity)] = IntMatrix(0, 0);
    return g;
}

GradedGroup GradedGroup::free_group(std::size_t even_rank, std::size_t odd_rank) {
    return GradedGroup(IntMatrix(even_rank, 0), IntMatrix(odd_rank, 0));
}

GradedGroup GradedGroup::direct_sum(const std::vector<GradedGroup>& parts) {
    return DirectSumLayout::of(parts).total;
}

DirectSumLayout DirectSumLayout::of(const std::vector<GradedGroup>& parts) {
    DirectSumLayout out;
    for (int p : {kEven, kOdd}) {
        std::vector<IntMatrix> blocks;
        blocks.reserve(parts.size());
        for (const auto& g : parts) blocks.push_back(g.rels[p]);
        out.total.rels[p] = IntMatrix::block_diag(blocks);
    }
    std::array<std::size_t, 2> at = {0, 0};
    for (const auto& g : parts) {
        out.offsets.push_back(at);
        at[kEven] += g.gens(kEven);
        at[kOdd] += g.gens(kOdd);
    }
    return out;
}

std::vector<Int> invariant_factors(const IntMatrix& rels) {
    SmithDecomposition s = smith_normal_form(rels);
    std::vector<Int> out;
    for (const Int& d : s.diagonal())
        if (d > 1) out.push_back(d);
    std::size_t free_rank = rels.rows() - s.rank;
    for (std::size_t i = 0; i < free_rank; ++i) out.push_back(0);
    return out;
}

std::array<std::vector<Int>, 2> invariant_factors(const GradedGroup& g) {
    return {invariant_factors(g.rels[kEven]), invariant_factors(g.rels[kOdd])};
}

std::optional<Int> component_order(const GradedGroup& g, int p) {
    Int n = 1;
    for (const Int& d : invariant_factors(g.rels[p])) {
        if (d == 0) return std::nullopt;
        n *= d;
    }
    return n;
}

bool is_trivial(const GradedGroup& g) {
    return invariant_factors(g.rels[kEven]).empty() && invariant_factors(g.rels[kOdd]).empty();
}

std::vector<std::vector<Int>> enumerate_elements(const GradedGroup& g, int p) {
    const IntMatrix& rels = g.rels[p];
    SmithDecomposition s = smith_normal_form(rels);
    std::size_t n = rels.rows();
    std::vector<Int> diag = s.diagonal();
    diag.resize(n, Int(0));
    for (const Int& d : diag)
        if (d == 0) throw std::invalid_argument("enumerate_elements: infinite group");
    IntMatrix uinv = unimodular_inverse(s.U);

    std::vector<std::vector<Int>> out;
    std::vector<Int> t(n, Int(0));
    for (;;) {
        out.push_back(uinv.apply(t));
        std::size_t i = 0;
        while (i < n) {
            t[i] += 1;
            if (t[i] < diag[i]) break;
            t[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return out;
}

bool element_is_zero(const GradedGroup& g, int p, const std::vector<Int>& v) {
    return in_column_lattice(g.rels[p], v);
}

bool elements_equal(const GradedGroup& g, int p, const std::vector<Int>& a,
                    const std::vector<Int>& b) {
    std::vector<Int> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return element_is_zero(g, p, d);
}

GradedMap GradedMap::identity(const GradedGroup& g) {
    return GradedMap(g, g, 0,
                     {IntMatrix::identity(g.gens(kEven)), IntMatrix::identity(g.gens(kOdd))});
}

GradedMap GradedMap::zero(const GradedGroup& src, const GradedGroup& tgt, int degree) {
    return GradedMap(src, tgt, degree,
                     {IntMatrix(tgt.gens(degree % 2), src.gens(kEven)),
                      IntMatrix(tgt.gens(flip(degree % 2)), src.gens(kOdd))});
}

bool GradedMap::shapes_ok() const {
    for (int p : {kEven, kOdd}) {
        if (comp[p].cols() != source.gens(p)) return false;
        if (comp[p].rows() != target.gens((p + degree) % 2)) return false;
    }
    return true;
}

bool GradedMap::is_relation_compatible() const {
    if (!shapes_ok()) return false;
    for (int p : {kEven, kOdd}) {
        IntMatrix moved = comp[p] * source.rels[p];
        if (!cols_in_column_lattice(target.rels[(p + degree) % 2], moved)) return false;
    }
    return true;
}

GradedMap GradedMap::suspended() const {
    return GradedMap(source.suspended(), target.suspended(), degree, {comp[kOdd], comp[kEven]});
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
    int deg = (f.degree + g.degree) % 2;
    std::array<IntMatrix, 2> c;
    for (int p : {kEven, kOdd}) c[p] = g.comp[(p + f.degree) % 2] * f.comp[p];
    return GradedMap(f.source, g.target, deg, std::move(c));
}

GradedMap map_sum(const GradedMap& a, const GradedMap& b) {
    return GradedMap(a.source, a.target, a.degree,
                     {a.comp[kEven] + b.comp[kEven], a.comp[kOdd] + b.comp[kOdd]});
}

GradedMap map_diff(const GradedMap& a, const GradedMap& b) {
    return GradedMap(a.source, a.target, a.degree,
                     {a.comp[kEven] - b.comp[kEven], a.comp[kOdd] - b.comp[kOdd]});
}

GradedMap map_negate(const GradedMap& a) {
    return GradedMap(a.source, a.target, a.degree, {-a.comp[kEven], -a.comp[kOdd]});
}

bool map_is_zero(const GradedMap& a) {
    for (int p : {kEven, kOdd}) {
        if (!cols_in_column_lattice(a.target.rels[(p + a.degree) % 2], a.comp[p])) return false;
    }
    return true;
}

bool maps_equal(const GradedMap& a, const GradedMap& b) {
    if (a.degree != b.degree) return false;
    return map_is_zero(map_diff(a, b));
}

namespace {

// Lattice { x : C x lies in the column lattice of R }, as an HNF column basis.
IntMatrix preimage_lattice(const IntMatrix& c, const IntMatrix& r) {
    IntMatrix stacked = IntMatrix::hstack(c, r);
    IntMatrix ns = nullspace(stacked);
    return hnf_column_basis(ns.row_range(0, c.cols()));
}

}  // namespace

SubgroupResult kernel_of(const GradedMap& f) {
    if (!f.is_relation_compatible()) throw std::invalid_argument("kernel_of: map not relation-compatible");
    SubgroupResult out;
    std::array<IntMatrix, 2> incl;
    for (int p : {kEven, kOdd}) {
        int q = (p + f.degree) % 2;
        // Sublattice of Z^{gens_p(source)} mapping into target relators.
        IntMatrix n = preimage_lattice(f.comp[p], f.target.rels[q]);
        // Relations: combinations of kernel generators that die in the source.
        IntMatrix rels = preimage_lattice(n, f.source.rels[p]);
        out.group.rels[p] = rels;
        incl[p] = n;
    }
    out.inclusion = GradedMap(out.group, f.source, 0, std::move(incl));
    return out;
}

QuotientResult cokernel_of(const GradedMap& f) {
    return cokernel_of_family({f}, f.target);
}

QuotientResult cokernel_of_family(const std::vector<GradedMap>& fs, const GradedGroup& target) {
    QuotientResult out;
    for (int q : {kEven, kOdd}) {
        IntMatrix rels = target.rels[q];
        for (const auto& f : fs) {
            if (!f.is_relation_compatible())
                throw std::invalid_argument("cokernel: map not relation-compatible");
            int p = (q + f.degree) % 2;  // source parity hitting target parity q
            rels = IntMatrix::hstack(rels, f.comp[p]);
        }
        out.group.rels[q] = rels;
    }
    out.projection = GradedMap(target, out.group, 0,
                               {IntMatrix::identity(target.gens(kEven)),
                                IntMatrix::identity(target.gens(kOdd))});
    return out;
}

bool is_injective(const GradedMap& f) { return is_trivial(kernel_of(f).group); }

bool is_surjective(const GradedMap& f) { return is_trivial(cokernel_of(f).group); }

bool is_isomorphism(const GradedMap& f) {
    return f.is_relation_compatible() && is_injective(f) && is_surjective(f);
}

GradedMap invert_isomorphism(const GradedMap& f) {
    std::array<IntMatrix, 2> inv;
    for (int q : {kEven, kOdd}) {
        int p = (q + f.degree) % 2;  // source parity mapping onto target parity q
        auto x = solve_modulo_matrix(f.comp[p], f.target.rels[q],
                                     IntMatrix::identity(f.target.gens(q)));
        if (!x) throw std::invalid_argument("invert_isomorphism: map not surjective");
        inv[q] = *x;
    }
    GradedMap g(f.target, f.source, f.degree, std::move(inv));
    if (!g.is_relation_compatible() || !maps_equal(compose(g, f), GradedMap::identity(f.source)))
        throw std::invalid_argument("invert_isomorphism: map not invertible");
    return g;
}

std::optional<GradedMap> factor_through_kernel(const SubgroupResult& kernel, const GradedMap& f) {
    std::array<IntMatrix, 2> u;
    for (int p : {kEven, kOdd}) {
        int q = (p + f.degree) % 2;
        auto x = solve_modulo_matrix(kernel.inclusion.comp[q], kernel.inclusion.target.rels[q],
                                     f.comp[p]);
        if (!x) return std::nullopt;
        u[p] = *x;
    }
    return GradedMap(f.source, kernel.group, f.degree, std::move(u));
}

bool is_exact_at(const GradedMap& f, const GradedMap& g) {
    if (!map_is_zero(compose(g, f))) return false;
    SubgroupResult k = kernel_of(g);
    auto u = factor_through_kernel(k, f);
    if (!u) return false;
    return is_surjective(*u);
}

}  // namespace homkk

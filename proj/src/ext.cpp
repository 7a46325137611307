#include "homkk/ext.hpp"

#include <memory>
#include <stdexcept>

namespace homkk {

namespace {

// Column-major flattening of an h x k matrix.
std::vector<Int> vec_of(const IntMatrix& m) {
    std::vector<Int> v(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) v[j * m.rows() + i] = m(i, j);
    return v;
}

IntMatrix unvec(const std::vector<Int>& v, std::size_t rows, std::size_t cols) {
    IntMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[j * rows + i];
    return m;
}

}  // namespace

ExtElement ExtElement::zero(const GradedGroup& g, const GradedGroup& h, int degree) {
    ExtElement e;
    e.source = g;
    e.target = h;
    e.degree = degree;
    CanonicalResolution r = canonical_resolution(g);
    for (int p : {kEven, kOdd}) e.vec[p] = IntMatrix(h.gens((p + degree) % 2), r.rank(p));
    return e;
}

ExtElement ExtElement::with_suspended_source() const {
    ExtElement e;
    e.source = source.suspended();
    e.target = target;
    e.degree = (degree + 1) % 2;
    e.vec = {vec[kOdd], vec[kEven]};
    return e;
}

ExtElement ext_add(const ExtElement& a, const ExtElement& b) {
    ExtElement e = a;
    for (int p : {kEven, kOdd}) e.vec[p] = a.vec[p] + b.vec[p];
    return e;
}

ExtElement ext_sub(const ExtElement& a, const ExtElement& b) {
    ExtElement e = a;
    for (int p : {kEven, kOdd}) e.vec[p] = a.vec[p] - b.vec[p];
    return e;
}

ExtElement ext_negate(const ExtElement& a) {
    ExtElement e = a;
    for (int p : {kEven, kOdd}) e.vec[p] = -a.vec[p];
    return e;
}

ExtPresentation::ExtPresentation(const GradedGroup& g, const GradedGroup& h, int degree)
    : source_(g), target_(h), degree_(degree), res_(canonical_resolution(g)) {
    std::vector<IntMatrix> blocks;
    for (int p : {kEven, kOdd}) {
        int q = (p + degree_) % 2;
        std::size_t hh = target_.gens(q);
        std::size_t k = res_.rank(p);
        block_offset_[p] = gens_;
        block_size_[p] = hh * k;
        gens_ += block_size_[p];
        // Per-column target relators, then restrictions of maps off Z^{gens_p}.
        IntMatrix col_rels = IntMatrix::kronecker(IntMatrix::identity(k), target_.rels[q]);
        IntMatrix restr = IntMatrix::kronecker(res_.basis[p].transposed(), IntMatrix::identity(hh));
        blocks.push_back(IntMatrix::hstack(col_rels, restr));
    }
    rels_ = IntMatrix::block_diag(blocks);
}

std::vector<Int> ExtPresentation::encode(const ExtElement& e) const {
    std::vector<Int> out(gens_);
    for (int p : {kEven, kOdd}) {
        std::vector<Int> block = vec_of(e.vec[p]);
        if (block.size() != block_size_[p])
            throw std::invalid_argument("ExtPresentation::encode: shape mismatch");
        for (std::size_t i = 0; i < block.size(); ++i) out[block_offset_[p] + i] = block[i];
    }
    return out;
}

ExtElement ExtPresentation::decode(const std::vector<Int>& coords) const {
    if (coords.size() != gens_) throw std::invalid_argument("ExtPresentation::decode: size mismatch");
    ExtElement e;
    e.source = source_;
    e.target = target_;
    e.degree = degree_;
    for (int p : {kEven, kOdd}) {
        int q = (p + degree_) % 2;
        std::size_t hh = target_.gens(q);
        std::size_t k = res_.rank(p);
        std::vector<Int> block(coords.begin() + static_cast<long>(block_offset_[p]),
                               coords.begin() + static_cast<long>(block_offset_[p] + block_size_[p]));
        e.vec[p] = unvec(block, hh, k);
    }
    return e;
}

bool ExtPresentation::is_zero_class(const ExtElement& e) const {
    return in_column_lattice(rels_, encode(e));
}

bool ExtPresentation::classes_equal(const ExtElement& a, const ExtElement& b) const {
    return is_zero_class(ext_sub(a, b));
}

namespace {

// The lattice of relation-compatible matrices C : Z^g -> Z^h with
// C . R_G inside the column lattice of R_H, flattened column major.
IntMatrix compatible_matrix_lattice(const IntMatrix& r_g, std::size_t g, const IntMatrix& r_h,
                                    std::size_t h) {
    if (g * h == 0) return IntMatrix(g * h, 0);
    IntMatrix cond = IntMatrix::kronecker(r_g.transposed(), IntMatrix::identity(h));
    IntMatrix slack = IntMatrix::kronecker(IntMatrix::identity(r_g.cols()), r_h);
    IntMatrix ns = nullspace(IntMatrix::hstack(cond, -slack));
    return hnf_column_basis(ns.row_range(0, g * h));
}

// Relations among the columns of N modulo the column lattice of L.
IntMatrix relations_modulo(const IntMatrix& n, const IntMatrix& l) {
    IntMatrix ns = nullspace(IntMatrix::hstack(n, -l));
    return hnf_column_basis(ns.row_range(0, n.cols()));
}

struct HomBlock {
    IntMatrix basis;  // columns: flattened compatible matrices
    IntMatrix rels;
    std::size_t h, g;
};

HomBlock hom_block(const GradedGroup& gg, const GradedGroup& hh, int p, int degree) {
    int q = (p + degree) % 2;
    HomBlock b;
    b.g = gg.gens(p);
    b.h = hh.gens(q);
    b.basis = compatible_matrix_lattice(gg.rels[p], b.g, hh.rels[q], b.h);
    IntMatrix denom = IntMatrix::kronecker(IntMatrix::identity(b.g), hh.rels[q]);
    b.rels = relations_modulo(b.basis, denom);
    return b;
}

}  // namespace

HomGroupResult hom_group(const GradedGroup& g, const GradedGroup& h) {
    auto blocks = std::make_shared<std::array<std::array<HomBlock, 2>, 2>>();
    HomGroupResult out;
    for (int d : {kEven, kOdd}) {
        for (int p : {kEven, kOdd}) (*blocks)[d][p] = hom_block(g, h, p, d);
        out.group.rels[d] =
            IntMatrix::block_diag({(*blocks)[d][kEven].rels, (*blocks)[d][kOdd].rels});
    }
    GradedGroup src = g, tgt = h;
    out.decode = [blocks, src, tgt](int parity, const std::vector<Int>& coords) {
        const auto& bs = (*blocks)[parity];
        std::size_t n0 = bs[kEven].basis.cols();
        std::array<IntMatrix, 2> comp;
        for (int p : {kEven, kOdd}) {
            const HomBlock& b = bs[p];
            std::size_t off = p == kEven ? 0 : n0;
            std::vector<Int> y(coords.begin() + static_cast<long>(off),
                               coords.begin() + static_cast<long>(off + b.basis.cols()));
            comp[p] = unvec(b.basis.apply(y), b.h, b.g);
        }
        return GradedMap(src, tgt, parity, std::move(comp));
    };
    out.encode = [blocks, tgt](const GradedMap& f) -> std::optional<std::vector<Int>> {
        const auto& bs = (*blocks)[f.degree];
        std::vector<Int> out_coords;
        for (int p : {kEven, kOdd}) {
            const HomBlock& b = bs[p];
            int q = (p + f.degree) % 2;
            IntMatrix denom = IntMatrix::kronecker(IntMatrix::identity(b.g), tgt.rels[q]);
            auto y = solve_modulo(b.basis, denom, vec_of(f.comp[p]));
            if (!y) return std::nullopt;
            out_coords.insert(out_coords.end(), y->begin(), y->end());
        }
        return out_coords;
    };
    return out;
}

ExtGroupResult ext_group(const GradedGroup& g, const GradedGroup& h) {
    auto even = std::make_shared<ExtPresentation>(g, h, kEven);
    auto odd = std::make_shared<ExtPresentation>(g, h, kOdd);
    ExtGroupResult out;
    out.group.rels[kEven] = even->relators();
    out.group.rels[kOdd] = odd->relators();
    out.decode = [even, odd](int parity, const std::vector<Int>& coords) {
        return parity == kEven ? even->decode(coords) : odd->decode(coords);
    };
    out.encode = [even, odd](const ExtElement& e) {
        return e.degree == kEven ? even->encode(e) : odd->encode(e);
    };
    return out;
}

ExtElement push_ext(const ExtElement& e, const GradedMap& h) {
    ExtElement out;
    out.source = e.source;
    out.target = h.target;
    out.degree = (e.degree + h.degree) % 2;
    for (int p : {kEven, kOdd}) out.vec[p] = h.comp[(p + e.degree) % 2] * e.vec[p];
    return out;
}

ExtElement pull_ext(const ExtElement& e, const GradedMap& g) {
    CanonicalResolution rsrc = canonical_resolution(g.source);
    CanonicalResolution rtgt = canonical_resolution(g.target);
    ExtElement out;
    out.source = g.source;
    out.target = e.target;
    out.degree = (e.degree + g.degree) % 2;
    for (int p : {kEven, kOdd}) {
        int q = (p + g.degree) % 2;
        IntMatrix moved = g.comp[p] * rsrc.basis[p];
        auto lift = solve_linear_matrix(rtgt.basis[q], moved);
        if (!lift) throw std::invalid_argument("pull_ext: no chain lift (map not relation-compatible)");
        out.vec[p] = e.vec[q] * *lift;
    }
    return out;
}

ExtElement transport_ext(const FreeResolution& r, const std::array<IntMatrix, 2>& raw,
                         const GradedGroup& target, int degree) {
    CanonicalResolution canonical = canonical_resolution(r.group);
    ResolutionComparison cmp = compare_with_canonical(canonical, r);
    ExtElement out;
    out.source = r.group;
    out.target = target;
    out.degree = degree;
    for (int p : {kEven, kOdd}) out.vec[p] = raw[p] * cmp.level1[p];
    return out;
}

ExtElement extension_class(const GradedMap& iota, const GradedMap& pi) {
    if (!iota.is_relation_compatible() || !pi.is_relation_compatible())
        throw std::invalid_argument("extension_class: maps not relation-compatible");
    if (!is_injective(iota)) throw std::invalid_argument("extension_class: iota not injective");
    if (!is_surjective(pi)) throw std::invalid_argument("extension_class: pi not surjective");
    if (!is_exact_at(iota, pi)) throw std::invalid_argument("extension_class: not exact at the middle");

    const GradedGroup& c = pi.target;
    const GradedGroup& a = iota.source;
    const GradedGroup& e = pi.source;
    int degree = (iota.degree + pi.degree) % 2;
    CanonicalResolution res = canonical_resolution(c);

    ExtElement out;
    out.source = c;
    out.target = a;
    out.degree = degree;
    for (int p : {kEven, kOdd}) {
        int pe = (p + pi.degree) % 2;  // parity in E covering C_p
        int pa = (pe + iota.degree) % 2;
        auto cover_lift = solve_modulo_matrix(pi.comp[pe], c.rels[p],
                                              IntMatrix::identity(c.gens(p)));
        if (!cover_lift) throw std::logic_error("extension_class: cover lift failed");
        IntMatrix w = *cover_lift * res.basis[p];
        auto back = solve_modulo_matrix(iota.comp[pa], e.rels[pe], w);
        if (!back) throw std::logic_error("extension_class: relator lift escaped the image");
        out.vec[p] = *back;
    }
    return out;
}

BuiltExtension build_extension(const ExtElement& e) {
    const GradedGroup& a = e.target;
    const GradedGroup& c = e.source;
    int d = e.degree;
    CanonicalResolution res = canonical_resolution(c);

    BuiltExtension out;
    std::array<IntMatrix, 2> iota_comp, pi_comp;
    for (int q : {kEven, kOdd}) {
        int p = (q + d) % 2;  // C-parity covered by E_q
        std::size_t ga = a.gens(q), gc = c.gens(p), k = res.rank(p);
        IntMatrix rels(ga + gc, a.rels[q].cols() + k);
        for (std::size_t i = 0; i < ga; ++i)
            for (std::size_t j = 0; j < a.rels[q].cols(); ++j) rels(i, j) = a.rels[q](i, j);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < ga; ++i) rels(i, a.rels[q].cols() + j) = e.vec[p](i, j);
            for (std::size_t i = 0; i < gc; ++i)
                rels(ga + i, a.rels[q].cols() + j) = -res.basis[p](i, j);
        }
        out.middle.rels[q] = rels;

        IntMatrix ji(ga + gc, ga);
        for (std::size_t i = 0; i < ga; ++i) ji(i, i) = 1;
        iota_comp[q] = ji;
        IntMatrix jp(gc, ga + gc);
        for (std::size_t i = 0; i < gc; ++i) jp(i, ga + i) = 1;
        pi_comp[q] = jp;
    }
    out.iota = GradedMap(a, out.middle, 0, std::move(iota_comp));
    out.pi = GradedMap(out.middle, c, d, std::move(pi_comp));
    return out;
}

bool has_splitting(const GradedMap& iota, const GradedMap& pi) {
    (void)iota;
    const GradedGroup& c = pi.target;
    const GradedGroup& e = pi.source;
    int dp = pi.degree;

    SubgroupResult ker = kernel_of(pi);
    std::array<std::vector<std::vector<Int>>, 2> fiber;  // kernel elements in E coords, per E-parity
    for (int pe : {kEven, kOdd}) {
        if (!component_order(ker.group, pe))
            throw std::invalid_argument("has_splitting: kernel not finite");
        for (const auto& kelem : enumerate_elements(ker.group, pe))
            fiber[pe].push_back(ker.inclusion.comp[pe].apply(kelem));
    }

    // One slot per generator of C, each ranging over the fiber above it.
    struct Slot {
        int c_parity;
        std::size_t index;             // generator index within its parity
        std::vector<Int> base;         // particular preimage
        const std::vector<std::vector<Int>>* offsets;
    };
    std::vector<Slot> slots;
    for (int p : {kEven, kOdd}) {
        if (!component_order(c, p)) throw std::invalid_argument("has_splitting: quotient not finite");
        int pe = (p + dp) % 2;
        for (std::size_t j = 0; j < c.gens(p); ++j) {
            std::vector<Int> target_gen(c.gens(p));
            target_gen[j] = 1;
            auto x0 = solve_modulo(pi.comp[pe], c.rels[p], target_gen);
            if (!x0) throw std::logic_error("has_splitting: pi not surjective");
            slots.push_back({p, j, *x0, &fiber[pe]});
        }
    }

    std::vector<std::size_t> odo(slots.size(), 0);
    for (;;) {
        std::array<IntMatrix, 2> comp = {IntMatrix(e.gens((kEven + dp) % 2), c.gens(kEven)),
                                         IntMatrix(e.gens((kOdd + dp) % 2), c.gens(kOdd))};
        for (std::size_t s = 0; s < slots.size(); ++s) {
            const Slot& sl = slots[s];
            const auto& off = (*sl.offsets)[odo[s]];
            for (std::size_t i = 0; i < sl.base.size(); ++i)
                comp[sl.c_parity](i, sl.index) = sl.base[i] + off[i];
        }
        GradedMap s(c, e, dp, std::move(comp));
        if (s.is_relation_compatible() && maps_equal(compose(pi, s), GradedMap::identity(c)))
            return true;

        std::size_t i = 0;
        while (i < slots.size()) {
            if (++odo[i] < slots[i].offsets->size()) break;
            odo[i] = 0;
            ++i;
        }
        if (i == slots.size()) return false;
    }
}

}  // namespace homkk

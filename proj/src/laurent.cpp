#include "homkk/laurent.hpp"

#include <memory>
#include <stdexcept>

namespace homkk {

bool laurent_valid(const LaurentModule& m) {
    if (m.action.degree != 0 || m.action_inverse.degree != 0) return false;
    if (!m.action.is_relation_compatible() || !m.action_inverse.is_relation_compatible())
        return false;
    GradedMap id = GradedMap::identity(m.group);
    return maps_equal(compose(m.action, m.action_inverse), id) &&
           maps_equal(compose(m.action_inverse, m.action), id);
}

bool zobject_valid(const ZObject& z) {
    if (!laurent_valid(z.module)) return false;
    if (z.odd_part.degree != 1) return false;
    UctClass t = zobject_uct(z);
    return uct_well_formed(t);
}

UctClass zobject_uct(const ZObject& z) { return {z.module.action, z.odd_part}; }

std::vector<Int> LaurentExtGroup::encode(const ExtElement& e) const {
    int p = (e.degree + 1) % 2;
    return pres[p]->encode(e);
}

ExtElement LaurentExtGroup::decode(int parity, const std::vector<Int>& coords) const {
    return pres[parity]->decode(coords);
}

LaurentExtGroup laurent_ext(const GradedGroup& a, const GradedGroup& b) {
    LaurentExtGroup out;
    for (int p : {kEven, kOdd}) {
        out.pres[p] = std::make_shared<ExtPresentation>(a, b, (p + 1) % 2);
        out.group.rels[p] = out.pres[p]->relators();
    }
    return out;
}

GradedMap gamma_map(const LaurentModule& a, const LaurentModule& b) {
    LaurentExtGroup ext = laurent_ext(a.group, b.group);
    std::array<IntMatrix, 2> comp;
    for (int p : {kEven, kOdd}) {
        std::size_t n = ext.group.gens(p);
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Int> unit(n);
            unit[i] = 1;
            ExtElement t = ext.decode(p, unit);
            ExtElement image = ext_sub(pull_ext(t, a.action), push_ext(t, b.action));
            std::vector<Int> col = ext.encode(image);
            for (std::size_t r = 0; r < n; ++r) m(r, i) = col[r];
        }
        comp[p] = std::move(m);
    }
    return GradedMap(ext.group, ext.group, 0, std::move(comp));
}

std::vector<Int> LaurentExt2::encode_class(const ExtElement& e) const { return ext.encode(e); }

bool LaurentExt2::class_is_zero(const ExtElement& e) const {
    int p = (e.degree + 1) % 2;
    return element_is_zero(group, p, encode_class(e));
}

LaurentExt2 ext2_laurent(const LaurentModule& a, const LaurentModule& b) {
    LaurentExt2 out;
    out.ext = laurent_ext(a.group, b.group);
    out.gamma = gamma_map(a, b);
    QuotientResult q = cokernel_of(out.gamma);
    out.group = q.group;
    out.projection = q.projection;
    return out;
}

LaurentObstruction obstruction_z(const ZObject& obj) {
    if (!zobject_valid(obj)) throw std::invalid_argument("obstruction_z: invalid Z-object");
    LaurentObstruction out{ext2_laurent(obj.module, obj.module), {}, {}, false};
    out.representative = ext_negate(pull_ext(obj.odd_part, obj.module.action_inverse));
    out.coords = out.ext2.encode_class(out.representative);
    out.is_zero = out.ext2.class_is_zero(out.representative);
    return out;
}

namespace {

void require_intertwiner(const ZObject& a, const ZObject& b, const GradedMap& t0) {
    if (t0.degree != 0) throw std::invalid_argument("t0 must be a degree-0 map");
    if (!t0.is_relation_compatible() || !is_isomorphism(t0))
        throw std::invalid_argument("t0 is not an isomorphism");
    if (!maps_equal(compose(t0, a.module.action), compose(b.module.action, t0)))
        throw std::invalid_argument("t0 does not intertwine the actions");
}

ExtElement relative_representative(const ZObject& a, const ZObject& b, const GradedMap& t0) {
    return ext_sub(pull_ext(b.odd_part, t0), push_ext(a.odd_part, t0));
}

}  // namespace

LaurentObstruction relative_obstruction_z(const ZObject& a, const ZObject& b, const GradedMap& t0) {
    if (!zobject_valid(a) || !zobject_valid(b))
        throw std::invalid_argument("relative_obstruction_z: invalid Z-object");
    require_intertwiner(a, b, t0);
    LaurentObstruction out{ext2_laurent(a.module, b.module), {}, {}, false};
    out.representative = relative_representative(a, b, t0);
    out.coords = out.ext2.encode_class(out.representative);
    out.is_zero = out.ext2.class_is_zero(out.representative);
    return out;
}

ZDecision equivalent_z(const ZObject& a, const ZObject& b, const GradedMap& t0) {
    if (!zobject_valid(a) || !zobject_valid(b))
        throw std::invalid_argument("equivalent_z: invalid Z-object");
    require_intertwiner(a, b, t0);
    LaurentExtGroup ext = laurent_ext(a.module.group, b.module.group);
    GradedMap gamma = gamma_map(a.module, b.module);
    ExtElement rhs = relative_representative(a, b, t0);
    std::vector<Int> enc = ext.encode(rhs);

    auto x = solve_modulo(gamma.comp[kEven], ext.group.rels[kEven], enc);
    ZDecision out;
    if (x) {
        ExtElement witness = ext.decode(kEven, *x);
        // re-verify the witness equation exactly
        ExtElement lhs = ext_sub(pull_ext(witness, a.module.action),
                                 push_ext(witness, b.module.action));
        if (!ext.pres[kEven]->classes_equal(lhs, rhs))
            throw std::logic_error("equivalent_z: witness failed re-verification");
        out.equivalent = true;
        out.witness = witness;
        return out;
    }
    out.equivalent = false;
    out.obstruction = relative_obstruction_z(a, b, t0);
    return out;
}

PvTerms pv_terms(const ZObject& a, const ZObject& b) {
    if (!zobject_valid(a) || !zobject_valid(b))
        throw std::invalid_argument("pv_terms: invalid Z-object");
    PvTerms out;

    HomGroupResult hom = hom_group(a.module.group, b.module.group);
    std::array<IntMatrix, 2> hcomp;
    for (int d : {kEven, kOdd}) {
        std::size_t n = hom.group.gens(d);
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Int> unit(n);
            unit[i] = 1;
            GradedMap x = hom.decode(d, unit);
            GradedMap y = map_diff(compose(b.module.action_inverse, compose(x, a.module.action)), x);
            auto col = hom.encode(y);
            if (!col) throw std::logic_error("pv_terms: image map failed to encode");
            for (std::size_t r = 0; r < n; ++r) m(r, i) = (*col)[r];
        }
        hcomp[d] = std::move(m);
    }
    GradedMap hmap(hom.group, hom.group, 0, std::move(hcomp));
    out.hom_kernel = kernel_of(hmap).group;
    out.hom_cokernel = cokernel_of(hmap).group;

    ExtGroupResult ext = ext_group(a.module.group, b.module.group);
    std::array<IntMatrix, 2> ecomp;
    for (int d : {kEven, kOdd}) {
        std::size_t n = ext.group.gens(d);
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Int> unit(n);
            unit[i] = 1;
            ExtElement x = ext.decode(d, unit);
            ExtElement y =
                ext_sub(pull_ext(push_ext(x, b.module.action_inverse), a.module.action), x);
            std::vector<Int> col = ext.encode(y);
            for (std::size_t r = 0; r < n; ++r) m(r, i) = col[r];
        }
        ecomp[d] = std::move(m);
    }
    GradedMap emap(ext.group, ext.group, 0, std::move(ecomp));
    out.ext_kernel = kernel_of(emap).group;
    out.ext_cokernel = cokernel_of(emap).group;
    return out;
}

std::optional<GradedMap> find_intertwiner_z(const ZObject& a, const ZObject& b,
                                            unsigned long max_hom_size) {
    HomGroupResult hom = hom_group(a.module.group, b.module.group);
    auto order = component_order(hom.group, kEven);
    if (!order || *order > max_hom_size) return std::nullopt;
    for (const auto& coords : enumerate_elements(hom.group, kEven)) {
        GradedMap t0 = hom.decode(kEven, coords);
        if (!is_isomorphism(t0)) continue;
        if (maps_equal(compose(t0, a.module.action), compose(b.module.action, t0))) return t0;
    }
    return std::nullopt;
}

}  // namespace homkk

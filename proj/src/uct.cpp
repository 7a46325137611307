#include "homkk/uct.hpp"

#include <stdexcept>

namespace homkk {

UctClass UctClass::identity(const GradedGroup& g) {
    return {GradedMap::identity(g), ExtElement::zero(g, g, 1)};
}

UctClass UctClass::from_even(const GradedMap& f) {
    return {f, ExtElement::zero(f.source, f.target, (f.degree + 1) % 2)};
}

bool uct_well_formed(const UctClass& t) {
    if (!t.even.is_relation_compatible()) return false;
    if (t.odd.degree != (t.even.degree + 1) % 2) return false;
    CanonicalResolution r = canonical_resolution(t.even.source);
    for (int p : {kEven, kOdd}) {
        if (t.odd.vec[p].cols() != r.rank(p)) return false;
        if (t.odd.vec[p].rows() != t.even.target.gens((p + t.odd.degree) % 2)) return false;
    }
    return true;
}

UctClass uct_compose(const UctClass& s, const UctClass& t) {
    UctClass out;
    out.even = compose(s.even, t.even);
    out.odd = ext_add(push_ext(t.odd, s.even), pull_ext(s.odd, t.even));
    return out;
}

std::optional<UctClass> uct_invert(const UctClass& t) {
    if (!is_isomorphism(t.even)) return std::nullopt;
    GradedMap inv = invert_isomorphism(t.even);
    UctClass out;
    out.even = inv;
    out.odd = ext_negate(pull_ext(push_ext(t.odd, inv), inv));
    return out;
}

bool uct_is_identity(const UctClass& t) {
    if (!maps_equal(t.even, GradedMap::identity(t.even.source))) return false;
    ExtPresentation pres(t.odd.source, t.odd.target, t.odd.degree);
    return pres.is_zero_class(t.odd);
}

UctClass uct_conjugate(const UctClass& t, const UctClass& u) {
    auto uinv = uct_invert(u);
    if (!uinv) throw std::invalid_argument("uct_conjugate: u not invertible");
    return uct_compose(uct_compose(u, t), *uinv);
}

}  // namespace homkk

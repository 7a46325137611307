#pragma once

#include "homkk/ext.hpp"

namespace homkk {

/// A KK-class through the split UCT: a parity-preserving Hom part together
/// with a parity-reversing Ext part. For a class of total degree d, the even
/// part is a degree-d map and the odd part a degree-(d+1) Ext class.
/// Products of two odd parts vanish.
struct UctClass {
    GradedMap even;
    ExtElement odd;

    int degree() const { return even.degree; }
    static UctClass identity(const GradedGroup& g);
    static UctClass from_even(const GradedMap& f);
};

bool uct_well_formed(const UctClass& t);

/// s . t with the nilpotent odd multiplication:
/// even = s0 t0, odd = s0 . t1 + s1 . t0 (odd.odd contributes nothing).
UctClass uct_compose(const UctClass& s, const UctClass& t);

/// Defined iff the even part is an isomorphism; then
/// inverse = (t0^-1, -(t0^-1) t1 (t0^-1)).
std::optional<UctClass> uct_invert(const UctClass& t);

bool uct_is_identity(const UctClass& t);

/// u . t . u^-1 for invertible u with source t.source.
UctClass uct_conjugate(const UctClass& t, const UctClass& u);

}  // namespace homkk

#pragma once

#include <memory>

#include "homkk/uct.hpp"

namespace homkk {

/// Z/2-graded module over Z[x,x^-1] at the invariant level: a graded group
/// with an invertible degree-0 action.
struct LaurentModule {
    GradedGroup group;
    GradedMap action;          // alpha^0
    GradedMap action_inverse;  // (alpha^0)^-1, supplied and validated
};

/// Validity: both maps relation-compatible degree-0 endomorphisms composing to
/// the identity on both sides.
bool laurent_valid(const LaurentModule& m);

/// A Z-action object: module plus the parity-reversing part of the acting
/// KK-class, alpha^1 in Ext(Sigma K, K) (a degree-1 ExtElement K -> K).
struct ZObject {
    LaurentModule module;
    ExtElement odd_part;
};

bool zobject_valid(const ZObject& z);
UctClass zobject_uct(const ZObject& z);  // (alpha^0, alpha^1)

/// The graded group Ext(Sigma K_A, K_B) with both parities materialized:
/// parity p holds the degree-(p+1) classes K_A -> K_B.
struct LaurentExtGroup {
    GradedGroup group;
    std::shared_ptr<ExtPresentation> pres[2];  // pres[p] for parity-p block

    std::vector<Int> encode(const ExtElement& e) const;
    ExtElement decode(int parity, const std::vector<Int>& coords) const;
};
LaurentExtGroup laurent_ext(const GradedGroup& a, const GradedGroup& b);

/// The commutator-style map t |-> t . alpha^0 - beta^0 . t on Ext(Sigma K_A, K_B),
/// as a degree-0 endomorphism of the flat presentation (one block per parity).
/// For A = B this is the gamma of the Z-action obstruction theory.
GradedMap gamma_map(const LaurentModule& a, const LaurentModule& b);

/// Ext^2 over the Laurent ring as the cokernel of gamma, with an encoder that
/// projects Ext classes to cokernel elements.
struct LaurentExt2 {
    LaurentExtGroup ext;
    GradedMap gamma;
    GradedGroup group;      // the cokernel
    GradedMap projection;   // ext.group -> group

    std::vector<Int> encode_class(const ExtElement& e) const;
    bool class_is_zero(const ExtElement& e) const;
};
LaurentExt2 ext2_laurent(const LaurentModule& a, const LaurentModule& b);

/// Obstruction class of a Z-action: image of -alpha^1 (alpha^0)^-1 in
/// ext2_laurent(obj, obj).
struct LaurentObstruction {
    LaurentExt2 ext2;
    ExtElement representative;
    std::vector<Int> coords;  // in the cokernel presentation
    bool is_zero;
};
LaurentObstruction obstruction_z(const ZObject& obj);

/// Relative obstruction of a module isomorphism t0 : K_A -> K_B:
/// class of beta^1 . t0 - t0 . alpha^1 in the mixed cokernel.
LaurentObstruction relative_obstruction_z(const ZObject& a, const ZObject& b, const GradedMap& t0);

/// Equivalence decision: a witness t^1 with
/// t^1 . alpha^0 - beta^0 . t^1 = beta^1 . t0 - t0 . alpha^1, or the nonzero
/// obstruction class.
struct ZDecision {
    bool equivalent;
    std::optional<ExtElement> witness;        // set when equivalent
    std::optional<LaurentObstruction> obstruction;  // set when not
};
ZDecision equivalent_z(const ZObject& a, const ZObject& b, const GradedMap& t0);

/// Kernel and cokernel terms of the Pimsner-Voiculescu style map
/// x |-> (beta^0)^-1 . x . alpha^0 - x on Hom and on Ext.
struct PvTerms {
    GradedGroup hom_kernel, hom_cokernel, ext_kernel, ext_cokernel;
};
PvTerms pv_terms(const ZObject& a, const ZObject& b);

/// Optional exhaustive search for an intertwining isomorphism t0, only for
/// small finite modules (|Hom(K_A,K_B)| bounded by max_hom_size elements).
std::optional<GradedMap> find_intertwiner_z(const ZObject& a, const ZObject& b,
                                            unsigned long max_hom_size = 1u << 16);

}  // namespace homkk

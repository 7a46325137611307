#pragma once

#include <functional>
#include <optional>

#include "homkk/resolution.hpp"

namespace homkk {

/// A class in Ext^1(G, H), encoded against the canonical resolution of G.
/// vec[p] maps the resolution kernel Z^{k_p} of the parity-p part of G into
/// parity p+degree of H: a target.gens((p+degree)%2) x k_p matrix whose
/// columns are target coordinate vectors.
///
/// Degree 1 pairs G_{p} with H_{p+1}; these are the parity-reversing classes
/// in Ext(Sigma G, H) that carry alpha^1, beta^1, t^1.
struct ExtElement {
    GradedGroup source, target;
    int degree = 1;
    std::array<IntMatrix, 2> vec;

    static ExtElement zero(const GradedGroup& g, const GradedGroup& h, int degree);
    /// Reinterpret as a class on the suspended source (degree flips, vectors swap).
    ExtElement with_suspended_source() const;
};

ExtElement ext_add(const ExtElement& a, const ExtElement& b);
ExtElement ext_sub(const ExtElement& a, const ExtElement& b);
ExtElement ext_negate(const ExtElement& a);

/// The group  (+)_p Ext^1(G_p, H_{p+degree})  as one flat integer presentation.
/// Generators are the entries of the vec matrices (even block first, column
/// major inside a block); relators are per-column target relators together
/// with restrictions of maps off the whole cover Z^{gens_p}.
class ExtPresentation {
public:
    ExtPresentation(const GradedGroup& g, const GradedGroup& h, int degree);

    const GradedGroup& source() const { return source_; }
    const GradedGroup& target() const { return target_; }
    int degree() const { return degree_; }
    std::size_t num_gens() const { return gens_; }
    const IntMatrix& relators() const { return rels_; }

    std::vector<Int> encode(const ExtElement& e) const;
    ExtElement decode(const std::vector<Int>& coords) const;

    bool is_zero_class(const ExtElement& e) const;
    bool classes_equal(const ExtElement& a, const ExtElement& b) const;

    /// Invariant factors of the Ext group.
    std::vector<Int> factors() const { return invariant_factors(rels_); }

private:
    GradedGroup source_, target_;
    int degree_;
    CanonicalResolution res_;
    std::array<std::size_t, 2> block_size_, block_offset_;
    std::size_t gens_ = 0;
    IntMatrix rels_;
};

/// Graded Hom and Ext groups with decoders, per the split UCT bookkeeping:
/// the parity-p component collects maps/classes of degree p.
struct HomGroupResult {
    GradedGroup group;
    std::function<GradedMap(int parity, const std::vector<Int>&)> decode;
    std::function<std::optional<std::vector<Int>>(const GradedMap&)> encode;
};
struct ExtGroupResult {
    GradedGroup group;
    std::function<ExtElement(int parity, const std::vector<Int>&)> decode;
    std::function<std::vector<Int>(const ExtElement&)> encode;
};

HomGroupResult hom_group(const GradedGroup& g, const GradedGroup& h);
ExtGroupResult ext_group(const GradedGroup& g, const GradedGroup& h);

/// Postcompose: class of h . e in Ext(G, H').
ExtElement push_ext(const ExtElement& e, const GradedMap& h);
/// Precompose: class of e . g in Ext(G', H), via a chain-map lift of g between
/// canonical resolutions. The lift is unique up to homotopy, so the class is
/// independent of the choice.
ExtElement pull_ext(const ExtElement& e, const GradedMap& g);

/// Transport a class encoded against an arbitrary length-1 free resolution of
/// G to the canonical encoding. raw[p]: target.gens((p+degree)%2) x r1[p].
ExtElement transport_ext(const FreeResolution& r, const std::array<IntMatrix, 2>& raw,
                         const GradedGroup& target, int degree);

/// Class of a short exact sequence  A >--iota--> E --pi-->> C  in
/// Ext(C, A) of degree (deg iota + deg pi) mod 2. Verifies exactness.
ExtElement extension_class(const GradedMap& iota, const GradedMap& pi);

/// Middle group of the extension of C by A with class e: the pushout
/// (A (+) Z^gens(C)) / <(e(z), -B z)>. Recovers e under extension_class.
struct BuiltExtension {
    GradedGroup middle;
    GradedMap iota;  // A -> E
    GradedMap pi;    // E -> C
};
BuiltExtension build_extension(const ExtElement& e);

/// Exhaustive splitting search for pi : E ->> C with finite small groups:
/// looks for s : C -> E with pi . s = id. Degree of s matches pi's.
bool has_splitting(const GradedMap& iota, const GradedMap& pi);

}  // namespace homkk

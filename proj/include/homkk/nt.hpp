#pragma once

#include <map>
#include <string>

#include "homkk/poset.hpp"

namespace homkk {

/// Locally closed subset [a,b] of the totally ordered space {1,...,n}.
/// a = b+1 encodes the empty sentinel M[a+1,a] = 0.
struct Interval {
    int a = 1, b = 1;
    bool operator==(const Interval&) const = default;
    auto operator<=>(const Interval&) const = default;
    bool empty() const { return a > b; }
    std::string key() const { return "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }
};

/// All intervals 1 <= a <= b <= n in (a, b)-lexicographic order.
std::vector<Interval> all_intervals(int n);
std::size_t interval_index(int n, const Interval& i);

enum class NTTau { Even, Odd, Zero };
int tau_parity(NTTau t);  // 0 for Even, 1 for Odd; Zero is an error

/// The natural-transformation group NT([a,b], [c,d]): Z in even degree when
/// c <= a <= d <= b, Z in odd degree when a+1 <= c <= b+1 <= d, else 0.
NTTau tau(int n, const Interval& src, const Interval& dst);

/// Composability of generators: tau(mid,dst) . tau(src,mid) = tau(src,dst) != 0
/// iff one of the three inequality chains holds.
bool tau_compose_nonzero(int n, const Interval& src, const Interval& mid, const Interval& dst);

/// Module over the NT ring: one graded group per interval plus the generating
/// transformations i (ideal inclusion), r (restriction) and delta (boundary,
/// degree 1) subject to the square relations.
struct NTModule {
    int n = 2;
    std::vector<GradedGroup> slot;                  // per interval index
    std::vector<std::optional<GradedMap>> gen_i;    // at [a,b], a+1 <= b:  M[a+1,b] -> M[a,b]
    std::vector<std::optional<GradedMap>> gen_r;    // at [a,b], b < n:     M[a,b+1] -> M[a,b]
    std::vector<std::optional<GradedMap>> gen_delta;  // at [a,n], a >= 2:  M[1,a-1] -> M[a,n]

    const GradedGroup& at(const Interval& i) const { return slot[interval_index(n, i)]; }
    static NTModule zero_shaped(int n);  // all slots trivial, all maps zero
};

struct NTViolation {
    std::string what;
};
std::optional<NTViolation> nt_validate(const NTModule& m);

/// The transformation tau as a concrete map, composed along the canonical
/// path: i-chain to [1,b], one delta when odd, r-chain, then i-chain.
GradedMap tau_apply(const NTModule& m, const Interval& src, const Interval& dst);

struct NTExactnessFailure {
    int a, b, c;
    int position;  // 0: at M[a,c], 1: at M[a,b-1], 2: at M[b,c]
};
/// Exactness of every six-term sequence M[b,c] -> M[a,c] -> M[a,b-1] -> ...
/// for 1 <= a < b <= c <= n.
std::optional<NTExactnessFailure> check_exact(const NTModule& m);

/// Semisimple quotient: the slot modulo the images of the shortest proper
/// transformations into it.
QuotientResult ss_quotient(const NTModule& m, const Interval& i);

/// Free graded ranks per interval attached to the intervals; the module
/// FK((+) R_[a,b] (x) Q[a,b]) has slot [a,b] = (+)_{[c,d] -> [a,b]} Q[c,d]
/// with parity shifts and tau-composition structure maps.
struct NTPattern {
    int n = 2;
    std::vector<std::array<std::size_t, 2>> ranks;  // native ranks per interval
};

struct PatternPart {
    std::size_t source;  // interval index of the summand
    int shift;           // parity of tau(source -> slot interval)
};

/// The assembled free module of a pattern with summand bookkeeping.
struct PatternLayout {
    NTPattern pattern;
    NTModule module;
    std::vector<std::vector<PatternPart>> parts;                   // per slot
    std::vector<std::vector<std::array<std::size_t, 2>>> offsets;  // per slot/part, ambient

    /// The action of tau(src -> dst) on the pattern module: identity blocks on
    /// the summands whose composition is nonzero.
    GradedMap tau_action(const Interval& src, const Interval& dst) const;
};
PatternLayout pattern_layout(const NTPattern& p);

/// Length-1 resolution data: free covers Q0[a,b] of the slots with lifts
/// f[a,b], and sections phi with components phi[a,b]^{[c,d]} : Q1[a,b] -> Q0[c,d]
/// of the parity of tau([c,d] -> [a,b]).
struct NTResolution {
    int n = 2;
    std::vector<std::array<std::size_t, 2>> q0, q1;
    std::vector<GradedMap> f;  // free Q0 group -> M slot, degree 0
    // key (subscript interval [a,b], superscript interval [c,d])
    std::map<std::pair<std::size_t, std::size_t>, GradedMap> phi;

    GradedGroup q0_group(std::size_t idx) const;
    GradedGroup q1_group(std::size_t idx) const;
};

/// Algorithmic construction per the semisimple-cover recipe: Q0 covers the
/// slots, N = slotwise kernel of FK(f), Q1[a,b] := N[a,b]_ss (verified free),
/// sections found through the Smith change of basis.
NTResolution build_resolution(const NTModule& m);

/// Same construction from user-supplied slot covers f[a,b] : Q0[a,b] -> M[a,b]
/// (free sources, degree 0, jointly surjective onto the semisimple quotients).
/// The induced obstruction class does not depend on this choice.
NTResolution build_resolution_with_cover(const NTModule& m, std::vector<GradedMap> covers);

struct NTResolutionFailure {
    std::string what;
};
/// Checks the vanishing identity sum tau f phi = 0 at every interval and the
/// exactness of the per-interval free resolutions at middle and right.
std::optional<NTResolutionFailure> verify_resolution(const NTModule& m, const NTResolution& r);

/// The per-interval free resolution of K_*(A[a,b]) induced by an NTResolution.
FreeResolution lemma_resolution(const NTModule& m, const NTResolution& r, const Interval& ab);

/// Restriction of the module to the open sets [e,n] with i-chain edge maps,
/// as a diagram over the chain 1 <- 2 <- ... <- n.
Diagram restriction_diagram(const NTModule& m);

/// The filtrated obstruction class: raw boundary family delta_e^{[a,b]},
/// its normalized Ext elements per edge, and the class in ext2 of the
/// restriction diagram.
struct NTObstruction {
    std::vector<std::array<IntMatrix, 2>> raw;  // per e = 1..n-1, ambient degree-1 matrices
    std::vector<ExtElement> per_edge;           // in Ext(Sigma M[e+1,n], M[e,n])
    DiagramExt2 ext2;
    std::vector<Int> coords;
    bool is_zero = false;
};
NTObstruction obstruction_filtrated(const NTModule& m, const NTResolution& r);

/// Constructive identification of the n = 2 obstruction cokernel with
/// Ext(ker i_*, coker i_*), verified bijective.
struct CokernelIsoN2 {
    SubgroupResult kernel;      // of i_*
    QuotientResult cokernel;    // of i_*
    GradedGroup obstruction_cokernel;  // coker of (t_I, t_A) |-> i t_I + t_A i
    std::shared_ptr<ExtPresentation> ext_ia;  // Ext(Sigma K_I, K_A)
    std::shared_ptr<ExtPresentation> ext_kc;  // Ext(Sigma ker, coker)
    IntMatrix forward_matrix;   // on the cokernel generators
    bool bijective = false;

    ExtElement forward(const ExtElement& e) const;  // pull to ker, push to coker
};
CokernelIsoN2 cokernel_iso_n2(const GradedMap& i_star);

/// The n = 2 bridge: the filtrated obstruction pushed into
/// Ext(ker i_*, coker i_*) against minus the class of the six-term extension
/// coker(i_*) >-> M[1,1] ->> ker(i_*).
struct ExtensionBridge {
    ExtElement via_resolution, via_six_term;
    bool agree = false;
    bool agree_up_to_sign = false;  // set when only -via_six_term matches
    bool classes_zero = false;
    CokernelIsoN2 iso;
};
ExtensionBridge extension_bridge_n2(const NTModule& m);

}  // namespace homkk

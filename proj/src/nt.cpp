#include "homkk/nt.hpp"

#include <stdexcept>

namespace homkk {

std::vector<Interval> all_intervals(int n) {
    std::vector<Interval> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) out.push_back({a, b});
    return out;
}

std::size_t interval_index(int n, const Interval& i) {
    if (i.a < 1 || i.b > n || i.a > i.b) throw std::invalid_argument("interval out of range");
    std::size_t idx = 0;
    for (int a = 1; a < i.a; ++a) idx += static_cast<std::size_t>(n - a + 1);
    return idx + static_cast<std::size_t>(i.b - i.a);
}

int tau_parity(NTTau t) {
    if (t == NTTau::Zero) throw std::invalid_argument("tau_parity of zero");
    return t == NTTau::Even ? 0 : 1;
}

NTTau tau(int n, const Interval& src, const Interval& dst) {
    if (src.a < 1 || src.b > n || src.a > src.b || dst.a < 1 || dst.b > n || dst.a > dst.b)
        throw std::invalid_argument("tau: interval out of range");
    const int a = src.a, b = src.b, c = dst.a, d = dst.b;
    if (c <= a && a <= d && d <= b) return NTTau::Even;
    if (a + 1 <= c && c <= b + 1 && b + 1 <= d) return NTTau::Odd;
    return NTTau::Zero;
}

bool tau_compose_nonzero(int n, const Interval& src, const Interval& mid, const Interval& dst) {
    if (tau(n, src, mid) == NTTau::Zero || tau(n, mid, dst) == NTTau::Zero) return false;
    const int a = src.a, b = src.b, e = mid.a, g = mid.b, c = dst.a, d = dst.b;
    if (c <= e && e <= a && a <= d && d <= g && g <= b) return true;
    if (e <= a && a <= c - 1 && c - 1 <= g && g <= b && b < d) return true;
    if (a < c && c <= e && e <= b + 1 && b + 1 <= d && d <= g) return true;
    return false;
}

NTModule NTModule::zero_shaped(int n) {
    NTModule m;
    m.n = n;
    auto intervals = all_intervals(n);
    m.slot.assign(intervals.size(), GradedGroup::trivial());
    m.gen_i.resize(intervals.size());
    m.gen_r.resize(intervals.size());
    m.gen_delta.resize(intervals.size());
    GradedGroup t = GradedGroup::trivial();
    for (const Interval& i : intervals) {
        std::size_t idx = interval_index(n, i);
        if (i.a + 1 <= i.b) m.gen_i[idx] = GradedMap::zero(t, t);
        if (i.b < n) m.gen_r[idx] = GradedMap::zero(t, t);
        if (i.b == n && i.a >= 2) m.gen_delta[idx] = GradedMap::zero(t, t, 1);
    }
    return m;
}

namespace {

bool map_matches(const GradedMap& f, const GradedGroup& src, const GradedGroup& tgt, int degree) {
    if (f.degree != degree) return false;
    for (int p : {kEven, kOdd}) {
        if (f.comp[p].cols() != src.gens(p)) return false;
        if (f.comp[p].rows() != tgt.gens((p + degree) % 2)) return false;
        if (!cols_in_column_lattice(tgt.rels[(p + degree) % 2], f.comp[p] * src.rels[p]))
            return false;
    }
    return true;
}

}  // namespace

std::optional<NTViolation> nt_validate(const NTModule& m) {
    const int n = m.n;
    auto intervals = all_intervals(n);
    if (m.slot.size() != intervals.size() || m.gen_i.size() != intervals.size() ||
        m.gen_r.size() != intervals.size() || m.gen_delta.size() != intervals.size())
        return NTViolation{"slot or generator tables have the wrong size"};

    for (const Interval& i : intervals) {
        std::size_t idx = interval_index(n, i);
        bool want_i = i.a + 1 <= i.b, want_r = i.b < n, want_d = i.b == n && i.a >= 2;
        if (want_i != m.gen_i[idx].has_value()) return NTViolation{"i table mismatch at " + i.key()};
        if (want_r != m.gen_r[idx].has_value()) return NTViolation{"r table mismatch at " + i.key()};
        if (want_d != m.gen_delta[idx].has_value())
            return NTViolation{"delta table mismatch at " + i.key()};
        if (want_i && !map_matches(*m.gen_i[idx], m.at({i.a + 1, i.b}), m.at(i), 0))
            return NTViolation{"i at " + i.key() + " is not a valid degree-0 map"};
        if (want_r && !map_matches(*m.gen_r[idx], m.at({i.a, i.b + 1}), m.at(i), 0))
            return NTViolation{"r at " + i.key() + " is not a valid degree-0 map"};
        if (want_d && !map_matches(*m.gen_delta[idx], m.at({1, i.a - 1}), m.at(i), 1))
            return NTViolation{"delta at " + i.key() + " is not a valid degree-1 map"};
    }

    // (R1) i r = r i from M[a+1,b+1] to M[a,b], with the zero convention at a = b.
    for (int a = 1; a <= n - 1; ++a)
        for (int b = a; b <= n - 1; ++b) {
            const GradedMap& via_top = *m.gen_i[interval_index(n, {a, b + 1})];
            const GradedMap& right = *m.gen_r[interval_index(n, {a, b})];
            GradedMap path2 = compose(right, via_top);
            if (a == b) {
                if (!map_is_zero(path2))
                    return NTViolation{"(R1) r i != 0 into M[" + std::to_string(a) + "," +
                                       std::to_string(b) + "]"};
            } else {
                const GradedMap& down = *m.gen_r[interval_index(n, {a + 1, b})];
                const GradedMap& via_bottom = *m.gen_i[interval_index(n, {a, b})];
                if (!maps_equal(compose(via_bottom, down), path2))
                    return NTViolation{"(R1) i r != r i into M[" + std::to_string(a) + "," +
                                       std::to_string(b) + "]"};
            }
        }

    // (R2) i delta_[1,b] = delta_[1,b-1] r on M[1,b] for 2 <= b <= n-1.
    for (int b = 2; b <= n - 1; ++b) {
        GradedMap lhs = compose(*m.gen_i[interval_index(n, {b, n})],
                                *m.gen_delta[interval_index(n, {b + 1, n})]);
        GradedMap rhs = compose(*m.gen_delta[interval_index(n, {b, n})],
                                *m.gen_r[interval_index(n, {1, b - 1})]);
        if (!maps_equal(lhs, rhs)) return NTViolation{"(R2) fails on M[1," + std::to_string(b) + "]"};
    }

    // (R3) delta r = 0 on M[1,n].
    if (n >= 2) {
        GradedMap comp3 = compose(*m.gen_delta[interval_index(n, {n, n})],
                                  *m.gen_r[interval_index(n, {1, n - 1})]);
        if (!map_is_zero(comp3)) return NTViolation{"(R3) delta r != 0 on M[1,n]"};
    }
    return std::nullopt;
}

GradedMap tau_apply(const NTModule& m, const Interval& src, const Interval& dst) {
    NTTau t = tau(m.n, src, dst);
    if (t == NTTau::Zero) throw std::invalid_argument("tau_apply: zero transformation");
    GradedMap cur = GradedMap::identity(m.at(src));
    int a = src.a, b = src.b;
    auto step_i = [&](int x, int w) {  // i : M[x,w] -> M[x-1,w]
        cur = compose(*m.gen_i[interval_index(m.n, {x - 1, w})], cur);
    };
    auto step_r = [&](int x, int w) {  // r : M[x,w] -> M[x,w-1]
        cur = compose(*m.gen_r[interval_index(m.n, {x, w - 1})], cur);
    };
    if (t == NTTau::Even) {
        for (int x = a; x > dst.a; --x) step_i(x, b);
        for (int w = b; w > dst.b; --w) step_r(dst.a, w);
        return cur;
    }
    for (int x = a; x > 1; --x) step_i(x, b);
    cur = compose(*m.gen_delta[interval_index(m.n, {b + 1, m.n})], cur);
    for (int w = m.n; w > dst.b; --w) step_r(b + 1, w);
    for (int x = b + 1; x > dst.a; --x) step_i(x, dst.b);
    return cur;
}

std::optional<NTExactnessFailure> check_exact(const NTModule& m) {
    for (int a = 1; a <= m.n; ++a)
        for (int b = a + 1; b <= m.n; ++b)
            for (int c = b; c <= m.n; ++c) {
                GradedMap fi = tau_apply(m, {b, c}, {a, c});
                GradedMap fr = tau_apply(m, {a, c}, {a, b - 1});
                GradedMap fd = tau_apply(m, {a, b - 1}, {b, c});
                if (!is_exact_at(fi, fr)) return NTExactnessFailure{a, b, c, 0};
                if (!is_exact_at(fr, fd)) return NTExactnessFailure{a, b, c, 1};
                if (!is_exact_at(fd, fi)) return NTExactnessFailure{a, b, c, 2};
            }
    return std::nullopt;
}

QuotientResult ss_quotient(const NTModule& m, const Interval& i) {
    std::vector<GradedMap> images;
    std::size_t idx = interval_index(m.n, i);
    if (i.a + 1 <= i.b) images.push_back(*m.gen_i[idx]);
    if (i.b < m.n) images.push_back(*m.gen_r[idx]);
    if (i.b == m.n && i.a >= 2) images.push_back(*m.gen_delta[idx]);
    return cokernel_of_family(images, m.at(i));
}

PatternLayout pattern_layout(const NTPattern& p) {
    const int n = p.n;
    auto intervals = all_intervals(n);
    PatternLayout out;
    out.pattern = p;
    out.parts.resize(intervals.size());
    out.offsets.resize(intervals.size());

    NTModule& mod = out.module;
    mod.n = n;
    mod.slot.resize(intervals.size());
    mod.gen_i.resize(intervals.size());
    mod.gen_r.resize(intervals.size());
    mod.gen_delta.resize(intervals.size());

    for (const Interval& ab : intervals) {
        std::size_t slot = interval_index(n, ab);
        std::array<std::size_t, 2> at = {0, 0};
        for (const Interval& cd : intervals) {
            NTTau t = tau(n, cd, ab);
            if (t == NTTau::Zero) continue;
            int shift = tau_parity(t);
            out.parts[slot].push_back({interval_index(n, cd), shift});
            out.offsets[slot].push_back(at);
            at[kEven] += p.ranks[interval_index(n, cd)][shift % 2 == 0 ? kEven : kOdd];
            at[kOdd] += p.ranks[interval_index(n, cd)][shift % 2 == 0 ? kOdd : kEven];
        }
        mod.slot[slot] = GradedGroup::free_group(at[kEven], at[kOdd]);
    }
    for (const Interval& ab : intervals) {
        std::size_t idx = interval_index(n, ab);
        if (ab.a + 1 <= ab.b) mod.gen_i[idx] = out.tau_action({ab.a + 1, ab.b}, ab);
        if (ab.b < n) mod.gen_r[idx] = out.tau_action({ab.a, ab.b + 1}, ab);
        if (ab.b == n && ab.a >= 2) mod.gen_delta[idx] = out.tau_action({1, ab.a - 1}, ab);
    }
    return out;
}

GradedMap PatternLayout::tau_action(const Interval& src, const Interval& dst) const {
    const int n = pattern.n;
    NTTau t = tau(n, src, dst);
    if (t == NTTau::Zero)
        return GradedMap::zero(module.at(src), module.at(dst));
    int deg = tau_parity(t);
    std::size_t si = interval_index(n, src), di = interval_index(n, dst);
    std::array<IntMatrix, 2> comp;
    for (int p : {kEven, kOdd}) {
        comp[p] = IntMatrix(module.slot[di].gens((p + deg) % 2), module.slot[si].gens(p));
    }
    auto intervals = all_intervals(n);
    for (std::size_t sp = 0; sp < parts[si].size(); ++sp) {
        const PatternPart& part = parts[si][sp];
        if (!tau_compose_nonzero(n, intervals[part.source], src, dst)) continue;
        // locate the same summand inside the target slot
        std::size_t tp = 0;
        while (parts[di][tp].source != part.source) ++tp;
        for (int p : {kEven, kOdd}) {
            std::size_t rank = pattern.ranks[part.source][(p + part.shift) % 2];
            std::size_t ro = offsets[di][tp][(p + deg) % 2];
            std::size_t co = offsets[si][sp][p];
            for (std::size_t k = 0; k < rank; ++k) comp[p](ro + k, co + k) = 1;
        }
    }
    return GradedMap(module.slot[si], module.slot[di], deg, std::move(comp));
}

GradedGroup NTResolution::q0_group(std::size_t idx) const {
    return GradedGroup::free_group(q0[idx][kEven], q0[idx][kOdd]);
}
GradedGroup NTResolution::q1_group(std::size_t idx) const {
    return GradedGroup::free_group(q1[idx][kEven], q1[idx][kOdd]);
}

namespace {

// Slot map FK(f) : FK(P0)[ab] -> M[ab] assembled from tau . f over the parts.
GradedMap fk_cover_map(const NTModule& m, const PatternLayout& p0, const NTResolution& r,
                       const Interval& ab) {
    const int n = m.n;
    std::size_t slot = interval_index(n, ab);
    auto intervals = all_intervals(n);
    std::array<IntMatrix, 2> comp;
    for (int p : {kEven, kOdd})
        comp[p] = IntMatrix(m.at(ab).gens(p), p0.module.slot[slot].gens(p));
    for (std::size_t sp = 0; sp < p0.parts[slot].size(); ++sp) {
        const PatternPart& part = p0.parts[slot][sp];
        GradedMap term = compose(tau_apply(m, intervals[part.source], ab), r.f[part.source]);
        for (int p : {kEven, kOdd}) {
            int q = (p + part.shift) % 2;  // native parity feeding ambient parity p
            const IntMatrix& block = term.comp[q];
            std::size_t co = p0.offsets[slot][sp][p];
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j) comp[p](i, co + j) = block(i, j);
        }
    }
    return GradedMap(p0.module.slot[slot], m.at(ab), 0, std::move(comp));
}

struct KernelModule {
    NTModule module;                    // N with induced generator maps
    std::vector<GradedMap> inclusion;   // N[ab] -> FK(P0)[ab]
};

KernelModule slotwise_kernel(const NTModule& m, const PatternLayout& p0,
                             const std::vector<GradedMap>& fk) {
    const int n = m.n;
    auto intervals = all_intervals(n);
    KernelModule out;
    out.module.n = n;
    out.module.slot.resize(intervals.size());
    out.module.gen_i.resize(intervals.size());
    out.module.gen_r.resize(intervals.size());
    out.module.gen_delta.resize(intervals.size());
    std::vector<SubgroupResult> kernels(intervals.size());
    for (std::size_t idx = 0; idx < intervals.size(); ++idx) {
        kernels[idx] = kernel_of(fk[idx]);
        out.module.slot[idx] = kernels[idx].group;
        out.inclusion.push_back(kernels[idx].inclusion);
    }
    auto induce = [&](const Interval& src, const Interval& dst) {
        std::size_t si = interval_index(n, src), di = interval_index(n, dst);
        GradedMap ambient = compose(p0.tau_action(src, dst), out.inclusion[si]);
        auto u = factor_through_kernel(kernels[di], ambient);
        if (!u) throw std::logic_error("slotwise kernel: structure map escaped the kernel");
        return *u;
    };
    for (const Interval& ab : intervals) {
        std::size_t idx = interval_index(n, ab);
        if (ab.a + 1 <= ab.b) out.module.gen_i[idx] = induce({ab.a + 1, ab.b}, ab);
        if (ab.b < n) out.module.gen_r[idx] = induce({ab.a, ab.b + 1}, ab);
        if (ab.b == n && ab.a >= 2) out.module.gen_delta[idx] = induce({1, ab.a - 1}, ab);
    }
    return out;
}

// Coordinate columns generating a presented group: the Smith directions with
// invariant factor != 1. require_free rejects torsion directions.
std::array<IntMatrix, 2> generator_columns(const GradedGroup& g, bool require_free,
                                           const std::string& where) {
    std::array<IntMatrix, 2> out;
    for (int p : {kEven, kOdd}) {
        SmithDecomposition s = smith_normal_form(g.rels[p]);
        std::size_t gens = g.gens(p);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < gens; ++i) {
            Int d = i < s.rank ? s.D(i, i) : Int(0);
            if (d == 1) continue;
            if (d != 0 && require_free)
                throw std::invalid_argument(where + ": semisimple quotient is not free");
            keep.push_back(i);
        }
        IntMatrix uinv = unimodular_inverse(s.U);
        IntMatrix basis(gens, keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j)
            for (std::size_t i = 0; i < gens; ++i) basis(i, j) = uinv(i, keep[j]);
        out[p] = std::move(basis);
    }
    return out;
}

}  // namespace

NTResolution build_resolution(const NTModule& m) {
    if (auto v = nt_validate(m)) throw std::invalid_argument("build_resolution: " + v->what);
    std::vector<GradedMap> covers;
    for (const Interval& ab : all_intervals(m.n)) {
        // Q0 covers the semisimple quotient; the generators lift to the slot
        // coordinatewise because the quotient projection is the identity on
        // generators.
        QuotientResult ss = ss_quotient(m, ab);
        std::array<IntMatrix, 2> lifts = generator_columns(ss.group, false, "build_resolution");
        covers.push_back(
            GradedMap(GradedGroup::free_group(lifts[kEven].cols(), lifts[kOdd].cols()),
                      m.at(ab), 0, {lifts[kEven], lifts[kOdd]}));
    }
    return build_resolution_with_cover(m, std::move(covers));
}

NTResolution build_resolution_with_cover(const NTModule& m, std::vector<GradedMap> covers) {
    if (auto v = nt_validate(m)) throw std::invalid_argument("build_resolution: " + v->what);
    const int n = m.n;
    auto intervals = all_intervals(n);
    if (covers.size() != intervals.size())
        throw std::invalid_argument("build_resolution: one cover per interval required");

    NTResolution r;
    r.n = n;
    r.q0.resize(intervals.size());
    r.q1.resize(intervals.size());
    for (const Interval& ab : intervals) {
        std::size_t idx = interval_index(n, ab);
        const GradedMap& f = covers[idx];
        if (f.degree != 0 || !f.source.is_free() ||
            !map_matches(f, f.source, m.at(ab), 0))
            throw std::invalid_argument("build_resolution: malformed cover at " + ab.key());
        r.q0[idx] = {f.source.gens(kEven), f.source.gens(kOdd)};
        r.f.push_back(f);
    }

    NTPattern p0{n, r.q0};
    PatternLayout layout = pattern_layout(p0);

    std::vector<GradedMap> fk;
    for (const Interval& ab : intervals) fk.push_back(fk_cover_map(m, layout, r, ab));
    for (std::size_t idx = 0; idx < intervals.size(); ++idx) {
        if (!is_surjective(fk[idx]))
            throw std::logic_error("build_resolution: cover not slotwise surjective");
    }

    KernelModule nmod = slotwise_kernel(m, layout, fk);

    for (const Interval& ab : intervals) {
        std::size_t idx = interval_index(n, ab);
        QuotientResult ss = ss_quotient(nmod.module, ab);
        std::array<IntMatrix, 2> basis =
            generator_columns(ss.group, true, "build_resolution " + ab.key());
        r.q1[idx] = {basis[kEven].cols(), basis[kOdd].cols()};
        // section into N, then into the pattern slot
        GradedMap section(GradedGroup::free_group(r.q1[idx][kEven], r.q1[idx][kOdd]),
                          nmod.module.slot[idx], 0, {basis[kEven], basis[kOdd]});
        GradedMap into_slot = compose(nmod.inclusion[idx], section);
        // split into the summand components phi[ab]^{[cd]}
        for (std::size_t sp = 0; sp < layout.parts[idx].size(); ++sp) {
            const PatternPart& part = layout.parts[idx][sp];
            int deg = part.shift;
            std::array<IntMatrix, 2> comp;
            for (int p : {kEven, kOdd}) {
                int q = (p + deg) % 2;  // native target parity of Q0[cd]
                std::size_t rows = r.q0[part.source][q];
                std::size_t ro = layout.offsets[idx][sp][p];
                comp[p] = IntMatrix(rows, r.q1[idx][p]);
                for (std::size_t i = 0; i < rows; ++i)
                    for (std::size_t j = 0; j < r.q1[idx][p]; ++j)
                        comp[p](i, j) = into_slot.comp[p](ro + i, j);
            }
            r.phi.insert({{idx, part.source},
                          GradedMap(GradedGroup::free_group(r.q1[idx][kEven], r.q1[idx][kOdd]),
                                    GradedGroup::free_group(r.q0[part.source][kEven],
                                                            r.q0[part.source][kOdd]),
                                    deg, std::move(comp))});
        }
    }
    return r;
}

FreeResolution lemma_resolution(const NTModule& m, const NTResolution& r, const Interval& ab) {
    const int n = m.n;
    auto intervals = all_intervals(n);
    PatternLayout l0 = pattern_layout({n, r.q0});
    PatternLayout l1 = pattern_layout({n, r.q1});
    std::size_t slot = interval_index(n, ab);

    FreeResolution out;
    out.group = m.at(ab);
    for (int p : {kEven, kOdd}) {
        out.r0[p] = l0.module.slot[slot].gens(p);
        out.r1[p] = l1.module.slot[slot].gens(p);
        out.boundary[p] = IntMatrix(out.r0[p], out.r1[p]);
        out.cover[p] = IntMatrix(m.at(ab).gens(p), out.r0[p]);
    }
    // boundary blocks: phi[cd]^{[eg]} where [eg] -> [cd] -> [ab] composes
    for (std::size_t sp1 = 0; sp1 < l1.parts[slot].size(); ++sp1) {
        const PatternPart& src = l1.parts[slot][sp1];  // Q1[cd]
        for (std::size_t sp0 = 0; sp0 < l0.parts[slot].size(); ++sp0) {
            const PatternPart& tgt = l0.parts[slot][sp0];  // Q0[eg]
            if (!tau_compose_nonzero(n, intervals[tgt.source], intervals[src.source], ab)) continue;
            const GradedMap& block = r.phi.at({src.source, tgt.source});
            for (int p : {kEven, kOdd}) {
                int q = (p + src.shift) % 2;  // native source parity of Q1[cd]
                const IntMatrix& bm = block.comp[q];
                std::size_t ro = l0.offsets[slot][sp0][p];
                std::size_t co = l1.offsets[slot][sp1][p];
                for (std::size_t i = 0; i < bm.rows(); ++i)
                    for (std::size_t j = 0; j < bm.cols(); ++j) out.boundary[p](ro + i, co + j) = bm(i, j);
            }
        }
    }
    // cover blocks: tau . f per part
    for (std::size_t sp0 = 0; sp0 < l0.parts[slot].size(); ++sp0) {
        const PatternPart& part = l0.parts[slot][sp0];
        GradedMap term = compose(tau_apply(m, intervals[part.source], ab), r.f[part.source]);
        for (int p : {kEven, kOdd}) {
            const IntMatrix& block = term.comp[(p + part.shift) % 2];
            std::size_t co = l0.offsets[slot][sp0][p];
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j) out.cover[p](i, co + j) = block(i, j);
        }
    }
    return out;
}

std::optional<NTResolutionFailure> verify_resolution(const NTModule& m, const NTResolution& r) {
    const int n = m.n;
    auto intervals = all_intervals(n);
    if (r.n != n || r.q0.size() != intervals.size() || r.q1.size() != intervals.size() ||
        r.f.size() != intervals.size())
        return NTResolutionFailure{"resolution tables have the wrong size"};
    for (const Interval& ab : intervals) {
        std::size_t idx = interval_index(n, ab);
        if (!map_matches(r.f[idx], r.q0_group(idx), m.at(ab), 0))
            return NTResolutionFailure{"f at " + ab.key() + " malformed"};
        for (const Interval& cd : intervals) {
            if (tau(n, cd, ab) == NTTau::Zero) continue;
            auto it = r.phi.find({idx, interval_index(n, cd)});
            if (it == r.phi.end())
                return NTResolutionFailure{"phi missing at " + ab.key() + "^" + cd.key()};
            int deg = tau_parity(tau(n, cd, ab));
            if (!map_matches(it->second, r.q1_group(idx), r.q0_group(interval_index(n, cd)), deg))
                return NTResolutionFailure{"phi malformed at " + ab.key() + "^" + cd.key()};
        }
    }
    // the vanishing identity: sum over [cd] -> [ab] of tau f[cd] phi[ab]^{[cd]} = 0
    for (const Interval& ab : intervals) {
        std::size_t idx = interval_index(n, ab);
        GradedMap sum = GradedMap::zero(r.q1_group(idx), m.at(ab));
        for (const Interval& cd : intervals) {
            if (tau(n, cd, ab) == NTTau::Zero) continue;
            GradedMap term = compose(compose(tau_apply(m, cd, ab), r.f[interval_index(n, cd)]),
                                     r.phi.at({idx, interval_index(n, cd)}));
            sum = map_sum(sum, term);
        }
        if (!map_is_zero(sum))
            return NTResolutionFailure{"tau-f-phi identity fails at " + ab.key()};
    }
    // per-interval exactness at middle and right
    for (const Interval& ab : intervals) {
        FreeResolution res = lemma_resolution(m, r, ab);
        for (int p : {kEven, kOdd}) {
            if (!solve_modulo_matrix(res.cover[p], res.group.rels[p],
                                     IntMatrix::identity(res.group.gens(p))))
                return NTResolutionFailure{"cover not surjective at " + ab.key()};
            // kernel of the cover must be the image of the boundary
            IntMatrix stacked = IntMatrix::hstack(res.cover[p], res.group.rels[p]);
            IntMatrix ker = hnf_column_basis(nullspace(stacked).row_range(0, res.r0[p]));
            if (!cols_in_column_lattice(res.boundary[p], ker))
                return NTResolutionFailure{"kernel of the cover escapes the boundary image at " +
                                           ab.key()};
            if (!cols_in_column_lattice(ker, res.boundary[p]))
                return NTResolutionFailure{"boundary image escapes the cover kernel at " + ab.key()};
        }
    }
    return std::nullopt;
}

Diagram restriction_diagram(const NTModule& m) {
    Diagram d;
    for (int e = 1; e <= m.n; ++e) d.space.labels.push_back(std::to_string(e));
    for (int e = 1; e < m.n; ++e)
        d.space.edges.emplace_back(static_cast<std::size_t>(e), static_cast<std::size_t>(e - 1));
    for (int e = 1; e <= m.n; ++e) d.groups.push_back(m.at({e, m.n}));
    for (int e = 1; e < m.n; ++e) d.edge_maps.push_back(tau_apply(m, {e + 1, m.n}, {e, m.n}));
    return d;
}

NTObstruction obstruction_filtrated(const NTModule& m, const NTResolution& r) {
    if (auto fail = verify_resolution(m, r))
        throw std::invalid_argument("obstruction_filtrated: " + fail->what);
    const int n = m.n;
    auto intervals = all_intervals(n);
    PatternLayout l1 = pattern_layout({n, r.q1});

    NTObstruction out;
    for (int e = 1; e < n; ++e) {
        Interval en{e, n}, e1n{e + 1, n};
        std::size_t slot = interval_index(n, e1n);
        std::array<IntMatrix, 2> raw;
        for (int p : {kEven, kOdd})
            raw[p] = IntMatrix(m.at(en).gens((p + 1) % 2), l1.module.slot[slot].gens(p));
        for (std::size_t sp = 0; sp < l1.parts[slot].size(); ++sp) {
            const PatternPart& part = l1.parts[slot][sp];
            const Interval& ab = intervals[part.source];
            if (ab.a != e || ab.b >= n) continue;
            // sum over [c,d] -> [a,n] -> [a,b]
            GradedMap sum = GradedMap::zero(r.q1_group(part.source), m.at(en));
            for (const Interval& cd : intervals) {
                if (!tau_compose_nonzero(n, cd, {ab.a, n}, ab)) continue;
                GradedMap term =
                    compose(compose(tau_apply(m, cd, en), r.f[interval_index(n, cd)]),
                            r.phi.at({part.source, interval_index(n, cd)}));
                sum = map_sum(sum, term);
            }
            // ambient placement: part shift is odd here, so native degree 0
            for (int p : {kEven, kOdd}) {
                const IntMatrix& block = sum.comp[(p + part.shift) % 2];
                std::size_t co = l1.offsets[slot][sp][p];
                for (std::size_t i = 0; i < block.rows(); ++i)
                    for (std::size_t j = 0; j < block.cols(); ++j) raw[p](i, co + j) = block(i, j);
            }
        }
        out.raw.push_back(raw);
        out.per_edge.push_back(transport_ext(lemma_resolution(m, r, e1n), raw, m.at(en), 1));
    }

    Diagram g = restriction_diagram(m);
    out.ext2 = ext2_diagram(g.suspended(), g, 0);
    std::vector<ExtElement> family;
    for (const auto& e : out.per_edge) family.push_back(e.with_suspended_source());
    out.coords = out.ext2.encode_family(family);
    out.is_zero = out.ext2.family_is_zero_class(family);
    return out;
}

ExtElement CokernelIsoN2::forward(const ExtElement& e) const {
    return push_ext(pull_ext(e, kernel.inclusion), cokernel.projection);
}

CokernelIsoN2 cokernel_iso_n2(const GradedMap& i_star) {
    CokernelIsoN2 out;
    out.kernel = kernel_of(i_star);
    out.cokernel = cokernel_of(i_star);
    const GradedGroup& ki = i_star.source;
    const GradedGroup& ka = i_star.target;
    ExtPresentation e_ii(ki, ki, 1), e_aa(ka, ka, 1);
    out.ext_ia = std::make_shared<ExtPresentation>(ki, ka, 1);
    out.ext_kc = std::make_shared<ExtPresentation>(out.kernel.group, out.cokernel.group, 1);

    // (t_I, t_A) |-> i t_I + t_A i
    IntMatrix theta(out.ext_ia->num_gens(), e_ii.num_gens() + e_aa.num_gens());
    for (std::size_t i = 0; i < e_ii.num_gens(); ++i) {
        std::vector<Int> unit(e_ii.num_gens());
        unit[i] = 1;
        std::vector<Int> col = out.ext_ia->encode(push_ext(e_ii.decode(unit), i_star));
        for (std::size_t rr = 0; rr < col.size(); ++rr) theta(rr, i) = col[rr];
    }
    for (std::size_t i = 0; i < e_aa.num_gens(); ++i) {
        std::vector<Int> unit(e_aa.num_gens());
        unit[i] = 1;
        std::vector<Int> col = out.ext_ia->encode(pull_ext(e_aa.decode(unit), i_star));
        for (std::size_t rr = 0; rr < col.size(); ++rr)
            theta(rr, e_ii.num_gens() + i) = col[rr];
    }
    out.obstruction_cokernel.rels[kEven] = IntMatrix::hstack(out.ext_ia->relators(), theta);

    // the forward map on cokernel generators
    out.forward_matrix = IntMatrix(out.ext_kc->num_gens(), out.ext_ia->num_gens());
    for (std::size_t i = 0; i < out.ext_ia->num_gens(); ++i) {
        std::vector<Int> unit(out.ext_ia->num_gens());
        unit[i] = 1;
        std::vector<Int> col = out.ext_kc->encode(out.forward(out.ext_ia->decode(unit)));
        for (std::size_t rr = 0; rr < col.size(); ++rr) out.forward_matrix(rr, i) = col[rr];
    }
    GradedGroup src, tgt;
    src.rels[kEven] = out.obstruction_cokernel.rels[kEven];
    tgt.rels[kEven] = out.ext_kc->relators();
    GradedMap fwd(src, tgt, 0,
                  {out.forward_matrix, IntMatrix(0, 0)});
    out.bijective = fwd.is_relation_compatible() && is_isomorphism(fwd);
    return out;
}

ExtensionBridge extension_bridge_n2(const NTModule& m) {
    if (m.n != 2) throw std::invalid_argument("extension_bridge_n2: n must be 2");
    if (auto v = nt_validate(m)) throw std::invalid_argument("extension_bridge_n2: " + v->what);
    if (auto f = check_exact(m))
        throw std::invalid_argument("extension_bridge_n2: module not exact");

    const GradedMap& i_star = *m.gen_i[interval_index(2, {1, 2})];
    ExtensionBridge out;
    out.iso = cokernel_iso_n2(i_star);

    NTResolution res = build_resolution(m);
    NTObstruction obs = obstruction_filtrated(m, res);
    out.via_resolution = out.iso.forward(obs.per_edge[0]);

    // six-term side: coker(i_*) >--r--> M[1,1] --delta-->> ker(i_*)
    const GradedMap& r_map = *m.gen_r[interval_index(2, {1, 1})];
    const GradedMap& delta = *m.gen_delta[interval_index(2, {2, 2})];
    GradedMap iota(out.iso.cokernel.group, m.at({1, 1}), 0, r_map.comp);
    auto pi = factor_through_kernel(out.iso.kernel, delta);
    if (!pi) throw std::logic_error("extension_bridge_n2: delta does not land in ker i_*");
    out.via_six_term = ext_negate(extension_class(iota, *pi));

    out.agree = out.iso.ext_kc->classes_equal(out.via_resolution, out.via_six_term);
    out.agree_up_to_sign =
        !out.agree && out.iso.ext_kc->classes_equal(out.via_resolution,
                                                    ext_negate(out.via_six_term));
    out.classes_zero = out.iso.ext_kc->is_zero_class(out.via_resolution) &&
                       out.iso.ext_kc->is_zero_class(out.via_six_term);
    return out;
}

}  // namespace homkk

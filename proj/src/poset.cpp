#include "homkk/poset.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace homkk {

std::size_t UniquePathSpace::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw std::invalid_argument("unknown vertex label: " + label);
}

void UniquePathSpace::sort_edges() {
    std::sort(edges.begin(), edges.end(),
              [&](const auto& a, const auto& b) {
                  return std::make_pair(labels[a.first], labels[a.second]) <
                         std::make_pair(labels[b.first], labels[b.second]);
              });
}

std::string UpsViolation::describe(const UniquePathSpace& space) const {
    if (kind == cycle) return "cycle through vertex " + space.labels[from];
    return "two directed paths from " + space.labels[from] + " to " + space.labels[to];
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(const UniquePathSpace& space) {
    std::vector<std::vector<std::size_t>> adj(space.size());
    for (const auto& [x, y] : space.edges) adj[x].push_back(y);
    return adj;
}

bool has_cycle_from(std::size_t v, const std::vector<std::vector<std::size_t>>& adj,
                    std::vector<int>& color, std::size_t& where) {
    color[v] = 1;
    for (std::size_t w : adj[v]) {
        if (color[w] == 1) {
            where = w;
            return true;
        }
        if (color[w] == 0 && has_cycle_from(w, adj, color, where)) return true;
    }
    color[v] = 2;
    return false;
}

}  // namespace

std::optional<UpsViolation> validate_ups(const UniquePathSpace& space) {
    auto adj = adjacency(space);
    std::vector<int> color(space.size(), 0);
    for (std::size_t v = 0; v < space.size(); ++v) {
        std::size_t where = 0;
        if (color[v] == 0 && has_cycle_from(v, adj, color, where))
            return UpsViolation{UpsViolation::cycle, where, where};
    }
    // Path counts over the DAG, memoized and capped at 2.
    std::size_t n = space.size();
    std::vector<std::vector<int>> count(n, std::vector<int>(n, -1));
    auto paths = [&](auto&& self, std::size_t x, std::size_t y) -> int {
        if (count[x][y] >= 0) return count[x][y];
        int total = x == y ? 1 : 0;
        for (std::size_t z : adj[x]) {
            total += self(self, z, y);
            if (total >= 2) break;
        }
        return count[x][y] = std::min(total, 2);
    };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (paths(paths, x, y) >= 2) return UpsViolation{UpsViolation::duplicated_path, x, y};
    return std::nullopt;
}

std::vector<std::vector<bool>> reachability(const UniquePathSpace& space) {
    std::size_t n = space.size();
    auto adj = adjacency(space);
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack = {s};
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            if (reach[s][v]) continue;
            reach[s][v] = true;
            for (std::size_t w : adj[v]) stack.push_back(w);
        }
    }
    return reach;
}

std::vector<std::pair<std::size_t, std::size_t>> order_relation(const UniquePathSpace& space) {
    auto reach = reachability(space);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = 0; y < space.size(); ++y)
            if (reach[y][x]) pairs.emplace_back(x, y);  // x <= y
    return pairs;
}

std::vector<std::size_t> unique_path(const UniquePathSpace& space, std::size_t x, std::size_t y) {
    auto reach = reachability(space);
    if (!reach[x][y]) return {};
    auto adj = adjacency(space);
    std::vector<std::size_t> path = {x};
    std::size_t v = x;
    while (v != y) {
        bool stepped = false;
        for (std::size_t w : adj[v]) {
            if (w == y || reach[w][y]) {
                path.push_back(w);
                v = w;
                stepped = true;
                break;
            }
        }
        if (!stepped) throw std::logic_error("unique_path: reachability inconsistent");
    }
    return path;
}

Diagram Diagram::suspended() const {
    Diagram out;
    out.space = space;
    for (const auto& g : groups) out.groups.push_back(g.suspended());
    for (const auto& f : edge_maps) out.edge_maps.push_back(f.suspended());
    return out;
}

bool diagram_valid(const Diagram& d) {
    if (d.groups.size() != d.space.size()) return false;
    if (d.edge_maps.size() != d.space.edges.size()) return false;
    if (validate_ups(d.space)) return false;
    for (std::size_t e = 0; e < d.space.edges.size(); ++e) {
        const auto& [x, y] = d.space.edges[e];
        const GradedMap& f = d.edge_maps[e];
        if (f.degree != 0) return false;
        for (int p : {kEven, kOdd}) {
            if (f.comp[p].cols() != d.groups[x].gens(p)) return false;
            if (f.comp[p].rows() != d.groups[y].gens(p)) return false;
            if (!cols_in_column_lattice(d.groups[y].rels[p], f.comp[p] * d.groups[x].rels[p]))
                return false;
        }
    }
    return true;
}

namespace {

std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index(const UniquePathSpace& s) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
    for (std::size_t e = 0; e < s.edges.size(); ++e) idx[s.edges[e]] = e;
    return idx;
}

}  // namespace

GradedMap path_map(const Diagram& d, std::size_t x, std::size_t z) {
    auto path = unique_path(d.space, x, z);
    if (path.empty()) throw std::invalid_argument("path_map: no path");
    auto idx = edge_index(d.space);
    GradedMap m = GradedMap::identity(d.groups[x]);
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        m = compose(d.edge_maps[idx.at({path[i], path[i + 1]})], m);
    return m;
}

Diagram j_object(const UniquePathSpace& space, std::size_t z, const GradedGroup& b) {
    if (z >= space.size()) throw std::invalid_argument("j_object: unknown vertex");
    auto reach = reachability(space);
    Diagram out;
    out.space = space;
    for (std::size_t x = 0; x < space.size(); ++x)
        out.groups.push_back(reach[z][x] ? b : GradedGroup::trivial());
    for (const auto& [x, y] : space.edges) {
        if (reach[z][x])
            out.edge_maps.push_back(GradedMap::identity(b));
        else
            out.edge_maps.push_back(GradedMap::zero(out.groups[x], out.groups[y]));
    }
    return out;
}

bool diagram_map_valid(const Diagram& src, const Diagram& tgt, const DiagramMap& f) {
    if (f.at.size() != src.space.size()) return false;
    auto idx = edge_index(src.space);
    for (std::size_t e = 0; e < src.space.edges.size(); ++e) {
        const auto& [x, y] = src.space.edges[e];
        if (!maps_equal(compose(f.at[y], src.edge_maps[e]), compose(tgt.edge_maps[e], f.at[x])))
            return false;
    }
    return true;
}

namespace {

struct BlockEntry {
    std::size_t tgt_part, src_part;
    const GradedMap* map;
    int sign;
};

GradedMap assemble_blocks(const DirectSumLayout& src, const DirectSumLayout& tgt,
                          const std::vector<BlockEntry>& entries, int degree = 0) {
    std::array<IntMatrix, 2> comp;
    for (int p : {kEven, kOdd}) {
        comp[p] = IntMatrix(tgt.total.gens((p + degree) % 2), src.total.gens(p));
        for (const auto& b : entries) {
            const IntMatrix& m = b.map->comp[p];
            std::size_t ro = tgt.offsets[b.tgt_part][(p + degree) % 2];
            std::size_t co = src.offsets[b.src_part][p];
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    comp[p](ro + i, co + j) = b.sign > 0 ? m(i, j) : -m(i, j);
        }
    }
    return GradedMap(src.total, tgt.total, degree, std::move(comp));
}

}  // namespace

DiagramResolution canonical_diagram_resolution(const Diagram& g) {
    if (!diagram_valid(g)) throw std::invalid_argument("canonical_diagram_resolution: invalid diagram");
    const auto& space = g.space;
    auto reach = reachability(space);
    std::size_t n = space.size();

    DiagramResolution out;
    out.top.space = space;
    out.mid.space = space;
    out.top_parts.resize(n);
    out.mid_parts.resize(n);

    // Vertexwise direct sums with deterministic part ordering.
    std::vector<DirectSumLayout> top_layout(n), mid_layout(n);
    for (std::size_t z = 0; z < n; ++z) {
        std::vector<GradedGroup> tparts, mparts;
        for (std::size_t e = 0; e < space.edges.size(); ++e) {
            const auto& [x, y] = space.edges[e];
            if (reach[y][z]) {
                out.top_parts[z].push_back(e);
                tparts.push_back(g.groups[x]);
            }
        }
        for (std::size_t x = 0; x < n; ++x) {
            if (reach[x][z]) {
                out.mid_parts[z].push_back(x);
                mparts.push_back(g.groups[x]);
            }
        }
        top_layout[z] = DirectSumLayout::of(tparts);
        mid_layout[z] = DirectSumLayout::of(mparts);
        out.top.groups.push_back(top_layout[z].total);
        out.mid.groups.push_back(mid_layout[z].total);
    }

    auto part_pos = [](const std::vector<std::size_t>& parts, std::size_t value) {
        return static_cast<std::size_t>(
            std::find(parts.begin(), parts.end(), value) - parts.begin());
    };

    // Structure maps of the J-sums: identity blocks on shared parts.
    for (const auto& [z, w] : space.edges) {
        std::vector<BlockEntry> tblocks, mblocks;
        std::vector<GradedMap> ids;  // stable storage for identity maps
        ids.reserve(out.top_parts[z].size() + out.mid_parts[z].size());
        for (std::size_t s = 0; s < out.top_parts[z].size(); ++s) {
            std::size_t e = out.top_parts[z][s];
            std::size_t y = g.space.edges[e].second;
            if (!reach[y][w]) continue;  // part dies along the edge
            ids.push_back(GradedMap::identity(g.groups[g.space.edges[e].first]));
            tblocks.push_back({part_pos(out.top_parts[w], e), s, &ids.back(), 1});
        }
        out.top.edge_maps.push_back(
            assemble_blocks(top_layout[z], top_layout[w], tblocks));
        ids.clear();
        std::vector<BlockEntry> blocks2;
        for (std::size_t s = 0; s < out.mid_parts[z].size(); ++s) {
            std::size_t x = out.mid_parts[z][s];
            if (!reach[x][w]) continue;
            ids.push_back(GradedMap::identity(g.groups[x]));
            blocks2.push_back({part_pos(out.mid_parts[w], x), s, &ids.back(), 1});
        }
        out.mid.edge_maps.push_back(assemble_blocks(mid_layout[z], mid_layout[w], blocks2));
    }

    // q at z: the path composites (gamma_{z,x})_{x >= z}.
    for (std::size_t z = 0; z < n; ++z) {
        std::vector<GradedMap> comps;
        std::vector<BlockEntry> blocks;
        comps.reserve(out.mid_parts[z].size());
        for (std::size_t s = 0; s < out.mid_parts[z].size(); ++s) {
            comps.push_back(path_map(g, out.mid_parts[z][s], z));
            blocks.push_back({0, s, &comps.back(), 1});
        }
        DirectSumLayout target = DirectSumLayout::of({g.groups[z]});
        out.q.at.push_back(assemble_blocks(mid_layout[z], target, blocks));
    }

    // psi at z: part (x->y) goes to part x identically and to part y by -gamma_{y,x}.
    auto idx = edge_index(space);
    for (std::size_t z = 0; z < n; ++z) {
        std::vector<GradedMap> comps;
        std::vector<BlockEntry> blocks;
        comps.reserve(2 * out.top_parts[z].size());
        for (std::size_t s = 0; s < out.top_parts[z].size(); ++s) {
            std::size_t e = out.top_parts[z][s];
            const auto& [x, y] = space.edges[e];
            comps.push_back(GradedMap::identity(g.groups[x]));
            blocks.push_back({part_pos(out.mid_parts[z], x), s, &comps.back(), 1});
            comps.push_back(g.edge_maps[e]);
            blocks.push_back({part_pos(out.mid_parts[z], y), s, &comps.back(), -1});
        }
        out.psi.at.push_back(assemble_blocks(top_layout[z], mid_layout[z], blocks));
    }
    return out;
}

std::optional<ExactnessFailure> check_resolution_exact(const Diagram& g,
                                                       const DiagramResolution& r) {
    for (std::size_t z = 0; z < g.space.size(); ++z) {
        if (!is_injective(r.psi.at[z])) return ExactnessFailure{z, 0};
        if (!is_exact_at(r.psi.at[z], r.q.at[z])) return ExactnessFailure{z, 1};
        if (!is_surjective(r.q.at[z])) return ExactnessFailure{z, 2};
    }
    return std::nullopt;
}

IntMatrix ExtFamilyLayout::relators() const {
    std::vector<IntMatrix> blocks;
    blocks.reserve(pres.size());
    for (const auto& p : pres) blocks.push_back(p->relators());
    return IntMatrix::block_diag(blocks);
}

std::vector<Int> DiagramExt2::encode_family(const std::vector<ExtElement>& per_edge) const {
    if (per_edge.size() != codomain.pres.size())
        throw std::invalid_argument("encode_family: family size mismatch");
    std::vector<Int> out(codomain.total);
    for (std::size_t e = 0; e < per_edge.size(); ++e) {
        std::vector<Int> block = codomain.pres[e]->encode(per_edge[e]);
        for (std::size_t i = 0; i < block.size(); ++i) out[codomain.offsets[e] + i] = block[i];
    }
    return out;
}

bool DiagramExt2::family_is_zero_class(const std::vector<ExtElement>& per_edge) const {
    return element_is_zero(cokernel, kEven, encode_family(per_edge));
}

std::vector<ExtElement> DiagramExt2::apply(const std::vector<ExtElement>& per_vertex) const {
    std::vector<ExtElement> out;
    for (std::size_t e = 0; e < g.space.edges.size(); ++e) {
        const auto& [x, y] = g.space.edges[e];
        out.push_back(ext_sub(push_ext(per_vertex[x], h.edge_maps[e]),
                              pull_ext(per_vertex[y], g.edge_maps[e])));
    }
    return out;
}

DiagramExt2 ext2_diagram(const Diagram& g, const Diagram& h, int degree) {
    if (g.space.labels != h.space.labels || g.space.edges != h.space.edges)
        throw std::invalid_argument("ext2_diagram: space mismatch");
    DiagramExt2 out;
    out.g = g;
    out.h = h;
    out.degree = degree;

    for (std::size_t x = 0; x < g.space.size(); ++x) {
        auto p = std::make_shared<ExtPresentation>(g.groups[x], h.groups[x], degree);
        out.domain.offsets.push_back(out.domain.total);
        out.domain.total += p->num_gens();
        out.domain.pres.push_back(std::move(p));
    }
    for (const auto& [x, y] : g.space.edges) {
        auto p = std::make_shared<ExtPresentation>(g.groups[x], h.groups[y], degree);
        out.codomain.offsets.push_back(out.codomain.total);
        out.codomain.total += p->num_gens();
        out.codomain.pres.push_back(std::move(p));
    }

    out.matrix = IntMatrix(out.codomain.total, out.domain.total);
    for (std::size_t x = 0; x < g.space.size(); ++x) {
        std::size_t nx = out.domain.pres[x]->num_gens();
        for (std::size_t i = 0; i < nx; ++i) {
            std::vector<Int> unit(nx);
            unit[i] = 1;
            ExtElement t = out.domain.pres[x]->decode(unit);
            for (std::size_t e = 0; e < g.space.edges.size(); ++e) {
                const auto& [u, v] = g.space.edges[e];
                std::optional<ExtElement> contribution;
                if (u == x) contribution = push_ext(t, h.edge_maps[e]);
                if (v == x) {
                    ExtElement pulled = pull_ext(t, g.edge_maps[e]);
                    contribution =
                        contribution ? ext_sub(*contribution, pulled) : ext_negate(pulled);
                }
                if (!contribution) continue;
                std::vector<Int> block = out.codomain.pres[e]->encode(*contribution);
                for (std::size_t r = 0; r < block.size(); ++r)
                    out.matrix(out.codomain.offsets[e] + r, out.domain.offsets[x] + i) = block[r];
            }
        }
    }
    out.cokernel.rels[kEven] = IntMatrix::hstack(out.codomain.relators(), out.matrix);
    return out;
}

bool xobject_valid(const XObject& x) {
    if (!diagram_valid(x.diagram)) return false;
    if (x.odd_edge.size() != x.diagram.space.edges.size()) return false;
    for (std::size_t e = 0; e < x.odd_edge.size(); ++e) {
        const auto& [u, v] = x.diagram.space.edges[e];
        const ExtElement& b1 = x.odd_edge[e];
        if (b1.degree != 1) return false;
        CanonicalResolution r = canonical_resolution(x.diagram.groups[u]);
        for (int p : {kEven, kOdd}) {
            if (b1.vec[p].cols() != r.rank(p)) return false;
            if (b1.vec[p].rows() != x.diagram.groups[v].gens((p + 1) % 2)) return false;
        }
    }
    return true;
}

XObstruction obstruction_x(const XObject& obj) {
    if (!xobject_valid(obj)) throw std::invalid_argument("obstruction_x: invalid X-object");
    XObstruction out{ext2_diagram(obj.diagram.suspended(), obj.diagram, 0), {}, false};
    std::vector<ExtElement> family;
    family.reserve(obj.odd_edge.size());
    for (const auto& b1 : obj.odd_edge) family.push_back(b1.with_suspended_source());
    out.coords = out.ext2.encode_family(family);
    out.is_zero = out.ext2.family_is_zero_class(family);
    return out;
}

namespace {

void require_x_isomorphism(const XObject& a, const XObject& b, const std::vector<GradedMap>& t0) {
    if (a.diagram.space.labels != b.diagram.space.labels ||
        a.diagram.space.edges != b.diagram.space.edges)
        throw std::invalid_argument("X objects live over different spaces");
    if (t0.size() != a.diagram.space.size())
        throw std::invalid_argument("t0 must have one map per vertex");
    for (std::size_t x = 0; x < t0.size(); ++x) {
        if (t0[x].degree != 0 || !t0[x].is_relation_compatible() || !is_isomorphism(t0[x]))
            throw std::invalid_argument("t0 is not a vertexwise isomorphism");
    }
    for (std::size_t e = 0; e < a.diagram.space.edges.size(); ++e) {
        const auto& [x, y] = a.diagram.space.edges[e];
        if (!maps_equal(compose(t0[y], a.diagram.edge_maps[e]),
                        compose(b.diagram.edge_maps[e], t0[x])))
            throw std::invalid_argument("t0 squares do not commute");
    }
}

std::vector<ExtElement> relative_rhs(const XObject& a, const XObject& b,
                                     const std::vector<GradedMap>& t0) {
    std::vector<ExtElement> rhs;
    for (std::size_t e = 0; e < a.diagram.space.edges.size(); ++e) {
        const auto& [x, y] = a.diagram.space.edges[e];
        ExtElement beta1 = b.odd_edge[e].with_suspended_source();
        ExtElement alpha1 = a.odd_edge[e].with_suspended_source();
        rhs.push_back(ext_sub(pull_ext(beta1, t0[x].suspended()), push_ext(alpha1, t0[y])));
    }
    return rhs;
}

}  // namespace

XRelativeData relative_obstruction_x(const XObject& a, const XObject& b,
                                     const std::vector<GradedMap>& t0) {
    if (!xobject_valid(a) || !xobject_valid(b))
        throw std::invalid_argument("relative_obstruction_x: invalid X-object");
    require_x_isomorphism(a, b, t0);
    XRelativeData out;
    out.mixed_g = a.diagram.suspended();
    out.mixed_h = b.diagram;
    out.ext2 = ext2_diagram(out.mixed_g, out.mixed_h, 0);
    out.rhs = relative_rhs(a, b, t0);
    out.coords = out.ext2.encode_family(out.rhs);
    out.is_zero = out.ext2.family_is_zero_class(out.rhs);
    return out;
}

XDecision classify_x(const XObject& a, const XObject& b, const std::vector<GradedMap>& t0) {
    XRelativeData data = relative_obstruction_x(a, b, t0);
    // The defining map of ext2 is (push - pull); the witness equation
    // t1_y alpha0 - beta0 t1_x = rhs uses (pull - push), so solve for -rhs.
    std::vector<Int> target(data.coords.size());
    for (std::size_t i = 0; i < target.size(); ++i) target[i] = -data.coords[i];
    auto x = solve_modulo(data.ext2.matrix, data.ext2.codomain.relators(), target);
    XDecision out;
    if (!x) {
        out.equivalent = false;
        out.obstruction = std::move(data);
        return out;
    }
    std::vector<ExtElement> witness;
    for (std::size_t v = 0; v < data.ext2.domain.pres.size(); ++v) {
        const auto& pres = data.ext2.domain.pres[v];
        std::vector<Int> block(x->begin() + static_cast<long>(data.ext2.domain.offsets[v]),
                               x->begin() + static_cast<long>(data.ext2.domain.offsets[v] +
                                                              pres->num_gens()));
        witness.push_back(pres->decode(block));
    }
    // Exact re-verification of the witness condition on every edge.
    for (std::size_t e = 0; e < a.diagram.space.edges.size(); ++e) {
        const auto& [u, v] = a.diagram.space.edges[e];
        ExtElement lhs = ext_sub(pull_ext(witness[v], a.diagram.edge_maps[e].suspended()),
                                 push_ext(witness[u], b.diagram.edge_maps[e]));
        if (!data.ext2.codomain.pres[e]->classes_equal(lhs, data.rhs[e]))
            throw std::logic_error("classify_x: witness failed re-verification");
    }
    out.equivalent = true;
    out.witness = std::move(witness);
    return out;
}

DiagramHom hom_diagram(const Diagram& g, const Diagram& h) {
    if (g.space.labels != h.space.labels || g.space.edges != h.space.edges)
        throw std::invalid_argument("hom_diagram: space mismatch");
    std::size_t n = g.space.size();
    auto vertex_homs = std::make_shared<std::vector<HomGroupResult>>();
    for (std::size_t x = 0; x < n; ++x) vertex_homs->push_back(hom_group(g.groups[x], h.groups[x]));
    std::vector<HomGroupResult> edge_homs;
    for (const auto& [x, y] : g.space.edges) edge_homs.push_back(hom_group(g.groups[x], h.groups[y]));

    // Commuting-square condition map per parity.
    std::array<IntMatrix, 2> comp;
    GradedGroup domain, codomain;
    std::vector<std::array<std::size_t, 2>> dom_off(n), cod_off(g.space.edges.size());
    for (int d : {kEven, kOdd}) {
        std::size_t dom_total = 0, cod_total = 0;
        for (std::size_t x = 0; x < n; ++x) {
            dom_off[x][d] = dom_total;
            dom_total += (*vertex_homs)[x].group.gens(d);
        }
        for (std::size_t e = 0; e < edge_homs.size(); ++e) {
            cod_off[e][d] = cod_total;
            cod_total += edge_homs[e].group.gens(d);
        }
        std::vector<IntMatrix> dom_blocks, cod_blocks;
        for (std::size_t x = 0; x < n; ++x) dom_blocks.push_back((*vertex_homs)[x].group.rels[d]);
        for (auto& e : edge_homs) cod_blocks.push_back(e.group.rels[d]);
        domain.rels[d] = IntMatrix::block_diag(dom_blocks);
        codomain.rels[d] = IntMatrix::block_diag(cod_blocks);
        comp[d] = IntMatrix(cod_total, dom_total);

        for (std::size_t x = 0; x < n; ++x) {
            std::size_t nx = (*vertex_homs)[x].group.gens(d);
            for (std::size_t i = 0; i < nx; ++i) {
                std::vector<Int> unit(nx);
                unit[i] = 1;
                GradedMap f = (*vertex_homs)[x].decode(d, unit);
                for (std::size_t e = 0; e < g.space.edges.size(); ++e) {
                    const auto& [u, v] = g.space.edges[e];
                    std::optional<GradedMap> contribution;
                    if (u == x) contribution = compose(h.edge_maps[e], f);
                    if (v == x) {
                        GradedMap pulled = compose(f, g.edge_maps[e]);
                        contribution = contribution ? map_diff(*contribution, pulled)
                                                    : map_negate(pulled);
                    }
                    if (!contribution) continue;
                    auto block = edge_homs[e].encode(*contribution);
                    if (!block) throw std::logic_error("hom_diagram: encode failed");
                    for (std::size_t r = 0; r < block->size(); ++r)
                        comp[d](cod_off[e][d] + r, dom_off[x][d] + i) = (*block)[r];
                }
            }
        }
    }

    GradedMap condition(domain, codomain, 0, std::move(comp));
    SubgroupResult ker = kernel_of(condition);
    DiagramHom out;
    out.group = ker.group;
    GradedMap incl = ker.inclusion;
    auto offsets = std::make_shared<std::vector<std::array<std::size_t, 2>>>(dom_off);
    out.decode = [vertex_homs, incl, offsets, n](int parity, const std::vector<Int>& coords) {
        std::vector<Int> full = incl.comp[parity].apply(coords);
        std::vector<GradedMap> family;
        for (std::size_t x = 0; x < n; ++x) {
            std::size_t off = (*offsets)[x][parity];
            std::size_t len = (*vertex_homs)[x].group.gens(parity);
            std::vector<Int> block(full.begin() + static_cast<long>(off),
                                   full.begin() + static_cast<long>(off + len));
            family.push_back((*vertex_homs)[x].decode(parity, block));
        }
        return family;
    };
    return out;
}

}  // namespace homkk

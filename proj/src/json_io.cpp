#include "homkk/json_io.hpp"

namespace homkk::io {

namespace {

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw ParseError("not a decimal integer string: " + j.dump());
        }
    }
    throw ParseError("expected integer or decimal string, got " + j.dump());
}

Json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

const Json& expect(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j.at(i).is_array() || j.at(i).size() != cols)
            throw ParseError("matrix rows must be arrays of equal length");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = int_from_json(j.at(i).at(c));
    }
    return m;
}

namespace {

Json half_to_json(const GradedGroup& g, int p) {
    Json out;
    out["gens"] = g.gens(p);
    out["rels"] = matrix_to_json(g.rels[p]);
    return out;
}

IntMatrix half_from_json(const Json& j) {
    std::size_t gens = expect(j, "gens").get<std::size_t>();
    IntMatrix rels = matrix_from_json(expect(j, "rels"));
    if (rels.rows() != gens) {
        if (rels.rows() == 0 && rels.cols() == 0) return IntMatrix(gens, 0);
        throw ParseError("rels must have one row per generator");
    }
    return rels;
}

}  // namespace

Json group_to_json(const GradedGroup& g) {
    Json out;
    out["even"] = half_to_json(g, kEven);
    out["odd"] = half_to_json(g, kOdd);
    return out;
}

GradedGroup group_from_json(const Json& j) {
    return GradedGroup(half_from_json(expect(j, "even")), half_from_json(expect(j, "odd")));
}

Json map_to_json(const GradedMap& f) {
    Json out;
    out["degree"] = f.degree;
    out["even"] = matrix_to_json(f.comp[kEven]);
    out["odd"] = matrix_to_json(f.comp[kOdd]);
    return out;
}

GradedMap map_from_json(const Json& j, const GradedGroup& source, const GradedGroup& target) {
    int degree = expect(j, "degree").get<int>();
    if (degree != 0 && degree != 1) throw ParseError("map degree must be 0 or 1");
    std::array<IntMatrix, 2> comp = {matrix_from_json(expect(j, "even")),
                                     matrix_from_json(expect(j, "odd"))};
    for (int p : {kEven, kOdd}) {
        std::size_t rows = target.gens((p + degree) % 2), cols = source.gens(p);
        if (comp[p].rows() == 0 && comp[p].cols() == 0) comp[p] = IntMatrix(rows, cols);
        if (comp[p].rows() != rows || comp[p].cols() != cols)
            throw ParseError("map component shape mismatch");
    }
    GradedMap f(source, target, degree, std::move(comp));
    if (!f.is_relation_compatible()) throw ParseError("map is not relation-compatible");
    return f;
}

Json ext_to_json(const ExtElement& e) {
    Json out;
    out["degree"] = e.degree;
    out["even_vectors"] = matrix_to_json(e.vec[kEven]);
    out["odd_vectors"] = matrix_to_json(e.vec[kOdd]);
    return out;
}

ExtElement ext_from_json(const Json& j, const GradedGroup& source, const GradedGroup& target) {
    ExtElement e;
    e.source = source;
    e.target = target;
    e.degree = expect(j, "degree").get<int>();
    if (e.degree != 0 && e.degree != 1) throw ParseError("ext degree must be 0 or 1");
    e.vec[kEven] = matrix_from_json(expect(j, "even_vectors"));
    e.vec[kOdd] = matrix_from_json(expect(j, "odd_vectors"));
    CanonicalResolution r = canonical_resolution(source);
    for (int p : {kEven, kOdd}) {
        std::size_t rows = target.gens((p + e.degree) % 2), cols = r.rank(p);
        if (e.vec[p].rows() == 0 && e.vec[p].cols() == 0) e.vec[p] = IntMatrix(rows, cols);
        if (e.vec[p].rows() != rows || e.vec[p].cols() != cols)
            throw ParseError("ext element vector shape mismatch");
    }
    return e;
}

Json zobject_to_json(const ZObject& z) {
    Json out;
    out["group"] = group_to_json(z.module.group);
    out["action"] = map_to_json(z.module.action);
    out["action_inverse"] = map_to_json(z.module.action_inverse);
    out["odd_part"] = ext_to_json(z.odd_part);
    return out;
}

ZObject zobject_from_json(const Json& j) {
    ZObject z;
    z.module.group = group_from_json(expect(j, "group"));
    z.module.action = map_from_json(expect(j, "action"), z.module.group, z.module.group);
    z.module.action_inverse =
        map_from_json(expect(j, "action_inverse"), z.module.group, z.module.group);
    z.odd_part = ext_from_json(expect(j, "odd_part"), z.module.group, z.module.group);
    return z;
}

Json space_to_json(const UniquePathSpace& s) {
    Json out;
    out["vertices"] = s.labels;
    Json edges = Json::array();
    for (const auto& [x, y] : s.edges) edges.push_back(Json::array({s.labels[x], s.labels[y]}));
    out["edges"] = std::move(edges);
    return out;
}

UniquePathSpace space_from_json(const Json& j) {
    UniquePathSpace s;
    for (const auto& v : expect(j, "vertices")) s.labels.push_back(v.get<std::string>());
    for (const auto& e : expect(j, "edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [from, to] pairs");
        s.edges.emplace_back(s.index_of(e.at(0).get<std::string>()),
                             s.index_of(e.at(1).get<std::string>()));
    }
    s.sort_edges();
    return s;
}

namespace {

std::string edge_key(const UniquePathSpace& s, std::size_t e) {
    return s.labels[s.edges[e].first] + "->" + s.labels[s.edges[e].second];
}

}  // namespace

Json diagram_to_json(const Diagram& d) {
    Json out = space_to_json(d.space);
    Json groups;
    for (std::size_t v = 0; v < d.space.size(); ++v)
        groups[d.space.labels[v]] = group_to_json(d.groups[v]);
    out["groups"] = std::move(groups);
    Json maps;
    for (std::size_t e = 0; e < d.space.edges.size(); ++e)
        maps[edge_key(d.space, e)] = map_to_json(d.edge_maps[e]);
    out["edge_maps"] = std::move(maps);
    return out;
}

Diagram diagram_from_json(const Json& j) {
    Diagram d;
    d.space = space_from_json(j);
    const Json& groups = expect(j, "groups");
    for (const std::string& label : d.space.labels) {
        if (!groups.contains(label)) throw ParseError("missing group for vertex " + label);
        d.groups.push_back(group_from_json(groups.at(label)));
    }
    const Json& maps = expect(j, "edge_maps");
    for (std::size_t e = 0; e < d.space.edges.size(); ++e) {
        std::string key = edge_key(d.space, e);
        if (!maps.contains(key)) throw ParseError("missing edge map " + key);
        d.edge_maps.push_back(map_from_json(maps.at(key), d.groups[d.space.edges[e].first],
                                            d.groups[d.space.edges[e].second]));
    }
    return d;
}

Json xobject_to_json(const XObject& x) {
    Json out = diagram_to_json(x.diagram);
    Json odd;
    for (std::size_t e = 0; e < x.diagram.space.edges.size(); ++e)
        odd[edge_key(x.diagram.space, e)] = ext_to_json(x.odd_edge[e]);
    out["odd_edge"] = std::move(odd);
    return out;
}

XObject xobject_from_json(const Json& j) {
    XObject x;
    x.diagram = diagram_from_json(j);
    const Json& odd = expect(j, "odd_edge");
    for (std::size_t e = 0; e < x.diagram.space.edges.size(); ++e) {
        std::string key = edge_key(x.diagram.space, e);
        if (!odd.contains(key)) throw ParseError("missing odd edge class " + key);
        x.odd_edge.push_back(ext_from_json(odd.at(key),
                                           x.diagram.groups[x.diagram.space.edges[e].first],
                                           x.diagram.groups[x.diagram.space.edges[e].second]));
    }
    return x;
}

std::vector<GradedMap> vertex_maps_from_json(const Json& j, const Diagram& source,
                                             const Diagram& target) {
    const Json& body = j.is_object() && j.contains("t0") ? j.at("t0") : j;
    std::vector<GradedMap> out;
    for (std::size_t v = 0; v < source.space.size(); ++v) {
        const std::string& label = source.space.labels[v];
        if (!body.contains(label)) throw ParseError("missing vertex map for " + label);
        out.push_back(map_from_json(body.at(label), source.groups[v], target.groups[v]));
    }
    return out;
}

Json nt_module_to_json(const NTModule& m) {
    Json out;
    out["n"] = m.n;
    Json slots, gi, gr, gd;
    for (const Interval& i : all_intervals(m.n)) {
        std::size_t idx = interval_index(m.n, i);
        slots[i.key()] = group_to_json(m.slot[idx]);
        if (m.gen_i[idx]) gi[i.key()] = map_to_json(*m.gen_i[idx]);
        if (m.gen_r[idx]) gr[i.key()] = map_to_json(*m.gen_r[idx]);
        if (m.gen_delta[idx]) gd[i.key()] = map_to_json(*m.gen_delta[idx]);
    }
    out["slots"] = std::move(slots);
    out["i"] = std::move(gi);
    out["r"] = std::move(gr);
    out["delta"] = std::move(gd);
    return out;
}

NTModule nt_module_from_json(const Json& j) {
    NTModule m;
    m.n = expect(j, "n").get<int>();
    if (m.n < 2) throw ParseError("n must be at least 2");
    auto intervals = all_intervals(m.n);
    m.slot.resize(intervals.size());
    m.gen_i.resize(intervals.size());
    m.gen_r.resize(intervals.size());
    m.gen_delta.resize(intervals.size());
    const Json& slots = expect(j, "slots");
    for (const Interval& i : intervals) {
        if (!slots.contains(i.key())) throw ParseError("missing slot " + i.key());
        m.slot[interval_index(m.n, i)] = group_from_json(slots.at(i.key()));
    }
    const Json& gi = expect(j, "i");
    const Json& gr = expect(j, "r");
    const Json& gd = expect(j, "delta");
    for (const Interval& i : intervals) {
        std::size_t idx = interval_index(m.n, i);
        if (i.a + 1 <= i.b) {
            if (!gi.contains(i.key())) throw ParseError("missing i map at " + i.key());
            m.gen_i[idx] = map_from_json(gi.at(i.key()), m.at({i.a + 1, i.b}), m.at(i));
        }
        if (i.b < m.n) {
            if (!gr.contains(i.key())) throw ParseError("missing r map at " + i.key());
            m.gen_r[idx] = map_from_json(gr.at(i.key()), m.at({i.a, i.b + 1}), m.at(i));
        }
        if (i.b == m.n && i.a >= 2) {
            if (!gd.contains(i.key())) throw ParseError("missing delta map at " + i.key());
            m.gen_delta[idx] = map_from_json(gd.at(i.key()), m.at({1, i.a - 1}), m.at(i));
        }
    }
    return m;
}

Json nt_resolution_to_json(const NTResolution& r) {
    Json out;
    out["n"] = r.n;
    Json q0, q1, f, phi;
    for (const Interval& i : all_intervals(r.n)) {
        std::size_t idx = interval_index(r.n, i);
        q0[i.key()] = Json::array({r.q0[idx][kEven], r.q0[idx][kOdd]});
        q1[i.key()] = Json::array({r.q1[idx][kEven], r.q1[idx][kOdd]});
        f[i.key()] = map_to_json(r.f[idx]);
    }
    for (const auto& [key, block] : r.phi) {
        auto intervals = all_intervals(r.n);
        phi[intervals[key.first].key() + "^" + intervals[key.second].key()] = map_to_json(block);
    }
    out["q0_ranks"] = std::move(q0);
    out["q1_ranks"] = std::move(q1);
    out["f"] = std::move(f);
    out["phi"] = std::move(phi);
    return out;
}

}  // namespace homkk::io

#pragma once

#include <memory>
#include <string>
#include <utility>

#include "homkk/uct.hpp"

namespace homkk {

/// Directed graph with at most one directed path between any two vertices.
/// The induced order: x <= y iff there is a directed path from y to x, so
/// U_x = { y : x <= y } is the set of vertices with a path down to x.
struct UniquePathSpace {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (x, y) for x -> y

    std::size_t size() const { return labels.size(); }
    std::size_t index_of(const std::string& label) const;
    /// Edges sorted lexicographically by (source label, target label).
    void sort_edges();
};

struct UpsViolation {
    enum Kind { cycle, duplicated_path } kind;
    std::size_t from, to;
    std::string describe(const UniquePathSpace& space) const;
};

/// Path counting with memoization; reports a cycle or a duplicated path.
std::optional<UpsViolation> validate_ups(const UniquePathSpace& space);

/// reach(x, y) = there is a directed path x ~> y (so y <= x).
std::vector<std::vector<bool>> reachability(const UniquePathSpace& space);

/// All ordered pairs x <= y of the Alexandrov order.
std::vector<std::pair<std::size_t, std::size_t>> order_relation(const UniquePathSpace& space);

/// The unique directed path x ~> y including both endpoints; empty if none.
std::vector<std::size_t> unique_path(const UniquePathSpace& space, std::size_t x, std::size_t y);

/// Diagram of graded groups over a unique path space: one group per vertex,
/// one degree-0 map per edge.
struct Diagram {
    UniquePathSpace space;
    std::vector<GradedGroup> groups;
    std::vector<GradedMap> edge_maps;  // aligned with space.edges

    Diagram suspended() const;
};

bool diagram_valid(const Diagram& d);

/// Composite of edge maps along the unique path x ~> z (identity when x = z).
GradedMap path_map(const Diagram& d, std::size_t x, std::size_t z);

/// The diagram J_z(B): value B at every x <= z with identity edge maps.
Diagram j_object(const UniquePathSpace& space, std::size_t z, const GradedGroup& b);

/// A vertexwise family of maps between diagrams of a common space.
struct DiagramMap {
    std::vector<GradedMap> at;  // one per vertex
};
bool diagram_map_valid(const Diagram& src, const Diagram& tgt, const DiagramMap& f);

/// The canonical length-1 projective resolution
///   0 -> (+)_{x->y} J_y(G_x) --psi--> (+)_x J_x(G_x) --q--> G -> 0
/// together with vertexwise summand bookkeeping.
struct DiagramResolution {
    Diagram top, mid;       // the two projective diagrams
    DiagramMap psi, q;      // psi : top -> mid, q : mid -> G
    // top vertex z holds G_x per edge x->y with z <= y; mid vertex z holds G_x per x >= z
    std::vector<std::vector<std::size_t>> top_parts;  // edge indices per vertex
    std::vector<std::vector<std::size_t>> mid_parts;  // vertex indices per vertex
};

DiagramResolution canonical_diagram_resolution(const Diagram& g);

struct ExactnessFailure {
    std::size_t vertex;
    int position;  // 0 = at top (injectivity), 1 = middle, 2 = at G (surjectivity)
};
/// Per-vertex homology check of the resolution at all three spots.
std::optional<ExactnessFailure> check_resolution_exact(const Diagram& g,
                                                       const DiagramResolution& r);

/// One Ext presentation per vertex or edge pairing, with offsets, for classes
/// of a fixed degree.
struct ExtFamilyLayout {
    std::vector<std::shared_ptr<ExtPresentation>> pres;
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
    IntMatrix relators() const;
};

/// Ext^2 between diagrams as the cokernel of
///   prod_x Ext(G_x, H_x) -> prod_{x->y} Ext(G_x, H_y),
///   (t_x) |-> (eta_{y,x} . t_x - t_y . gamma_{y,x}).
/// Elements of both groups are families of degree-d ExtElements.
struct DiagramExt2 {
    Diagram g, h;
    int degree;
    ExtFamilyLayout domain, codomain;  // vertex-indexed and edge-indexed
    IntMatrix matrix;                  // codomain gens x domain gens
    GradedGroup cokernel;              // single-parity presentation at kEven

    std::vector<Int> encode_family(const std::vector<ExtElement>& per_edge) const;
    bool family_is_zero_class(const std::vector<ExtElement>& per_edge) const;
    /// Image of a vertex family under the defining map, as an edge family.
    std::vector<ExtElement> apply(const std::vector<ExtElement>& per_vertex) const;
};

DiagramExt2 ext2_diagram(const Diagram& g, const Diagram& h, int degree);

/// Diagram with parity-reversing edge data: beta^1_{y,x} in Ext(Sigma G_x, G_y),
/// stored as degree-1 ExtElements aligned with the edges.
struct XObject {
    Diagram diagram;
    std::vector<ExtElement> odd_edge;
};
bool xobject_valid(const XObject& x);

struct XObstruction {
    DiagramExt2 ext2;  // between Sigma(diagram) and diagram
    std::vector<Int> coords;
    bool is_zero;
};
/// Obstruction class: the family (beta^1_{y,x}) in ext2 of (Sigma G, G).
XObstruction obstruction_x(const XObject& obj);

/// Relative obstruction of a vertexwise isomorphism t0 with commuting squares:
/// class of (beta^1 t0_x - t0_y alpha^1) in the cokernel of
/// (t1_x) |-> (t1_y alpha^0 - beta^0 t1_x).
struct XRelativeData {
    Diagram mixed_g, mixed_h;       // Sigma A-diagram and B-diagram
    DiagramExt2 ext2;               // mixed cokernel data
    std::vector<ExtElement> rhs;    // per-edge representative
    std::vector<Int> coords;
    bool is_zero;
};
XRelativeData relative_obstruction_x(const XObject& a, const XObject& b,
                                     const std::vector<GradedMap>& t0);

struct XDecision {
    bool equivalent;
    std::optional<std::vector<ExtElement>> witness;  // per-vertex t^1 family
    std::optional<XRelativeData> obstruction;
};
XDecision classify_x(const XObject& a, const XObject& b, const std::vector<GradedMap>& t0);

/// Hom of diagrams: the kernel of the commuting-square conditions inside
/// prod_x Hom(G_x, H_x), with a decoder to vertex families.
struct DiagramHom {
    GradedGroup group;
    std::function<std::vector<GradedMap>(int parity, const std::vector<Int>&)> decode;
};
DiagramHom hom_diagram(const Diagram& g, const Diagram& h);

}  // namespace homkk

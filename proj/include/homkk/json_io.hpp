#pragma once

#include "homkk/laurent.hpp"
#include "homkk/nt.hpp"
#include "homkk/poset.hpp"

// Only the ordered variant is used so reports serialize deterministically.
#include "json.hpp"

namespace homkk::io {

using Json = nlohmann::ordered_json;

/// Thrown on malformed or inconsistent input documents.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json group_to_json(const GradedGroup& g);
GradedGroup group_from_json(const Json& j);

Json map_to_json(const GradedMap& f);
/// Source and target come from context; degree from the document.
GradedMap map_from_json(const Json& j, const GradedGroup& source, const GradedGroup& target);

Json ext_to_json(const ExtElement& e);
ExtElement ext_from_json(const Json& j, const GradedGroup& source, const GradedGroup& target);

Json zobject_to_json(const ZObject& z);
ZObject zobject_from_json(const Json& j);

Json space_to_json(const UniquePathSpace& s);
UniquePathSpace space_from_json(const Json& j);

Json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const Json& j);

Json xobject_to_json(const XObject& x);
XObject xobject_from_json(const Json& j);

/// Vertexwise map family {"t0": {label: map}} (or a bare object of maps).
std::vector<GradedMap> vertex_maps_from_json(const Json& j, const Diagram& source,
                                             const Diagram& target);

Json nt_module_to_json(const NTModule& m);
NTModule nt_module_from_json(const Json& j);

Json nt_resolution_to_json(const NTResolution& r);

}  // namespace homkk::io

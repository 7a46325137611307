// Command-line front end: parses JSON inputs, dispatches the exact-algebra
// computations and emits deterministic machine-readable reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "homkk/json_io.hpp"

namespace {

using homkk::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitPrecondition = 3;

struct CliError {
    int code;
    std::string message;
};

struct Options {
    std::vector<std::string> inputs;
    std::string output;
    unsigned long seed = 0;
    int max_n = 6;
    std::string format = "json";
};

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitValidation, "cannot open input file: " + path};
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw CliError{kExitValidation, "malformed JSON in " + path + ": " + e.what()};
    }
}

const Json& input(const std::vector<Json>& docs, std::size_t i, const char* what) {
    if (i >= docs.size())
        throw CliError{kExitValidation, std::string("missing input: expected ") + what};
    return docs[i];
}

Json factors_json(const std::vector<homkk::Int>& fs) {
    Json out = Json::array();
    for (const auto& f : fs) out.push_back(f.fits_slong_p() ? Json(f.get_si()) : Json(f.get_str()));
    return out;
}

Json graded_factors_json(const homkk::GradedGroup& g) {
    auto fs = invariant_factors(g);
    Json out;
    out["even"] = factors_json(fs[homkk::kEven]);
    out["odd"] = factors_json(fs[homkk::kOdd]);
    return out;
}

Json coords_json(const std::vector<homkk::Int>& v) { return factors_json(v); }

std::size_t matrix_limit() {
    const char* env = std::getenv("HOMKK_MAX_MATRIX");
    if (!env) return 4096;
    return static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
}

void guard_matrix(const homkk::IntMatrix& m) {
    std::size_t lim = matrix_limit();
    if (m.rows() > lim || m.cols() > lim)
        throw CliError{kExitValidation, "matrix exceeds HOMKK_MAX_MATRIX = " + std::to_string(lim)};
}

// ---- per-verb handlers ----------------------------------------------------

Json run_snf(const std::vector<Json>& docs) {
    const Json& doc = input(docs, 0, "a matrix document");
    homkk::IntMatrix m =
        homkk::io::matrix_from_json(doc.is_object() ? doc.at("matrix") : doc);
    guard_matrix(m);
    homkk::SmithDecomposition s = homkk::smith_normal_form(m);
    Json out;
    out["U"] = homkk::io::matrix_to_json(s.U);
    out["D"] = homkk::io::matrix_to_json(s.D);
    out["V"] = homkk::io::matrix_to_json(s.V);
    out["rank"] = s.rank;
    out["invariant_factors"] = factors_json(homkk::invariant_factors(m));
    return out;
}

Json run_hom_or_ext(const std::vector<Json>& docs, bool want_ext) {
    homkk::GradedGroup g = homkk::io::group_from_json(input(docs, 0, "graded group G"));
    homkk::GradedGroup h = homkk::io::group_from_json(input(docs, 1, "graded group H"));
    Json out;
    if (want_ext) {
        auto ext = homkk::ext_group(g, h);
        out["ext"] = graded_factors_json(ext.group);
    } else {
        auto hom = homkk::hom_group(g, h);
        out["hom"] = graded_factors_json(hom.group);
    }
    return out;
}

homkk::ZObject parse_zobject(const Json& doc) {
    homkk::ZObject z = homkk::io::zobject_from_json(doc);
    if (!homkk::zobject_valid(z))
        throw CliError{kExitPrecondition, "the action is not invertible on the module"};
    return z;
}

Json run_ext2_z(const std::vector<Json>& docs) {
    homkk::ZObject a = parse_zobject(input(docs, 0, "Z-object A"));
    homkk::ZObject b = parse_zobject(input(docs, 1, "Z-object B"));
    homkk::LaurentExt2 e2 = homkk::ext2_laurent(a.module, b.module);
    Json out;
    out["ext_group"] = graded_factors_json(e2.ext.group);
    out["ext2"] = graded_factors_json(e2.group);
    return out;
}

Json run_obstruct_z(const std::vector<Json>& docs) {
    homkk::ZObject z = parse_zobject(input(docs, 0, "Z-object"));
    homkk::LaurentObstruction o = homkk::obstruction_z(z);
    Json out;
    out["ext2"] = graded_factors_json(o.ext2.group);
    out["class"] = coords_json(o.coords);
    out["is_zero"] = o.is_zero;
    return out;
}

Json run_classify_z(const std::vector<Json>& docs) {
    homkk::ZObject a = parse_zobject(input(docs, 0, "Z-object A"));
    homkk::ZObject b = parse_zobject(input(docs, 1, "Z-object B"));
    homkk::GradedMap t0 =
        homkk::io::map_from_json(input(docs, 2, "module isomorphism t0"), a.module.group,
                                 b.module.group);
    homkk::ZDecision d = [&] {
        try {
            return homkk::equivalent_z(a, b, t0);
        } catch (const std::invalid_argument& e) {
            throw CliError{kExitPrecondition, e.what()};
        }
    }();
    Json out;
    out["equivalent"] = d.equivalent;
    if (d.witness) out["witness"] = homkk::io::ext_to_json(*d.witness);
    if (d.obstruction) {
        out["obstruction"] = coords_json(d.obstruction->coords);
        out["ext2"] = graded_factors_json(d.obstruction->ext2.group);
    }
    return out;
}

Json run_validate_ups(const std::vector<Json>& docs) {
    homkk::UniquePathSpace s = homkk::io::space_from_json(input(docs, 0, "unique path space"));
    auto violation = homkk::validate_ups(s);
    Json out;
    out["ok"] = !violation.has_value();
    if (violation) out["violation"] = violation->describe(s);
    Json order = Json::array();
    if (!violation) {
        for (const auto& [x, y] : homkk::order_relation(s))
            order.push_back(Json::array({s.labels[x], s.labels[y]}));
        out["order"] = std::move(order);
    }
    return out;
}

homkk::Diagram parse_diagram(const Json& doc) {
    homkk::Diagram d = homkk::io::diagram_from_json(doc);
    if (auto v = homkk::validate_ups(d.space))
        throw CliError{kExitValidation, "invalid unique path space: " + v->describe(d.space)};
    if (!homkk::diagram_valid(d)) throw CliError{kExitValidation, "invalid diagram"};
    return d;
}

Json run_resolve_diagram(const std::vector<Json>& docs) {
    homkk::Diagram d = parse_diagram(input(docs, 0, "diagram"));
    homkk::DiagramResolution r = homkk::canonical_diagram_resolution(d);
    auto failure = homkk::check_resolution_exact(d, r);
    Json out;
    out["exact"] = !failure.has_value();
    if (failure) {
        out["failure"] = Json{{"vertex", d.space.labels[failure->vertex]},
                              {"position", failure->position}};
    }
    Json vertices;
    for (std::size_t v = 0; v < d.space.size(); ++v) {
        vertices[d.space.labels[v]] = Json{{"top", graded_factors_json(r.top.groups[v])},
                                           {"mid", graded_factors_json(r.mid.groups[v])}};
    }
    out["resolution"] = std::move(vertices);
    return out;
}

Json run_ext2_x(const std::vector<Json>& docs) {
    homkk::Diagram g = parse_diagram(input(docs, 0, "diagram G"));
    homkk::Diagram h = parse_diagram(input(docs, 1, "diagram H"));
    if (g.space.labels != h.space.labels || g.space.edges != h.space.edges)
        throw CliError{kExitValidation, "diagrams live over different spaces"};
    homkk::DiagramExt2 e2 = homkk::ext2_diagram(g, h, 0);
    Json out;
    homkk::GradedGroup wrapped;
    wrapped.rels[homkk::kEven] = e2.cokernel.rels[homkk::kEven];
    out["ext2_factors"] = factors_json(homkk::invariant_factors(wrapped.rels[homkk::kEven]));
    return out;
}

homkk::XObject parse_xobject(const Json& doc) {
    homkk::XObject x = homkk::io::xobject_from_json(doc);
    if (!homkk::xobject_valid(x)) throw CliError{kExitValidation, "invalid X-object"};
    return x;
}

Json run_obstruct_x(const std::vector<Json>& docs) {
    homkk::XObject x = parse_xobject(input(docs, 0, "X-object"));
    homkk::XObstruction o = homkk::obstruction_x(x);
    Json out;
    out["class"] = coords_json(o.coords);
    out["is_zero"] = o.is_zero;
    return out;
}

Json run_classify_x(const std::vector<Json>& docs) {
    homkk::XObject a = parse_xobject(input(docs, 0, "X-object A"));
    homkk::XObject b = parse_xobject(input(docs, 1, "X-object B"));
    std::vector<homkk::GradedMap> t0 =
        homkk::io::vertex_maps_from_json(input(docs, 2, "vertex isomorphisms t0"), a.diagram,
                                         b.diagram);
    homkk::XDecision d = [&] {
        try {
            return homkk::classify_x(a, b, t0);
        } catch (const std::invalid_argument& e) {
            throw CliError{kExitPrecondition, e.what()};
        }
    }();
    Json out;
    out["equivalent"] = d.equivalent;
    if (d.witness) {
        Json w;
        for (std::size_t v = 0; v < d.witness->size(); ++v)
            w[a.diagram.space.labels[v]] = homkk::io::ext_to_json((*d.witness)[v]);
        out["witness"] = std::move(w);
    }
    if (d.obstruction) out["obstruction"] = coords_json(d.obstruction->coords);
    return out;
}

homkk::NTModule parse_nt(const Json& doc, int max_n) {
    homkk::NTModule m = homkk::io::nt_module_from_json(doc);
    if (m.n > max_n)
        throw CliError{kExitValidation,
                       "n exceeds --max-n = " + std::to_string(max_n)};
    return m;
}

Json run_nt_validate(const std::vector<Json>& docs, int max_n) {
    homkk::NTModule m = parse_nt(input(docs, 0, "NT-module"), max_n);
    auto v = homkk::nt_validate(m);
    Json out;
    out["ok"] = !v.has_value();
    if (v) out["violation"] = v->what;
    return out;
}

Json run_nt_exact(const std::vector<Json>& docs, int max_n) {
    homkk::NTModule m = parse_nt(input(docs, 0, "NT-module"), max_n);
    if (auto v = homkk::nt_validate(m)) throw CliError{kExitValidation, v->what};
    auto f = homkk::check_exact(m);
    Json out;
    out["exact"] = !f.has_value();
    if (f)
        out["failure"] = Json{{"a", f->a}, {"b", f->b}, {"c", f->c}, {"position", f->position}};
    return out;
}

homkk::NTModule parse_exact_nt(const std::vector<Json>& docs, int max_n) {
    homkk::NTModule m = parse_nt(input(docs, 0, "NT-module"), max_n);
    if (auto v = homkk::nt_validate(m)) throw CliError{kExitValidation, v->what};
    if (homkk::check_exact(m))
        throw CliError{kExitPrecondition, "module is not exact"};
    return m;
}

Json run_nt_resolve(const std::vector<Json>& docs, int max_n) {
    homkk::NTModule m = parse_exact_nt(docs, max_n);
    homkk::NTResolution r = homkk::build_resolution(m);
    auto failure = homkk::verify_resolution(m, r);
    Json out;
    out["verified"] = !failure.has_value();
    if (failure) out["failure"] = failure->what;
    out["resolution"] = homkk::io::nt_resolution_to_json(r);
    return out;
}

Json run_nt_obstruct(const std::vector<Json>& docs, int max_n) {
    homkk::NTModule m = parse_exact_nt(docs, max_n);
    homkk::NTResolution r = homkk::build_resolution(m);
    homkk::NTObstruction o = homkk::obstruction_filtrated(m, r);
    Json out;
    Json raw = Json::array();
    for (std::size_t e = 0; e < o.raw.size(); ++e) {
        raw.push_back(Json{{"even", homkk::io::matrix_to_json(o.raw[e][homkk::kEven])},
                           {"odd", homkk::io::matrix_to_json(o.raw[e][homkk::kOdd])}});
    }
    out["raw_family"] = std::move(raw);
    Json per_edge = Json::array();
    for (const auto& e : o.per_edge) per_edge.push_back(homkk::io::ext_to_json(e));
    out["per_edge"] = std::move(per_edge);
    out["class"] = coords_json(o.coords);
    out["is_zero"] = o.is_zero;
    out["resolution"] = homkk::io::nt_resolution_to_json(r);
    return out;
}

Json run_nt_bridge(const std::vector<Json>& docs, int max_n) {
    homkk::NTModule m = parse_exact_nt(docs, max_n);
    if (m.n != 2) throw CliError{kExitValidation, "nt-bridge needs n = 2"};
    homkk::ExtensionBridge b = homkk::extension_bridge_n2(m);
    Json out;
    out["via_resolution"] = homkk::io::ext_to_json(b.via_resolution);
    out["via_six_term"] = homkk::io::ext_to_json(b.via_six_term);
    out["agree"] = b.agree;
    out["agree_up_to_sign"] = b.agree_up_to_sign;
    out["classes_zero"] = b.classes_zero;
    out["ext_group"] = factors_json(homkk::invariant_factors(b.iso.ext_kc->relators()));
    out["identification_bijective"] = b.iso.bijective;
    return out;
}

// ---- report assembly -------------------------------------------------------

std::string render_text(const Json& report) {
    std::ostringstream os;
    os << "homkk " << report.at("command").get<std::string>() << "\n";
    const Json& result = report.at("result");
    for (auto it = result.begin(); it != result.end(); ++it)
        os << "  " << it.key() << ": " << it.value().dump() << "\n";
    return os.str();
}

int run(const std::string& verb, const Options& opt) {
    Json report;
    report["schema_version"] = 1;
    report["command"] = verb;
    report["seed"] = opt.seed;
    Json inputs = Json::array();
    std::vector<Json> docs;
    int code = kExitOk;
    try {
        for (const auto& path : opt.inputs) {
            docs.push_back(load_json(path));
            inputs.push_back(Json{{"path", path}, {"document", docs.back()}});
        }
        report["inputs"] = std::move(inputs);
        Json result;
        try {
            if (verb == "snf") result = run_snf(docs);
            else if (verb == "hom") result = run_hom_or_ext(docs, false);
            else if (verb == "ext") result = run_hom_or_ext(docs, true);
            else if (verb == "ext2-z") result = run_ext2_z(docs);
            else if (verb == "obstruct-z") result = run_obstruct_z(docs);
            else if (verb == "classify-z") result = run_classify_z(docs);
            else if (verb == "validate-ups") result = run_validate_ups(docs);
            else if (verb == "resolve-diagram") result = run_resolve_diagram(docs);
            else if (verb == "ext2-x") result = run_ext2_x(docs);
            else if (verb == "obstruct-x") result = run_obstruct_x(docs);
            else if (verb == "classify-x") result = run_classify_x(docs);
            else if (verb == "nt-validate") result = run_nt_validate(docs, opt.max_n);
            else if (verb == "nt-exact") result = run_nt_exact(docs, opt.max_n);
            else if (verb == "nt-resolve") result = run_nt_resolve(docs, opt.max_n);
            else if (verb == "nt-obstruct") result = run_nt_obstruct(docs, opt.max_n);
            else if (verb == "nt-bridge") result = run_nt_bridge(docs, opt.max_n);
            else throw CliError{kExitValidation, "unknown command: " + verb};
        } catch (const homkk::io::ParseError& e) {
            throw CliError{kExitValidation, e.what()};
        }
        report["result"] = std::move(result);
    } catch (const CliError& e) {
        code = e.code;
        report["error"] = e.message;
        if (!report.contains("inputs")) report["inputs"] = Json::array();
    }
    report["exit"] = code;

    std::string body =
        opt.format == "text" && code == kExitOk ? render_text(report) : report.dump(2) + "\n";
    if (opt.output.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(opt.output);
        out << body;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact KK-invariant calculator"};
    app.require_subcommand(1);

    Options opt;
    std::vector<std::string> verbs = {"snf",          "hom",        "ext",
                                      "ext2-z",       "obstruct-z", "classify-z",
                                      "validate-ups", "resolve-diagram", "ext2-x",
                                      "obstruct-x",   "classify-x", "nt-validate",
                                      "nt-exact",     "nt-resolve", "nt-obstruct",
                                      "nt-bridge"};
    for (const auto& verb : verbs) {
        CLI::App* sub = app.add_subcommand(verb);
        sub->add_option("-i,--input", opt.inputs, "input JSON file (repeatable)");
        sub->add_option("-o,--output", opt.output, "output report path (default stdout)");
        sub->add_option("--seed", opt.seed, "seed echoed into the report");
        sub->add_option("--max-n", opt.max_n, "bound on the NT chain length");
        sub->add_option("--format", opt.format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitValidation;
    }
    return run(app.get_subcommands().front()->get_name(), opt);
}

#pragma once

#include <bjortho/bs.hpp>

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

namespace bjortho {

using Json = nlohmann::ordered_json;

inline Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(what + ": JSON parse error at byte " +
                                    std::to_string(e.byte) + ": " + e.what());
    }
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

// ---- rationals, points, matrices ----------------------------------------

// Integers are emitted as JSON numbers when they fit, proper fractions as
// "p/q" strings; the reader accepts both, so documents round-trip.
inline Json json_of(const Rational& q) {
    if (denominator(q) == 1) {
        const Integer num = numerator(q);
        if (num >= std::numeric_limits<long long>::min() &&
            num <= std::numeric_limits<long long>::max())
            return num.convert_to<long long>();
    }
    return to_string(q);
}

inline Json json_of(const Point& p) {
    Json a = Json::array();
    for (const auto& c : p.x) a.push_back(json_of(c));
    return a;
}

inline Json json_of(const Functional& f) {
    Json a = Json::array();
    for (const auto& c : f.a) a.push_back(json_of(c));
    return a;
}

inline Json json_of(const MatQ& m) {
    Json rows = Json::array();
    for (const auto& r : m.m) {
        Json row = Json::array();
        for (const auto& c : r) row.push_back(json_of(c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        auto q = try_parse_rational(j.get<std::string>());
        if (!q) throw std::invalid_argument(where + ": not a rational: " + j.dump());
        return *q;
    }
    if (j.is_number_integer())
        return Rational(Integer(j.get<long long>()), Integer(1));
    throw std::invalid_argument(where + ": rationals must be \"p/q\" strings or integers, got " + j.dump());
}

inline Point point_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(where + ": expected a nonempty coordinate array");
    VecQ v;
    for (const auto& c : j) v.push_back(rational_from_json(c, where));
    return Point(std::move(v));
}

inline MatQ matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(where + ": expected a nonempty array of rows");
    MatQ m(j.size(), j.front().is_array() ? j.front().size() : 0);
    for (size_t i = 0; i < j.size(); ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != m.cols)
            throw std::invalid_argument(where + ": ragged or non-array matrix row");
        for (size_t k = 0; k < m.cols; ++k) m[i][k] = rational_from_json(row[k], where);
    }
    return m;
}

// ---- spaces ---------------------------------------------------------------

inline Json space_document(const Space& s) {
    Json doc;
    doc["kind"] = s.kind == SpaceKind::euclidean ? "euclidean" : "polyhedral";
    doc["dim"] = s.dim;
    if (s.kind == SpaceKind::euclidean) {
        doc["gram"] = json_of(s.gram);
    } else {
        Json vs = Json::array();
        for (const auto& v : s.vertices) vs.push_back(json_of(v));
        doc["vertices"] = std::move(vs);
        Json fs = Json::array();
        for (const auto& f : s.facets) fs.push_back(json_of(f));
        doc["facets"] = std::move(fs);
    }
    if (!s.label.empty()) doc["label"] = s.label;
    return doc;
}

inline Space space_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("space document must be a JSON object");
    if (!j.contains("kind")) throw std::invalid_argument("space document: missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (!j.contains("dim")) throw std::invalid_argument("space document: missing \"dim\"");
    const size_t dim = j.at("dim").get<size_t>();

    if (kind == "euclidean") {
        MatQ gram = j.contains("gram") ? matrix_from_json(j.at("gram"), "space gram")
                                       : MatQ::identity(dim);
        if (gram.rows != dim || gram.cols != dim)
            throw std::invalid_argument("space document: gram shape does not match dim");
        Space s;
        s.kind = SpaceKind::euclidean;
        s.dim = dim;
        s.gram = std::move(gram);
        if (j.contains("label")) s.label = j.at("label").get<std::string>();
        return s;
    }
    if (kind != "polyhedral")
        throw std::invalid_argument("space document: kind must be \"polyhedral\" or \"euclidean\"");
    if (!j.contains("vertices")) throw std::invalid_argument("space document: missing \"vertices\"");
    std::vector<Point> verts;
    for (const auto& v : j.at("vertices")) verts.push_back(point_from_json(v, "space vertex"));
    for (const auto& v : verts)
        if (v.dim() != dim) throw std::invalid_argument("space document: vertex dimension mismatch");

    const std::string label = j.contains("label") ? j.at("label").get<std::string>() : "";
    if (!j.contains("facets")) return detail::finish_polyhedral(std::move(verts), label);

    Space s;
    s.kind = SpaceKind::polyhedral;
    s.dim = dim;
    s.vertices = std::move(verts);
    s.label = label;
    for (const auto& f : j.at("facets"))
        s.facets.push_back(Functional(point_from_json(f, "space facet").x));
    for (const auto& f : s.facets)
        if (f.dim() != dim) throw std::invalid_argument("space document: facet dimension mismatch");
    s.incidence = incidence_matrix(s.vertices, s.facets);
    return s;
}

/// A space reference: "builtin:<name>", a path to a JSON file, or an inline
/// space document.
inline Space resolve_space(const Json& j) {
    if (j.is_string()) {
        const std::string ref = j.get<std::string>();
        if (ref.rfind("builtin:", 0) == 0) return build_named(ref.substr(8));
        return space_from_json(load_json_file(ref));
    }
    return space_from_json(j);
}

// ---- operators and counterexample data ------------------------------------

inline Json operator_document(const Operator& t) {
    Json doc;
    doc["matrix"] = json_of(t.matrix);
    doc["domain"] = space_document(t.domain);
    doc["codomain"] = space_document(t.codomain);
    if (!t.label.empty()) doc["label"] = t.label;
    return doc;
}

inline Operator operator_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("operator document must be a JSON object");
    for (const char* key : {"matrix", "domain", "codomain"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("operator document: missing \"") + key + "\"");
    Operator t;
    t.matrix = matrix_from_json(j.at("matrix"), "operator matrix");
    t.domain = resolve_space(j.at("domain"));
    t.codomain = resolve_space(j.at("codomain"));
    if (j.contains("label")) t.label = j.at("label").get<std::string>();
    detail::check_operator(t, "operator document");
    return t;
}

inline CounterexampleSpec counterexample_spec_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("counterexample spec must be a JSON object");
    if (!j.contains("basis")) throw std::invalid_argument("counterexample spec: missing \"basis\"");
    CounterexampleSpec spec;
    for (const auto& b : j.at("basis")) spec.basis.push_back(point_from_json(b, "basis vector"));
    if (j.contains("alphas"))
        for (const auto& a : j.at("alphas")) spec.alphas.push_back(rational_from_json(a, "alpha"));
    if (j.contains("betas"))
        for (const auto& b : j.at("betas")) spec.betas.push_back(rational_from_json(b, "beta"));
    if (j.contains("z")) spec.z = point_from_json(j.at("z"), "z");
    return spec;
}

inline Json counterexample_spec_document(const CounterexampleSpec& spec) {
    Json doc;
    Json basis = Json::array();
    for (const auto& b : spec.basis) basis.push_back(json_of(b));
    doc["basis"] = std::move(basis);
    Json alphas = Json::array();
    for (const auto& a : spec.alphas) alphas.push_back(json_of(a));
    doc["alphas"] = std::move(alphas);
    Json betas = Json::array();
    for (const auto& b : spec.betas) betas.push_back(json_of(b));
    doc["betas"] = std::move(betas);
    if (spec.z) doc["z"] = json_of(*spec.z);
    return doc;
}

// ---- certificates ----------------------------------------------------------

inline Json json_of(const NormingFace& nf) {
    Json doc;
    doc["value"] = json_of(nf.value);
    doc["active_facets"] = nf.active;
    return doc;
}

inline Json json_of(const CoverageCertificate& c) {
    Json doc;
    doc["verdict"] = c.verdict == CoverageVerdict::covered ? "covered" : "not_covered";
    doc["checked_sign_vectors"] = c.checked_sign_vectors;
    if (c.verdict == CoverageVerdict::not_covered) {
        doc["sign_vector"] = c.sign_vector;
        doc["witness"] = json_of(*c.witness);
    }
    return doc;
}

inline Json json_of(const PnCertificate& c) {
    Json doc;
    doc["verdict"] = c.verdict == PnVerdict::has_pn ? "has_pn" : "lacks_pn";
    doc["families_checked"] = c.families_checked;
    if (c.verdict == PnVerdict::lacks_pn) {
        doc["covering_family_vertices"] = c.covering_family;
        Json pts = Json::array();
        for (const auto& p : c.covering_points) pts.push_back(json_of(p));
        doc["covering_family"] = std::move(pts);
    } else {
        Json fams = Json::array();
        for (const auto& [family, witness] : c.family_witnesses) {
            Json f;
            f["family_vertices"] = family;
            f["witness"] = json_of(witness);
            fams.push_back(std::move(f));
        }
        doc["family_witnesses"] = std::move(fams);
    }
    return doc;
}

inline Json json_of(const CoveringNumber& c) {
    Json doc;
    doc["min_covering_number"] = c.m;
    doc["family_vertices"] = c.family;
    Json pts = Json::array();
    for (const auto& p : c.points) pts.push_back(json_of(p));
    doc["family"] = std::move(pts);
    return doc;
}

inline Json json_of(const MTCell& cell) {
    Json doc;
    Json vs = Json::array();
    for (const auto& v : cell.vertices) vs.push_back(json_of(v));
    doc["vertices"] = std::move(vs);
    doc["dim"] = cell.dim;
    doc["maximal"] = cell.maximal;
    doc["active_domain_facets"] = cell.active_domain;
    doc["active_codomain_facets"] = cell.active_codomain;
    doc["image_constant"] = cell.image_constant;
    if (cell.image_constant) doc["image"] = json_of(*cell.image);
    return doc;
}

inline Json json_of(const MTComplex& m) {
    Json doc;
    doc[m.norm_is_squared ? "op_norm_sq" : "op_norm"] = json_of(m.op_norm);
    Json cells = Json::array();
    for (const auto& c : m.cells) cells.push_back(json_of(c));
    doc["cells"] = std::move(cells);
    size_t maximal = 0;
    for (const auto& c : m.cells)
        if (c.maximal) ++maximal;
    doc["maximal_cells"] = maximal;
    return doc;
}

inline Json json_of(const ImageClassReport& r) {
    Json doc;
    doc["all_cells_constant"] = r.all_cells_constant;
    Json cs = Json::array();
    for (const auto& c : r.classes) {
        Json e;
        e["rep"] = json_of(c.rep);
        e["multiplicity"] = c.multiplicity;
        cs.push_back(std::move(e));
    }
    doc["classes"] = std::move(cs);
    if (!r.nonconstant_cells.empty()) doc["nonconstant_cells"] = r.nonconstant_cells;
    return doc;
}

inline Json json_of(const BSVerdict& v) {
    Json doc;
    doc["t_orthogonal_a"] = v.t_orth_a;
    doc["witness_found"] = v.witness.has_value();
    if (v.witness) doc["witness"] = json_of(*v.witness);
    doc["conclusion"] = v.conclusion == BSConclusion::violates_bs ? "violates_bs"
                                                                  : "satisfies_bs_instance";
    return doc;
}

inline Json json_of(const CorollaryResult& r) {
    Json doc;
    switch (r.status) {
        case CorollaryStatus::violates_bs: doc["status"] = "violates_bs"; break;
        case CorollaryStatus::instance_unsatisfied: doc["status"] = "instance_unsatisfied"; break;
        case CorollaryStatus::inconclusive: doc["status"] = "inconclusive"; break;
    }
    doc["detail"] = r.detail;
    if (r.evidence) doc["evidence_matrix"] = json_of(r.evidence->matrix);
    return doc;
}

/// FNV-1a digest of a canonical JSON dump, for input fingerprints in run
/// reports.
inline std::string digest_of_json(const Json& j) {
    const std::string dump = j.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << h;
    return hex.str();
}

} // namespace bjortho

#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "algebra.hpp"
#include "falsify.hpp"
#include "model.hpp"
#include "solver_types.hpp"
#include "switching.hpp"
#include "vsearch.hpp"

namespace rainbow {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json parse_document(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::parse, "byte " + std::to_string(e.byte) + ": malformed JSON");
    }
}

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::parse, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

inline const Json& field(const Json& obj, const std::string& where, const char* key) {
    if (!obj.is_object()) schema_error(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(where, std::string("missing key \"") + key + "\"");
    return *it;
}

inline void only_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) schema_error(where, "unexpected key \"" + it.key() + "\"");
    }
}

inline std::int64_t integer(const Json& v, const std::string& where) {
    if (!v.is_number_integer()) schema_error(where, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT32_MAX))
        schema_error(where, "integer out of range");
    auto x = v.get<std::int64_t>();
    if (x < INT32_MIN || x > INT32_MAX) schema_error(where, "integer out of range");
    return x;
}

inline std::vector<Element> element_list(const Json& v, const std::string& where) {
    if (!v.is_array()) schema_error(where, "expected an array of integers");
    std::vector<Element> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(static_cast<Element>(integer(v[i], where + "/" + std::to_string(i))));
    return out;
}

inline std::string join(const std::vector<Element>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(xs[i]);
    }
    return out + "]";
}

inline std::string edge_line(const Edge& e) {
    return "{ \"colour\": " + std::to_string(e.colour) + ", \"u\": " + std::to_string(e.u) +
           ", \"v\": " + std::to_string(e.v) + " }";
}

} // namespace detail

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

/// Structural parse only: invariant violations are left for validate_instance.
inline Instance instance_from_json(const Json& doc) {
    using namespace detail;
    if (!doc.is_object()) schema_error("", "expected an object");
    only_keys(doc, "", {"n", "simple_mode", "classes"});
    Instance inst;
    const std::int64_t n = integer(field(doc, "", "n"), "/n");
    if (n < 0) schema_error("/n", "n must be non-negative");
    inst.n = static_cast<int>(n);
    auto sm = doc.find("simple_mode");
    if (sm != doc.end()) {
        if (!sm->is_boolean()) schema_error("/simple_mode", "expected a boolean");
        inst.simple_mode = sm->get<bool>();
    }
    const Json& classes = field(doc, "", "classes");
    if (!classes.is_array()) schema_error("/classes", "expected an array");
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const std::string where = "/classes/" + std::to_string(c);
        const Json& cls = classes[c];
        if (!cls.is_object()) schema_error(where, "expected an object");
        only_keys(cls, where, {"colour", "cliques"});
        if (integer(field(cls, where, "colour"), where + "/colour") != static_cast<std::int64_t>(c))
            schema_error(where + "/colour", "colours must appear as 0..n-1 in order");
        const Json& cliques = field(cls, where, "cliques");
        if (!cliques.is_array()) schema_error(where + "/cliques", "expected an array");
        ColourClass out;
        for (std::size_t q = 0; q < cliques.size(); ++q)
            out.push_back(element_list(cliques[q], where + "/cliques/" + std::to_string(q)));
        inst.classes.push_back(std::move(out));
    }
    return inst;
}

inline Instance parse_instance(std::string_view text) { return instance_from_json(detail::parse_document(text)); }

/// Canonical layout: one line per colour class, trailing newline.
inline std::string serialize_instance(const Instance& inst) {
    std::string out = "{\n  \"n\": " + std::to_string(inst.n) + ",\n  \"simple_mode\": " +
                      (inst.simple_mode ? "true" : "false") + ",\n  \"classes\": [";
    for (std::size_t c = 0; c < inst.classes.size(); ++c) {
        out += c ? ",\n" : "\n";
        out += "    { \"colour\": " + std::to_string(c) + ", \"cliques\": [";
        for (std::size_t q = 0; q < inst.classes[c].size(); ++q) {
            if (q) out += ", ";
            out += detail::join(inst.classes[c][q]);
        }
        out += "] }";
    }
    out += inst.classes.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

inline Json instance_to_json(const Instance& inst) { return Json::parse(serialize_instance(inst)); }

// ---------------------------------------------------------------------------
// Matchings
// ---------------------------------------------------------------------------

inline Matching matching_from_json(const Json& doc) {
    using namespace detail;
    if (!doc.is_object()) schema_error("", "expected an object");
    only_keys(doc, "", {"edges"});
    const Json& edges = field(doc, "", "edges");
    if (!edges.is_array()) schema_error("/edges", "expected an array");
    Matching m;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string where = "/edges/" + std::to_string(i);
        const Json& e = edges[i];
        if (!e.is_object()) schema_error(where, "expected an object");
        only_keys(e, where, {"colour", "u", "v"});
        Edge edge{static_cast<Colour>(integer(field(e, where, "colour"), where + "/colour")),
                  static_cast<Element>(integer(field(e, where, "u"), where + "/u")),
                  static_cast<Element>(integer(field(e, where, "v"), where + "/v"))};
        if (edge.u >= edge.v) schema_error(where, "edge endpoints must satisfy u < v");
        m.edges.push_back(edge);
    }
    return m;
}

inline Matching parse_matching(std::string_view text) { return matching_from_json(detail::parse_document(text)); }

inline std::string serialize_matching(const Matching& m) {
    if (m.edges.empty()) return "{\n  \"edges\": []\n}\n";
    std::string out = "{\n  \"edges\": [";
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
        out += i ? ",\n    " : "\n    ";
        out += detail::edge_line(m.edges[i]);
    }
    return out + "\n  ]\n}\n";
}

inline Json edge_to_json(const Edge& e) { return Json{{"colour", e.colour}, {"u", e.u}, {"v", e.v}}; }

inline Json matching_to_json(const Matching& m) {
    Json edges = Json::array();
    for (const Edge& e : m.edges) edges.push_back(edge_to_json(e));
    return Json{{"edges", std::move(edges)}};
}

inline Json vertex_set_to_json(const VertexSet& s) { return Json(std::vector<Element>(s.begin(), s.end())); }

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

/// Members are listed in increasing bitmask order over the sorted ground set.
inline Json algebra_to_json(const FiniteAlgebra& a) {
    Json members = Json::array();
    for (Mask m : a.members) members.push_back(vertex_set_to_json(a.to_set(m)));
    return Json{{"ground", vertex_set_to_json(a.ground)}, {"members", std::move(members)}};
}

inline FiniteAlgebra algebra_from_json(const Json& doc) {
    using namespace detail;
    if (!doc.is_object()) schema_error("", "expected an object");
    only_keys(doc, "", {"ground", "members"});
    std::vector<Element> ground = element_list(field(doc, "", "ground"), "/ground");
    VertexSet g(ground);
    if (g.size() != ground.size()) schema_error("/ground", "duplicate ground element");
    if (g.size() > algebra_ground_cap)
        throw Error(ErrorKind::cap_exceeded, "ground set of " + std::to_string(g.size()) + " elements exceeds " +
                                                 std::to_string(algebra_ground_cap));
    const Json& members = field(doc, "", "members");
    if (!members.is_array()) schema_error("/members", "expected an array");
    FiniteAlgebra shell{g, {}};
    std::vector<Mask> masks;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const std::string where = "/members/" + std::to_string(i);
        std::vector<Element> xs = element_list(members[i], where);
        try {
            masks.push_back(shell.to_mask(VertexSet(xs)));
        } catch (const Error&) {
            schema_error(where, "member is not a subset of the ground set");
        }
    }
    return make_algebra(std::move(g), std::move(masks));
}

inline std::string serialize_algebra(const FiniteAlgebra& a) { return algebra_to_json(a).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json stats_to_json(const SolveStats& s) {
    return Json{{"nodes", s.nodes},
                {"switchings_tried", s.switchings_tried},
                {"recursion_depth", s.recursion_depth},
                {"augmentations", s.augmentations},
                {"fallbacks", s.fallbacks}};
}

inline Json switching_to_json(const Switching& s) {
    Json out{{"start_colour", s.start_colour}, {"length", s.length()}};
    Json eo = Json::array(), mo = Json::array();
    for (const Edge& e : s.out_edges) eo.push_back(edge_to_json(e));
    for (const Edge& e : s.matching_edges) mo.push_back(edge_to_json(e));
    out["out_edges"] = std::move(eo);
    out["matching_edges"] = std::move(mo);
    return out;
}

inline Json proof_level_to_json(const ProofLevel& l) {
    Json out{{"n", l.n},
             {"delta", to_string(l.delta)},
             {"missing_colour", l.missing_colour},
             {"branch", std::string(to_string(l.branch))},
             {"fallback", l.fallback}};
    if (l.fallback) out["fallback_reason"] = l.fallback_reason;
    if (l.sigma) out["sigma"] = switching_to_json(*l.sigma);
    out["c1"] = l.c1_set;
    out["c2"] = l.c2_set;
    out["c_star"] = l.c_star;
    if (l.m2) out["m2"] = edge_to_json(*l.m2);
    out["mu"] = l.mu;
    Json ec = Json::array(), w = Json::array();
    for (const Edge& e : l.e_c) ec.push_back(edge_to_json(e));
    for (const Edge& e : l.w_edges) w.push_back(edge_to_json(e));
    out["e_c"] = std::move(ec);
    out["w"] = std::move(w);
    out["s"] = vertex_set_to_json(l.s_set);
    out["reduced_colours"] = l.reduced_colours;
    out["reduced_n"] = l.reduced_n;
    out["reduced_delta"] = to_string(l.reduced_delta);
    out["output_size"] = l.output_size;
    return out;
}

inline Json trace_to_json(const ProofTrace& t) {
    Json levels = Json::array();
    for (const ProofLevel& l : t.levels) levels.push_back(proof_level_to_json(l));
    return Json{{"levels", std::move(levels)}};
}

/// Wall time is left out so that repeated runs produce identical bytes.
inline Json outcome_to_json(const SolveOutcome& o, Method method, bool with_traces = false) {
    Json out{{"status", std::string(to_string(o.status))},
             {"certificate", std::string(to_string(o.certificate))},
             {"method", std::string(to_string(method))},
             {"target", o.target_size},
             {"best_size", o.best_size}};
    if (o.matching) out["matching"] = matching_to_json(*o.matching);
    out["stats"] = stats_to_json(o.stats);
    if (with_traces) {
        Json traces = Json::array();
        for (const ProofTrace& t : o.traces) traces.push_back(trace_to_json(t));
        out["traces"] = std::move(traces);
    }
    return out;
}

inline Json hypothesis_to_json(const HypothesisReport& r) {
    Json failures = Json::array();
    for (const HypothesisFailure& f : r.failures)
        failures.push_back(Json{{"colour", f.colour},
                                {"switching", switching_to_json(f.switching)},
                                {"found", f.found},
                                {"required", f.required}});
    return Json{{"verdict", r.verdict()},
                {"max_len", r.max_len},
                {"switchings_checked", r.switchings_checked},
                {"truncated", r.truncated},
                {"failures", std::move(failures)}};
}

inline Json vtable_to_json(const VTable& t) {
    Json rows = Json::array();
    for (const KernelVerdict& r : t.rows) {
        Json row{{"kernel", r.kernel},
                 {"verdict", r.all_solvable ? "all-solvable" : "counterexample exists"},
                 {"instances", r.instances}};
        if (r.counterexample) row["counterexample"] = instance_to_json(*r.counterexample);
        rows.push_back(std::move(row));
    }
    Json out{{"n", t.n}, {"max_kernel", t.max_kernel}, {"rows", std::move(rows)}};
    out["v1"] = t.v1 ? Json(*t.v1) : Json(nullptr);
    return out;
}

inline Json falsify_to_json(const FalsifyResult& r) {
    Json out{{"status", r.witness ? "found" : "not-found"}, {"evaluations", r.evaluations}, {"restarts", r.restarts}};
    if (r.witness) {
        out["witness"] = instance_to_json(*r.witness);
        std::vector<std::size_t> kernels;
        for (int c = 0; c < r.witness->n; ++c) kernels.push_back(kernel(*r.witness, c).size());
        out["kernels"] = kernels;
    }
    if (r.certificate) {
        out["certificate"] = std::string(to_string(r.certificate->certificate));
        out["best_size"] = r.certificate->best_size;
    } else {
        out["certificate"] = "budget-exhausted";
    }
    return out;
}

inline Json witness_report_to_json(const WitnessReport& r) {
    Json v = Json::array();
    for (const WitnessViolation& x : r.violations)
        v.push_back(Json{{"index", x.index}, {"side", x.side}, {"q", vertex_set_to_json(x.q)}});
    return Json{{"verdict", r.pass() ? "pass" : "fail"},
                {"subsets_scanned", r.subsets_scanned},
                {"violation_count", r.violation_count},
                {"violations", std::move(v)}};
}

} // namespace rainbow

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vertex_set.hpp"

namespace rainbow {

using Clique = std::vector<Element>;
using ColourClass = std::vector<Clique>;

/// Largest element id accepted by the dense per-colour indices.
inline constexpr Element max_element_id = (1 << 24) - 1;

/// n equivalence relations, each stored as its nontrivial classes (cliques).
/// Elements lying in no clique of any colour are never stored.
struct Instance {
    int n = 0;
    bool simple_mode = false;
    std::vector<ColourClass> classes;

    friend bool operator==(const Instance&, const Instance&) = default;
};

struct Edge {
    Colour colour = 0;
    Element u = 0;
    Element v = 0;

    [[nodiscard]] bool touches(Element x) const { return u == x || v == x; }
    [[nodiscard]] bool meets(const Edge& o) const { return touches(o.u) || touches(o.v); }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Colour c, Element a, Element b) { return a < b ? Edge{c, a, b} : Edge{c, b, a}; }

struct Matching {
    std::vector<Edge> edges;

    [[nodiscard]] std::size_t size() const { return edges.size(); }
    [[nodiscard]] VertexSet vertices() const {
        std::vector<Element> out;
        out.reserve(edges.size() * 2);
        for (const Edge& e : edges) {
            out.push_back(e.u);
            out.push_back(e.v);
        }
        return VertexSet(std::move(out));
    }
    [[nodiscard]] bool has_colour(Colour c) const {
        return std::any_of(edges.begin(), edges.end(), [c](const Edge& e) { return e.colour == c; });
    }

    friend bool operator==(const Matching&, const Matching&) = default;
};

/// Sorted by (colour, u, v); rainbow matchings compare equal iff they hold the same edges.
inline Matching sorted(Matching m) {
    std::sort(m.edges.begin(), m.edges.end());
    return m;
}

/// The sequence (e0, m1, e1, ..., e_{k-1}, m_k) exchanging matching edges.
/// length 0 is the empty switching that starts and ends at start_colour.
struct Switching {
    Colour start_colour = 0;
    std::vector<Edge> out_edges;
    std::vector<Edge> matching_edges;

    [[nodiscard]] std::size_t length() const { return matching_edges.size(); }
    [[nodiscard]] Colour end_colour() const {
        return matching_edges.empty() ? start_colour : matching_edges.back().colour;
    }
    [[nodiscard]] VertexSet vertices() const {
        std::vector<Element> out;
        for (const Edge& e : out_edges) {
            out.push_back(e.u);
            out.push_back(e.v);
        }
        for (const Edge& e : matching_edges) {
            out.push_back(e.u);
            out.push_back(e.v);
        }
        return VertexSet(std::move(out));
    }

    friend bool operator==(const Switching&, const Switching&) = default;
};

inline void check_colour(const Instance& inst, Colour c) {
    if (c < 0 || c >= inst.n || static_cast<std::size_t>(c) >= inst.classes.size())
        throw Error(ErrorKind::invalid_colour,
                    "colour " + std::to_string(c) + " outside 0.." + std::to_string(inst.n - 1));
}

inline VertexSet kernel(const Instance& inst, Colour c) {
    check_colour(inst, c);
    std::vector<Element> out;
    for (const Clique& q : inst.classes[c]) out.insert(out.end(), q.begin(), q.end());
    return VertexSet(std::move(out));
}

/// Union of all kernels.
inline VertexSet ground_set(const Instance& inst) {
    std::vector<Element> out;
    for (const ColourClass& cls : inst.classes)
        for (const Clique& q : cls) out.insert(out.end(), q.begin(), q.end());
    return VertexSet(std::move(out));
}

inline Instance canonicalize(Instance inst) {
    for (ColourClass& cls : inst.classes) {
        for (Clique& q : cls) std::sort(q.begin(), q.end());
        std::sort(cls.begin(), cls.end());
    }
    return inst;
}

struct Violation {
    std::string rule;
    std::string detail;

    [[nodiscard]] std::string message() const { return detail.empty() ? rule : rule + " (" + detail + ")"; }
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool valid() const { return violations.empty(); }
};

inline ValidationReport validate_instance(const Instance& inst) {
    ValidationReport report;
    auto add = [&](std::string rule, std::string detail) {
        report.violations.push_back({std::move(rule), std::move(detail)});
    };
    if (inst.n < 0) add("negative colour count", "n = " + std::to_string(inst.n));
    if (static_cast<std::size_t>(std::max(inst.n, 0)) != inst.classes.size())
        add("class count does not match n",
            "n = " + std::to_string(inst.n) + ", classes = " + std::to_string(inst.classes.size()));

    for (std::size_t c = 0; c < inst.classes.size(); ++c) {
        const std::string where = "colour " + std::to_string(c);
        const ColourClass& cls = inst.classes[c];
        std::vector<Element> seen;
        for (std::size_t qi = 0; qi < cls.size(); ++qi) {
            const Clique& q = cls[qi];
            const std::string at = where + ", clique " + std::to_string(qi);
            if (q.size() < 2) add("clique of size < 2", at);
            for (Element e : q) {
                if (e < 0) add("negative element id", at);
                else if (e > max_element_id) add("element id too large", at);
            }
            if (!std::is_sorted(q.begin(), q.end()) || std::adjacent_find(q.begin(), q.end()) != q.end())
                add("non-canonical ordering", at + ": elements not strictly increasing");
            seen.insert(seen.end(), q.begin(), q.end());
        }
        if (!std::is_sorted(cls.begin(), cls.end()))
            add("non-canonical ordering", where + ": cliques not sorted by smallest element");
        std::sort(seen.begin(), seen.end());
        for (std::size_t i = 1; i < seen.size(); ++i)
            if (seen[i] == seen[i - 1] && (i == 1 || seen[i - 2] != seen[i]))
                add("duplicate vertex within class", where + ", element " + std::to_string(seen[i]));
    }

    if (inst.simple_mode) {
        std::map<std::pair<Element, Element>, std::size_t> owner;
        for (std::size_t c = 0; c < inst.classes.size(); ++c) {
            std::map<std::pair<Element, Element>, bool> local;
            for (const Clique& q : inst.classes[c])
                for (std::size_t i = 0; i < q.size(); ++i)
                    for (std::size_t j = i + 1; j < q.size(); ++j) {
                        auto key = std::minmax(q[i], q[j]);
                        if (key.first == key.second || local[key]) continue;
                        local[key] = true;
                        auto [it, inserted] = owner.emplace(key, c);
                        if (!inserted && it->second != c)
                            add("shared pair {" + std::to_string(key.first) + "," + std::to_string(key.second) + "}",
                                "colours " + std::to_string(it->second) + " and " + std::to_string(c));
                    }
        }
    }
    return report;
}

inline void require_valid(const Instance& inst) {
    ValidationReport report = validate_instance(inst);
    if (!report.valid()) throw Error(ErrorKind::invalid_instance, report.violations.front().message());
}

/// Dense element -> clique lookup per colour. Built once per valid instance.
class CliqueIndex {
  public:
    explicit CliqueIndex(const Instance& inst) : inst_(&inst) {
        Element max_elem = -1;
        for (const ColourClass& cls : inst.classes)
            for (const Clique& q : cls)
                for (Element e : q) {
                    if (e < 0 || e > max_element_id)
                        throw Error(ErrorKind::invalid_reference, "element id " + std::to_string(e) + " out of range");
                    max_elem = std::max(max_elem, e);
                }
        universe_ = static_cast<std::size_t>(max_elem + 1);
        clique_of_.assign(inst.classes.size(), std::vector<std::int32_t>(universe_, -1));
        for (std::size_t c = 0; c < inst.classes.size(); ++c)
            for (std::size_t qi = 0; qi < inst.classes[c].size(); ++qi)
                for (Element e : inst.classes[c][qi]) clique_of_[c][e] = static_cast<std::int32_t>(qi);
    }

    [[nodiscard]] const Instance& instance() const { return *inst_; }
    [[nodiscard]] std::size_t universe() const { return universe_; }

    /// -1 when e is not in the kernel of c.
    [[nodiscard]] std::int32_t clique_of(Colour c, Element e) const {
        if (e < 0 || static_cast<std::size_t>(e) >= universe_) return -1;
        return clique_of_[c][e];
    }
    [[nodiscard]] std::span<const Element> clique(Colour c, std::int32_t id) const { return inst_->classes[c][id]; }
    [[nodiscard]] std::span<const Element> clique_containing(Colour c, Element e) const {
        auto id = clique_of(c, e);
        if (id < 0) return {};
        return clique(c, id);
    }
    [[nodiscard]] bool is_edge(const Edge& e) const {
        if (e.colour < 0 || static_cast<std::size_t>(e.colour) >= clique_of_.size() || e.u == e.v) return false;
        auto a = clique_of(e.colour, e.u);
        return a >= 0 && a == clique_of(e.colour, e.v);
    }

  private:
    const Instance* inst_;
    std::size_t universe_ = 0;
    std::vector<std::vector<std::int32_t>> clique_of_;
};

/// True iff {e.u, e.v} lies inside one clique of colour e.colour.
inline bool is_edge_of(const Instance& inst, const Edge& e) {
    check_colour(inst, e.colour);
    if (e.u == e.v) return false;
    for (const Clique& q : inst.classes[e.colour]) {
        bool has_u = std::find(q.begin(), q.end(), e.u) != q.end();
        if (!has_u) continue;
        return std::find(q.begin(), q.end(), e.v) != q.end();
    }
    return false;
}

/// Canonical enumeration: cliques in stored order, pairs lexicographic within a clique.
template <typename Fn>
void for_each_edge(const Instance& inst, Colour c, Fn&& fn) {
    check_colour(inst, c);
    for (const Clique& q : inst.classes[c])
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j) fn(make_edge(c, q[i], q[j]));
}

inline std::vector<Edge> edges_of(const Instance& inst, Colour c) {
    std::vector<Edge> out;
    for_each_edge(inst, c, [&](const Edge& e) { out.push_back(e); });
    return out;
}

inline bool is_rainbow_matching(const Instance& inst, const Matching& m, std::size_t required_size) {
    for (const Edge& e : m.edges) {
        check_colour(inst, e.colour);
        if (e.u < 0 || e.v < 0)
            throw Error(ErrorKind::invalid_reference, "negative element in edge of colour " + std::to_string(e.colour));
    }
    if (m.size() != required_size) return false;
    std::vector<Element> verts;
    std::vector<Colour> colours;
    for (const Edge& e : m.edges) {
        if (e.u >= e.v) return false;
        if (!is_edge_of(inst, e)) return false;
        verts.push_back(e.u);
        verts.push_back(e.v);
        colours.push_back(e.colour);
    }
    std::sort(verts.begin(), verts.end());
    std::sort(colours.begin(), colours.end());
    return std::adjacent_find(verts.begin(), verts.end()) == verts.end() &&
           std::adjacent_find(colours.begin(), colours.end()) == colours.end();
}

/// Instance restricted to a subset of colours; colours are renumbered 0..k-1 in the given order.
struct ColourRestriction {
    Instance instance;
    std::vector<Colour> to_original;

    [[nodiscard]] Colour local(Colour original) const {
        auto it = std::find(to_original.begin(), to_original.end(), original);
        if (it == to_original.end())
            throw Error(ErrorKind::invalid_colour, "colour " + std::to_string(original) + " not in restriction");
        return static_cast<Colour>(it - to_original.begin());
    }
    [[nodiscard]] Matching to_local(const Matching& m) const {
        Matching out;
        for (Edge e : m.edges) {
            e.colour = local(e.colour);
            out.edges.push_back(e);
        }
        return out;
    }
    [[nodiscard]] Edge to_original_edge(Edge e) const {
        e.colour = to_original[e.colour];
        return e;
    }
    [[nodiscard]] Matching to_original_matching(const Matching& m) const {
        Matching out;
        for (const Edge& e : m.edges) out.edges.push_back(to_original_edge(e));
        return out;
    }
};

inline ColourRestriction restrict_colours(const Instance& inst, std::vector<Colour> colours) {
    ColourRestriction r;
    r.instance.n = static_cast<int>(colours.size());
    r.instance.simple_mode = inst.simple_mode;
    for (Colour c : colours) {
        check_colour(inst, c);
        r.instance.classes.push_back(inst.classes[c]);
    }
    r.to_original = std::move(colours);
    return r;
}

} // namespace rainbow

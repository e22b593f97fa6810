#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"
#include "rational.hpp"

namespace rainbow {

// ---------------------------------------------------------------------------
// Validation and application
// ---------------------------------------------------------------------------

/// Checks (S1)-(S4) of `s` against the rainbow matching `m`. The empty
/// switching validates for every colour.
inline bool validate_switching(const Instance& inst, const Matching& m, const Switching& s, Colour forbidden_start) {
    if (s.matching_edges.empty()) return s.out_edges.empty();
    const std::size_t k = s.matching_edges.size();
    if (s.out_edges.size() != k) return false;
    if (s.start_colour != forbidden_start) return false;

    auto colour_ok = [&](const Edge& e) { return e.colour >= 0 && e.colour < inst.n; };
    for (const Edge& e : s.out_edges)
        if (!colour_ok(e) || e.u >= e.v || !is_edge_of(inst, e)) return false;

    // (S1)
    for (std::size_t i = 0; i < k; ++i) {
        const Edge& mi = s.matching_edges[i];
        if (std::find(m.edges.begin(), m.edges.end(), mi) == m.edges.end()) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (s.matching_edges[j] == mi) return false;
    }

    // (S2)
    const VertexSet matched = m.vertices();
    for (std::size_t i = 0; i < k; ++i) {
        const Edge& e = s.out_edges[i];
        const Edge& mi = s.matching_edges[i];
        bool u_in = mi.touches(e.u);
        bool v_in = mi.touches(e.v);
        if (u_in == v_in) return false;
        Element outside = u_in ? e.v : e.u;
        if (matched.contains(outside)) return false;
    }

    // (S3)
    if (s.out_edges[0].colour != forbidden_start) return false;
    for (std::size_t i = 0; i < k; ++i) {
        if (s.matching_edges[i].colour == forbidden_start) return false;
        if (i >= 1 && s.out_edges[i].colour != s.matching_edges[i - 1].colour) return false;
    }

    // (S4)
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (s.out_edges[i].meets(s.out_edges[j])) return false;
    return true;
}

/// Returns (m \ m(s)) + e(s) + {closing}. The closing edge must carry the end
/// colour of `s` and avoid every vertex that stays covered: V(m \ m(s)) and V(e(s)).
inline Matching apply_switching(const Instance& inst, const Matching& m, const Switching& s, const Edge& closing) {
    auto fail = [](const std::string& why) { return Error(ErrorKind::switching_application, why); };
    if (!validate_switching(inst, m, s, s.start_colour)) throw fail("switching does not validate against the matching");
    if (closing.colour != s.end_colour())
        throw fail("closing edge colour " + std::to_string(closing.colour) + " differs from end colour " +
                   std::to_string(s.end_colour()));
    if (closing.colour < 0 || closing.colour >= inst.n || closing.u >= closing.v || !is_edge_of(inst, closing))
        throw fail("closing edge is not an edge of its colour");
    if (s.length() == 0 && m.has_colour(closing.colour))
        throw fail("closing colour already present in the matching");

    Matching out;
    std::vector<Element> covered;
    for (const Edge& e : m.edges) {
        if (std::find(s.matching_edges.begin(), s.matching_edges.end(), e) != s.matching_edges.end()) continue;
        out.edges.push_back(e);
        covered.push_back(e.u);
        covered.push_back(e.v);
    }
    for (const Edge& e : s.out_edges) {
        out.edges.push_back(e);
        covered.push_back(e.u);
        covered.push_back(e.v);
    }
    if (std::find(covered.begin(), covered.end(), closing.u) != covered.end() ||
        std::find(covered.begin(), covered.end(), closing.v) != covered.end())
        throw fail("closing edge meets a vertex that stays covered");
    out.edges.push_back(closing);
    if (!is_rainbow_matching(inst, out, m.size() + 1)) throw fail("result is not a rainbow matching");
    return out;
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

/// Maximum matching inside one clique when an edge needs one endpoint in
/// `from` and the other in `to`. from_only / to_only / both partition the
/// admissible vertices; from_only and to_only are each independent sets.
constexpr std::int64_t clique_disjoint_edges(std::int64_t from_only, std::int64_t to_only, std::int64_t both) {
    return std::min({from_only + both, to_only + both, (from_only + to_only + both) / 2});
}

template <typename InFrom, typename InTo>
std::int64_t max_disjoint_edges_where(const Instance& inst, Colour c, InFrom&& in_from, InTo&& in_to) {
    check_colour(inst, c);
    std::int64_t total = 0;
    for (const Clique& q : inst.classes[c]) {
        std::int64_t a = 0, b = 0, d = 0;
        for (Element x : q) {
            bool f = in_from(x);
            bool t = in_to(x);
            if (f && t) ++d;
            else if (f) ++a;
            else if (t) ++b;
        }
        total += clique_disjoint_edges(a, b, d);
    }
    return total;
}

/// Maximum number of pairwise disjoint c-edges with one endpoint in `from`
/// and the other in `to`.
inline std::int64_t max_disjoint_colour_edges(const Instance& inst, Colour c, const VertexSet& from,
                                              const VertexSet& to) {
    return max_disjoint_edges_where(
        inst, c, [&](Element x) { return from.contains(x); }, [&](Element x) { return to.contains(x); });
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Enumerates (start, .)-switchings with respect to a fixed matching in
/// length-lexicographic order: by length, then by the tuple of matching-edge
/// indices, then by the out-edge endpoints.
class SwitchingEnumerator {
  public:
    SwitchingEnumerator(const CliqueIndex& index, const Matching& m, Colour start)
        : index_(index), m_(m), start_(start) {
        check_colour(index.instance(), start);
        owner_.assign(index.universe(), -1);
        for (std::size_t i = 0; i < m.edges.size(); ++i) {
            for (Element x : {m.edges[i].u, m.edges[i].v})
                if (x >= 0 && static_cast<std::size_t>(x) < owner_.size()) owner_[x] = static_cast<int>(i);
        }
        cache_.assign(static_cast<std::size_t>(index.instance().n) * m.edges.size(), std::nullopt);
    }

    [[nodiscard]] bool in_free_region(Element x) const {
        return x >= 0 && static_cast<std::size_t>(x) < owner_.size() && owner_[x] < 0;
    }

    /// Calls fn on every switching of exactly `length`; stops early when fn
    /// returns false. Returns false iff stopped early.
    template <typename Fn>
    bool for_each_of_length(std::size_t length, Fn&& fn) {
        if (length == 0) {
            Switching empty;
            empty.start_colour = start_;
            return fn(static_cast<const Switching&>(empty));
        }
        if (length > m_.edges.size()) return true;
        indices_.assign(length, 0);
        used_.assign(m_.edges.size(), false);
        return pick_index(0, length, fn);
    }

    /// All lengths 0..max_len in order.
    template <typename Fn>
    bool for_each_up_to(std::size_t max_len, Fn&& fn) {
        for (std::size_t len = 0; len <= max_len; ++len)
            if (!for_each_of_length(len, fn)) return false;
        return true;
    }

  private:
    const std::vector<Edge>& candidates(Colour colour, std::size_t mi) {
        auto& slot = cache_[static_cast<std::size_t>(colour) * m_.edges.size() + mi];
        if (!slot) {
            std::vector<Edge> out;
            const Edge& me = m_.edges[mi];
            for (Element p : {me.u, me.v}) {
                for (Element q : index_.clique_containing(colour, p))
                    if (q != p && in_free_region(q)) out.push_back(make_edge(colour, p, q));
            }
            std::sort(out.begin(), out.end());
            slot = std::move(out);
        }
        return *slot;
    }

    template <typename Fn>
    bool pick_index(std::size_t pos, std::size_t length, Fn& fn) {
        if (pos == length) {
            chosen_.clear();
            return pick_out_edge(0, length, fn);
        }
        const Colour out_colour = pos == 0 ? start_ : m_.edges[indices_[pos - 1]].colour;
        for (std::size_t mi = 0; mi < m_.edges.size(); ++mi) {
            if (used_[mi] || m_.edges[mi].colour == start_) continue;
            if (candidates(out_colour, mi).empty()) continue;
            used_[mi] = true;
            indices_[pos] = mi;
            bool keep_going = pick_index(pos + 1, length, fn);
            used_[mi] = false;
            if (!keep_going) return false;
        }
        return true;
    }

    template <typename Fn>
    bool pick_out_edge(std::size_t pos, std::size_t length, Fn& fn) {
        if (pos == length) {
            Switching s;
            s.start_colour = start_;
            s.out_edges = chosen_;
            for (std::size_t i = 0; i < length; ++i) s.matching_edges.push_back(m_.edges[indices_[i]]);
            return fn(static_cast<const Switching&>(s));
        }
        const Colour out_colour = pos == 0 ? start_ : m_.edges[indices_[pos - 1]].colour;
        for (const Edge& e : candidates(out_colour, indices_[pos])) {
            bool clash = std::any_of(chosen_.begin(), chosen_.end(), [&](const Edge& o) { return o.meets(e); });
            if (clash) continue;
            chosen_.push_back(e);
            bool keep_going = pick_out_edge(pos + 1, length, fn);
            chosen_.pop_back();
            if (!keep_going) return false;
        }
        return true;
    }

    const CliqueIndex& index_;
    const Matching& m_;
    Colour start_;
    std::vector<int> owner_;
    std::vector<std::optional<std::vector<Edge>>> cache_;
    std::vector<std::size_t> indices_;
    std::vector<bool> used_;
    std::vector<Edge> chosen_;
};

struct SwitchingBatch {
    std::vector<Switching> items;
    /// Set when more switchings exist beyond `limit`.
    bool truncated = false;
};

inline SwitchingBatch enumerate_switchings(const Instance& inst, const Matching& m, Colour start_colour,
                                           std::size_t max_len, std::size_t limit) {
    CliqueIndex index(inst);
    SwitchingEnumerator walker(index, m, start_colour);
    SwitchingBatch batch;
    walker.for_each_up_to(max_len, [&](const Switching& s) {
        if (batch.items.size() == limit) {
            batch.truncated = true;
            return false;
        }
        batch.items.push_back(s);
        return true;
    });
    return batch;
}

// ---------------------------------------------------------------------------
// Disjoint-edge hypothesis
// ---------------------------------------------------------------------------

struct HypothesisFailure {
    Colour colour = 0;
    Switching switching;
    std::int64_t found = 0;
    std::int64_t required = 0;
};

struct HypothesisReport {
    std::size_t max_len = 0;
    std::size_t switchings_checked = 0;
    bool truncated = false;
    std::vector<HypothesisFailure> failures;

    [[nodiscard]] bool holds() const { return failures.empty(); }
    /// Never claims more than what was checked.
    [[nodiscard]] std::string verdict() const {
        if (!failures.empty()) return "fails";
        std::string label = "verified up to length " + std::to_string(max_len);
        if (truncated) label += " (truncated after " + std::to_string(switchings_checked) + " switchings)";
        return label;
    }
};

/// Evaluates, for every (c0, c)-switching of length <= max_len, whether at
/// least ceil((1+delta) n) - 4 l(sigma) disjoint c-edges run between
/// V \ (V(M) u V(sigma)) and V \ V(sigma).
inline HypothesisReport check_lemma_hypothesis(const Instance& inst, const Matching& m, Colour c0,
                                               const Rational& delta, std::size_t max_len,
                                               std::size_t limit = std::numeric_limits<std::size_t>::max()) {
    check_colour(inst, c0);
    if (m.has_colour(c0))
        throw Error(ErrorKind::invalid_missing_colour, "colour " + std::to_string(c0) + " is used by the matching");
    if (m.size() + 1 != static_cast<std::size_t>(inst.n))
        throw Error(ErrorKind::parameter, "matching must have size n-1");
    if (delta <= 0) throw Error(ErrorKind::parameter, "delta must be positive");

    const std::int64_t base = ceil_of((Rational(1) + delta) * Rational(inst.n));
    CliqueIndex index(inst);
    SwitchingEnumerator walker(index, m, c0);
    const VertexSet matched = m.vertices();
    HypothesisReport report;
    report.max_len = max_len;
    walker.for_each_up_to(max_len, [&](const Switching& s) {
        if (report.switchings_checked == limit) {
            report.truncated = true;
            return false;
        }
        ++report.switchings_checked;
        const VertexSet on_switching = s.vertices();
        const Colour c = s.end_colour();
        std::int64_t found = max_disjoint_edges_where(
            inst, c, [&](Element x) { return !matched.contains(x) && !on_switching.contains(x); },
            [&](Element x) { return !on_switching.contains(x); });
        std::int64_t required = base - 4 * static_cast<std::int64_t>(s.length());
        if (found < required) report.failures.push_back({c, s, found, required});
        return true;
    });
    return report;
}

} // namespace rainbow

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "augment.hpp"
#include "model.hpp"
#include "solver_types.hpp"
#include "switching.hpp"

namespace rainbow {

struct ProofGuidedResult {
    std::optional<Matching> matching;
    ProofTrace trace;
    SolveStats stats;
    bool timed_out = false;
};

/// Instance on the colours `keep` (renumbered in that order) with the
/// vertices in `removed` deleted; cliques shrinking below two vertices vanish.
inline ColourRestriction reduce_instance(const Instance& inst, const std::vector<Colour>& keep,
                                         const VertexSet& removed) {
    ColourRestriction r = restrict_colours(inst, keep);
    for (ColourClass& cls : r.instance.classes) {
        ColourClass out;
        for (Clique& q : cls) {
            Clique kept;
            for (Element x : q)
                if (!removed.contains(x)) kept.push_back(x);
            if (kept.size() >= 2) out.push_back(std::move(kept));
        }
        cls = std::move(out);
    }
    r.instance = canonicalize(std::move(r.instance));
    return r;
}

namespace detail {

class ProofGuided {
  public:
    ProofGuided(const SolverParams& params, ProofGuidedResult& result) : params_(params), result_(result) {}

    std::optional<Matching> level(const Instance& g, const Matching& m, Colour c0, const Rational& delta,
                                  const std::vector<Colour>& to_top, std::size_t depth) {
        result_.stats.recursion_depth = std::max<std::uint64_t>(result_.stats.recursion_depth, depth);
        const std::size_t slot = result_.trace.levels.size();
        result_.trace.levels.emplace_back();
        auto rec = [&]() -> ProofLevel& { return result_.trace.levels[slot]; };
        const std::size_t n = static_cast<std::size_t>(g.n);
        rec().n = n;
        rec().delta = delta;
        rec().missing_colour = to_top[c0];
        auto top_colours = [&](const std::vector<Colour>& cs) {
            std::vector<Colour> out;
            for (Colour c : cs) out.push_back(to_top[c]);
            return out;
        };
        auto top_edge = [&](Edge e) {
            e.colour = to_top[e.colour];
            return e;
        };

        CliqueIndex index(g);
        const VertexSet matched = m.vertices();
        auto in_free = [&](Element x) { return !matched.contains(x); };

        // (1) a c0-edge inside the free region
        for (const Clique& q : g.classes[c0]) {
            std::vector<Element> free;
            for (Element x : q)
                if (in_free(x)) free.push_back(x);
            if (free.size() >= 2) {
                Switching empty;
                empty.start_colour = c0;
                Matching out = apply_switching(g, m, empty, make_edge(c0, free[0], free[1]));
                rec().branch = ProofBranch::direct;
                rec().output_size = out.size();
                return out;
            }
        }

        if (delta <= 0) return fallback(g, m, c0, slot, "delta not positive");

        // (2) fixed length-1 switchings sigma_c and their direct closings
        std::vector<std::optional<std::size_t>> edge_of_colour(n);
        for (std::size_t i = 0; i < m.edges.size(); ++i) edge_of_colour[m.edges[i].colour] = i;

        struct LengthOne {
            Switching sigma;
            Element free_end = -1;
        };
        std::map<Colour, LengthOne> sigma_of;
        std::vector<Colour> c1_set;
        for (Colour c = 0; c < g.n; ++c) {
            if (c == c0 || !edge_of_colour[c]) continue;
            const Edge& m1 = m.edges[*edge_of_colour[c]];
            std::optional<Edge> e0;
            for (Element p : {m1.u, m1.v})
                for (Element q : index.clique_containing(c0, p))
                    if (q != p && in_free(q)) {
                        Edge cand = make_edge(c0, p, q);
                        if (!e0 || cand < *e0) e0 = cand;
                    }
            if (!e0) continue;
            LengthOne one;
            one.sigma.start_colour = c0;
            one.sigma.out_edges = {*e0};
            one.sigma.matching_edges = {m1};
            one.free_end = m1.touches(e0->u) ? e0->v : e0->u;
            sigma_of.emplace(c, one);
            c1_set.push_back(c);
        }
        rec().c1_set = top_colours(c1_set);

        for (Colour c : c1_set) {
            const LengthOne& one = sigma_of.at(c);
            for (const Clique& q : g.classes[c]) {
                std::vector<Element> free;
                for (Element x : q)
                    if (in_free(x) && x != one.free_end) free.push_back(x);
                if (free.size() >= 2) {
                    Matching out = apply_switching(g, m, one.sigma, make_edge(c, free[0], free[1]));
                    rec().branch = ProofBranch::length_one;
                    rec().sigma = one.sigma;
                    rec().output_size = out.size();
                    return out;
                }
            }
        }

        // (3) c-good matching edges; m2 maximises the number of such colours
        struct GoodPair {
            Edge x_edge;
            Edge y_edge;
        };
        auto good_pair = [&](Colour c, const Edge& me) -> std::optional<GoodPair> {
            const Element avoid = sigma_of.at(c).free_end;
            auto free_neighbours = [&](Element p) {
                std::vector<Element> out;
                for (Element q : index.clique_containing(c, p))
                    if (q != p && in_free(q) && q != avoid) out.push_back(q);
                return out;
            };
            auto nx = free_neighbours(me.u);
            auto ny = free_neighbours(me.v);
            if (nx.empty() || ny.empty()) return std::nullopt;
            Element rx = nx[0], ry = ny[0];
            if (rx == ry) {
                if (ny.size() > 1) ry = ny[1];
                else if (nx.size() > 1) rx = nx[1];
                else return std::nullopt;
            }
            return GoodPair{make_edge(c, me.u, rx), make_edge(c, me.v, ry)};
        };

        std::size_t best_mu = 0;
        std::optional<std::size_t> m2_index;
        for (std::size_t i = 0; i < m.edges.size(); ++i) {
            const Edge& me = m.edges[i];
            std::size_t mu = 0;
            for (Colour c : c1_set) {
                if (c == me.colour || sigma_of.at(c).sigma.matching_edges[0] == me) continue;
                if (good_pair(c, me)) ++mu;
            }
            bool better = mu > best_mu || (mu == best_mu && mu > 0 && m2_index && me.colour < m.edges[*m2_index].colour);
            if (better) {
                best_mu = mu;
                m2_index = i;
            }
        }
        if (!m2_index) return fallback(g, m, c0, slot, "no c-good matching edge");
        const Edge m2 = m.edges[*m2_index];
        rec().m2 = top_edge(m2);
        rec().mu = best_mu;

        std::vector<Colour> c2_set;
        std::map<Colour, GoodPair> pair_of;
        for (Colour c : c1_set) {
            if (c == m2.colour || sigma_of.at(c).sigma.matching_edges[0] == m2) continue;
            if (auto p = good_pair(c, m2)) {
                c2_set.push_back(c);
                pair_of.emplace(c, *p);
            }
        }
        rec().c2_set = top_colours(c2_set);

        const std::int64_t target = std::max<std::int64_t>(0, ceil_of(delta * Rational(static_cast<std::int64_t>(n), 6)));
        auto free_end_of = [&](const Edge& e) { return matched.contains(e.u) ? e.v : e.u; };

        std::map<Element, std::vector<Colour>> at_vertex;
        for (Colour c : c2_set) at_vertex[free_end_of(pair_of.at(c).x_edge)].push_back(c);
        Element hub = -1;
        std::size_t hub_count = 0;
        for (const auto& [v, cs] : at_vertex)
            if (cs.size() > hub_count) {
                hub = v;
                hub_count = cs.size();
            }

        Colour c1 = -1;
        std::vector<Colour> c_star;
        ProofBranch branch;
        if (hub >= 0 && 3 * hub_count >= c2_set.size()) {
            branch = ProofBranch::concentrated;
            const std::vector<Colour>& at_hub = at_vertex.at(hub);
            if (at_hub.size() < static_cast<std::size_t>(target) + 1)
                return fallback(g, m, c0, slot, "concentrated vertex carries fewer than ceil(delta n/6)+1 edges");
            c1 = at_hub[0];
            c_star.assign(at_hub.begin() + 1, at_hub.begin() + 1 + target);
        } else {
            branch = ProofBranch::spread;
            if (c2_set.empty()) return fallback(g, m, c0, slot, "no colour for which m2 is good");
            c1 = c2_set[0];
            const Edge& e1 = pair_of.at(c1).y_edge;
            const Element avoid = sigma_of.at(c1).free_end;
            for (Colour c : c2_set) {
                if (c == c1 || static_cast<std::int64_t>(c_star.size()) == target) continue;
                Element r = free_end_of(pair_of.at(c).x_edge);
                if (e1.touches(r) || r == avoid) continue;
                c_star.push_back(c);
            }
            if (static_cast<std::int64_t>(c_star.size()) < target)
                return fallback(g, m, c0, slot, "fewer than ceil(delta n/6) x-edges avoid e1 and sigma_c1");
        }

        const LengthOne& first = sigma_of.at(c1);
        Switching sigma;
        sigma.start_colour = c0;
        sigma.out_edges = {first.sigma.out_edges[0], pair_of.at(c1).y_edge};
        sigma.matching_edges = {first.sigma.matching_edges[0], m2};
        if (!validate_switching(g, m, sigma, c0))
            return fallback(g, m, c0, slot, "assembled switching does not validate");
        const VertexSet sigma_vertices = sigma.vertices();

        std::vector<Edge> e_c;
        std::vector<Element> s_elems;
        for (Colour c : c_star) {
            const Edge& x = pair_of.at(c).x_edge;
            Element r = free_end_of(x);
            if (sigma_vertices.contains(r)) return fallback(g, m, c0, slot, "e_c meets the switching");
            e_c.push_back(x);
            s_elems.push_back(r);
        }
        rec().branch = branch;
        rec().sigma = Switching{to_top[c0], {top_edge(sigma.out_edges[0]), top_edge(sigma.out_edges[1])},
                                {top_edge(sigma.matching_edges[0]), top_edge(sigma.matching_edges[1])}};
        rec().c_star = top_colours(c_star);
        for (const Edge& e : e_c) rec().e_c.push_back(top_edge(e));
        const VertexSet s_set(std::move(s_elems));
        rec().s_set = s_set;

        // (4) reduce to G' and recurse with missing colour c2
        std::vector<Edge> w_edges;
        Matching reduced_m;
        for (const Edge& e : m.edges) {
            if (e == sigma.matching_edges[0] || e == m2) continue;
            if (std::find(c_star.begin(), c_star.end(), e.colour) != c_star.end()) w_edges.push_back(e);
            else reduced_m.edges.push_back(e);
        }
        for (const Edge& e : w_edges) rec().w_edges.push_back(top_edge(e));

        std::vector<Colour> keep;
        for (Colour c = 0; c < g.n; ++c) {
            if (c == c0 || c == c1) continue;
            if (std::find(c_star.begin(), c_star.end(), c) != c_star.end()) continue;
            keep.push_back(c);
        }
        std::vector<Element> removed_elems(sigma_vertices.begin(), sigma_vertices.end());
        removed_elems.insert(removed_elems.end(), s_set.begin(), s_set.end());
        for (const Edge& e : w_edges) {
            removed_elems.push_back(e.u);
            removed_elems.push_back(e.v);
        }
        ColourRestriction reduced = reduce_instance(g, keep, VertexSet(std::move(removed_elems)));
        const std::size_t n_reduced = keep.size();
        const Rational delta_reduced(ceil_of(delta * Rational(static_cast<std::int64_t>(n))) - 12,
                                     static_cast<std::int64_t>(n_reduced));
        rec().reduced_colours = top_colours(keep);
        rec().reduced_n = n_reduced;
        rec().reduced_delta = delta_reduced;

        std::vector<Colour> reduced_to_top;
        for (Colour c : keep) reduced_to_top.push_back(to_top[c]);
        const Matching local_m = reduced.to_local(reduced_m);
        std::optional<Matching> inner =
            level(reduced.instance, local_m, reduced.local(m2.colour), delta_reduced, reduced_to_top, depth + 1);
        if (!inner) return fallback(g, m, c0, slot, "reduced instance unsolved");

        Matching combined = reduced.to_original_matching(*inner);
        combined.edges.insert(combined.edges.end(), w_edges.begin(), w_edges.end());
        combined.edges.insert(combined.edges.end(), sigma.out_edges.begin(), sigma.out_edges.end());
        if (!is_rainbow_matching(g, combined, n))
            return fallback(g, m, c0, slot, "combined matching is not rainbow");
        rec().output_size = combined.size();
        return combined;
    }

  private:
    std::optional<Matching> fallback(const Instance& g, const Matching& m, Colour c0, std::size_t slot,
                                     std::string reason) {
        ++result_.stats.fallbacks;
        AugmentResult r = switching_augment(g, m, c0, params_);
        result_.stats.switchings_tried += r.stats.switchings_tried;
        result_.stats.nodes += r.stats.nodes;
        result_.timed_out = result_.timed_out || r.timed_out;
        ProofLevel& rec = result_.trace.levels[slot];
        rec.fallback = true;
        rec.fallback_reason = std::move(reason);
        rec.branch = r.matching ? ProofBranch::fallback : ProofBranch::failed;
        if (r.matching) rec.output_size = r.matching->size();
        return r.matching;
    }

    const SolverParams& params_;
    ProofGuidedResult& result_;
};

} // namespace detail

/// Augments a rainbow matching of size n-1 by induction on n: direct
/// closing, length-1 closing, then a (c0, c2)
/// switching of length 2 with the colour set C*, reduction to G' and
/// recursion. A step whose witness does not exist hands over to
/// switching_augment and is flagged in the trace.
inline ProofGuidedResult proof_guided_augment(const Instance& inst, const Matching& m, Colour missing,
                                              const SolverParams& params) {
    params.validate();
    check_colour(inst, missing);
    if (m.has_colour(missing))
        throw Error(ErrorKind::invalid_missing_colour, "colour " + std::to_string(missing) + " is used by the matching");
    if (m.size() + 1 != static_cast<std::size_t>(inst.n))
        throw Error(ErrorKind::parameter, "matching must have size n-1");
    if (!is_rainbow_matching(inst, m, m.size())) throw Error(ErrorKind::parameter, "input is not a rainbow matching");

    ProofGuidedResult result;
    detail::ProofGuided walker(params, result);
    std::vector<Colour> identity(static_cast<std::size_t>(inst.n));
    for (Colour c = 0; c < inst.n; ++c) identity[c] = c;
    result.matching = walker.level(inst, m, missing, params.delta, identity, 0);
    return result;
}

/// Arithmetic identities a completed (non-fallback) proof level must satisfy.
inline std::vector<std::string> proof_level_identity_violations(const ProofLevel& level) {
    std::vector<std::string> out;
    if (level.fallback || (level.branch != ProofBranch::concentrated && level.branch != ProofBranch::spread))
        return out;
    const auto n = static_cast<std::int64_t>(level.n);
    const std::int64_t t = ceil_of(level.delta * Rational(n, 6));
    if (static_cast<std::int64_t>(level.c_star.size()) != t) out.push_back("|C*| != ceil(delta n / 6)");
    if (static_cast<std::int64_t>(level.reduced_n) != floor_of(Rational(n) * (Rational(1) - level.delta / 6)) - 2)
        out.push_back("n' != floor(n (1 - delta/6)) - 2");
    if (level.output_size != 0 && static_cast<std::int64_t>(level.reduced_n + level.c_star.size() + 2) != n)
        out.push_back("n' + |C*| + 2 != n");
    if (level.output_size != 0 && static_cast<std::int64_t>(level.output_size) != n)
        out.push_back("output size != n");
    if (level.reduced_n > 0 &&
        level.reduced_delta * Rational(static_cast<std::int64_t>(level.reduced_n)) < level.delta * Rational(n) - 12)
        out.push_back("delta' n' < delta n - 12");
    return out;
}

} // namespace rainbow

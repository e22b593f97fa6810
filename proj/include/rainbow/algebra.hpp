#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace rainbow {

using Mask = std::uint32_t;

inline constexpr std::size_t algebra_ground_cap = 20;
/// Exhaustive scans over all subsets of the ground set stop here.
inline constexpr std::size_t algebra_scan_cap = 16;
/// Pairwise closure checks are exhaustive up to this many members.
inline constexpr std::size_t pairwise_closure_cap = 4096;

/// A family of subsets of `ground`, each a bitmask (bit i <-> ground[i]).
/// Members are kept sorted by mask value.
struct FiniteAlgebra {
    VertexSet ground;
    std::vector<Mask> members;

    [[nodiscard]] Mask full() const {
        return ground.size() >= 32 ? ~Mask{0} : static_cast<Mask>((std::uint64_t{1} << ground.size()) - 1);
    }
    [[nodiscard]] bool contains(Mask m) const { return std::binary_search(members.begin(), members.end(), m); }

    [[nodiscard]] VertexSet to_set(Mask m) const {
        std::vector<Element> out;
        for (std::size_t i = 0; i < ground.size(); ++i)
            if (m & (Mask{1} << i)) out.push_back(ground[i]);
        return VertexSet(std::move(out));
    }
    [[nodiscard]] Mask to_mask(const VertexSet& s) const {
        Mask m = 0;
        for (Element x : s) {
            auto it = std::lower_bound(ground.begin(), ground.end(), x);
            if (it == ground.end() || *it != x)
                throw Error(ErrorKind::parameter, "element " + std::to_string(x) + " is outside the ground set");
            m |= Mask{1} << (it - ground.begin());
        }
        return m;
    }

    friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;
};

inline FiniteAlgebra make_algebra(VertexSet ground, std::vector<Mask> members) {
    if (ground.size() > algebra_ground_cap)
        throw Error(ErrorKind::cap_exceeded, "ground set of " + std::to_string(ground.size()) + " elements exceeds " +
                                                 std::to_string(algebra_ground_cap));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return FiniteAlgebra{std::move(ground), std::move(members)};
}

namespace detail {

/// For each ground element, the intersection of all members containing it.
inline std::vector<Mask> element_hulls(const FiniteAlgebra& a) {
    std::vector<Mask> hull(a.ground.size(), a.full());
    for (Mask m : a.members)
        for (std::size_t i = 0; i < a.ground.size(); ++i)
            if (m & (Mask{1} << i)) hull[i] &= m;
    return hull;
}

} // namespace detail

/// Empty iff `a` is a nonempty family containing the empty set and the
/// ground set, closed under complement and union.
inline std::vector<std::string> closure_violations(const FiniteAlgebra& a) {
    std::vector<std::string> out;
    if (a.members.empty()) {
        out.push_back("no members");
        return out;
    }
    const Mask full = a.full();
    if (!a.contains(0)) out.push_back("missing the empty set");
    if (!a.contains(full)) out.push_back("missing the ground set");
    for (Mask m : a.members) {
        if (m & ~full) {
            out.push_back("member outside the ground set");
            return out;
        }
        if (!a.contains(full & ~m)) {
            out.push_back("not closed under complement");
            break;
        }
    }
    if (a.members.size() <= pairwise_closure_cap) {
        for (std::size_t i = 0; i < a.members.size(); ++i)
            for (std::size_t j = i + 1; j < a.members.size(); ++j)
                if (!a.contains(a.members[i] | a.members[j])) {
                    out.push_back("not closed under union");
                    return out;
                }
    } else {
        // Large families: closure holds iff the members are exactly the unions of the hulls.
        std::vector<Mask> atoms = detail::element_hulls(a);
        std::sort(atoms.begin(), atoms.end());
        atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
        Mask seen = 0;
        for (Mask atom : atoms) {
            if (seen & atom) {
                out.push_back("not closed under union");
                return out;
            }
            seen |= atom;
        }
        if (atoms.size() >= 32 || a.members.size() != (std::size_t{1} << atoms.size()))
            out.push_back("not closed under union");
        else
            for (Mask m : a.members)
                for (Mask atom : atoms)
                    if ((m & atom) != 0 && (m & atom) != atom) {
                        out.push_back("not closed under union");
                        return out;
                    }
    }
    return out;
}

/// All unions of equivalence classes of colour `c`; ground elements outside
/// the kernel are singleton classes.
inline FiniteAlgebra relation_to_algebra(const Instance& inst, Colour c, const VertexSet& ground) {
    check_colour(inst, c);
    if (ground.size() > algebra_ground_cap)
        throw Error(ErrorKind::cap_exceeded, "ground set of " + std::to_string(ground.size()) + " elements exceeds " +
                                                 std::to_string(algebra_ground_cap));
    if (!kernel(inst, c).is_subset_of(ground))
        throw Error(ErrorKind::parameter, "kernel of colour " + std::to_string(c) + " is not inside the ground set");
    FiniteAlgebra shell{ground, {}};
    std::vector<Mask> blocks;
    Mask covered = 0;
    for (const Clique& q : inst.classes[c]) {
        Mask b = shell.to_mask(VertexSet(q.begin(), q.end()));
        blocks.push_back(b);
        covered |= b;
    }
    for (std::size_t i = 0; i < ground.size(); ++i)
        if (!(covered & (Mask{1} << i))) blocks.push_back(Mask{1} << i);

    std::vector<Mask> members;
    members.reserve(std::size_t{1} << blocks.size());
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << blocks.size()); ++pick) {
        Mask m = 0;
        for (std::size_t b = 0; b < blocks.size(); ++b)
            if (pick & (std::uint64_t{1} << b)) m |= blocks[b];
        members.push_back(m);
    }
    FiniteAlgebra a = make_algebra(ground, std::move(members));
    if (auto v = closure_violations(a); !v.empty()) throw Error(ErrorKind::invalid_algebra, v.front());
    return a;
}

/// Atoms (inclusion-minimal nonempty members), sorted by smallest element.
inline std::vector<VertexSet> algebra_to_relation(const FiniteAlgebra& a) {
    if (auto v = closure_violations(a); !v.empty()) throw Error(ErrorKind::invalid_algebra, v.front());
    std::vector<Mask> atoms = detail::element_hulls(a);
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    Mask seen = 0;
    for (Mask atom : atoms) {
        if ((seen & atom) || !a.contains(atom)) throw Error(ErrorKind::invalid_algebra, "atoms do not partition the ground");
        seen |= atom;
    }
    std::vector<VertexSet> out;
    for (Mask atom : atoms) out.push_back(a.to_set(atom));
    std::sort(out.begin(), out.end(), [](const VertexSet& x, const VertexSet& y) { return x[0] < y[0]; });
    return out;
}

/// 2n pairwise disjoint sets, pairs indexed by colour.
struct WitnessFamily {
    std::vector<std::pair<VertexSet, VertexSet>> pairs;

    [[nodiscard]] bool pairwise_disjoint() const {
        std::vector<Element> all;
        for (const auto& [a, b] : pairs) {
            all.insert(all.end(), a.begin(), a.end());
            all.insert(all.end(), b.begin(), b.end());
        }
        std::sort(all.begin(), all.end());
        return std::adjacent_find(all.begin(), all.end()) == all.end();
    }
};

/// U_i^1 = {x_i}, U_i^2 = {y_i} for the colour-i edge {x_i, y_i}.
inline WitnessFamily witness_from_matching(const Instance& inst, const Matching& m) {
    if (!is_rainbow_matching(inst, m, static_cast<std::size_t>(inst.n)))
        throw Error(ErrorKind::parameter, "witness_from_matching needs a rainbow matching of size n");
    Matching by_colour = sorted(m);
    WitnessFamily w;
    for (const Edge& e : by_colour.edges) w.pairs.emplace_back(VertexSet{e.u}, VertexSet{e.v});
    return w;
}

struct WitnessViolation {
    std::size_t index = 0;
    /// 1 when Q contains U^1 and misses U^2, 2 for the mirrored case.
    int side = 1;
    VertexSet q;
};

struct WitnessReport {
    std::uint64_t subsets_scanned = 0;
    std::uint64_t violation_count = 0;
    /// First violations found, at most 64.
    std::vector<WitnessViolation> violations;

    [[nodiscard]] bool pass() const { return violation_count == 0; }
};

/// For each i and each Q in P(ground) containing one of U_i^1, U_i^2 and
/// missing the other, asserts Q is not in algebra i.
inline WitnessReport verify_witness_property(const std::vector<FiniteAlgebra>& algebras, const WitnessFamily& w) {
    if (algebras.size() != w.pairs.size())
        throw Error(ErrorKind::parameter, "need one algebra per witness pair");
    WitnessReport report;
    for (std::size_t i = 0; i < algebras.size(); ++i) {
        const FiniteAlgebra& a = algebras[i];
        if (a.ground.size() > algebra_scan_cap)
            throw Error(ErrorKind::cap_exceeded, "exhaustive scan limited to ground sets of " +
                                                     std::to_string(algebra_scan_cap) + " elements");
        std::vector<bool> member(std::size_t{1} << a.ground.size(), false);
        for (Mask m : a.members) member[m] = true;
        const Mask u1 = a.to_mask(w.pairs[i].first);
        const Mask u2 = a.to_mask(w.pairs[i].second);
        for (Mask q = 0; q <= a.full(); ++q) {
            ++report.subsets_scanned;
            for (int side : {1, 2}) {
                const Mask inside = side == 1 ? u1 : u2;
                const Mask outside = side == 1 ? u2 : u1;
                if ((q & inside) == inside && (q & outside) == 0 && member[q]) {
                    ++report.violation_count;
                    if (report.violations.size() < 64) report.violations.push_back({i, side, a.to_set(q)});
                }
            }
            if (q == a.full()) break;
        }
    }
    return report;
}

namespace detail {

inline Element atom_pick(const VertexSet& atom, const VertexSet& u) {
    for (Element x : atom)
        if (u.contains(x)) return x;
    throw Error(ErrorKind::no_witness, "class does not meet the witness set");
}

} // namespace detail

/// Inverse direction: Q_i is the smallest member containing U_i^1, and a
/// class inside Q_i meeting both U_i^1 and U_i^2 supplies the colour-i edge.
inline Matching matching_from_witness(const std::vector<FiniteAlgebra>& algebras, const WitnessFamily& w) {
    if (algebras.size() != w.pairs.size())
        throw Error(ErrorKind::parameter, "need one algebra per witness pair");
    if (!w.pairwise_disjoint()) throw Error(ErrorKind::no_witness, "witness sets are not pairwise disjoint");
    Matching out;
    for (std::size_t i = 0; i < algebras.size(); ++i) {
        const FiniteAlgebra& a = algebras[i];
        const std::vector<VertexSet> atoms = algebra_to_relation(a);
        const VertexSet& u1 = w.pairs[i].first;
        const VertexSet& u2 = w.pairs[i].second;
        std::vector<const VertexSet*> in_q;
        for (const VertexSet& atom : atoms)
            if (atom.intersects(u1)) in_q.push_back(&atom);
        // Minimality: every class of Q_i meets U_i^1, so dropping any breaks U_i^1 <= Q_i.
        VertexSet q;
        for (const VertexSet* atom : in_q) q = q.union_with(*atom);
        if (!u1.is_subset_of(q)) throw Error(ErrorKind::no_witness, "U^1 is not covered by the algebra");
        if (!q.intersects(u2))
            throw Error(ErrorKind::no_witness, "minimal member containing U^1 misses U^2 for index " + std::to_string(i));
        const VertexSet* chosen = nullptr;
        for (const VertexSet* atom : in_q)
            if (atom->intersects(u2)) {
                chosen = atom;
                break;
            }
        const Element x = detail::atom_pick(*chosen, u1);
        const Element y = detail::atom_pick(*chosen, u2);
        out.edges.push_back(make_edge(static_cast<Colour>(i), x, y));
    }
    std::vector<Element> verts;
    for (const Edge& e : out.edges) {
        verts.push_back(e.u);
        verts.push_back(e.v);
    }
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
        throw Error(ErrorKind::no_witness, "recovered edges are not disjoint");
    return out;
}

} // namespace rainbow

#pragma once

// Splitting block-triangular morphisms into restriction and quotient maps.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "projmaps/error.hpp"
#include "projmaps/finite_field.hpp"
#include "projmaps/poly.hpp"
#include "projmaps/resultant.hpp"
#include "projmaps/stability.hpp"

namespace projmaps {

struct SplitPair {
    /// Components outside H' on the subspace {x_i = 0 : i in V'}.
    ProjectiveMap restriction;
    std::vector<int> restriction_variables;  // parent variable per restriction variable
    std::vector<int> restriction_components; // parent component per restriction component
    /// Components in H' read in the variables V'.
    ProjectiveMap quotient;
    std::vector<int> quotient_variables;
    std::vector<int> quotient_components;
};

namespace detail {

/// Keeps the terms supported on `keep` and re-indexes them to those variables.
inline HomogeneousPoly project_poly(const HomogeneousPoly& p, const std::vector<int>& keep) {
    HomogeneousPoly out(static_cast<int>(keep.size()), p.degree());
    for (const auto& [exp, coeff] : p.terms()) {
        int kept = 0;
        MultiIndex e;
        for (int i : keep) {
            e.push_back(exp[static_cast<std::size_t>(i)]);
            kept += exp[static_cast<std::size_t>(i)];
        }
        if (kept == p.degree()) out.add_term(e, coeff);
    }
    return out;
}

inline std::vector<int> complement(const std::vector<int>& subset, int count) {
    std::vector<int> out;
    for (int i = 0; i < count; ++i)
        if (!std::binary_search(subset.begin(), subset.end(), i)) out.push_back(i);
    return out;
}

inline SplitPair split_unchecked(const ProjectiveMap& f, const BlockStructure& block) {
    validate_block(block, f);
    SplitPair pair;
    pair.quotient_variables = block.variables;
    pair.quotient_components = block.components;
    pair.restriction_variables = complement(block.variables, f.num_vars());
    pair.restriction_components = complement(block.components, f.num_vars());

    std::vector<HomogeneousPoly> q, r;
    for (int j : pair.quotient_components) q.push_back(project_poly(f[static_cast<std::size_t>(j)], block.variables));
    for (int j : pair.restriction_components)
        r.push_back(project_poly(f[static_cast<std::size_t>(j)], pair.restriction_variables));

    auto build = [&](std::vector<HomogeneousPoly> comps, const char* what) {
        const int n = static_cast<int>(comps.size()) - 1;
        bool any = std::any_of(comps.begin(), comps.end(), [](const auto& c) { return !c.is_zero(); });
        if (!any) throw Error(ErrorCode::InternalContradiction, std::string(what) + " piece vanishes identically");
        return ProjectiveMap(n, f.m(), std::move(comps));
    };
    pair.quotient = build(std::move(q), "quotient");
    pair.restriction = build(std::move(r), "restriction");
    return pair;
}

inline bool checked_morphism(const ProjectiveMap& f, const ResultantOptions& opts) {
    auto r = macaulay_resultant(f, opts);
    if (r.indeterminate())
        throw Error(ErrorCode::IndeterminateResultant, "Macaulay minor vanished after " + std::to_string(r.retries) +
                                                           " retries (seed " + std::to_string(r.seed) + ")");
    return *r.value != 0;
}

} // namespace detail

/// For a morphism, both pieces are again morphisms; a failure here means a
/// bug or an unresolved resultant, reported as InternalContradiction.
inline SplitPair split_once(const ProjectiveMap& f, const BlockStructure& block, const ResultantOptions& opts = {}) {
    if (!detail::checked_morphism(f, opts)) throw Error(ErrorCode::NotAMorphism, "input has a common zero");
    auto pair = detail::split_unchecked(f, block);
    auto verify = [&](const ProjectiveMap& piece, const char* what) {
        bool ok = false;
        try {
            ok = detail::checked_morphism(piece, opts);
        } catch (const Error& e) {
            throw Error(ErrorCode::InternalContradiction, std::string(what) + " piece: " + e.what());
        }
        if (!ok) throw Error(ErrorCode::InternalContradiction, std::string(what) + " piece is not a morphism");
    };
    verify(pair.quotient, "quotient");
    verify(pair.restriction, "restriction");
    return pair;
}

enum class LeafReason { RankOne, NoBlocks };

constexpr std::string_view to_string(LeafReason r) { return r == LeafReason::RankOne ? "RankOne" : "NoBlocks"; }

struct DecompositionTree {
    ProjectiveMap map;
    std::vector<int> variables;  // indices into the root's variables
    std::vector<int> components; // indices into the root's components
    std::optional<BlockStructure> block; // set on internal nodes (local indices)
    std::vector<DecompositionTree> children; // {restriction, quotient} or empty
    std::optional<LeafReason> leaf_reason;

    bool is_leaf() const { return children.empty(); }

    /// Leaf ranks, sorted descending.
    std::vector<int> splitting_type() const {
        std::vector<int> out;
        collect(out);
        std::sort(out.rbegin(), out.rend());
        return out;
    }

    std::size_t node_count() const {
        std::size_t s = 1;
        for (const auto& c : children) s += c.node_count();
        return s;
    }

private:
    void collect(std::vector<int>& out) const {
        if (is_leaf()) out.push_back(map.num_vars());
        for (const auto& c : children) c.collect(out);
    }
};

namespace detail {

inline std::vector<int> lift(const std::vector<int>& local, const std::vector<int>& parent) {
    std::vector<int> out;
    for (int i : local) out.push_back(parent[static_cast<std::size_t>(i)]);
    return out;
}

inline DecompositionTree decompose_node(const ProjectiveMap& f, std::vector<int> vars, std::vector<int> comps,
                                        const ResultantOptions& opts) {
    DecompositionTree node{f, std::move(vars), std::move(comps), std::nullopt, {}, std::nullopt};
    if (f.num_vars() == 1) {
        node.leaf_reason = LeafReason::RankOne;
        return node;
    }
    auto detection = detect_blocks(f);
    if (detection.blocks.empty()) {
        node.leaf_reason = LeafReason::NoBlocks;
        return node;
    }
    node.block = detection.blocks.front();
    auto pair = split_once(f, *node.block, opts);
    node.children.push_back(decompose_node(pair.restriction, lift(pair.restriction_variables, node.variables),
                                           lift(pair.restriction_components, node.components), opts));
    node.children.push_back(decompose_node(pair.quotient, lift(pair.quotient_variables, node.variables),
                                           lift(pair.quotient_components, node.components), opts));
    return node;
}

inline std::vector<int> identity_indices(int count) {
    std::vector<int> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
}

inline void all_types(const ProjectiveMap& f, std::set<std::vector<int>>& out, const ResultantOptions& opts) {
    // Every combination of per-node block choices; splitting types only.
    auto rec = [&](auto&& self, const ProjectiveMap& g) -> std::set<std::vector<int>> {
        if (g.num_vars() == 1) return {{1}};
        auto detection = detect_blocks(g);
        if (detection.blocks.empty()) return {{g.num_vars()}};
        std::set<std::vector<int>> types;
        for (const auto& block : detection.blocks) {
            auto pair = split_once(g, block, opts);
            for (const auto& a : self(self, pair.restriction))
                for (const auto& b : self(self, pair.quotient)) {
                    std::vector<int> t = a;
                    t.insert(t.end(), b.begin(), b.end());
                    std::sort(t.rbegin(), t.rend());
                    types.insert(t);
                }
        }
        return types;
    };
    out = rec(rec, f);
}

} // namespace detail

/// Recursive splitting along the first block in canonical order until every
/// leaf has rank one or no block.
inline DecompositionTree decompose_fully(const ProjectiveMap& f, const ResultantOptions& opts = {}) {
    if (!detail::checked_morphism(f, opts)) throw Error(ErrorCode::NotAMorphism, "input has a common zero");
    return detail::decompose_node(f, detail::identity_indices(f.num_vars()), detail::identity_indices(f.num_vars()),
                                  opts);
}

/// Splitting types reachable over all block choices; exponential, small n only.
inline std::set<std::vector<int>> all_splitting_types(const ProjectiveMap& f, const ResultantOptions& opts = {}) {
    if (f.n() > 4) throw Error(ErrorCode::SizeLimit, "exhaustive block choice is limited to n <= 4");
    if (!detail::checked_morphism(f, opts)) throw Error(ErrorCode::NotAMorphism, "input has a common zero");
    std::set<std::vector<int>> out;
    detail::all_types(f, out, opts);
    return out;
}

/// Over F_p: f(x) lies in {y_j = 0 : j in H'} exactly when x lies in
/// {x_i = 0 : i in V'}.
inline bool verify_preimage(const ProjectiveMap& f, const BlockStructure& block, Residue prime,
                            const ResultantOptions& opts = {}) {
    if (!detail::checked_morphism(f, opts)) throw Error(ErrorCode::NotAMorphism, "input has a common zero");
    validate_block(block, f);
    ReducedMap reduced(f, prime);
    std::vector<Residue> values;
    bool ok = true;
    for_each_projective_point(reduced.num_vars(), prime, [&](const std::vector<Residue>& x) {
        if (!ok) return;
        reduced.evaluate(x, values);
        bool into = std::all_of(block.components.begin(), block.components.end(),
                                [&](int j) { return values[static_cast<std::size_t>(j)] == 0; });
        bool inside = std::all_of(block.variables.begin(), block.variables.end(),
                                  [&](int i) { return x[static_cast<std::size_t>(i)] == 0; });
        if (into != inside) ok = false;
    });
    return ok;
}

} // namespace projmaps

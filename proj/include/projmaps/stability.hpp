#pragma once

// Torus stabilizers, block-triangular structure, destabilizing subgroups and
// limit maps of a projective map in the given coordinates.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "projmaps/error.hpp"
#include "projmaps/linalg.hpp"
#include "projmaps/poly.hpp"
#include "projmaps/resultant.hpp"
#include "projmaps/weights.hpp"

namespace projmaps {

/// One solution (c, b, C) of <c, I> - b_j = C over the support.
struct StabilizerSolution {
    std::vector<Rational> c;
    std::vector<Rational> b;
    Rational C;

    bool c_constant() const {
        return std::all_of(c.begin(), c.end(), [&](const Rational& q) { return q == c.front(); });
    }
};

struct StabilizerSpace {
    std::vector<StabilizerSolution> basis;
    std::size_t dim = 0;
    std::size_t torus_rank = 0;
    /// Set when m <= n+1: unipotent stabilizers are not excluded there, so
    /// torus_rank alone does not decide finiteness of the stabilizer.
    bool unipotent_warning = false;
};

/// Unknown layout: c_0..c_n, b_0..b_n, C.
inline StabilizerSolution unpack_solution(const std::vector<Rational>& v, std::size_t dim) {
    StabilizerSolution s;
    s.c.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dim));
    s.b.assign(v.begin() + static_cast<std::ptrdiff_t>(dim), v.begin() + static_cast<std::ptrdiff_t>(2 * dim));
    s.C = v[2 * dim];
    return s;
}

inline StabilizerSpace stabilizer_space(const ProjectiveMap& f) {
    const auto dim = static_cast<std::size_t>(f.num_vars());
    const std::size_t unknowns = 2 * dim + 1;
    RatMatrix system(f.term_count(), unknowns);
    std::size_t row = 0;
    for (std::size_t j = 0; j < dim; ++j)
        for (const auto& [exp, coeff] : f[j].terms()) {
            for (std::size_t k = 0; k < dim; ++k) system(row, k) = exp[k];
            system(row, dim + j) = -1;
            system(row, 2 * dim) = -1;
            ++row;
        }
    StabilizerSpace space;
    for (const auto& v : nullspace(std::move(system))) space.basis.push_back(unpack_solution(v, dim));
    space.dim = space.basis.size();
    space.torus_rank = space.dim >= 2 ? space.dim - 2 : 0;
    space.unipotent_warning = f.m() <= f.n() + 1;
    return space;
}

inline bool satisfies_stabilizer_system(const ProjectiveMap& f, const StabilizerSolution& s) {
    const auto dim = static_cast<std::size_t>(f.num_vars());
    if (s.c.size() != dim || s.b.size() != dim) return false;
    for (std::size_t j = 0; j < dim; ++j)
        for (const auto& [exp, coeff] : f[j].terms()) {
            Rational lhs = -s.b[j];
            for (std::size_t k = 0; k < dim; ++k) lhs += s.c[k] * exp[k];
            if (lhs != s.C) return false;
        }
    return true;
}

/// Integer one-parameter subgroup along a stabilizer solution (lcm-cleared).
inline OnePS solution_to_1ps(const StabilizerSolution& s) {
    std::vector<Rational> all = s.c;
    all.insert(all.end(), s.b.begin(), s.b.end());
    all.push_back(s.C);
    auto ints = clear_denominators(all);
    OnePS out;
    for (std::size_t i = 0; i < s.c.size(); ++i) {
        if (!ints[i].fits_slong_p()) throw Error(ErrorCode::SizeLimit, "weight does not fit in 64 bits");
        out.c.push_back(ints[i].get_si());
    }
    for (std::size_t i = 0; i < s.b.size(); ++i) {
        const auto& z = ints[s.c.size() + i];
        if (!z.fits_slong_p()) throw Error(ErrorCode::SizeLimit, "weight does not fit in 64 bits");
        out.b.push_back(z.get_si());
    }
    return out;
}

struct ValueClass {
    Rational value;
    std::vector<int> members;
};

struct HyperplanePartition {
    std::vector<ValueClass> classes;        // components j grouped by b_j + C
    std::vector<ValueClass> vertex_classes; // vertices i grouped by m * c_i
    bool multisets_equal = false;
};

inline HyperplanePartition hyperplane_partition(const ProjectiveMap& f, const StabilizerSolution& s) {
    if (!satisfies_stabilizer_system(f, s))
        throw Error(ErrorCode::NotASolution, "vector violates a support constraint");
    auto group = [](const std::vector<Rational>& values) {
        std::map<Rational, std::vector<int>> by_value;
        for (std::size_t i = 0; i < values.size(); ++i) by_value[values[i]].push_back(static_cast<int>(i));
        std::vector<ValueClass> out;
        for (auto& [v, members] : by_value) out.push_back({v, std::move(members)});
        return out;
    };
    std::vector<Rational> hyper, vert;
    for (const auto& b : s.b) hyper.push_back(b + s.C);
    for (const auto& c : s.c) vert.push_back(c * f.m());
    HyperplanePartition p;
    p.classes = group(hyper);
    p.vertex_classes = group(vert);
    std::sort(hyper.begin(), hyper.end());
    std::sort(vert.begin(), vert.end());
    p.multisets_equal = hyper == vert;
    return p;
}

enum class BlockCertificate { InfiniteStabilizer, SupportCombinatorics };

constexpr std::string_view to_string(BlockCertificate c) {
    return c == BlockCertificate::InfiniteStabilizer ? "InfiniteStabilizer" : "SupportCombinatorics";
}

/// Variables V' and components H' with |V'| = |H'| such that every f_j,
/// j in H', involves only the variables in V'.
struct BlockStructure {
    std::vector<int> variables;
    std::vector<int> components;
    BlockCertificate certified_by = BlockCertificate::SupportCombinatorics;

    friend bool operator==(const BlockStructure& a, const BlockStructure& b) {
        return a.variables == b.variables && a.components == b.components;
    }
};

/// |H'(V')| > |V'|: more components than variables live on the face, which
/// forces a common zero.
struct MorphismObstruction {
    std::vector<int> variables;
    std::vector<int> components;
};

struct BlockDetection {
    std::vector<BlockStructure> blocks;
    std::vector<MorphismObstruction> obstructions;
};

/// Proper nonempty subsets of {0..count-1}, by size then lexicographically.
inline std::vector<std::vector<int>> proper_subsets(int count) {
    std::vector<std::vector<int>> out;
    for (int size = 1; size < count; ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            out.push_back(idx);
            int k = size - 1;
            while (k >= 0 && idx[static_cast<std::size_t>(k)] == count - size + k) --k;
            if (k < 0) break;
            ++idx[static_cast<std::size_t>(k)];
            for (int i = k + 1; i < size; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return out;
}

inline std::vector<int> components_on_face(const ProjectiveMap& f, const std::vector<int>& variables) {
    SimplexFace face{f.m(), std::set<int>(variables.begin(), variables.end())};
    auto supp = support(f);
    std::vector<int> out;
    for (std::size_t j = 0; j < supp.size(); ++j)
        if (face_contains(supp[j], face)) out.push_back(static_cast<int>(j));
    return out;
}

/// The block read off a stabilizer solution with non-constant c: the
/// components whose hyperplane sits at the maximal vertex value, and the
/// vertices attaining it.
inline std::optional<BlockStructure> stabilizer_block(const ProjectiveMap& f, const StabilizerSolution& s) {
    if (s.c_constant()) return std::nullopt;
    Rational top = *std::max_element(s.c.begin(), s.c.end()) * f.m();
    BlockStructure block;
    block.certified_by = BlockCertificate::InfiniteStabilizer;
    for (std::size_t i = 0; i < s.c.size(); ++i)
        if (s.c[i] * f.m() == top) block.variables.push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < s.b.size(); ++j)
        if (s.b[j] + s.C == top) block.components.push_back(static_cast<int>(j));
    if (block.variables.size() != block.components.size()) return std::nullopt;
    if (components_on_face(f, block.variables) != block.components) return std::nullopt;
    return block;
}

inline BlockDetection detect_blocks(const ProjectiveMap& f) {
    BlockDetection out;
    for (const auto& vars : proper_subsets(f.num_vars())) {
        auto comps = components_on_face(f, vars);
        if (comps.size() == vars.size()) out.blocks.push_back({vars, comps, BlockCertificate::SupportCombinatorics});
        else if (comps.size() > vars.size()) out.obstructions.push_back({vars, comps});
    }
    if (out.blocks.empty()) return out;

    // Mark blocks that a torus in the stabilizer produces directly.
    auto space = stabilizer_space(f);
    for (const auto& sol : space.basis) {
        for (int sign : {1, -1}) {
            StabilizerSolution s = sol;
            if (sign < 0) {
                for (auto& q : s.c) q = -q;
                for (auto& q : s.b) q = -q;
                s.C = -s.C;
            }
            if (auto b = stabilizer_block(f, s))
                for (auto& blk : out.blocks)
                    if (blk == *b) blk.certified_by = BlockCertificate::InfiniteStabilizer;
        }
    }
    return out;
}

inline void validate_block(const BlockStructure& block, const ProjectiveMap& f) {
    const int dim = f.num_vars();
    auto bad = [](const std::string& why) { return Error(ErrorCode::InvalidBlock, why); };
    if (block.variables.empty() || static_cast<int>(block.variables.size()) >= dim)
        throw bad("variable set must be proper and nonempty");
    if (block.variables.size() != block.components.size()) throw bad("|V'| must equal |H'|");
    auto in_range_sorted = [dim](const std::vector<int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0 || v[i] >= dim) return false;
            if (i && v[i] <= v[i - 1]) return false;
        }
        return true;
    };
    if (!in_range_sorted(block.variables) || !in_range_sorted(block.components))
        throw bad("index sets must be sorted, distinct and in range");
    SimplexFace face{f.m(), std::set<int>(block.variables.begin(), block.variables.end())};
    auto supp = support(f);
    for (int j : block.components)
        if (!face_contains(supp[static_cast<std::size_t>(j)], face))
            throw bad("component " + std::to_string(j) + " leaves the face of V'");
}

/// c_i = 0 on V' and -1 elsewhere; b_j = 0 on H' and the component minimum
/// of <c, I> elsewhere, so every component attains weight 0 and K = 0.
inline OnePS block_to_1ps(const BlockStructure& block, const ProjectiveMap& f) {
    validate_block(block, f);
    const auto dim = static_cast<std::size_t>(f.num_vars());
    OnePS s;
    s.c.assign(dim, -1);
    for (int i : block.variables) s.c[static_cast<std::size_t>(i)] = 0;
    s.b.assign(dim, 0);
    std::set<int> in_h(block.components.begin(), block.components.end());
    for (std::size_t j = 0; j < dim; ++j) {
        if (in_h.count(static_cast<int>(j)) || f[j].is_zero()) continue;
        std::optional<Weight> lo;
        for (const auto& [exp, coeff] : f[j].terms()) {
            Weight w = weight(s.c, exp);
            lo = lo ? std::min(*lo, w) : w;
        }
        s.b[j] = *lo;
    }
    return s;
}

struct LimitResult {
    ProjectiveMap limit;
    Weight K = 0;
    std::size_t dropped_terms = 0;
    std::optional<bool> limit_is_morphism; // nullopt: indeterminate or not checked
    bool support_shrank = false;
};

/// lim_{lambda -> 0} g(lambda) . f: the terms of globally minimal weight.
inline LimitResult limit_map(const ProjectiveMap& f, const OnePS& s, bool check_morphism = true,
                             const ResultantOptions& opts = {}) {
    auto profile = weight_profile(f, s);
    LimitResult r;
    r.K = *profile.min;
    std::vector<HomogeneousPoly> comps;
    for (std::size_t j = 0; j < profile.terms.size(); ++j) {
        HomogeneousPoly p(f.num_vars(), f.m());
        for (const auto& t : profile.terms[j]) {
            if (t.weight == r.K) p.add_term(t.exp, f[j].coefficient(t.exp));
            else ++r.dropped_terms;
        }
        comps.push_back(std::move(p));
    }
    r.limit = ProjectiveMap(f.n(), f.m(), std::move(comps));
    r.support_shrank = r.dropped_terms > 0;
    if (check_morphism) {
        if (r.limit.has_zero_component()) {
            r.limit_is_morphism = false;
        } else {
            auto res = macaulay_resultant(r.limit, opts);
            if (!res.indeterminate()) r.limit_is_morphism = *res.value != 0;
        }
    }
    return r;
}

enum class Classification { NotAMorphism, InfiniteStabilizer, BlockUnstable, NoDiagonalDegeneration };

constexpr std::string_view to_string(Classification c) {
    switch (c) {
    case Classification::NotAMorphism: return "NotAMorphism";
    case Classification::InfiniteStabilizer: return "InfiniteStabilizer";
    case Classification::BlockUnstable: return "BlockUnstable";
    case Classification::NoDiagonalDegeneration: return "NoDiagonalDegeneration";
    }
    return "Unknown";
}

struct BlockAnalysis {
    BlockStructure block;
    OnePS subgroup;           // as produced by block_to_1ps
    OnePS canonical_subgroup; // min(c) = min(b) = 0, primitive
    LimitResult limit;
};

struct ClassificationReport {
    ResultantValue resultant;
    bool is_morphism = false;
    bool m_gt_n_plus_1 = false;
    std::vector<bool> vertex_coverage;
    StabilizerSpace stabilizer;
    BlockDetection detection;
    std::vector<BlockAnalysis> blocks;
    Classification label = Classification::NoDiagonalDegeneration;
};

/// InfiniteStabilizer takes precedence over BlockUnstable. The
/// NoDiagonalDegeneration verdict is relative to the given coordinates.
inline ClassificationReport classify(const ProjectiveMap& f, const ResultantOptions& opts = {}) {
    ClassificationReport rep;
    rep.resultant = macaulay_resultant(f, opts);
    if (rep.resultant.indeterminate())
        throw Error(ErrorCode::IndeterminateResultant,
                    "Macaulay minor vanished after " + std::to_string(rep.resultant.retries) + " retries (seed " +
                        std::to_string(rep.resultant.seed) + ")");
    rep.is_morphism = *rep.resultant.value != 0;
    rep.m_gt_n_plus_1 = f.m() > f.n() + 1;
    rep.vertex_coverage = vertex_coverage(f);
    rep.stabilizer = stabilizer_space(f);
    rep.detection = detect_blocks(f);
    for (const auto& block : rep.detection.blocks) {
        BlockAnalysis a;
        a.block = block;
        a.subgroup = block_to_1ps(block, f);
        a.canonical_subgroup = canonical(a.subgroup, f.m());
        a.limit = limit_map(f, a.subgroup, true, opts);
        rep.blocks.push_back(std::move(a));
    }
    if (!rep.is_morphism) rep.label = Classification::NotAMorphism;
    else if (rep.stabilizer.torus_rank >= 1) rep.label = Classification::InfiniteStabilizer;
    else if (!rep.detection.blocks.empty()) rep.label = Classification::BlockUnstable;
    else rep.label = Classification::NoDiagonalDegeneration;
    return rep;
}

struct CoordinateSample {
    LinearChange change;
    ClassificationReport report;
};

/// Heuristic: re-classify after seeded random changes of source and target
/// coordinates and return the first that exposes a diagonal degeneration.
inline std::optional<CoordinateSample> sample_coordinates(const ProjectiveMap& f, int samples, std::uint64_t seed,
                                                          const ResultantOptions& opts = {}) {
    std::mt19937_64 rng(seed);
    const auto dim = static_cast<std::size_t>(f.num_vars());
    for (int i = 0; i < samples; ++i) {
        LinearChange change{detail::random_unimodular(dim, rng), detail::random_unimodular(dim, rng)};
        auto moved = apply_linear_change(f, change);
        auto rep = classify(moved, opts);
        if (rep.label == Classification::InfiniteStabilizer || rep.label == Classification::BlockUnstable)
            return CoordinateSample{std::move(change), std::move(rep)};
    }
    return std::nullopt;
}

} // namespace projmaps

#pragma once

// Weights of diagonal one-parameter subgroups on the exponent simplex.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "projmaps/error.hpp"
#include "projmaps/poly.hpp"

namespace projmaps {

using Weight = std::int64_t;
using WeightVector = std::vector<Weight>;

/// lambda -> (diag(lambda^c_i), diag(lambda^b_j)) acting on source and target.
struct OnePS {
    WeightVector c;
    WeightVector b;

    bool is_trivial() const {
        return std::all_of(c.begin(), c.end(), [](Weight w) { return w == 0; }) &&
               std::all_of(b.begin(), b.end(), [](Weight w) { return w == 0; });
    }

    friend bool operator==(const OnePS&, const OnePS&) = default;
};

/// Representative with min(c) = min(b) = 0 and primitive entries. Shifting c
/// by t (with b by m*t) or b alone by l acts trivially on the projective map.
inline OnePS canonical(const OnePS& s, int m) {
    if (s.c.empty() || s.b.empty()) return s;
    OnePS out = s;
    const Weight cmin = *std::min_element(out.c.begin(), out.c.end());
    for (auto& w : out.c) w -= cmin;
    for (auto& w : out.b) w -= static_cast<Weight>(m) * cmin;
    const Weight bmin = *std::min_element(out.b.begin(), out.b.end());
    for (auto& w : out.b) w -= bmin;
    Weight g = 0;
    for (auto w : out.c) g = std::gcd(g, w);
    for (auto w : out.b) g = std::gcd(g, w);
    if (g > 1) {
        for (auto& w : out.c) w /= g;
        for (auto& w : out.b) w /= g;
    }
    return out;
}

/// <c, I>.
inline Weight weight(const WeightVector& c, const MultiIndex& exp) {
    if (c.size() != exp.size()) throw Error(ErrorCode::DimensionMismatch, "weight vector and multi-index lengths");
    Weight s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * exp[i];
    return s;
}

struct WeightedTerm {
    MultiIndex exp;
    Weight weight;
};

struct WeightProfile {
    /// <c, I> - b_j for every support term, component by component.
    std::vector<std::vector<WeightedTerm>> terms;
    /// Per-component minimum; nullopt stands for +infinity (zero component).
    std::vector<std::optional<Weight>> component_min;
    /// Global minimum; nullopt only if every component is zero.
    std::optional<Weight> min;
};

inline WeightProfile weight_profile(const ProjectiveMap& f, const OnePS& s) {
    const auto dim = static_cast<std::size_t>(f.num_vars());
    if (s.c.size() != dim || s.b.size() != dim)
        throw Error(ErrorCode::DimensionMismatch, "one-parameter subgroup has wrong length");
    WeightProfile p;
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<WeightedTerm> row;
        std::optional<Weight> kmin;
        for (const auto& [exp, coeff] : f[j].terms()) {
            Weight w = weight(s.c, exp) - s.b[j];
            row.push_back({exp, w});
            kmin = kmin ? std::min(*kmin, w) : w;
        }
        if (kmin) p.min = p.min ? std::min(*p.min, *kmin) : *kmin;
        p.terms.push_back(std::move(row));
        p.component_min.push_back(kmin);
    }
    return p;
}

/// Entry i is true iff some component carries the pure power x_i^m.
inline std::vector<bool> vertex_coverage(const ProjectiveMap& f) {
    std::vector<bool> covered(static_cast<std::size_t>(f.num_vars()), false);
    for (int i = 0; i < f.num_vars(); ++i) {
        MultiIndex vertex(static_cast<std::size_t>(f.num_vars()), 0);
        vertex[static_cast<std::size_t>(i)] = f.m();
        for (const auto& c : f.components())
            if (c.terms().count(vertex)) covered[static_cast<std::size_t>(i)] = true;
    }
    return covered;
}

/// The face of the exponent simplex spanned by the vertices m*e_i, i in `vertices`.
struct SimplexFace {
    int m = 0;
    std::set<int> vertices;
};

inline bool face_contains(const std::set<MultiIndex>& support, const SimplexFace& face) {
    for (const auto& exp : support)
        for (std::size_t k = 0; k < exp.size(); ++k)
            if (exp[k] != 0 && !face.vertices.count(static_cast<int>(k))) return false;
    return true;
}

inline std::string format_weights(const WeightVector& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s;
}

} // namespace projmaps

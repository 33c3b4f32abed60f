#pragma once

// Homogeneous polynomial tuples with exact rational coefficients.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "projmaps/error.hpp"
#include "projmaps/linalg.hpp"
#include "projmaps/rational.hpp"

namespace projmaps {

/// Exponent vector (i_0, ..., i_n). Ordered lexicographically.
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// All exponent vectors of `vars` entries summing to `degree`, in
/// lexicographically descending order (x_0^d first).
inline std::vector<MultiIndex> monomials_of_degree(int vars, int degree) {
    std::vector<MultiIndex> out;
    if (vars <= 0) return out;
    MultiIndex cur(static_cast<std::size_t>(vars), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == vars - 1) {
            cur[static_cast<std::size_t>(pos)] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[static_cast<std::size_t>(pos)] = e;
            self(self, pos + 1, left - e);
        }
    };
    rec(rec, 0, degree);
    return out;
}

inline std::string format_monomial(const MultiIndex& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(i);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

class HomogeneousPoly {
public:
    using Terms = std::map<MultiIndex, Rational>;

    HomogeneousPoly() = default;
    HomogeneousPoly(int num_vars, int degree) : num_vars_(num_vars), degree_(degree) {}

    int num_vars() const { return num_vars_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Adds `coeff * x^exp`; cancelling terms are removed.
    void add_term(const MultiIndex& exp, const Rational& coeff) {
        if (static_cast<int>(exp.size()) != num_vars_)
            throw Error(ErrorCode::DimensionMismatch, "exponent vector has " + std::to_string(exp.size()) +
                                                          " entries, expected " + std::to_string(num_vars_));
        for (int e : exp)
            if (e < 0) throw Error(ErrorCode::DegreeMismatch, "negative exponent");
        if (total_degree(exp) != degree_)
            throw Error(ErrorCode::DegreeMismatch, "term " + format_monomial(exp) + " has degree " +
                                                       std::to_string(total_degree(exp)) + ", expected " +
                                                       std::to_string(degree_));
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(exp, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const MultiIndex& exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != num_vars_)
            throw Error(ErrorCode::DimensionMismatch, "point dimension");
        Rational sum = 0;
        for (const auto& [exp, coeff] : terms_) {
            Rational t = coeff;
            for (std::size_t i = 0; i < exp.size(); ++i)
                for (int k = 0; k < exp[i]; ++k) t *= point[i];
            sum += t;
        }
        return sum;
    }

    HomogeneousPoly scaled(const Rational& s) const {
        HomogeneousPoly out(num_vars_, degree_);
        if (s == 0) return out;
        for (const auto& [exp, coeff] : terms_) out.terms_.emplace(exp, coeff * s);
        return out;
    }

    friend HomogeneousPoly operator+(const HomogeneousPoly& a, const HomogeneousPoly& b) {
        check_compatible(a, b);
        HomogeneousPoly out = a;
        for (const auto& [exp, coeff] : b.terms_) out.add_term(exp, coeff);
        return out;
    }

    friend HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b) {
        if (a.num_vars_ != b.num_vars_) throw Error(ErrorCode::DimensionMismatch, "product of polys");
        HomogeneousPoly out(a.num_vars_, a.degree_ + b.degree_);
        MultiIndex e(static_cast<std::size_t>(a.num_vars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend bool operator==(const HomogeneousPoly&, const HomogeneousPoly&) = default;

private:
    static void check_compatible(const HomogeneousPoly& a, const HomogeneousPoly& b) {
        if (a.num_vars_ != b.num_vars_) throw Error(ErrorCode::DimensionMismatch, "sum of polys");
        if (a.degree_ != b.degree_) throw Error(ErrorCode::DegreeMismatch, "sum of polys");
    }

    int num_vars_ = 0;
    int degree_ = 0;
    Terms terms_;
};

/// The constant polynomial 1 in `vars` variables (degree 0).
inline HomogeneousPoly unit_poly(int vars) {
    HomogeneousPoly one(vars, 0);
    one.add_term(MultiIndex(static_cast<std::size_t>(vars), 0), 1);
    return one;
}

/// The linear form sum_k row[k] x_k.
inline HomogeneousPoly linear_form(const std::vector<Rational>& row) {
    const int vars = static_cast<int>(row.size());
    HomogeneousPoly p(vars, 1);
    for (int k = 0; k < vars; ++k) {
        MultiIndex e(row.size(), 0);
        e[static_cast<std::size_t>(k)] = 1;
        p.add_term(e, row[static_cast<std::size_t>(k)]);
    }
    return p;
}

/// p(images_0, ..., images_k): every image must share one degree and one
/// variable count. The result has degree deg(p) * deg(image).
inline HomogeneousPoly substitute(const HomogeneousPoly& p, const std::vector<HomogeneousPoly>& images) {
    if (static_cast<int>(images.size()) != p.num_vars())
        throw Error(ErrorCode::DimensionMismatch, "substitution arity");
    if (images.empty()) throw Error(ErrorCode::DimensionMismatch, "empty substitution");
    const int vars = images.front().num_vars();
    const int d = images.front().degree();
    for (const auto& im : images)
        if (im.num_vars() != vars || im.degree() != d)
            throw Error(ErrorCode::DimensionMismatch, "substitution images disagree");

    // powers[i][e] = images[i]^e
    std::vector<std::vector<HomogeneousPoly>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) powers[i].push_back(unit_poly(vars));
    auto power = [&](std::size_t i, int e) -> const HomogeneousPoly& {
        while (static_cast<int>(powers[i].size()) <= e) powers[i].push_back(powers[i].back() * images[i]);
        return powers[i][static_cast<std::size_t>(e)];
    };

    HomogeneousPoly out(vars, p.degree() * d);
    for (const auto& [exp, coeff] : p.terms()) {
        HomogeneousPoly t = unit_poly(vars).scaled(coeff);
        for (std::size_t i = 0; i < exp.size(); ++i)
            if (exp[i] > 0) t = t * power(i, exp[i]);
        out = out + t;
    }
    return out;
}

/// A tuple (f_0, ..., f_n) of degree-m forms in n+1 variables, i.e. a
/// rational map P^n -> P^n. Individual components may vanish; the tuple may not.
class ProjectiveMap {
public:
    ProjectiveMap() = default;

    ProjectiveMap(int n, int m, std::vector<HomogeneousPoly> components)
        : n_(n), m_(m), components_(std::move(components)) {
        if (n < 0) throw Error(ErrorCode::DimensionMismatch, "n must be non-negative");
        if (m < 1) throw Error(ErrorCode::DegreeMismatch, "m must be positive");
        if (static_cast<int>(components_.size()) != n + 1)
            throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n + 1) + " components, got " +
                                                          std::to_string(components_.size()));
        bool any = false;
        for (const auto& c : components_) {
            if (c.num_vars() != n + 1) throw Error(ErrorCode::DimensionMismatch, "component variable count");
            if (c.degree() != m) throw Error(ErrorCode::DegreeMismatch, "component degree");
            any = any || !c.is_zero();
        }
        if (!any) throw Error(ErrorCode::ZeroMap, "all components vanish");
    }

    int n() const { return n_; }
    int m() const { return m_; }
    int num_vars() const { return n_ + 1; }
    const std::vector<HomogeneousPoly>& components() const { return components_; }
    const HomogeneousPoly& operator[](std::size_t j) const { return components_[j]; }

    /// Number of preimages of a generic point, m^n.
    Integer topological_degree() const {
        Integer d;
        mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(m_), static_cast<unsigned long>(n_));
        return d;
    }

    bool has_zero_component() const {
        return std::any_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
    }

    std::size_t term_count() const {
        std::size_t s = 0;
        for (const auto& c : components_) s += c.size();
        return s;
    }

    friend bool operator==(const ProjectiveMap&, const ProjectiveMap&) = default;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<HomogeneousPoly> components_;
};

using Term = std::pair<MultiIndex, Rational>;
using TermList = std::vector<Term>;

/// Builds and validates a map from per-component term lists. Duplicate
/// exponents are summed and zero sums dropped.
inline ProjectiveMap make_map(int n, int m, const std::vector<TermList>& coeffs) {
    if (n < 0) throw Error(ErrorCode::DimensionMismatch, "n must be non-negative");
    if (m < 1) throw Error(ErrorCode::DegreeMismatch, "m must be positive");
    if (static_cast<int>(coeffs.size()) != n + 1)
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n + 1) + " components, got " +
                                                      std::to_string(coeffs.size()));
    std::vector<HomogeneousPoly> comps;
    comps.reserve(coeffs.size());
    for (const auto& list : coeffs) {
        HomogeneousPoly p(n + 1, m);
        for (const auto& [exp, c] : list) p.add_term(exp, c);
        comps.push_back(std::move(p));
    }
    return ProjectiveMap(n, m, std::move(comps));
}

inline std::vector<Rational> evaluate(const ProjectiveMap& f, const std::vector<Rational>& point) {
    if (static_cast<int>(point.size()) != f.num_vars())
        throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(point.size()) + " coordinates, expected " +
                                                      std::to_string(f.num_vars()));
    std::vector<Rational> out;
    out.reserve(point.size());
    for (const auto& c : f.components()) out.push_back(c.evaluate(point));
    return out;
}

struct LinearChange {
    RatMatrix source; // g
    RatMatrix target; // h
};

/// (g, h) . f = h^{-1} o f o g.
inline ProjectiveMap apply_linear_change(const ProjectiveMap& f, const LinearChange& change) {
    const auto dim = static_cast<std::size_t>(f.num_vars());
    if (change.source.rows() != dim || change.source.cols() != dim || change.target.rows() != dim ||
        change.target.cols() != dim)
        throw Error(ErrorCode::DimensionMismatch, "linear change shape");
    if (determinant(change.source) == 0) throw Error(ErrorCode::SingularMatrix, "source matrix is singular");
    RatMatrix hinv = inverse(change.target);

    std::vector<HomogeneousPoly> images;
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<Rational> row(dim);
        for (std::size_t k = 0; k < dim; ++k) row[k] = change.source(i, k);
        images.push_back(linear_form(row));
    }
    std::vector<HomogeneousPoly> pulled;
    for (const auto& c : f.components()) pulled.push_back(substitute(c, images));

    std::vector<HomogeneousPoly> out;
    for (std::size_t j = 0; j < dim; ++j) {
        HomogeneousPoly acc(f.num_vars(), f.m());
        for (std::size_t k = 0; k < dim; ++k)
            if (hinv(j, k) != 0) acc = acc + pulled[k].scaled(hinv(j, k));
        out.push_back(std::move(acc));
    }
    return ProjectiveMap(f.n(), f.m(), std::move(out));
}

/// f o g for two maps on the same projective space: outer(inner(x)).
inline ProjectiveMap compose(const ProjectiveMap& outer, const ProjectiveMap& inner) {
    if (outer.n() != inner.n()) throw Error(ErrorCode::NotSelfMap, "composition dimension mismatch");
    std::vector<HomogeneousPoly> out;
    for (const auto& c : outer.components()) out.push_back(substitute(c, inner.components()));
    return ProjectiveMap(outer.n(), outer.m() * inner.m(), std::move(out));
}

/// k-fold self-composition; degree m^k.
inline ProjectiveMap iterate(const ProjectiveMap& f, int k) {
    if (k < 1) throw Error(ErrorCode::DegreeMismatch, "iteration count must be positive");
    ProjectiveMap out = f;
    for (int i = 1; i < k; ++i) out = compose(f, out);
    return out;
}

inline std::vector<std::set<MultiIndex>> support(const ProjectiveMap& f) {
    std::vector<std::set<MultiIndex>> out;
    for (const auto& c : f.components()) {
        std::set<MultiIndex> s;
        for (const auto& [exp, coeff] : c.terms()) s.insert(exp);
        out.push_back(std::move(s));
    }
    return out;
}

/// Scales f so its first nonzero coefficient (component order, then
/// lexicographic term order) equals 1.
inline ProjectiveMap normalized(const ProjectiveMap& f) {
    for (const auto& c : f.components()) {
        if (c.is_zero()) continue;
        Rational s = 1 / c.terms().begin()->second;
        std::vector<HomogeneousPoly> out;
        for (const auto& d : f.components()) out.push_back(d.scaled(s));
        return ProjectiveMap(f.n(), f.m(), std::move(out));
    }
    return f;
}

/// Equality up to one global nonzero scalar.
inline bool projectively_equal(const ProjectiveMap& a, const ProjectiveMap& b) {
    if (a.n() != b.n() || a.m() != b.m()) return false;
    return normalized(a) == normalized(b);
}

inline std::string format_poly(const HomogeneousPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    // Highest lexicographic monomial first reads naturally (x0^m ...).
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [exp, coeff] = *it;
        std::string c = to_string(coeff);
        if (!s.empty()) {
            if (coeff < 0) {
                s += " - ";
                c = to_string(Rational(-coeff));
            } else {
                s += " + ";
            }
        }
        if (c == "1") s += format_monomial(exp);
        else if (c == "-1") s += "-" + format_monomial(exp);
        else s += c + "*" + format_monomial(exp);
    }
    return s;
}

inline std::string format_map(const ProjectiveMap& f) {
    std::string s = "(";
    for (std::size_t j = 0; j < f.components().size(); ++j) {
        if (j) s += ", ";
        s += format_poly(f[j]);
    }
    return s + ")";
}

} // namespace projmaps

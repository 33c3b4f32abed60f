#pragma once

// Resultants of n+1 forms of equal degree in n+1 variables, normalized so
// that Res(x_0^m, ..., x_n^m) = 1.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "projmaps/error.hpp"
#include "projmaps/finite_field.hpp"
#include "projmaps/linalg.hpp"
#include "projmaps/poly.hpp"

namespace projmaps {

struct ResultantOptions {
    std::uint64_t seed = 0;
    int max_retries = 8;
    std::size_t size_limit = 5000;
};

struct ResultantValue {
    std::optional<Rational> value; // nullopt: indeterminate
    int retries = 0;
    std::uint64_t seed = 0;
    std::size_t matrix_size = 0;

    bool indeterminate() const { return !value.has_value(); }
};

namespace detail {

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rat_pow(const Rational& base, unsigned long e) {
    Rational r(int_pow(base.get_num(), e), int_pow(base.get_den(), e));
    r.canonicalize();
    return r;
}

inline IntMatrix sylvester_matrix(const ProjectiveMap& f, std::vector<Integer>& scale) {
    const int m = f.m();
    const auto size = static_cast<std::size_t>(2 * m);
    IntMatrix s(size, size);
    scale.assign(2, 1);
    for (std::size_t j = 0; j < 2; ++j) {
        std::vector<Rational> coeffs;
        for (int k = 0; k <= m; ++k) coeffs.push_back(f[j].coefficient({m - k, k}));
        scale[j] = lcm_of_denominators(coeffs.data(), coeffs.data() + coeffs.size());
        for (std::size_t r = 0; r < static_cast<std::size_t>(m); ++r)
            for (std::size_t k = 0; k <= static_cast<std::size_t>(m); ++k)
                s(j * static_cast<std::size_t>(m) + r, r + k) = Rational(coeffs[k] * scale[j]).get_num();
    }
    return s;
}

struct MacaulayOutcome {
    Integer numerator_det;
    Integer minor_det;
    Rational scale_correction; // Res = numerator/minor * scale_correction
    std::size_t size = 0;
};

/// Classical Macaulay construction at degree t = (n+1)(m-1)+1.
inline MacaulayOutcome macaulay_determinants(const ProjectiveMap& f, std::size_t size_limit) {
    const int vars = f.num_vars();
    const int m = f.m();
    const int t = vars * (m - 1) + 1;
    Integer count = binomial(static_cast<unsigned long>(t + vars - 1), static_cast<unsigned long>(vars - 1));
    if (count > static_cast<unsigned long>(size_limit))
        throw Error(ErrorCode::SizeLimit, "Macaulay matrix would be " + count.get_str() + "x" + count.get_str() +
                                              ", limit " + std::to_string(size_limit));

    const auto monomials = monomials_of_degree(vars, t);
    std::map<MultiIndex, std::size_t> column;
    for (std::size_t i = 0; i < monomials.size(); ++i) column.emplace(monomials[i], i);

    std::vector<Integer> scale;
    std::vector<std::vector<std::pair<MultiIndex, Integer>>> scaled_terms;
    for (const auto& c : f.components()) {
        std::vector<Rational> coeffs;
        for (const auto& [exp, q] : c.terms()) coeffs.push_back(q);
        scale.push_back(lcm_of_denominators(coeffs.data(), coeffs.data() + coeffs.size()));
        std::vector<std::pair<MultiIndex, Integer>> terms;
        for (const auto& [exp, q] : c.terms()) terms.emplace_back(exp, Rational(q * scale.back()).get_num());
        scaled_terms.push_back(std::move(terms));
    }

    const std::size_t size = monomials.size();
    IntMatrix full(size, size);
    std::vector<std::size_t> non_reduced;
    std::vector<unsigned long> reduced_rows_per_component(static_cast<std::size_t>(vars), 0);
    for (std::size_t r = 0; r < size; ++r) {
        const auto& alpha = monomials[r];
        int owner = -1, divisible = 0;
        for (int i = 0; i < vars; ++i)
            if (alpha[static_cast<std::size_t>(i)] >= m) {
                ++divisible;
                if (owner < 0) owner = i;
            }
        if (divisible > 1) non_reduced.push_back(r);
        else ++reduced_rows_per_component[static_cast<std::size_t>(owner)];
        MultiIndex shift = alpha;
        shift[static_cast<std::size_t>(owner)] -= m;
        MultiIndex target(shift.size());
        for (const auto& [exp, coeff] : scaled_terms[static_cast<std::size_t>(owner)]) {
            for (std::size_t k = 0; k < shift.size(); ++k) target[k] = shift[k] + exp[k];
            full(r, column.at(target)) = coeff;
        }
    }

    IntMatrix minor(non_reduced.size(), non_reduced.size());
    for (std::size_t a = 0; a < non_reduced.size(); ++a)
        for (std::size_t b = 0; b < non_reduced.size(); ++b) minor(a, b) = full(non_reduced[a], non_reduced[b]);

    MacaulayOutcome out;
    out.size = size;
    out.numerator_det = determinant(std::move(full));
    out.minor_det = determinant(std::move(minor));
    // Scaling f_i by D_i scales Res by D_i^(reduced rows owned by f_i).
    Integer denom = 1;
    for (std::size_t i = 0; i < scale.size(); ++i) denom *= int_pow(scale[i], reduced_rows_per_component[i]);
    out.scale_correction = Rational(Integer(1), denom);
    out.scale_correction.canonicalize();
    return out;
}

/// True if some nontrivial linear combination of the components vanishes.
inline bool components_dependent(const ProjectiveMap& f) {
    std::map<MultiIndex, std::size_t> column;
    for (int j = 0; j < f.num_vars(); ++j)
        for (const auto& [exp, coeff] : f[static_cast<std::size_t>(j)].terms()) column.emplace(exp, column.size());
    if (column.size() < static_cast<std::size_t>(f.num_vars())) return true;
    RatMatrix a(column.size(), static_cast<std::size_t>(f.num_vars()));
    for (int j = 0; j < f.num_vars(); ++j)
        for (const auto& [exp, coeff] : f[static_cast<std::size_t>(j)].terms())
            a(column.at(exp), static_cast<std::size_t>(j)) = coeff;
    return rank(a) < static_cast<std::size_t>(f.num_vars());
}

/// Random unit lower times unit upper triangular matrix, entries in [-2, 2].
inline RatMatrix random_unimodular(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> entry(-2, 2);
    RatMatrix lower = RatMatrix::identity(dim), upper = RatMatrix::identity(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            lower(i, j) = entry(rng);
            upper(j, i) = entry(rng);
        }
    return lower * upper;
}

} // namespace detail

/// Determinant of the 2m x 2m Sylvester matrix of a pair of binary forms,
/// signed so that the power map (x0^m, x1^m) has resultant 1.
inline Rational sylvester_resultant(const ProjectiveMap& f) {
    if (f.n() != 1) throw Error(ErrorCode::WrongDimension, "Sylvester resultant needs n = 1");
    std::vector<Integer> scale;
    Integer det = determinant(detail::sylvester_matrix(f, scale));

    std::vector<HomogeneousPoly> power;
    for (int j = 0; j < 2; ++j) {
        HomogeneousPoly p(2, f.m());
        p.add_term(j == 0 ? MultiIndex{f.m(), 0} : MultiIndex{0, f.m()}, 1);
        power.push_back(std::move(p));
    }
    std::vector<Integer> unit_scale;
    Integer sign = determinant(detail::sylvester_matrix(ProjectiveMap(1, f.m(), power), unit_scale));

    const auto m = static_cast<unsigned long>(f.m());
    Rational out(det * sign, detail::int_pow(scale[0], m) * detail::int_pow(scale[1], m));
    out.canonicalize();
    return out;
}

/// det(Macaulay matrix) / det(extraneous minor). A vanishing minor triggers a
/// retry on h^-1 f(g x) for seeded random g, h with determinant 1. Mixing the
/// target matters when components are proportional. The general correction
/// det(g)^(m^(n+1)) det(h)^(-m^n) is still divided out.
inline ResultantValue macaulay_resultant(const ProjectiveMap& f, const ResultantOptions& opts = {}) {
    ResultantValue result;
    result.seed = opts.seed;
    if (f.has_zero_component() || detail::components_dependent(f)) {
        // A target change h with a zero row gives Res(h f) = det(h)^(m^n) Res(f) = 0.
        result.value = Rational(0);
        return result;
    }
    std::mt19937_64 rng(opts.seed);
    ProjectiveMap current = f;
    Rational correction = 1;
    for (int attempt = 0;; ++attempt) {
        auto outcome = detail::macaulay_determinants(current, opts.size_limit);
        result.matrix_size = outcome.size;
        if (outcome.minor_det != 0) {
            Rational v(outcome.numerator_det, outcome.minor_det);
            v.canonicalize();
            result.value = v * outcome.scale_correction / correction;
            result.retries = attempt;
            return result;
        }
        if (attempt == opts.max_retries) {
            result.retries = attempt;
            return result;
        }
        const auto dim = static_cast<std::size_t>(f.num_vars());
        RatMatrix g = detail::random_unimodular(dim, rng);
        RatMatrix h = detail::random_unimodular(dim, rng);
        current = apply_linear_change(f, {g, h});
        Integer source_exp = detail::int_pow(Integer(f.m()), static_cast<unsigned long>(f.n() + 1));
        Integer target_exp = detail::int_pow(Integer(f.m()), static_cast<unsigned long>(f.n()));
        correction = detail::rat_pow(determinant(g), source_exp.get_ui()) /
                     detail::rat_pow(determinant(h), target_exp.get_ui());
    }
}

/// True iff the forms have no common zero besides the origin over the
/// algebraic closure. An unresolved resultant is an error, never `false`.
inline bool is_morphism(const ProjectiveMap& f, const ResultantOptions& opts = {}) {
    auto r = macaulay_resultant(f, opts);
    if (r.indeterminate())
        throw Error(ErrorCode::IndeterminateResultant,
                    "Macaulay minor vanished after " + std::to_string(r.retries) + " retries (seed " +
                        std::to_string(r.seed) + ")");
    return *r.value != 0;
}

struct ProbeReport {
    Residue prime = 0;
    std::vector<std::vector<Residue>> zeros_found;
};

/// Exhaustive scan of P^n(F_p) for common zeros of the reduced components.
inline ProbeReport ff_zero_probe(const ProjectiveMap& f, Residue prime) {
    ReducedMap reduced(f, prime);
    ProbeReport report;
    report.prime = prime;
    std::vector<Residue> values;
    for_each_projective_point(reduced.num_vars(), prime, [&](const std::vector<Residue>& x) {
        reduced.evaluate(x, values);
        for (auto v : values)
            if (v != 0) return;
        report.zeros_found.push_back(x);
    });
    return report;
}

inline std::vector<Residue> default_probe_primes() { return {101, 103, 107}; }

} // namespace projmaps

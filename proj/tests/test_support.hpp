#pragma once

// Test-only helpers: a tiny text syntax for maps and seeded generators.

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "projmaps/poly.hpp"

namespace projmaps::testing {

/// Parses "x0^3 + 2*x0*x1^2 - 1/2*x1^3" (or "0") in `vars` variables.
inline HomogeneousPoly poly(int vars, int degree, const std::string& text) {
    HomogeneousPoly p(vars, degree);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto number = [&] {
        std::size_t start = i;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
        return text.substr(start, i - start);
    };
    skip();
    if (text.substr(i) == "0") return p;
    int sign = 1;
    while (i < text.size()) {
        skip();
        if (text[i] == '+') {
            ++i;
            skip();
        } else if (text[i] == '-') {
            sign = -sign;
            ++i;
            skip();
        }
        Rational coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = parse_rational(number());
            skip();
            if (i < text.size() && text[i] == '*') ++i;
            skip();
        }
        MultiIndex e(static_cast<std::size_t>(vars), 0);
        while (i < text.size() && text[i] == 'x') {
            ++i;
            int var = std::stoi(number());
            int power = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                power = std::stoi(number());
            }
            e.at(static_cast<std::size_t>(var)) += power;
            skip();
            if (i < text.size() && text[i] == '*') ++i;
            skip();
        }
        p.add_term(e, coeff * sign);
        sign = 1;
        skip();
    }
    return p;
}

/// map(m, {"x0^2", "x0*x1"}): n is the component count minus one.
inline ProjectiveMap map(int m, const std::vector<std::string>& comps) {
    const int vars = static_cast<int>(comps.size());
    std::vector<HomogeneousPoly> ps;
    for (const auto& c : comps) ps.push_back(poly(vars, m, c));
    return ProjectiveMap(vars - 1, m, std::move(ps));
}

inline Rational small_rational(std::mt19937_64& rng, int range = 3, int max_den = 1) {
    std::uniform_int_distribution<int> num(-range, range), den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

/// Random map with integer coefficients in [-range, range]; each monomial is
/// present with probability `density`. Retries until no component vanishes.
inline ProjectiveMap random_map(int n, int m, std::mt19937_64& rng, double density = 0.6, int range = 3,
                                int max_den = 1) {
    auto monos = monomials_of_degree(n + 1, m);
    std::bernoulli_distribution keep(density);
    while (true) {
        std::vector<HomogeneousPoly> comps;
        bool ok = true;
        for (int j = 0; j <= n; ++j) {
            HomogeneousPoly p(n + 1, m);
            for (const auto& e : monos)
                if (keep(rng)) p.add_term(e, small_rational(rng, range, max_den));
            ok = ok && !p.is_zero();
            comps.push_back(std::move(p));
        }
        if (ok) return ProjectiveMap(n, m, std::move(comps));
    }
}

inline RatMatrix random_invertible(std::size_t dim, std::mt19937_64& rng, int max_den = 3) {
    while (true) {
        RatMatrix g(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) g(i, j) = small_rational(rng, 3, max_den);
        if (determinant(g) != 0) return g;
    }
}

/// Random morphism with lower-triangular block supports: component j uses
/// only x_0..x_j and carries x_j^m. Rows are then shuffled by a random
/// permutation of variables and of components.
inline ProjectiveMap random_triangular(int n, int m, std::mt19937_64& rng) {
    std::bernoulli_distribution keep(0.4);
    std::uniform_int_distribution<int> coeff(1, 3);
    std::vector<int> perm(static_cast<std::size_t>(n + 1));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<HomogeneousPoly> comps;
    for (int j = 0; j <= n; ++j) {
        HomogeneousPoly p(n + 1, m);
        for (const auto& e : monomials_of_degree(j + 1, m)) {
            MultiIndex full(static_cast<std::size_t>(n + 1), 0);
            for (int i = 0; i <= j; ++i) full[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = e[static_cast<std::size_t>(i)];
            const bool pure = e[static_cast<std::size_t>(j)] == m;
            if (pure || keep(rng)) p.add_term(full, pure ? 1 : coeff(rng));
        }
        comps.push_back(std::move(p));
    }
    std::shuffle(comps.begin(), comps.end(), rng);
    return ProjectiveMap(n, m, std::move(comps));
}

} // namespace projmaps::testing

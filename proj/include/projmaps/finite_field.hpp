#pragma once

// Prime-field reduction and exhaustive projective point scans.

#include <cstdint>
#include <string>
#include <vector>

#include "projmaps/error.hpp"
#include "projmaps/poly.hpp"

namespace projmaps {

using Residue = std::uint64_t;

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_small_prime(std::uint64_t p) {
    if (!is_prime(p) || p >= (1ULL << 31))
        throw Error(ErrorCode::BadPrime, std::to_string(p) + " is not a prime below 2^31");
}

inline Residue pow_mod(Residue base, std::uint64_t e, Residue p) {
    Residue r = 1 % p;
    base %= p;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

/// q mod p; throws BadPrime if p divides the denominator.
inline Residue reduce_mod(const Rational& q, Residue p) {
    const unsigned long pl = static_cast<unsigned long>(p);
    Integer den_r;
    mpz_fdiv_r_ui(den_r.get_mpz_t(), q.get_den_mpz_t(), pl);
    if (den_r == 0)
        throw Error(ErrorCode::BadPrime, "denominator of " + to_string(q) + " vanishes mod " + std::to_string(p));
    Integer num_r;
    mpz_fdiv_r_ui(num_r.get_mpz_t(), q.get_num_mpz_t(), pl);
    Residue den = den_r.get_ui();
    Residue num = num_r.get_ui();
    return num * pow_mod(den, p - 2, p) % p;
}

/// A map with coefficients reduced mod p, ready for fast evaluation.
class ReducedMap {
public:
    ReducedMap(const ProjectiveMap& f, Residue p) : p_(p), vars_(static_cast<std::size_t>(f.num_vars())), m_(f.m()) {
        require_small_prime(p);
        for (const auto& c : f.components()) {
            std::vector<std::pair<Residue, MultiIndex>> terms;
            for (const auto& [exp, coeff] : c.terms()) {
                Residue r = reduce_mod(coeff, p);
                if (r != 0) terms.emplace_back(r, exp);
            }
            comps_.push_back(std::move(terms));
        }
    }

    Residue prime() const { return p_; }
    std::size_t num_vars() const { return vars_; }

    /// Evaluates every component at `x` (entries already reduced).
    void evaluate(const std::vector<Residue>& x, std::vector<Residue>& out) const {
        // pw[i * (m+1) + e] = x_i^e
        const auto stride = static_cast<std::size_t>(m_ + 1);
        pw_.assign(vars_ * stride, 0);
        for (std::size_t i = 0; i < vars_; ++i) {
            pw_[i * stride] = 1;
            for (std::size_t e = 1; e < stride; ++e) pw_[i * stride + e] = pw_[i * stride + e - 1] * x[i] % p_;
        }
        out.assign(comps_.size(), 0);
        for (std::size_t j = 0; j < comps_.size(); ++j) {
            Residue acc = 0;
            for (const auto& [coeff, exp] : comps_[j]) {
                Residue t = coeff;
                for (std::size_t i = 0; i < vars_; ++i)
                    if (exp[i]) t = t * pw_[i * stride + static_cast<std::size_t>(exp[i])] % p_;
                acc += t;
                if (acc >= p_) acc -= p_;
            }
            out[j] = acc;
        }
    }

private:
    Residue p_;
    std::size_t vars_;
    int m_;
    std::vector<std::vector<std::pair<Residue, MultiIndex>>> comps_;
    mutable std::vector<Residue> pw_;
};

/// Visits every point of P^{vars-1}(F_p) once, normalized so the first
/// nonzero coordinate is 1. Order: by position of that coordinate, then
/// lexicographically in the trailing coordinates.
template <typename Visitor>
void for_each_projective_point(std::size_t vars, Residue p, Visitor&& visit) {
    std::vector<Residue> x(vars, 0);
    for (std::size_t lead = 0; lead < vars; ++lead) {
        std::fill(x.begin(), x.end(), 0);
        x[lead] = 1;
        while (true) {
            visit(static_cast<const std::vector<Residue>&>(x));
            bool advanced = false;
            for (std::size_t k = vars; k > lead + 1 && !advanced;) {
                --k;
                if (++x[k] < p) advanced = true;
                else x[k] = 0;
            }
            if (!advanced) break;
        }
    }
}

} // namespace projmaps

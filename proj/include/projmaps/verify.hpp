#pragma once

// Exhaustive or seeded-sample checks of the structural laws over a box of
// maps with coefficients drawn from a finite set.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "projmaps/decompose.hpp"
#include "projmaps/error.hpp"
#include "projmaps/poly.hpp"
#include "projmaps/resultant.hpp"
#include "projmaps/stability.hpp"
#include "projmaps/weights.hpp"

namespace projmaps {

/// Slot k of a coefficient vector is (component k / M, monomial k % M) with
/// monomials in monomials_of_degree order.
class MapBox {
public:
    MapBox(int n, int m, std::vector<Rational> coeffs)
        : n_(n), m_(m), coeffs_(std::move(coeffs)), monomials_(monomials_of_degree(n + 1, m)) {
        if (n < 0 || m < 1) throw Error(ErrorCode::DimensionMismatch, "bad box dimensions");
        if (coeffs_.empty()) throw Error(ErrorCode::BudgetExceeded, "empty coefficient set");
        std::sort(coeffs_.begin(), coeffs_.end());
        coeffs_.erase(std::unique(coeffs_.begin(), coeffs_.end()), coeffs_.end());
        mpz_ui_pow_ui(size_.get_mpz_t(), coeffs_.size(), slots());
    }

    std::size_t slots() const { return static_cast<std::size_t>(n_ + 1) * monomials_.size(); }
    const Integer& size() const { return size_; }
    int n() const { return n_; }
    int m() const { return m_; }

    /// nullopt when every coefficient is zero.
    std::optional<ProjectiveMap> build(const std::vector<std::size_t>& digits) const {
        std::vector<HomogeneousPoly> comps;
        bool any = false;
        for (int j = 0; j <= n_; ++j) {
            HomogeneousPoly p(n_ + 1, m_);
            for (std::size_t k = 0; k < monomials_.size(); ++k) {
                const auto& q = coeffs_[digits[static_cast<std::size_t>(j) * monomials_.size() + k]];
                if (q != 0) {
                    p.add_term(monomials_[k], q);
                    any = true;
                }
            }
            comps.push_back(std::move(p));
        }
        if (!any) return std::nullopt;
        return ProjectiveMap(n_, m_, std::move(comps));
    }

    /// Mixed-radix decoding of an enumeration index (slot 0 least significant).
    std::vector<std::size_t> digits_of(std::uint64_t index) const {
        std::vector<std::size_t> d(slots());
        for (auto& x : d) {
            x = static_cast<std::size_t>(index % coeffs_.size());
            index /= coeffs_.size();
        }
        return d;
    }

    std::vector<std::size_t> random_digits(std::mt19937_64& rng) const {
        std::uniform_int_distribution<std::size_t> pick(0, coeffs_.size() - 1);
        std::vector<std::size_t> d(slots());
        for (auto& x : d) x = pick(rng);
        return d;
    }

private:
    int n_, m_;
    std::vector<Rational> coeffs_;
    std::vector<MultiIndex> monomials_;
    Integer size_;
};

struct VerifyConfig {
    int n = 1;
    int m = 2;
    std::vector<Rational> coeffs{0, 1};
    std::optional<std::uint64_t> sample; // seeded sampling instead of enumeration
    std::uint64_t seed = 0;
    bool allow_large = false;
    unsigned threads = 0; // 0: hardware concurrency
    std::uint64_t budget = 10'000'000;
};

struct SuiteResult {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::optional<std::uint64_t> first_failure; // instance number
    std::string first_failure_map;
};

struct VerifyReport {
    bool exhaustive = false;
    std::uint64_t instances = 0;
    std::uint64_t zero_maps = 0;
    std::uint64_t morphisms = 0;
    std::uint64_t non_morphisms = 0;
    std::uint64_t indeterminate = 0;
    std::vector<SuiteResult> suites;
    double seconds = 0;

    bool passed() const {
        return indeterminate == 0 &&
               std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failures == 0; });
    }
};

enum Suite : std::size_t {
    kVertexCoverage,
    kMultisetLemma,
    kTorusImpliesBlocks,
    kLimitFixedPoint,
    kSplitPieces,
    kSuiteCount
};

inline const char* suite_name(std::size_t s) {
    switch (s) {
    case kVertexCoverage: return "vertex_coverage";
    case kMultisetLemma: return "multiset_lemma";
    case kTorusImpliesBlocks: return "torus_rank_implies_blocks";
    case kLimitFixedPoint: return "limit_fixed_point";
    case kSplitPieces: return "split_pieces_are_morphisms";
    }
    return "?";
}

namespace detail {

struct InstanceOutcome {
    bool zero = false;
    std::optional<bool> morphism;
    std::uint64_t checked[kSuiteCount] = {};
    bool failed[kSuiteCount] = {};
};

inline OnePS random_subgroup(int dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> w(-3, 3);
    OnePS s;
    for (int i = 0; i < dim; ++i) {
        s.c.push_back(w(rng));
        s.b.push_back(w(rng));
    }
    return s;
}

inline InstanceOutcome check_instance(const std::optional<ProjectiveMap>& maybe, std::uint64_t instance_seed) {
    InstanceOutcome out;
    if (!maybe) {
        out.zero = true;
        return out;
    }
    const auto& f = *maybe;
    auto res = macaulay_resultant(f);
    if (res.indeterminate()) return out;
    out.morphism = *res.value != 0;
    if (!*out.morphism) return out;

    auto cover = vertex_coverage(f);
    ++out.checked[kVertexCoverage];
    out.failed[kVertexCoverage] = std::find(cover.begin(), cover.end(), false) != cover.end();

    auto space = stabilizer_space(f);
    for (const auto& sol : space.basis) {
        ++out.checked[kMultisetLemma];
        if (!hyperplane_partition(f, sol).multisets_equal) out.failed[kMultisetLemma] = true;
    }

    auto detection = detect_blocks(f);
    if (space.torus_rank >= 1 && f.m() > f.n() + 1) {
        ++out.checked[kTorusImpliesBlocks];
        if (detection.blocks.empty()) out.failed[kTorusImpliesBlocks] = true;
    }

    std::mt19937_64 rng(instance_seed);
    std::vector<OnePS> subgroups{random_subgroup(f.num_vars(), rng)};
    for (const auto& b : detection.blocks) subgroups.push_back(block_to_1ps(b, f));
    for (const auto& s : subgroups) {
        ++out.checked[kLimitFixedPoint];
        auto once = limit_map(f, s, false);
        auto twice = limit_map(once.limit, s, false);
        if (!projectively_equal(once.limit, twice.limit) || twice.dropped_terms != 0)
            out.failed[kLimitFixedPoint] = true;
    }

    for (const auto& b : detection.blocks) {
        ++out.checked[kSplitPieces];
        try {
            split_once(f, b);
        } catch (const Error&) {
            out.failed[kSplitPieces] = true;
        }
    }
    return out;
}

} // namespace detail

inline VerifyReport run_verify(const VerifyConfig& cfg) {
    MapBox box(cfg.n, cfg.m, cfg.coeffs);
    VerifyReport report;
    std::uint64_t count = 0;
    if (cfg.sample && Integer(static_cast<unsigned long>(*cfg.sample)) < box.size()) {
        if (*cfg.sample > cfg.budget && !cfg.allow_large)
            throw Error(ErrorCode::BudgetExceeded, "sample of " + std::to_string(*cfg.sample) + " exceeds budget");
        count = *cfg.sample;
    } else {
        if (box.size() > static_cast<unsigned long>(cfg.budget) && !cfg.allow_large)
            throw Error(ErrorCode::BudgetExceeded,
                        "box has " + box.size().get_str() + " candidate maps; use sampling or the override flag");
        if (!box.size().fits_ulong_p()) throw Error(ErrorCode::BudgetExceeded, "box too large to enumerate");
        count = box.size().get_ui();
        report.exhaustive = true;
    }
    report.instances = count;

    // Sample digits are drawn up front from one stream so the population is
    // independent of the thread count.
    std::vector<std::vector<std::size_t>> sampled;
    if (!report.exhaustive) {
        std::mt19937_64 rng(cfg.seed);
        sampled.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) sampled.push_back(box.random_digits(rng));
    }

    report.suites.resize(kSuiteCount);
    for (std::size_t s = 0; s < kSuiteCount; ++s) report.suites[s].name = suite_name(s);

    std::mutex merge;
    std::atomic<std::uint64_t> next{0};
    const auto start = std::chrono::steady_clock::now();
    auto worker = [&] {
        VerifyReport local;
        local.suites.resize(kSuiteCount);
        std::vector<std::optional<std::uint64_t>> first(kSuiteCount);
        constexpr std::uint64_t chunk = 64;
        while (true) {
            const std::uint64_t begin = next.fetch_add(chunk);
            if (begin >= count) break;
            const std::uint64_t end = std::min(count, begin + chunk);
            for (std::uint64_t i = begin; i < end; ++i) {
                auto digits = report.exhaustive ? box.digits_of(i) : sampled[i];
                auto f = box.build(digits);
                auto o = detail::check_instance(f, cfg.seed ^ (i * 0x9E3779B97F4A7C15ULL));
                if (o.zero) ++local.zero_maps;
                else if (!o.morphism) ++local.indeterminate;
                else if (*o.morphism) ++local.morphisms;
                else ++local.non_morphisms;
                for (std::size_t s = 0; s < kSuiteCount; ++s) {
                    local.suites[s].checked += o.checked[s];
                    if (o.failed[s]) {
                        ++local.suites[s].failures;
                        if (!first[s] || i < *first[s]) first[s] = i;
                    }
                }
            }
        }
        std::lock_guard lock(merge);
        report.zero_maps += local.zero_maps;
        report.morphisms += local.morphisms;
        report.non_morphisms += local.non_morphisms;
        report.indeterminate += local.indeterminate;
        for (std::size_t s = 0; s < kSuiteCount; ++s) {
            auto& dst = report.suites[s];
            dst.checked += local.suites[s].checked;
            dst.failures += local.suites[s].failures;
            if (first[s] && (!dst.first_failure || *first[s] < *dst.first_failure)) dst.first_failure = first[s];
        }
    };

    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, count / 64 + 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (auto& s : report.suites)
        if (s.first_failure) {
            auto digits = report.exhaustive ? box.digits_of(*s.first_failure) : sampled[*s.first_failure];
            s.first_failure_map = format_map(*box.build(digits));
        }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace projmaps

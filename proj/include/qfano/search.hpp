#pragma once

// The five-step numerical candidate search, per Fano index q.
//
//   Step 1  enumerate baskets with sum of (r - 1/r) below 24 (-K.c2 > 0)
//   Step 2  keep only local indices coprime to q
//   Step 3  A^3 from the index-q closed form; lcm(r_P) * A^3 must be integral
//   Step 4  Bogomolov-Miyaoka: (4q^2 - 3q) A^3 <= 4 (-K.c2)
//   Step 5  chi(tA) = 0 for -q < t < 0, plus chi integrality on a window
//
// For q = 2 the Step 3 closed form degenerates, so A^3 runs over the grid
// k / lcm(r_P) bounded by Step 4, and the t = -1 vanishing becomes a pure
// basket condition (the cubic term drops out).

#include "qfano/rational.hpp"
#include "qfano/riemann_roch.hpp"
#include "qfano/singularity.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace qfano {

/// A violated internal cross-check (for example the two A^3 routes
/// disagreeing): always a bug, never a data condition.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct SearchConfig {
    int q = 2;
    int max_terms = 2;      // chi-integrality window reaches q + max_terms * lcm(r_P)
    int emit_series_to = 10;
    std::optional<Int> genus_min;
    int partitions = 1;
};

struct CandidateRecord {
    int q = 0;
    Basket basket;
    Rat A3;
    Rat Kc2;
    Int genus;
    std::vector<Int> h0;
    std::vector<std::string> flags;

    bool operator==(const CandidateRecord&) const = default;
};

/// Canonical record order: (basket, A^3).
inline bool record_less(const CandidateRecord& a, const CandidateRecord& b) {
    if (a.basket != b.basket) return a.basket < b.basket;
    return a.A3 < b.A3;
}

/// Step 3 closed form (q >= 3):
///   A^3 = 12/((q-1)(q-2)) * (1 - (A.c2)/12 + sum_P m_P c_P(-i_P)),
/// with A.c2 = (-K.c2)/q.  May be nonpositive; such a basket is rejected
/// upstream.
inline Rat suzuki_A3(int q, const Basket& basket) {
    if (q < 3) throw std::out_of_range("the A^3 closed form needs q >= 3");
    Rat acc = 1 - kawamata_Kc2(basket) / (12 * q);
    for (const auto& [type, mult] : basket.entries()) {
        int i = local_class_of_A(q, type);
        acc += Rat(mult) * correction_term(type, Int(-i));
    }
    return Rat(12, Int(q - 1) * (q - 2)) * acc;
}

/// The unique A^3 with chi(-A) = 0, found by solving the linear equation
/// through two full chi evaluations (an independent route from suzuki_A3;
/// the two must agree identically).
inline Rat A3_by_vanishing(int q, const Basket& basket) {
    if (q < 3) throw std::out_of_range("the vanishing route needs q >= 3");
    Rat chi1 = NumericalFano(q, Rat(1), basket).chi(-1);
    Rat chi2 = NumericalFano(q, Rat(2), basket).chi(-1);
    Rat slope = chi2 - chi1; // = -(q-1)(q-2)/12, nonzero for q >= 3
    return 1 - chi1 / slope;
}

/// Step 4: (4q^2 - 3q) A^3 <= 4 (-K.c2).
inline bool bm_check(int q, const Rat& A3, const Rat& Kc2) {
    return Rat(Int(4) * q * q - 3 * q) * A3 <= 4 * Kc2;
}

/// Step 3 + 5 integrality: lcm(r_P) A^3 is an integer and chi(tA) is an
/// integer for every t in [t_lo, t_hi].
inline bool integrality_check(const NumericalFano& nf, long long t_lo, long long t_hi) {
    if (!is_integer(nf.A3() * nf.gorenstein_index())) return false;
    for (long long t = t_lo; t <= t_hi; ++t)
        if (!is_integer(nf.chi(t))) return false;
    return true;
}

/// Step 5 proper: chi(tA) = 0 for all -q < t < 0.
inline bool vanishing_check(const NumericalFano& nf) {
    for (int t = -nf.q() + 1; t < 0; ++t)
        if (nf.chi(t) != 0) return false;
    return true;
}

namespace detail {

inline long long scan_top(const SearchConfig& cfg, long long lcm) {
    return cfg.q + cfg.max_terms * lcm;
}

/// Runs Steps 4-5 on a fully specified (q, basket, A^3), computes genus and
/// series and assembles the record.  Assumes A^3 > 0 and lcm * A^3 integral.
inline std::optional<CandidateRecord> finish_candidate(const SearchConfig& cfg, const Basket& basket,
                                                       const Rat& A3) {
    const Rat Kc2 = kawamata_Kc2(basket);
    if (!bm_check(cfg.q, A3, Kc2)) return std::nullopt;
    NumericalFano nf(cfg.q, A3, basket);
    const long long lcm = nf.gorenstein_index();
    if (!integrality_check(nf, -cfg.q + 1, scan_top(cfg, lcm))) return std::nullopt;
    if (!vanishing_check(nf)) return std::nullopt;

    CandidateRecord rec;
    rec.q = cfg.q;
    rec.basket = basket;
    rec.A3 = A3;
    rec.Kc2 = Kc2;
    rec.genus = genus(nf);
    if (cfg.genus_min && rec.genus < *cfg.genus_min) return std::nullopt;
    rec.h0.reserve(static_cast<std::size_t>(cfg.emit_series_to) + 1);
    for (int m = 0; m <= cfg.emit_series_to; ++m) {
        Rat v = nf.chi(m);
        if (!is_integer(v))
            throw internal_error("chi(" + std::to_string(m) + "A) non-integral after the integrality scan");
        rec.h0.push_back(numerator(v));
    }
    rec.flags = {"kawamata", "coprimality", "rA3-integral", "bm", "chi-integral", "vanishing"};
    const Rat chiA = nf.chi(1);
    if (chiA <= 0) rec.flags.push_back("chiA<=0");
    if (chiA >= 6) rec.flags.push_back("dimA>=5");
    return rec;
}

inline unsigned worker_count(int partitions) {
    unsigned n = partitions > 0 ? static_cast<unsigned>(partitions) : 1u;
    if (const char* env = std::getenv("QFANO_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw >= 1 && n > hw) n = hw;
    return n;
}

/// Applies `per_basket` over the stream in `partitions` contiguous chunks
/// (possibly concurrently), concatenates in chunk order and canonically
/// sorts.  The result is identical for every partition count.
inline std::vector<CandidateRecord> map_baskets(
    const SearchConfig& cfg, const std::vector<Basket>& baskets,
    const std::function<void(const Basket&, std::vector<CandidateRecord>&)>& per_basket) {
    const int parts = std::max(1, cfg.partitions);
    std::vector<std::vector<CandidateRecord>> chunks(static_cast<std::size_t>(parts));
    const std::size_t n = baskets.size();
    const unsigned workers = worker_count(parts);
    std::atomic<std::size_t> next{0};
    auto run_chunk = [&](std::size_t ci) {
        std::size_t lo = n * ci / static_cast<std::size_t>(parts);
        std::size_t hi = n * (ci + 1) / static_cast<std::size_t>(parts);
        for (std::size_t i = lo; i < hi; ++i) per_basket(baskets[i], chunks[ci]);
    };
    if (workers <= 1) {
        for (std::size_t ci = 0; ci < static_cast<std::size_t>(parts); ++ci) run_chunk(ci);
    } else {
        std::vector<std::future<void>> futs;
        for (unsigned w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, [&] {
                for (std::size_t ci = next.fetch_add(1); ci < static_cast<std::size_t>(parts);
                     ci = next.fetch_add(1))
                    run_chunk(ci);
            }));
        for (auto& f : futs) f.get(); // rethrows internal errors
    }
    std::vector<CandidateRecord> out;
    for (auto& c : chunks)
        for (auto& r : c) out.push_back(std::move(r));
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

} // namespace detail

/// Index-q search, q >= 3: Steps 1-5 over every admissible basket, records in
/// canonical order.  Verifies the two A^3 routes agree on every emitted
/// record and throws internal_error otherwise.
inline std::vector<CandidateRecord> search_q(const SearchConfig& cfg) {
    if (cfg.q < 3) throw std::out_of_range("search_q requires q >= 3 (use search_q2 for q = 2)");
    auto baskets = enumerate_baskets({Rat(24), cfg.q, std::nullopt});
    return detail::map_baskets(cfg, baskets, [&](const Basket& basket, std::vector<CandidateRecord>& out) {
        Rat A3 = suzuki_A3(cfg.q, basket);
        if (A3 <= 0) return;
        if (!is_integer(A3 * basket.gorenstein_index())) return;
        auto rec = detail::finish_candidate(cfg, basket, A3);
        if (!rec) return;
        if (A3_by_vanishing(cfg.q, basket) != A3)
            throw internal_error("A^3 routes disagree on basket " + basket.to_string());
        out.push_back(std::move(*rec));
    });
}

/// Index-2 search: baskets with all r_P odd that satisfy the basket-only
/// chi(-A) = 0 condition, then A^3 on the grid k/lcm(r_P) bounded by Step 4.
inline std::vector<CandidateRecord> search_q2(const SearchConfig& cfg) {
    if (cfg.q != 2) throw std::out_of_range("search_q2 requires q = 2");
    auto baskets = enumerate_baskets({Rat(24), 2, std::nullopt});
    return detail::map_baskets(cfg, baskets, [&](const Basket& basket, std::vector<CandidateRecord>& out) {
        // chi(-A) with the cubic term vanished: 1 - Kc2/24 + sum m_P c_P(-i_P)
        Rat base = 1 - kawamata_Kc2(basket) / 24;
        for (const auto& [type, mult] : basket.entries())
            base += Rat(mult) * correction_term(type, Int(-local_class_of_A(2, type)));
        if (base != 0) return;
        const long long lcm = basket.gorenstein_index();
        const Int k_max = rat_floor(kawamata_Kc2(basket) * lcm * Rat(4, 10));
        for (Int k = 1; k <= k_max; ++k) {
            auto rec = detail::finish_candidate(cfg, basket, Rat(k, lcm));
            if (rec) out.push_back(std::move(*rec));
        }
    });
}

/// Dispatch on q (q = 2 uses the grid search, q >= 3 the closed form).
inline std::vector<CandidateRecord> run_search(const SearchConfig& cfg) {
    if (cfg.q == 2) return search_q2(cfg);
    return search_q(cfg);
}

} // namespace qfano

#pragma once

// Exact (-K)^3 bookkeeping along Sarkisov-style chains, and Delta-genus
// utilities.  Steps track arithmetic only; whether a step is geometrically
// permissible is outside this module.
//
//   blowup of a smooth point          (-K)^3 -> (-K)^3 - 8
//   blowup of a smooth curve          (-K)^3 -> (-K)^3 - 3 kdeg + (2g - 2 + kdeg)
//   Kawamata blowup of 1/r(1,a,r-a)   (-K)^3 -> (-K)^3 - 1/(r a (r-a))
//   flop                              unchanged
//   contract_*                        exact inverses of the blowups

#include "qfano/rational.hpp"
#include "qfano/singularity.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qfano {

struct LedgerStep {
    enum class Kind {
        blowup_smooth_point,
        blowup_smooth_curve,
        kawamata_blowup,
        flop,
        contract_smooth_point,
        contract_smooth_curve,
        contract_terminal_point, // inverse Kawamata blowup
    };

    Kind kind;
    Int curve_genus;                       // curve kinds only
    Rat curve_kdeg;                        // (-K).Gamma, curve kinds only
    std::optional<SingularityType> point;  // Kawamata kinds only

    static LedgerStep blowup_point() { return {Kind::blowup_smooth_point, 0, 0, std::nullopt}; }
    static LedgerStep contract_point() { return {Kind::contract_smooth_point, 0, 0, std::nullopt}; }
    static LedgerStep flop_step() { return {Kind::flop, 0, 0, std::nullopt}; }

    static LedgerStep blowup_curve(Int g, Rat kdeg) {
        validate_curve(g, kdeg);
        return {Kind::blowup_smooth_curve, std::move(g), std::move(kdeg), std::nullopt};
    }
    static LedgerStep contract_curve(Int g, Rat kdeg) {
        validate_curve(g, kdeg);
        return {Kind::contract_smooth_curve, std::move(g), std::move(kdeg), std::nullopt};
    }
    static LedgerStep kawamata(SingularityType t) {
        return {Kind::kawamata_blowup, 0, 0, t};
    }
    static LedgerStep contract_to_point(SingularityType t) {
        return {Kind::contract_terminal_point, 0, 0, t};
    }

private:
    static void validate_curve(const Int& g, const Rat& kdeg) {
        if (g < 0) throw std::out_of_range("curve genus must be >= 0");
        if (!is_integer(Rat(2 * g - 2) + kdeg))
            throw std::domain_error("c1(N) = 2g - 2 + (-K).Gamma must be an integer");
    }
};

inline LedgerStep inverse(const LedgerStep& s) {
    using K = LedgerStep::Kind;
    switch (s.kind) {
        case K::blowup_smooth_point: return LedgerStep::contract_point();
        case K::contract_smooth_point: return LedgerStep::blowup_point();
        case K::blowup_smooth_curve: return LedgerStep::contract_curve(s.curve_genus, s.curve_kdeg);
        case K::contract_smooth_curve: return LedgerStep::blowup_curve(s.curve_genus, s.curve_kdeg);
        case K::kawamata_blowup: return LedgerStep::contract_to_point(*s.point);
        case K::contract_terminal_point: return LedgerStep::kawamata(*s.point);
        case K::flop: return LedgerStep::flop_step();
    }
    throw std::logic_error("unreachable");
}

namespace detail {

inline Rat kawamata_decrement(const SingularityType& t) {
    const long long r = t.r();
    const long long a = t.pair_weight();
    return Rat(1, r * a * (r - a));
}

} // namespace detail

/// One step of (-K)^3 bookkeeping; throws std::domain_error when the input or
/// the result fails to stay positive.
inline Rat apply_step(const Rat& deg, const LedgerStep& s) {
    if (deg <= 0) throw std::domain_error("(-K)^3 must be positive");
    using K = LedgerStep::Kind;
    Rat out = deg;
    switch (s.kind) {
        case K::blowup_smooth_point: out -= 8; break;
        case K::contract_smooth_point: out += 8; break;
        case K::blowup_smooth_curve:
            out += -3 * s.curve_kdeg + (Rat(2 * s.curve_genus - 2) + s.curve_kdeg);
            break;
        case K::contract_smooth_curve:
            out -= -3 * s.curve_kdeg + (Rat(2 * s.curve_genus - 2) + s.curve_kdeg);
            break;
        case K::kawamata_blowup: out -= detail::kawamata_decrement(*s.point); break;
        case K::contract_terminal_point: out += detail::kawamata_decrement(*s.point); break;
        case K::flop: break;
    }
    if (out <= 0) throw std::domain_error("step drives (-K)^3 nonpositive");
    return out;
}

struct LinkLedger {
    Rat start_degree;
    std::vector<LedgerStep> steps;

    /// Degrees from start through every step; length steps.size() + 1.
    std::vector<Rat> trace() const {
        std::vector<Rat> t{start_degree};
        for (const LedgerStep& s : steps) t.push_back(apply_step(t.back(), s));
        return t;
    }
};

namespace detail {

/// Splits on commas at parenthesis depth zero only.
inline std::vector<std::string_view> split_steps(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || (s[i] == ',' && depth == 0)) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        } else if (s[i] == '(') {
            ++depth;
        } else if (s[i] == ')') {
            --depth;
            if (depth < 0) throw std::invalid_argument("unbalanced ')' in chain");
        }
    }
    if (depth != 0) throw std::invalid_argument("unbalanced '(' in chain");
    return out;
}

/// Parses "1/r(w1,w2,w3)" and normalizes the germ.
inline SingularityType parse_germ(std::string_view s) {
    s = trim(s);
    if (s.substr(0, 2) != "1/") throw std::invalid_argument("expected 1/r(w1,w2,w3)");
    s.remove_prefix(2);
    auto paren = s.find('(');
    if (paren == std::string_view::npos || s.back() != ')')
        throw std::invalid_argument("expected 1/r(w1,w2,w3)");
    int r = parse_small_int(trim(s.substr(0, paren)));
    auto parts = split(s.substr(paren + 1, s.size() - paren - 2), ',');
    if (parts.size() != 3) throw std::invalid_argument("expected three germ weights");
    std::array<int, 3> w;
    for (int i = 0; i < 3; ++i) w[static_cast<std::size_t>(i)] = parse_small_int(trim(parts[static_cast<std::size_t>(i)]));
    return SingularityType::from_germ(r, w);
}

/// Parses "g=G,kdeg=K" (either order).
inline std::pair<Int, Rat> parse_curve_args(std::string_view s) {
    std::optional<Int> g;
    std::optional<Rat> kdeg;
    for (std::string_view part : split(s, ',')) {
        part = trim(part);
        auto eq = part.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value in curve step");
        std::string_view key = trim(part.substr(0, eq));
        std::string_view val = trim(part.substr(eq + 1));
        if (key == "g") g = parse_int(val);
        else if (key == "kdeg") kdeg = parse_rational(val);
        else throw std::invalid_argument("unknown curve parameter: " + std::string(key));
    }
    if (!g || !kdeg) throw std::invalid_argument("curve step needs both g and kdeg");
    return {*g, *kdeg};
}

} // namespace detail

/// Chain text format, comma separated:
///   blowpt | contractpt | flop
///   blowcurve(g=G,kdeg=K) | contractcurve(g=G,kdeg=K)
///   kawamata:1/r(w1,w2,w3) | contract:1/r(w1,w2,w3)
/// The quotient data is an arbitrary presentation of the germ and is
/// normalized on parse.
inline std::vector<LedgerStep> parse_chain(std::string_view text) {
    std::vector<LedgerStep> steps;
    for (std::string_view tok : detail::split_steps(text)) {
        tok = detail::trim(tok);
        if (tok.empty()) continue;
        if (tok == "blowpt") {
            steps.push_back(LedgerStep::blowup_point());
        } else if (tok == "contractpt") {
            steps.push_back(LedgerStep::contract_point());
        } else if (tok == "flop") {
            steps.push_back(LedgerStep::flop_step());
        } else if (tok.starts_with("blowcurve(") && tok.ends_with(")")) {
            auto [g, kdeg] = detail::parse_curve_args(tok.substr(10, tok.size() - 11));
            steps.push_back(LedgerStep::blowup_curve(g, kdeg));
        } else if (tok.starts_with("contractcurve(") && tok.ends_with(")")) {
            auto [g, kdeg] = detail::parse_curve_args(tok.substr(14, tok.size() - 15));
            steps.push_back(LedgerStep::contract_curve(g, kdeg));
        } else if (tok.starts_with("kawamata:")) {
            steps.push_back(LedgerStep::kawamata(detail::parse_germ(tok.substr(9))));
        } else if (tok.starts_with("contract:")) {
            steps.push_back(LedgerStep::contract_to_point(detail::parse_germ(tok.substr(9))));
        } else {
            throw std::invalid_argument("unknown chain step: " + std::string(tok));
        }
    }
    return steps;
}

struct ChainReport {
    bool ok = true;
    std::vector<Rat> trace;
    std::string detail;
};

/// The quoted chain: smooth quadric (54), point blowup (46), blowup of a
/// rational curve of genus 0 with (-K).Gamma = 9 (26), flop (26), contraction
/// to a 1/2(1,1,1) point (53/2), contraction to a 1/3(1,1,2) point (80/3);
/// finally 80/3 must equal 8 * (10/3) = (2A)^3.
inline ChainReport verify_paper_chain() {
    ChainReport report;
    LinkLedger chain{
        Rat(54),
        {
            LedgerStep::blowup_point(),
            LedgerStep::blowup_curve(0, Rat(9)),
            LedgerStep::flop_step(),
            LedgerStep::contract_to_point(SingularityType::from_germ(2, {1, 1, 1})),
            LedgerStep::contract_to_point(SingularityType::from_germ(3, {1, 1, 2})),
        }};
    const std::vector<Rat> expected{Rat(54), Rat(46), Rat(26), Rat(26), Rat(53, 2), Rat(80, 3)};
    report.trace = chain.trace();
    if (report.trace != expected) {
        report.ok = false;
        report.detail = "degree trace differs from the quoted chain";
        return report;
    }
    if (report.trace.back() != Rat(8) * Rat(10, 3)) {
        report.ok = false;
        report.detail = "final degree is not 8 * A^3 with A^3 = 10/3";
        return report;
    }
    report.detail = "chain reproduces 54, 46, 26, 26, 53/2, 80/3 and 80/3 = 8*(10/3)";
    return report;
}

/// Delta(X, S) = dim X + S^{dim X} - h^0(S).
inline Rat delta_genus(int dim, const Rat& degS, const Int& h0) {
    if (h0 < 0) throw std::out_of_range("h^0 must be >= 0");
    return Rat(dim) + degS - Rat(h0);
}

/// For a del Pezzo section S in |S| with -K_X ~ lambda * S:
/// Delta(X, S) = 1 + (2 - lambda) K_S^2 / (2 (lambda - 1)^2).
inline Rat delta_genus_del_pezzo(const Rat& lambda, int Ks2) {
    if (lambda <= 1) throw std::out_of_range("lambda must exceed 1");
    if (Ks2 < 1 || Ks2 > 9) throw std::out_of_range("K_S^2 must be in [1, 9]");
    return 1 + (2 - lambda) * Ks2 / (2 * (lambda - 1) * (lambda - 1));
}

} // namespace qfano

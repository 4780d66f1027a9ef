#pragma once

// Terminal cyclic quotient singularity types and baskets.
//
// A type (r, b) stands for the isolated quotient germ C^3 / mu_r acting with
// weights (1, r-1, b), gcd(b, r) = 1.  Two parameters describe the same germ
// exactly when b' = b or b' = r-b (rescale the group generator by -1), so the
// canonical representative keeps b <= r/2.  Note that (r, b) and the
// inverse-parameter type (r, b^{-1} mod r) are in general *different* germs:
// for r = 7 the germs 1/7(1,6,2) and 1/7(1,6,3) are not isomorphic and their
// Riemann-Roch corrections differ, so no further identification is allowed.

#include "qfano/rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace qfano {

class SingularityType {
public:
    /// Canonicalizes (r, b) ~ (r, r-b).  Throws std::out_of_range unless
    /// r >= 2 and 1 <= b <= r-1, and std::domain_error when gcd(b, r) > 1
    /// (the germ would not be terminal).
    static SingularityType make(int r, int b) {
        if (r < 2) throw std::out_of_range("singularity index r must be >= 2");
        if (b < 1 || b > r - 1) throw std::out_of_range("weight b must satisfy 1 <= b <= r-1");
        if (std::gcd(b, r) != 1) throw std::domain_error("non-terminal type: gcd(b, r) > 1");
        return SingularityType(r, std::min(b, r - b));
    }

    /// Classifies a germ 1/r(w1, w2, w3) given by arbitrary weights: finds the
    /// unit rescaling onto the normal form 1/r(1, r-1, b).  Throws
    /// std::domain_error when the germ is not an isolated terminal quotient.
    static SingularityType from_germ(int r, std::array<int, 3> w) {
        if (r < 2) throw std::out_of_range("singularity index r must be >= 2");
        for (int& wi : w) {
            wi = static_cast<int>(mod_nonneg(static_cast<long long>(wi), r));
            if (std::gcd(wi, r) != 1)
                throw std::domain_error("germ has a non-isolated fixed locus: weight not coprime to r");
        }
        for (int u = 1; u < r; ++u) {
            if (std::gcd(u, r) != 1) continue;
            std::array<int, 3> s;
            for (int i = 0; i < 3; ++i) s[i] = static_cast<int>((static_cast<long long>(u) * w[i]) % r);
            std::sort(s.begin(), s.end());
            // extract one copy of 1 and one copy of r-1; the leftover is b
            for (int i = 0; i < 3; ++i) {
                if (s[i] != 1) continue;
                for (int j = 0; j < 3; ++j) {
                    if (j == i || s[j] != r - 1) continue;
                    int b = s[3 - i - j];
                    return make(r, b);
                }
            }
        }
        throw std::domain_error("germ is not a terminal threefold quotient point");
    }

    int r() const { return r_; }
    int b() const { return b_; }

    /// The parameter a of the same germ written as 1/r(1, a, r-a); this is the
    /// form entering the Kawamata-blowup degree bookkeeping.  a = b^{-1} mod r
    /// up to sign, returned with a <= r/2.
    int pair_weight() const {
        long long a = mod_inverse(b_, r_);
        return static_cast<int>(std::min(a, r_ - a));
    }

    /// r - 1/r, the summand in the Kawamata identity.
    Rat contribution() const { return Rat(Int(r_) * r_ - 1, r_); }

    auto operator<=>(const SingularityType&) const = default;

private:
    SingularityType(int r, int b) : r_(r), b_(b) {}
    int r_;
    int b_;
};

class Basket {
public:
    using Entry = std::pair<SingularityType, int>;

    Basket() = default;

    /// Merges duplicates, sorts by (r, b) and validates multiplicities >= 1
    /// and total contribution < 24.
    explicit Basket(std::vector<Entry> entries) {
        for (const Entry& e : entries) {
            if (e.second < 1) throw std::out_of_range("basket multiplicity must be >= 1");
        }
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        for (const Entry& e : entries) {
            if (!entries_.empty() && entries_.back().first == e.first)
                entries_.back().second += e.second;
            else
                entries_.push_back(e);
        }
        if (contribution_sum() >= 24)
            throw std::domain_error("basket contribution sum must stay below 24");
    }

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    Rat contribution_sum() const {
        Rat s = 0;
        for (const Entry& e : entries_) s += Rat(e.second) * e.first.contribution();
        return s;
    }

    /// lcm of the local indices r_P (the global Gorenstein index); 1 if empty.
    long long gorenstein_index() const {
        long long l = 1;
        for (const Entry& e : entries_) l = std::lcm(l, static_cast<long long>(e.first.r()));
        return l;
    }

    /// Display encoding "m*1/r(1,a,b)" with a = r-b, semicolon separated.
    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& [t, m] = entries_[i];
            if (i) os << ';';
            os << m << "*1/" << t.r() << "(1," << t.r() - t.b() << ',' << t.b() << ')';
        }
        return os.str();
    }

    /// Compact encoding "r,b,m" per entry, semicolon separated.
    std::string compact() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& [t, m] = entries_[i];
            if (i) os << ';';
            os << t.r() << ',' << t.b() << ',' << m;
        }
        return os.str();
    }

    /// Accepts both the display form and the compact form; "" is the empty
    /// basket.  Throws std::invalid_argument on malformed text.
    static Basket parse(std::string_view s);

    auto operator<=>(const Basket&) const = default;

private:
    std::vector<Entry> entries_; // sorted by type, multiplicities >= 1
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) next = s.size();
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline int parse_small_int(std::string_view s) {
    Int v = parse_int(s);
    if (v > 1000000 || v < -1000000) throw std::invalid_argument("integer out of range: " + std::string(s));
    return static_cast<int>(v);
}

} // namespace detail

inline Basket Basket::parse(std::string_view s) {
    s = detail::trim(s);
    if (s.empty()) return Basket();
    std::vector<Entry> entries;
    for (std::string_view term : detail::split(s, ';')) {
        term = detail::trim(term);
        if (term.empty()) throw std::invalid_argument("empty basket term");
        if (term.find('*') != std::string_view::npos) {
            // m*1/r(1,a,b)
            auto star = term.find('*');
            int m = detail::parse_small_int(detail::trim(term.substr(0, star)));
            std::string_view rest = detail::trim(term.substr(star + 1));
            if (rest.substr(0, 2) != "1/") throw std::invalid_argument("expected 1/r(...) in basket term");
            rest.remove_prefix(2);
            auto paren = rest.find('(');
            if (paren == std::string_view::npos || rest.back() != ')')
                throw std::invalid_argument("expected 1/r(1,a,b) in basket term");
            int r = detail::parse_small_int(detail::trim(rest.substr(0, paren)));
            auto parts = detail::split(rest.substr(paren + 1, rest.size() - paren - 2), ',');
            if (parts.size() != 3) throw std::invalid_argument("expected three weights in basket term");
            int b = detail::parse_small_int(detail::trim(parts[2]));
            entries.emplace_back(SingularityType::make(r, b), m);
        } else {
            // r,b,m
            auto parts = detail::split(term, ',');
            if (parts.size() != 3) throw std::invalid_argument("expected r,b,m in basket term");
            int r = detail::parse_small_int(detail::trim(parts[0]));
            int b = detail::parse_small_int(detail::trim(parts[1]));
            int m = detail::parse_small_int(detail::trim(parts[2]));
            entries.emplace_back(SingularityType::make(r, b), m);
        }
    }
    return Basket(std::move(entries));
}

/// Options for basket enumeration.  max_sum bounds the total contribution
/// strictly; coprime_to keeps only types with gcd(r, q) = 1; lcm_cap prunes
/// branches whose Gorenstein index would exceed the cap.
struct BasketFilter {
    Rat max_sum = 24;
    std::optional<int> coprime_to;
    std::optional<long long> lcm_cap;
};

namespace detail {

inline std::vector<SingularityType> basket_atom_types(const BasketFilter& f) {
    std::vector<SingularityType> types;
    for (int r = 2;; ++r) {
        if (SingularityType::make(r, 1).contribution() >= f.max_sum) break;
        if (f.coprime_to && std::gcd(r, *f.coprime_to) != 1) continue;
        for (int b = 1; 2 * b <= r; ++b)
            if (std::gcd(b, r) == 1) types.push_back(SingularityType::make(r, b));
    }
    std::sort(types.begin(), types.end());
    return types;
}

} // namespace detail

/// Visits every basket with contribution sum < max_sum exactly once, in the
/// canonical stream order: lexicographic on the sorted (r, b, multiplicity)
/// entry sequence, empty basket first.  The visitor returns false to stop.
inline void for_each_basket(const BasketFilter& f, const std::function<bool(const Basket&)>& visit) {
    if (f.max_sum > 24) throw std::out_of_range("basket enumeration requires max_sum <= 24");
    if (f.max_sum <= 0) return; // even the empty basket needs 0 < max_sum
    auto types = detail::basket_atom_types(f);
    std::vector<Basket::Entry> prefix;
    bool stop = false;
    // Emitting each prefix before extending it realizes the documented order:
    // entries are appended in ascending (r, b) with ascending multiplicity.
    auto rec = [&](auto&& self, std::size_t start, const Rat& remaining, long long lcm_so_far) -> void {
        if (stop) return;
        if (!visit(Basket(prefix))) { stop = true; return; }
        for (std::size_t ti = start; ti < types.size(); ++ti) {
            const Rat c = types[ti].contribution();
            if (c >= remaining) break; // contributions are nondecreasing along the type list
            long long lcm_next = std::lcm(lcm_so_far, static_cast<long long>(types[ti].r()));
            if (f.lcm_cap && lcm_next > *f.lcm_cap) continue;
            Rat used = c;
            for (int m = 1; used < remaining; ++m, used += c) {
                prefix.emplace_back(types[ti], m);
                self(self, ti + 1, remaining - used, lcm_next);
                prefix.pop_back();
                if (stop) return;
            }
        }
    };
    rec(rec, 0, f.max_sum, 1);
}

/// Materialized form of for_each_basket, same order.
inline std::vector<Basket> enumerate_baskets(const BasketFilter& f) {
    std::vector<Basket> out;
    for_each_basket(f, [&](const Basket& b) {
        out.push_back(b);
        return true;
    });
    return out;
}

} // namespace qfano

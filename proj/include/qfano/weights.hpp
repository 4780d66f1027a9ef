#pragma once

// Weight systems and graded formats: Hilbert series of weighted projective
// spaces, hypersurfaces, complete intersections and 5x5 Pfaffian formats,
// plus the monomial-counting oracle that pins every convention elsewhere.

#include "qfano/rational.hpp"
#include "qfano/singularity.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <variant>
#include <vector>

namespace qfano {

struct WeightSystem {
    std::vector<int> weights;

    explicit WeightSystem(std::vector<int> w) : weights(std::move(w)) {
        if (weights.empty()) throw std::out_of_range("weight system must be nonempty");
        for (int a : weights)
            if (a < 1) throw std::out_of_range("weights must be positive");
    }

    /// Well-formedness: every n-1 of the weights have gcd 1.
    bool is_well_formed() const {
        for (std::size_t skip = 0; skip < weights.size(); ++skip) {
            int g = 0;
            for (std::size_t i = 0; i < weights.size(); ++i)
                if (i != skip) g = std::gcd(g, weights[i]);
            if (g != 1) return false;
        }
        return true;
    }

    int sum() const { return std::accumulate(weights.begin(), weights.end(), 0); }

    Int product() const {
        Int p = 1;
        for (int a : weights) p *= a;
        return p;
    }

    bool operator==(const WeightSystem&) const = default;
};

/// Number of monomials of weighted degree m, i.e. h^0(P(a), O(m)).  Exact
/// dynamic programming; the ground-truth oracle for the Riemann-Roch
/// conventions.
inline Int monomial_count(const WeightSystem& w, int m) {
    if (m < 0) throw std::out_of_range("degree must be >= 0");
    std::vector<Int> dp(static_cast<std::size_t>(m) + 1, Int(0));
    dp[0] = 1;
    for (int a : w.weights)
        for (int d = a; d <= m; ++d) dp[static_cast<std::size_t>(d)] += dp[static_cast<std::size_t>(d - a)];
    return dp[static_cast<std::size_t>(m)];
}

struct WpsInvariants {
    int q;
    Rat A3;
    Basket basket;
};

/// Fano data of a terminal P(a1,a2,a3,a4): q = sum a_i, A^3 = 1/prod a_i, and
/// one basket point per vertex of weight >= 2 (germ = the other three weights
/// mod a_i).  Requires pairwise coprime weights among those >= 2 (isolated
/// singularities); throws std::domain_error otherwise.
inline WpsInvariants wps_invariants(const WeightSystem& w) {
    if (w.weights.size() != 4) throw std::out_of_range("expected exactly four weights");
    if (!w.is_well_formed()) throw std::domain_error("weight system is not well formed");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (w.weights[i] >= 2 && w.weights[j] >= 2 && std::gcd(w.weights[i], w.weights[j]) != 1)
                throw std::domain_error("singular curve: two weights share a factor");
    std::vector<Basket::Entry> entries;
    for (std::size_t i = 0; i < 4; ++i) {
        int r = w.weights[i];
        if (r < 2) continue;
        std::array<int, 3> germ;
        std::size_t k = 0;
        for (std::size_t j = 0; j < 4; ++j)
            if (j != i) germ[k++] = w.weights[j] % r;
        entries.emplace_back(SingularityType::from_germ(r, germ), 1);
    }
    return WpsInvariants{w.sum(), Rat(1, w.product()), Basket(std::move(entries))};
}

/// Hilbert series as numerator polynomial over prod (1 - t^{a_j}).
struct HilbertSeries {
    std::vector<Int> numerator; // coefficient of t^i at index i
    std::vector<int> denominator_weights;

    std::string numerator_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < numerator.size(); ++i) {
            if (numerator[i] == 0) continue;
            Int c = numerator[i];
            if (first) {
                if (c < 0) os << '-';
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            Int a = abs(c);
            if (i == 0) {
                os << a.str();
            } else {
                if (a != 1) os << a.str() << '*';
                os << 't';
                if (i > 1) os << '^' << i;
            }
        }
        if (first) os << '0';
        return os.str();
    }
};

struct Wps {};
struct Hypersurface {
    int d;
};
struct CompleteIntersection {
    std::vector<int> degrees;
};
/// Maximal Pfaffians of a 5x5 skew matrix with entry degrees b_i + b_j; the
/// b_i may be half-integers and are stored doubled.
struct Pfaffian {
    std::array<int, 5> twice_b;
};

class GradedFormat {
public:
    using Kind = std::variant<Wps, Hypersurface, CompleteIntersection, Pfaffian>;

    GradedFormat(WeightSystem ambient, Kind kind)
        : ambient_(std::move(ambient)), kind_(std::move(kind)) {
        validate();
    }

    const WeightSystem& ambient() const { return ambient_; }
    const Kind& kind() const { return kind_; }

    int codimension() const {
        if (std::holds_alternative<Wps>(kind_)) return 0;
        if (std::holds_alternative<Hypersurface>(kind_)) return 1;
        if (const auto* ci = std::get_if<CompleteIntersection>(&kind_))
            return static_cast<int>(ci->degrees.size());
        return 3;
    }

    /// Equation degrees (empty for a plain weighted projective space).
    std::vector<int> equation_degrees() const {
        if (std::holds_alternative<Wps>(kind_)) return {};
        if (const auto* h = std::get_if<Hypersurface>(&kind_)) return {h->d};
        if (const auto* ci = std::get_if<CompleteIntersection>(&kind_)) return ci->degrees;
        const auto& pf = std::get<Pfaffian>(kind_);
        const int k = adjunction_number();
        std::vector<int> ds;
        for (int tb : pf.twice_b) ds.push_back((k - tb) / 2); // sigma - b_i
        return ds;
    }

    /// k with omega = O(k - sum a_j): sum of equation degrees for a
    /// hypersurface or complete intersection, 2 sigma for a Pfaffian, 0 for a
    /// weighted projective space.
    int adjunction_number() const {
        if (std::holds_alternative<Wps>(kind_)) return 0;
        if (const auto* pf = std::get_if<Pfaffian>(&kind_)) {
            int sum_tb = std::accumulate(pf->twice_b.begin(), pf->twice_b.end(), 0);
            return sum_tb; // 2 sigma = sum of the doubled b_i
        }
        auto ds = equation_degrees();
        return std::accumulate(ds.begin(), ds.end(), 0);
    }

    /// Fano index q = sum a_j - k_adj.
    int fano_index() const { return ambient_.sum() - adjunction_number(); }

private:
    void validate() const {
        if (const auto* h = std::get_if<Hypersurface>(&kind_)) {
            if (h->d < 2) throw std::out_of_range("hypersurface degree must be >= 2");
        } else if (const auto* ci = std::get_if<CompleteIntersection>(&kind_)) {
            if (ci->degrees.empty()) throw std::out_of_range("complete intersection needs degrees");
            for (int d : ci->degrees)
                if (d < 2) throw std::out_of_range("equation degrees must be >= 2");
        } else if (const auto* pf = std::get_if<Pfaffian>(&kind_)) {
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t j = i + 1; j < 5; ++j) {
                    int twice_entry = pf->twice_b[i] + pf->twice_b[j];
                    if (twice_entry <= 0 || twice_entry % 2 != 0)
                        throw std::domain_error("Pfaffian entry degrees must be positive integers");
                }
            const int k = adjunction_number();
            for (int tb : pf->twice_b)
                if ((k - tb) % 2 != 0 || k - tb <= 0)
                    throw std::domain_error("Pfaffian equation degrees must be positive integers");
        }
        if (fano_index() <= 0)
            throw std::domain_error("format is not Fano: sum of weights must exceed the adjunction number");
    }

    WeightSystem ambient_;
    Kind kind_;
};

/// Recovers the five Pfaffian weights b_i from the ten entry degrees d_{ij}
/// (upper triangle, row by row) and cross-checks every entry.  This is the
/// "degree matrix alone" entry point.
inline Pfaffian pfaffian_from_degree_matrix(const std::array<int, 10>& upper) {
    auto d = [&](std::size_t i, std::size_t j) -> int {
        if (i > j) std::swap(i, j);
        // index of (i,j), i<j, in row-major upper triangle of a 5x5 matrix
        static constexpr int base[4] = {0, 4, 7, 9};
        return upper[static_cast<std::size_t>(base[i]) + (j - i - 1)];
    };
    std::array<int, 5> twice_b{};
    twice_b[0] = d(0, 1) + d(0, 2) - d(1, 2);
    for (std::size_t i = 1; i < 5; ++i) twice_b[i] = 2 * d(0, i) - twice_b[0];
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            if (twice_b[i] + twice_b[j] != 2 * d(i, j))
                throw std::domain_error("degree matrix is not of Pfaffian type b_i + b_j");
    return Pfaffian{twice_b};
}

/// Numerator of the Hilbert series over prod (1 - t^{a_j}):
///   wps                     1
///   hypersurface(d)         1 - t^d
///   complete intersection   prod (1 - t^{d_i})
///   pfaffian                1 - sum t^{d_i} + sum t^{k - d_i} - t^k
inline HilbertSeries format_series(const GradedFormat& f) {
    std::vector<Int> num{Int(1)};
    auto add_at = [](std::vector<Int>& p, std::size_t deg, const Int& c) {
        if (p.size() <= deg) p.resize(deg + 1, Int(0));
        p[deg] += c;
    };
    if (std::holds_alternative<Pfaffian>(f.kind())) {
        const int k = f.adjunction_number();
        for (int di : f.equation_degrees()) {
            add_at(num, static_cast<std::size_t>(di), Int(-1));
            add_at(num, static_cast<std::size_t>(k - di), Int(1));
        }
        add_at(num, static_cast<std::size_t>(k), Int(-1));
    } else {
        for (int di : f.equation_degrees()) {
            // multiply by (1 - t^di)
            std::vector<Int> next(num.size() + static_cast<std::size_t>(di), Int(0));
            for (std::size_t i = 0; i < num.size(); ++i) {
                next[i] += num[i];
                next[i + static_cast<std::size_t>(di)] -= num[i];
            }
            num = std::move(next);
        }
    }
    while (num.size() > 1 && num.back() == 0) num.pop_back();
    return HilbertSeries{std::move(num), f.ambient().weights};
}

/// Exact power-series expansion of the Hilbert series to order N.
inline std::vector<Int> series_coeffs(const HilbertSeries& s, int N) {
    if (N < 0) throw std::out_of_range("series order must be >= 0");
    std::vector<Int> c(static_cast<std::size_t>(N) + 1, Int(0));
    for (std::size_t i = 0; i < s.numerator.size() && i <= static_cast<std::size_t>(N); ++i)
        c[i] = s.numerator[i];
    for (int a : s.denominator_weights)
        for (int m = a; m <= N; ++m)
            c[static_cast<std::size_t>(m)] += c[static_cast<std::size_t>(m - a)];
    if (c[0] != 1) throw std::domain_error("series does not start at 1");
    return c;
}

struct FormatFanoInvariants {
    int q;
    Rat A3;
};

/// q and A^3 = lim_{t->1} (1-t)^4 * series, computed exactly: the numerator
/// must vanish to order (#weights - 4) at t = 1, and the limit is the reduced
/// numerator at 1 divided by the product of the weights.  Throws
/// std::domain_error when the vanishing order is wrong (dimension mismatch).
inline FormatFanoInvariants format_fano_invariants(const GradedFormat& f) {
    const auto series = format_series(f);
    const int extra = static_cast<int>(f.ambient().weights.size()) - 4;
    if (extra < 0) throw std::domain_error("ambient has fewer than four weights");
    std::vector<Int> n = series.numerator;
    for (int step = 0; step < extra; ++step) {
        // n = (1 - t) * q  =>  q_i = sum_{j <= i} n_j, remainder n(1)
        Int acc = 0;
        std::vector<Int> q(n.size() > 0 ? n.size() - 1 : 0, Int(0));
        for (std::size_t i = 0; i + 1 < n.size(); ++i) {
            acc += n[i];
            q[i] = acc;
        }
        acc += n.empty() ? Int(0) : n.back();
        if (acc != 0)
            throw std::domain_error("numerator does not vanish to the required order at t = 1");
        n = std::move(q);
    }
    Int value = 0;
    for (const Int& c : n) value += c;
    return FormatFanoInvariants{f.fano_index(), Rat(value, f.ambient().product())};
}

/// Gorenstein numerator symmetry n(t) = (-1)^c t^k n(1/t) for codimension c.
inline bool gorenstein_symmetry_check(const HilbertSeries& s, int k_adj, int codim) {
    if (k_adj < 0) return false;
    const auto& n = s.numerator;
    auto coeff = [&](long long i) -> Int {
        if (i < 0 || i >= static_cast<long long>(n.size())) return Int(0);
        return n[static_cast<std::size_t>(i)];
    };
    long long top = static_cast<long long>(n.size()) - 1;
    long long hi = std::max<long long>(top, k_adj);
    const int sign = (codim % 2 == 0) ? 1 : -1;
    for (long long i = 0; i <= hi; ++i)
        if (coeff(i) != sign * coeff(k_adj - i)) return false;
    return true;
}

} // namespace qfano

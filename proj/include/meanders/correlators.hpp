#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "meanders/rational.hpp"

namespace meanders {

// Key of a psi-class correlator <tau_{d_1} ... tau_{d_n}>_g. Indices are kept
// sorted: correlators are symmetric in their insertions.
struct CorrelatorKey {
    long genus = 0;
    std::vector<int> indices;

    CorrelatorKey() = default;
    CorrelatorKey(long g, std::vector<int> d) : genus(g), indices(std::move(d)) {
        std::sort(indices.begin(), indices.end(), std::greater<int>());
    }
    bool operator<(const CorrelatorKey& o) const {
        if (genus != o.genus) return genus < o.genus;
        return indices < o.indices;
    }
};

/// <tau_{3g-2}>_g = 1/(24^g g!).
inline Rat one_point_correlator(long g) {
    if (g < 1) throw math_error("one_point_correlator: g must be >= 1");
    return Rat(1, boost::multiprecision::pow(Int(24), static_cast<unsigned>(g)) * factorial(g));
}

/// Genus-0 closed form (n-3)!/prod d_i!; zero when the dimension is off.
inline Rat genus0_correlator(const std::vector<int>& d) {
    long n = (long)d.size();
    if (n < 3) throw math_error("genus0_correlator: need at least 3 insertions");
    long total = 0;
    for (int x : d) {
        if (x < 0) return Rat(0);
        total += x;
    }
    if (total != n - 3) return Rat(0);
    Int den = 1;
    for (int x : d) den *= factorial(x);
    return Rat(factorial(n - 3), den);
}

namespace detail {

class correlator_table {
  public:
    static correlator_table& instance() {
        static correlator_table t;
        return t;
    }

    Rat get(long g, std::vector<int> d) {
        CorrelatorKey key(g, std::move(d));
        {
            std::lock_guard<std::mutex> lock(mtx_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        Rat v = compute(key);
        std::lock_guard<std::mutex> lock(mtx_);
        memo_.emplace(key, v);
        return v;
    }

  private:
    std::map<CorrelatorKey, Rat> memo_;
    std::mutex mtx_;

    static bool stable(long g, long n) { return 2 * g - 2 + n > 0; }

    Rat compute(const CorrelatorKey& key) {
        const long g = key.genus;
        const std::vector<int>& d = key.indices;  // sorted descending
        const long n = (long)d.size();

        long total = 0;
        for (int x : d) {
            if (x < 0) return Rat(0);
            total += x;
        }
        if (total != 3 * g - 3 + n) return Rat(0);
        if (!stable(g, n)) return Rat(0);
        if (g == 0) return genus0_correlator(d);
        if (g == 1 && n == 1) return Rat(1, 24);  // <tau_1>_1

        // String equation: eliminate a tau_0 insertion.
        if (d.back() == 0 && stable(g, n - 1)) {
            std::vector<int> rest(d.begin(), d.end() - 1);
            Rat sum = 0;
            for (long i = 0; i < n - 1; ++i) {
                if (rest[i] == 0) continue;
                std::vector<int> next = rest;
                next[i] -= 1;
                sum += get(g, std::move(next));
            }
            return sum;
        }
        // Dilaton equation: eliminate a tau_1 insertion.
        if (d.back() == 1 && stable(g, n - 1)) {
            std::vector<int> rest(d.begin(), d.end() - 1);
            return Rat(2 * g - 2 + (n - 1)) * get(g, std::move(rest));
        }

        // General recursion on the largest index.
        const int d1 = d[0];
        std::vector<int> rest(d.begin() + 1, d.end());
        const long m = (long)rest.size();
        Rat sum = 0;
        for (long j = 0; j < m; ++j) {
            std::vector<int> next = rest;
            next.erase(next.begin() + j);
            next.push_back(d1 + rest[j] - 1);
            Rat coef(double_factorial(2 * (d1 + rest[j]) - 1), double_factorial(2 * rest[j] - 1));
            sum += coef * get(g, std::move(next));
        }
        for (int a = 0; a + 2 <= d1; ++a) {
            int b = d1 - 2 - a;
            Rat w(double_factorial(2 * a + 1) * double_factorial(2 * b + 1), 2);
            if (stable(g - 1, m + 2)) {
                std::vector<int> next = rest;
                next.push_back(a);
                next.push_back(b);
                sum += w * get(g - 1, std::move(next));
            }
            for (long g1 = 0; g1 <= g; ++g1) {
                long g2 = g - g1;
                for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
                    std::vector<int> left{a}, right{b};
                    long suml = a, sumr = b;
                    for (long i = 0; i < m; ++i) {
                        if (mask & (1ul << i)) {
                            left.push_back(rest[i]);
                            suml += rest[i];
                        } else {
                            right.push_back(rest[i]);
                            sumr += rest[i];
                        }
                    }
                    if (!stable(g1, (long)left.size()) || !stable(g2, (long)right.size())) continue;
                    if (suml != 3 * g1 - 3 + (long)left.size()) continue;
                    if (sumr != 3 * g2 - 3 + (long)right.size()) continue;
                    sum += w * get(g1, std::move(left)) * get(g2, std::move(right));
                }
            }
        }
        return sum / Rat(double_factorial(2 * d1 + 1));
    }
};

}  // namespace detail

/// Exact <tau_{d_1} ... tau_{d_n}>_g for any stable (g,n); 0 off-dimension.
inline Rat correlator(long g, const std::vector<int>& indices) {
    if (g < 0) throw math_error("correlator: negative genus");
    if (2 * g - 2 + (long)indices.size() <= 0)
        throw math_error("correlator: unstable (g,n) = (" + std::to_string(g) + "," +
                         std::to_string(indices.size()) + ")");
    return detail::correlator_table::instance().get(g, indices);
}

// ---------------------------------------------------------------------------
// 2-correlators <tau_k tau_{3g-1-k}>_g via the linear three-term recursions.
//
// The recursions as printed carry ambiguous second coefficients; the engine
// self-calibrates by validating candidate readings against known values of
// <tau_1 tau_1>_1, <tau_1 tau_4>_2, <tau_2 tau_3>_2 and the tabulated sums
// for g <= 7, falling back to the general recursion if no reading fits.
// ---------------------------------------------------------------------------

enum class TwoPointBackend { zograf_literal, zograf_g_reading, general_recursion };

namespace detail {

inline const std::vector<std::pair<long, Rat>>& two_point_sum_reference() {
    // Reference sums sum_{k=0}^{3g-1} <tau_k tau_{3g-1-k}>_g for g = 1..7.
    static const std::vector<std::pair<long, Rat>> table = {
        {1, rat_from_string("1/8")},
        {2, rat_from_string("49/2880")},
        {3, rat_from_string("1181/725760")},
        {4, rat_from_string("467/3870720")},
        {5, rat_from_string("33631/4598415360")},
        {6, rat_from_string("322873/860823355392")},
        {7, rat_from_string("205001/12297476505600")},
    };
    return table;
}

// One genus row k = 0..3g-1 by climbing the three-term recursions from the
// base <tau_0 tau_{3g-1}>_g = 1/(24^g g!).
inline std::vector<Rat> two_point_row_linear(long g, bool literal_reading) {
    std::vector<Rat> row(static_cast<size_t>(3 * g), Rat(0));
    Rat base = one_point_correlator(g);
    row[0] = base;
    for (long k = 1; k <= 3 * g - 1; ++k) {
        long j, lead;
        Rat second, rhs;
        switch (k % 3) {
            case 1:
                j = k / 3;
                lead = 6 * j + 3;
                second = literal_reading ? Rat(-1) : Rat(6 * g - 1 - 6 * j);
                rhs = Rat(-2) * base * Rat(binomial(g - 1, j));
                break;
            case 2:
                j = k / 3;
                lead = 6 * j + 5;
                second = literal_reading ? Rat(-3) : Rat(6 * g - 3 - 6 * j);
                rhs = Rat(2) * base * Rat(binomial(g - 1, j));
                break;
            default:
                j = k / 3;
                lead = 6 * j + 1;
                second = literal_reading ? Rat(1) : Rat(6 * g + 1 - 6 * j);
                rhs = base * Rat(binomial(g, j)) * Rat(g - 2 * j, g);
                break;
        }
        row[static_cast<size_t>(k)] = (second * row[static_cast<size_t>(k - 1)] + rhs) / Rat(lead);
    }
    return row;
}

inline bool two_point_rows_valid(const std::function<std::vector<Rat>(long)>& row_of) {
    auto r1 = row_of(1);
    if (r1[1] != Rat(1, 24)) return false;
    auto r2 = row_of(2);
    if (r2[1] != Rat(1, 384) || r2[2] != Rat(29, 5760)) return false;
    for (const auto& [g, expected] : two_point_sum_reference()) {
        auto row = row_of(g);
        Rat sum = 0;
        for (const Rat& v : row) sum += v;
        if (sum != expected) return false;
    }
    return true;
}

struct two_point_engine {
    TwoPointBackend backend;
    std::vector<std::vector<Rat>> rows;  // rows[g], lazily extended
    std::mutex mtx;

    two_point_engine() {
        if (two_point_rows_valid([](long g) { return two_point_row_linear(g, true); }))
            backend = TwoPointBackend::zograf_literal;
        else if (two_point_rows_valid([](long g) { return two_point_row_linear(g, false); }))
            backend = TwoPointBackend::zograf_g_reading;
        else
            backend = TwoPointBackend::general_recursion;
    }

    static two_point_engine& instance() {
        static two_point_engine e;
        return e;
    }

    Rat value(long g, long k) {
        if (g < 1) throw math_error("two_point: g must be >= 1");
        if (k < 0 || k > 3 * g - 1) throw math_error("two_point: index out of range");
        std::lock_guard<std::mutex> lock(mtx);
        while ((long)rows.size() <= g) {
            long gg = (long)rows.size();
            if (gg == 0) {
                rows.push_back({});
                continue;
            }
            if (backend == TwoPointBackend::general_recursion) {
                std::vector<Rat> row(static_cast<size_t>(3 * gg));
                for (long kk = 0; kk <= 3 * gg - 1; ++kk)
                    row[static_cast<size_t>(kk)] =
                        correlator(gg, {(int)kk, (int)(3 * gg - 1 - kk)});
                rows.push_back(std::move(row));
            } else {
                rows.push_back(two_point_row_linear(gg, backend == TwoPointBackend::zograf_literal));
            }
        }
        return rows[static_cast<size_t>(g)][static_cast<size_t>(k)];
    }
};

}  // namespace detail

/// <tau_k tau_{3g-1-k}>_g.
inline Rat two_point_correlator(long g, long k) { return detail::two_point_engine::instance().value(g, k); }

inline TwoPointBackend two_point_backend() { return detail::two_point_engine::instance().backend; }

inline std::string two_point_backend_description() {
    switch (two_point_backend()) {
        case TwoPointBackend::zograf_literal:
            return "three-term recursion, literal second coefficients";
        case TwoPointBackend::zograf_g_reading:
            return "three-term recursion, genus-corrected second coefficients";
        default:
            return "general recursion fallback";
    }
}

/// sum_{k=0}^{3g-1} <tau_k tau_{3g-1-k}>_g.
inline Rat sum_two_correlators(long g) {
    if (g < 1) throw math_error("sum_two_correlators: g must be >= 1");
    Rat sum = 0;
    for (long k = 0; k <= 3 * g - 1; ++k) sum += two_point_correlator(g, k);
    return sum;
}

/// <tau_0^n tau_{d1} tau_{3g-1+n-d1}>_g reduced to 2-correlators (binomial
/// closed form in genus 0).
inline Rat string_reduce(long g, long n, long d1) {
    if (g < 0 || n < 0) throw math_error("string_reduce: bad parameters");
    if (g == 0) {
        if (d1 < 0 || n - 1 - d1 < 0) return Rat(0);
        return Rat(binomial(n - 1, d1));
    }
    Rat sum = 0;
    long lo = std::max(0L, d1 - 3 * g + 1);
    long hi = std::min(d1, n);
    for (long i = lo; i <= hi; ++i) {
        long k = d1 - i;
        if (k < 0 || k > 3 * g - 1) continue;
        sum += Rat(binomial(n, i)) * two_point_correlator(g, k);
    }
    return sum;
}

}  // namespace meanders

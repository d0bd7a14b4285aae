#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <thread>
#include <tuple>
#include <vector>

#include "meanders/rational.hpp"

namespace meanders {

// Topological class of an enumerated square-tiled surface. mu holds the
// positive zero orders; simple poles are counted by n_bigons.
struct SurfaceClass {
    int genus = 0;
    int n_bigons = 0;
    std::vector<int> mu;  // sorted ascending
    bool single_h = true;
    bool single_v = false;
    bool orientable = false;

    bool operator<(const SurfaceClass& o) const {
        auto key = [](const SurfaceClass& s) {
            return std::make_tuple(s.genus, s.n_bigons, s.mu, s.single_h, s.single_v, s.orientable);
        };
        return key(*this) < key(o);
    }
    bool operator==(const SurfaceClass& o) const {
        return genus == o.genus && n_bigons == o.n_bigons && mu == o.mu && single_h == o.single_h &&
               single_v == o.single_v && orientable == o.orientable;
    }
};

struct ClassTally {
    unsigned long long raw = 0;      // band presentations (no quotient)
    unsigned long long orbits = 0;   // surfaces up to isomorphism
    unsigned long long labeled = 0;  // surfaces with labeled singularities
};

using ClassMap = std::map<SurfaceClass, ClassTally>;

struct OracleBudget {
    long max_abelian_squares = 11;
    long max_quadratic_width = 9;
    int workers = 1;
};

namespace oracle_detail {

// Flat union-find on small arrays, path halving.
struct flat_uf {
    int parent[64];
    int size[64];
    void init(int n) {
        for (int i = 0; i < n; ++i) {
            parent[i] = i;
            size[i] = 1;
        }
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return true;
    }
};

inline unsigned long long factorial_u64(int n) {
    unsigned long long r = 1;
    for (int i = 2; i <= n; ++i) r *= (unsigned long long)i;
    return r;
}

// ---------------------------------------------------------------------------
// Abelian one-band surfaces: h is the standard k-cycle, v runs over S_k.
// ---------------------------------------------------------------------------

struct abelian_profile {
    int genus;
    std::vector<int> mu;        // zero orders (cycle length - 1 for cycles >= 2)
    std::vector<std::vector<int>> zero_cycles;
    bool single_v;
};

inline abelian_profile abelian_classify(const int* v, int k, bool want_cycles) {
    int vinv[16];
    for (int x = 0; x < k; ++x) vinv[v[x]] = x;
    abelian_profile pr;
    // commutator c = h v h^-1 v^-1 with h(x) = x+1 mod k
    int c[16];
    for (int x = 0; x < k; ++x) {
        int y = vinv[x];
        y = (y + k - 1) % k;
        c[x] = (v[y] + 1) % k;
    }
    bool seen[16] = {};
    int cycles = 0;
    for (int x = 0; x < k; ++x) {
        if (seen[x]) continue;
        ++cycles;
        int len = 0;
        std::vector<int> cyc;
        for (int y = x; !seen[y]; y = c[y]) {
            seen[y] = true;
            ++len;
            if (want_cycles) cyc.push_back(y);
        }
        if (len >= 2) {
            pr.mu.push_back(len - 1);
            if (want_cycles) pr.zero_cycles.push_back(std::move(cyc));
        }
    }
    int chi = cycles - k;  // V - E + F with E = 2k, F = k
    pr.genus = (2 - chi) / 2;
    if ((2 - chi) % 2 != 0 || pr.genus < 0) throw math_error("abelian_classify: Euler characteristic violation");
    std::sort(pr.mu.begin(), pr.mu.end());
    long musum = 0;
    for (int m : pr.mu) musum += m;
    if (musum != 2 * pr.genus - 2) throw math_error("abelian_classify: cone angle bookkeeping violation");
    // single vertical band <=> v is a k-cycle
    bool seen2[16] = {};
    int vcycles = 0;
    for (int x = 0; x < k; ++x) {
        if (seen2[x]) continue;
        ++vcycles;
        for (int y = x; !seen2[y]; y = v[y]) seen2[y] = true;
    }
    pr.single_v = (vcycles == 1);
    return pr;
}

inline SurfaceClass abelian_class_key(const abelian_profile& pr) {
    SurfaceClass sc;
    sc.genus = pr.genus;
    sc.n_bigons = 0;
    sc.mu = pr.mu;
    sc.single_h = true;
    sc.single_v = pr.single_v;
    sc.orientable = true;
    return sc;
}

}  // namespace oracle_detail

/// Exhaustive census of Abelian one-horizontal-band square-tiled surfaces
/// with k unit squares. Orbit and labeled counts use orbit counting over the
/// cyclic relabeling group of the band.
inline ClassMap enumerate_abelian_one_band(long k, const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    if (k < 1) throw math_error("enumerate_abelian_one_band: k must be >= 1");
    if (k > budget.max_abelian_squares)
        throw resource_error("enumerate_abelian_one_band: k=" + std::to_string(k) +
                             " exceeds budget max_abelian_squares=" + std::to_string(budget.max_abelian_squares));
    if (k > 15) throw resource_error("enumerate_abelian_one_band: k > 15 unsupported");

    struct Acc {
        unsigned long long fix_total = 0;      // sum over group elements of fixed pairs
        unsigned long long fix_labeled = 0;    // ... with trivial action on zeros, times m!
        unsigned long long raw = 0;            // identity term alone
    };
    std::map<SurfaceClass, Acc> acc;

    // Identity term: all v in S_k.
    {
        std::vector<int> perm(static_cast<size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            abelian_profile pr = abelian_classify(perm.data(), (int)k, false);
            Acc& a = acc[abelian_class_key(pr)];
            a.raw += 1;
            a.fix_total += 1;
            a.fix_labeled += factorial_u64((int)pr.mu.size());
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    // Non-identity rotations: v must commute with h^j, i.e. v(x+j) = v(x)+j.
    for (long j = 1; j < k; ++j) {
        long d = std::gcd(j, k);
        // v is determined by its values on residues 0..d-1; the residues of
        // the chosen values must form a permutation of Z_d.
        std::vector<int> target(static_cast<size_t>(d));
        std::iota(target.begin(), target.end(), 0);
        do {
            long reps = 1;
            for (long i = 0; i < d; ++i) reps *= k / d;
            for (long code = 0; code < reps; ++code) {
                long c = code;
                int v[16];
                for (long r = 0; r < d; ++r) {
                    long off = c % (k / d);
                    c /= (k / d);
                    long val = target[static_cast<size_t>(r)] + off * d;
                    // propagate along the +j orbit of r
                    long x = r, y = val;
                    for (long t = 0; t < k / d; ++t) {
                        v[x] = (int)y;
                        x = (x + j) % k;
                        y = (y + j) % k;
                    }
                }
                abelian_profile pr = abelian_classify(v, (int)k, true);
                Acc& a = acc[abelian_class_key(pr)];
                a.fix_total += 1;
                bool trivial = true;
                for (const auto& cyc : pr.zero_cycles) {
                    std::vector<int> shifted;
                    shifted.reserve(cyc.size());
                    for (int x : cyc) shifted.push_back((int)((x + j) % k));
                    std::sort(shifted.begin(), shifted.end());
                    std::vector<int> orig = cyc;
                    std::sort(orig.begin(), orig.end());
                    if (shifted != orig) {
                        trivial = false;
                        break;
                    }
                }
                if (trivial) a.fix_labeled += factorial_u64((int)pr.mu.size());
            }
        } while (std::next_permutation(target.begin(), target.end()));
    }

    ClassMap out;
    for (auto& [key, a] : acc) {
        if (a.fix_total % k != 0 || a.fix_labeled % k != 0)
            throw math_error("enumerate_abelian_one_band: orbit count not integral");
        ClassTally t;
        t.raw = a.raw;
        t.orbits = a.fix_total / (unsigned long long)k;
        t.labeled = a.fix_labeled / (unsigned long long)k;
        out[key] = t;
    }
    return out;
}

/// Euler totient sums: the genus-1 single-band census in closed form.
inline Int totient_sum(long n) {
    std::vector<long> phi(static_cast<size_t>(n + 1));
    for (long i = 0; i <= n; ++i) phi[static_cast<size_t>(i)] = i;
    for (long i = 2; i <= n; ++i)
        if (phi[static_cast<size_t>(i)] == i)
            for (long j = i; j <= n; j += i) phi[static_cast<size_t>(j)] -= phi[static_cast<size_t>(j)] / i;
    Int s = 0;
    for (long i = 1; i <= n; ++i) s += phi[static_cast<size_t>(i)];
    return s;
}

/// Oriented meanders with at most N crossings on genus g: cumulative count
/// of doubly-single-band Abelian surfaces. Genus 1 reduces to totient sums.
inline Int count_oriented_meanders(long N, long g, const OracleBudget& budget = {}) {
    if (g < 1) throw math_error("count_oriented_meanders: g must be >= 1");
    if (g == 1) return totient_sum(N);
    if (N > budget.max_abelian_squares)
        throw resource_error("count_oriented_meanders: N exceeds max_abelian_squares budget");
    Int total = 0;
    for (long k = 1; k <= N; ++k)
        for (const auto& [key, tally] : enumerate_abelian_one_band(k, budget))
            if (key.genus == g && key.single_v) total += tally.orbits;
    return total;
}

// ---------------------------------------------------------------------------
// Quadratic one-band surfaces: fixed-point-free involutions on the 2w
// boundary edge slots of a circular 1 x w band. Slots 0..w-1 are the top
// edges, w..2w-1 the bottom edges.
// ---------------------------------------------------------------------------

namespace oracle_detail {

struct quad_profile {
    int genus;
    int n_bigons;
    std::vector<int> mu;
    bool single_v;
    bool orientable;
    std::vector<std::vector<int>> special_classes;  // point classes of size != 2
};

// Point ids: top point i -> i, bottom point i -> w + i. Top edge i runs from
// point i to point (i+1) mod w; same for bottom edges with the offset.
inline quad_profile quad_classify(const int* partner, int w, bool want_classes) {
    flat_uf pts;
    pts.init(2 * w);
    flat_uf squares;
    squares.init(w);
    bool orientable = true;
    for (int a = 0; a < 2 * w; ++a) {
        int b = partner[a];
        if (b < a) continue;
        bool atop = a < w, btop = b < w;
        int ia = atop ? a : a - w, ib = btop ? b : b - w;
        int base_a = atop ? 0 : w, base_b = btop ? 0 : w;
        if (atop == btop) {
            // same side: glue by half-turn
            orientable = false;
            pts.unite(base_a + ia, base_b + (ib + 1) % w);
            pts.unite(base_a + (ia + 1) % w, base_b + ib);
        } else {
            // opposite sides: glue by translation
            pts.unite(base_a + ia, base_b + ib);
            pts.unite(base_a + (ia + 1) % w, base_b + (ib + 1) % w);
        }
        squares.unite(ia, ib);
    }
    quad_profile pr;
    pr.orientable = orientable;
    int V = 0;
    pr.n_bigons = 0;
    for (int p = 0; p < 2 * w; ++p) {
        if (pts.find(p) != p) continue;
        ++V;
        int sz = pts.size[p];
        if (sz == 1) ++pr.n_bigons;
        if (sz >= 3) pr.mu.push_back(sz - 2);
    }
    int doubled = 2 + w - V;
    if (doubled % 2 != 0 || doubled < 0) throw math_error("quad_classify: Euler characteristic violation");
    pr.genus = doubled / 2;
    long excess = 0;
    for (int m : pr.mu) excess += m;
    if (excess - pr.n_bigons != 4 * pr.genus - 4) throw math_error("quad_classify: cone angle bookkeeping violation");
    std::sort(pr.mu.begin(), pr.mu.end());
    int comps = 0;
    for (int s = 0; s < w; ++s)
        if (squares.find(s) == s) ++comps;
    pr.single_v = (comps == 1);
    if (want_classes) {
        std::map<int, std::vector<int>> by_root;
        for (int p = 0; p < 2 * w; ++p) by_root[pts.find(p)].push_back(p);
        for (auto& [root, members] : by_root)
            if (members.size() != 2) pr.special_classes.push_back(members);
    }
    return pr;
}

inline SurfaceClass quad_class_key(const quad_profile& pr) {
    SurfaceClass sc;
    sc.genus = pr.genus;
    sc.n_bigons = pr.n_bigons;
    sc.mu = pr.mu;
    sc.single_h = true;
    sc.single_v = pr.single_v;
    sc.orientable = pr.orientable;
    return sc;
}

template <typename Leaf>
inline void enumerate_involutions(int nslots, int first_partner_lo, int first_partner_hi, Leaf&& leaf) {
    std::vector<int> partner(static_cast<size_t>(nslots), -1);
    std::function<void()> rec = [&]() {
        int a = -1;
        for (int i = 0; i < nslots; ++i)
            if (partner[i] < 0) {
                a = i;
                break;
            }
        if (a < 0) {
            leaf(partner.data());
            return;
        }
        bool top_level = (a == 0);
        for (int b = a + 1; b < nslots; ++b) {
            if (partner[b] >= 0) continue;
            if (top_level && (b < first_partner_lo || b > first_partner_hi)) continue;
            partner[a] = b;
            partner[b] = a;
            rec();
            partner[a] = -1;
            partner[b] = -1;
        }
    };
    rec();
}

// The band relabeling group: rotations and half-turn flips, 2w elements.
// flip t: top edge i -> bottom edge (t - 1 - i mod w); points i -> (t - i mod w).
struct band_symmetry {
    int w;
    bool flip;
    int t;

    int apply_slot(int s) const {
        bool top = s < w;
        int i = top ? s : s - w;
        if (!flip) return (top ? 0 : w) + (i + t) % w;
        int j = ((t - 1 - i) % w + w) % w;
        return (top ? w : 0) + j;
    }
    int apply_point(int p) const {
        bool top = p < w;
        int i = top ? p : p - w;
        if (!flip) return (top ? 0 : w) + (i + t) % w;
        int j = ((t - i) % w + w) % w;
        return (top ? w : 0) + j;
    }
};

// Involutions commuting with a given symmetry, by orbit propagation.
template <typename Leaf>
inline void enumerate_equivariant_involutions(int w, const band_symmetry& sym, Leaf&& leaf) {
    int n = 2 * w;
    std::vector<int> partner(static_cast<size_t>(n), -1);
    std::vector<int> touched;
    std::function<void()> rec = [&]() {
        int a = -1;
        for (int i = 0; i < n; ++i)
            if (partner[i] < 0) {
                a = i;
                break;
            }
        if (a < 0) {
            leaf(partner.data());
            return;
        }
        for (int b = 0; b < n; ++b) {
            if (b == a || partner[b] >= 0) continue;
            size_t mark = touched.size();
            bool ok = true;
            int x = a, y = b;
            do {
                if (x == y) {
                    ok = false;
                    break;
                }
                if (partner[x] >= 0 || partner[y] >= 0) {
                    ok = (partner[x] == y && partner[y] == x);
                    break;
                }
                partner[x] = y;
                partner[y] = x;
                touched.push_back(x);
                touched.push_back(y);
                x = sym.apply_slot(x);
                y = sym.apply_slot(y);
            } while (x != a);
            if (ok) rec();
            while (touched.size() > mark) {
                partner[touched.back()] = -1;
                touched.pop_back();
            }
        }
    };
    rec();
}

}  // namespace oracle_detail

/// Exhaustive census of quadratic one-horizontal-band square-tiled surfaces
/// with w squares. `raw` counts band presentations (this is the meander
/// normalization), `labeled` counts surfaces with labeled zeros and poles.
inline ClassMap enumerate_quadratic_band(long w, const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    if (w < 1) throw math_error("enumerate_quadratic_band: w must be >= 1");
    if (w > budget.max_quadratic_width)
        throw resource_error("enumerate_quadratic_band: w=" + std::to_string(w) +
                             " exceeds budget max_quadratic_width=" + std::to_string(budget.max_quadratic_width));
    if (w > 15) throw resource_error("enumerate_quadratic_band: w > 15 unsupported");

    const int nslots = (int)(2 * w);
    int nworkers = std::max(1, budget.workers);
    nworkers = std::min<int>(nworkers, nslots - 1);
    std::vector<ClassMap> partial(static_cast<size_t>(nworkers));
    std::atomic<int> next_chunk{0};

    auto work = [&](int wi) {
        ClassMap& local = partial[static_cast<size_t>(wi)];
        for (;;) {
            int b = next_chunk.fetch_add(1) + 1;  // slot 0 pairs with b
            if (b >= nslots) break;
            enumerate_involutions(nslots, b, b, [&](const int* partner) {
                quad_profile pr = quad_classify(partner, (int)w, false);
                local[quad_class_key(pr)].raw += 1;
            });
        }
    };
    if (nworkers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (int i = 0; i < nworkers; ++i) threads.emplace_back(work, i);
        for (auto& t : threads) t.join();
    }
    ClassMap out;
    for (const auto& m : partial)
        for (const auto& [key, tally] : m) out[key].raw += tally.raw;

    // Labeled counts: orbit counting over the 2w band symmetries acting on
    // (pairing, labeling of zeros and poles).
    std::map<SurfaceClass, unsigned long long> fix_labeled;
    for (const auto& [key, tally] : out)
        fix_labeled[key] +=
            tally.raw * factorial_u64((int)key.mu.size()) * factorial_u64(key.n_bigons);
    for (int flip = 0; flip <= 1; ++flip) {
        for (int t = 0; t < w; ++t) {
            if (!flip && t == 0) continue;  // identity already counted
            band_symmetry sym{(int)w, flip == 1, t};
            enumerate_equivariant_involutions((int)w, sym, [&](const int* partner) {
                quad_profile pr = quad_classify(partner, (int)w, true);
                for (const auto& cls : pr.special_classes) {
                    std::vector<int> mapped;
                    mapped.reserve(cls.size());
                    for (int p : cls) mapped.push_back(sym.apply_point(p));
                    std::sort(mapped.begin(), mapped.end());
                    if (mapped != cls) return;  // moves a labeled singularity
                }
                fix_labeled[quad_class_key(pr)] +=
                    factorial_u64((int)pr.mu.size()) * factorial_u64(pr.n_bigons);
            });
        }
    }
    for (auto& [key, total] : fix_labeled) {
        if (total % (unsigned long long)(2 * w) != 0)
            throw math_error("enumerate_quadratic_band: labeled orbit count not integral");
        out[key].labeled = total / (unsigned long long)(2 * w);
    }
    return out;
}

struct SampledClassCount {
    double estimate = 0;   // estimated number of band presentations
    double ci95_low = 0;
    double ci95_high = 0;
    unsigned long long hits = 0;
};

/// Uniform sampling over pairings for widths beyond the exhaustive budget.
inline std::map<SurfaceClass, SampledClassCount> sample_quadratic_band(long w, long samples,
                                                                       std::uint64_t seed) {
    using namespace oracle_detail;
    if (w < 1 || w > 31) throw math_error("sample_quadratic_band: w out of range");
    if (samples < 1) throw math_error("sample_quadratic_band: need at least one sample");
    std::mt19937_64 rng(seed);
    const int n = (int)(2 * w);
    std::vector<int> free_slots(static_cast<size_t>(n));
    std::vector<int> partner(static_cast<size_t>(n));
    std::map<SurfaceClass, unsigned long long> hits;
    for (long s = 0; s < samples; ++s) {
        std::iota(free_slots.begin(), free_slots.end(), 0);
        int m = n;
        while (m > 0) {
            std::uniform_int_distribution<int> pick(1, m - 1);
            int bi = pick(rng);
            int a = free_slots[0];
            int b = free_slots[static_cast<size_t>(bi)];
            partner[static_cast<size_t>(a)] = b;
            partner[static_cast<size_t>(b)] = a;
            free_slots[static_cast<size_t>(bi)] = free_slots[static_cast<size_t>(m - 1)];
            free_slots[0] = free_slots[static_cast<size_t>(m - 2)];
            m -= 2;
        }
        quad_profile pr = quad_classify(partner.data(), (int)w, false);
        hits[quad_class_key(pr)] += 1;
    }
    double total = 1;  // (2w-1)!!
    for (int i = 3; i <= n - 1; i += 2) total *= i;
    std::map<SurfaceClass, SampledClassCount> out;
    for (const auto& [key, h] : hits) {
        SampledClassCount c;
        c.hits = h;
        double p = (double)h / (double)samples;
        double se = std::sqrt(std::max(0.0, p * (1 - p) / (double)samples));
        c.estimate = p * total;
        c.ci95_low = std::max(0.0, (p - 1.96 * se)) * total;
        c.ci95_high = (p + 1.96 * se) * total;
        out[key] = c;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Genus-0, four-pole bands of arbitrary width: both boundary matchings are
// noncrossing with all point classes of size at most two. Used for the
// lattice-point volume check where exhaustive enumeration cannot reach.
// ---------------------------------------------------------------------------

namespace oracle_detail {

// All noncrossing matchings of the w cyclic edges of one boundary circle
// whose point classes are poles and regular points only (no zeros). Class
// sizes only grow, so any union creating a class of three points kills the
// branch immediately; this keeps the search polynomial despite the Catalan
// number of unrestricted matchings.
inline std::vector<std::vector<int>> pole_regular_matchings(int w) {
    std::vector<std::vector<int>> out;
    if (w <= 0 || w % 2 != 0) return out;
    std::vector<int> match(static_cast<size_t>(w), -1);
    std::vector<int> stack;
    struct state {
        std::vector<int> parent, size;
    };
    auto find = [](state& s, int x) {
        while (s.parent[static_cast<size_t>(x)] != x) {
            s.parent[static_cast<size_t>(x)] = s.parent[static_cast<size_t>(s.parent[static_cast<size_t>(x)])];
            x = s.parent[static_cast<size_t>(x)];
        }
        return x;
    };
    // returns the size of the merged class
    auto unite = [&find](state& s, int a, int b) {
        a = find(s, a);
        b = find(s, b);
        if (a == b) return s.size[static_cast<size_t>(a)];
        if (s.size[static_cast<size_t>(a)] < s.size[static_cast<size_t>(b)]) std::swap(a, b);
        s.parent[static_cast<size_t>(b)] = a;
        s.size[static_cast<size_t>(a)] += s.size[static_cast<size_t>(b)];
        return s.size[static_cast<size_t>(a)];
    };
    state st;
    st.parent.resize(static_cast<size_t>(w));
    st.size.assign(static_cast<size_t>(w), 1);
    std::iota(st.parent.begin(), st.parent.end(), 0);
    std::function<void(int, const state&)> rec = [&](int pos, const state& cur) {
        if (pos == w) {
            if (stack.empty()) out.push_back(match);
            return;
        }
        // close the innermost open arc with edge pos
        if (!stack.empty()) {
            int a = stack.back();
            int b = pos;
            state next = cur;
            bool alive = unite(next, a, (b + 1) % w) <= 2;
            alive = alive && unite(next, (a + 1) % w, b) <= 2;
            if (alive) {
                match[static_cast<size_t>(a)] = b;
                match[static_cast<size_t>(b)] = a;
                stack.pop_back();
                rec(pos + 1, next);
                stack.push_back(a);
                match[static_cast<size_t>(a)] = -1;
                match[static_cast<size_t>(b)] = -1;
            }
        }
        // open a new arc at edge pos if enough edges remain to close all
        if ((int)stack.size() + 1 <= w - pos - 1) {
            stack.push_back(pos);
            rec(pos + 1, cur);
            stack.pop_back();
        }
    };
    rec(0, st);
    return out;
}

}  // namespace oracle_detail

/// Number of width-w band presentations of four-pole genus-zero surfaces.
inline unsigned long long band04_raw(long w) {
    auto side = oracle_detail::pole_regular_matchings((int)w);
    return (unsigned long long)side.size() * (unsigned long long)side.size();
}

/// Same surfaces counted with the four poles labeled.
inline unsigned long long band04_labeled(long w) {
    using namespace oracle_detail;
    auto side = pole_regular_matchings((int)w);
    if (side.empty()) return 0;
    const int iw = (int)w;

    auto poles_of_side = [&](const std::vector<int>& m) {
        std::vector<int> poles;
        flat_uf uf;
        uf.init(iw);
        for (int a = 0; a < iw; ++a) {
            int b = m[static_cast<size_t>(a)];
            if (b < a) continue;
            uf.unite(a, (b + 1) % iw);
            uf.unite((a + 1) % iw, b);
        }
        for (int p = 0; p < iw; ++p)
            if (uf.find(p) == p && uf.size[p] == 1) poles.push_back(p);
        return poles;
    };

    std::vector<std::vector<int>> sorted_side = side;
    std::sort(sorted_side.begin(), sorted_side.end());
    unsigned long long fix_total = 24ull * side.size() * side.size();  // identity

    // Rotations: both sides must be invariant; a pole then moves by t, so
    // only t = 0 could fix labels. Flips exchange top and bottom poles.
    // Both facts are rechecked here rather than assumed.
    for (int t = 1; t < iw; ++t) {
        std::vector<const std::vector<int>*> fixed;
        for (const auto& m : side) {
            bool inv = true;
            for (int i = 0; i < iw && inv; ++i)
                inv = m[static_cast<size_t>((i + t) % iw)] == (m[static_cast<size_t>(i)] + t) % iw;
            if (inv) fixed.push_back(&m);
        }
        unsigned long long good = 0;
        for (const auto* top : fixed) {
            auto poles = poles_of_side(*top);
            bool trivial = true;
            for (int p : poles)
                if ((p + t) % iw != p) trivial = false;
            if (trivial) ++good;
        }
        fix_total += 24ull * good * good;
    }
    for (int t = 0; t < iw; ++t) {
        // flip: top edge i -> bottom edge f(i); fixed pairs are (A, f(A)),
        // and every label sits on a pole that changes side.
        auto f = [&](int i) { return ((t - 1 - i) % iw + iw) % iw; };
        for (const auto& top : side) {
            std::vector<int> mapped(static_cast<size_t>(iw));
            for (int i = 0; i < iw; ++i) mapped[static_cast<size_t>(f(i))] = f(top[static_cast<size_t>(i)]);
            if (!std::binary_search(sorted_side.begin(), sorted_side.end(), mapped)) continue;
            // top poles map to bottom points, so labels always move
            if (!poles_of_side(top).empty()) continue;
            fix_total += 24;
        }
    }
    if (fix_total % (unsigned long long)(2 * w) != 0)
        throw math_error("band04_labeled: orbit count not integral");
    return fix_total / (unsigned long long)(2 * w);
}

/// Volume estimator 2d * count / N^d; the quadratic convention counts
/// surfaces with at most 2N squares while normalizing by N^d.
inline double volume_estimate(const Int& cumulative_count, long d, long N) {
    if (N < 1 || d < 1) throw math_error("volume_estimate: bad parameters");
    double c = cumulative_count.convert_to<double>();
    return 2.0 * (double)d * c / std::pow((double)N, (double)d);
}

}  // namespace meanders

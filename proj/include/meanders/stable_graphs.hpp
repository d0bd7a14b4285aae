#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "meanders/pi_value.hpp"
#include "meanders/volume_poly.hpp"

namespace meanders {

// Decorated dual graph of a multicurve: vertex decorations (genus, leg
// count) and an edge multiset with loops on the diagonal. Legs are carried
// as counts only; the volume sum restores the labeled-pole multiplicity.
struct StableGraph {
    std::vector<std::pair<int, int>> vertices;  // (genus g_v, legs l_v)
    std::vector<std::vector<int>> adj;          // symmetric, adj[v][v] = loop count

    long num_vertices() const { return (long)vertices.size(); }
    long num_edges() const {
        long e = 0;
        for (size_t i = 0; i < adj.size(); ++i)
            for (size_t j = i; j < adj.size(); ++j) e += adj[i][j];
        return e;
    }
    long degree(long v) const {
        long d = adj[v][v];  // loops count twice
        for (size_t j = 0; j < adj.size(); ++j) d += adj[v][j];
        return d;
    }
    long valence(long v) const { return vertices[v].second + degree(v); }
    long total_genus() const {
        long sg = 0;
        for (auto& [gv, lv] : vertices) sg += gv;
        return sg + num_edges() - num_vertices() + 1;
    }
    long total_legs() const {
        long n = 0;
        for (auto& [gv, lv] : vertices) n += lv;
        return n;
    }
};

namespace detail {

inline std::vector<int> encode_with_perm(const StableGraph& g, const std::vector<int>& perm) {
    // perm[new_index] = old_index; assumes decorations invariant under perm.
    std::vector<int> code;
    long V = g.num_vertices();
    code.reserve(static_cast<size_t>(2 * V + V * (V + 1) / 2));
    for (long i = 0; i < V; ++i) {
        code.push_back(g.vertices[perm[i]].first);
        code.push_back(g.vertices[perm[i]].second);
    }
    for (long i = 0; i < V; ++i)
        for (long j = i; j < V; ++j) code.push_back(g.adj[perm[i]][perm[j]]);
    return code;
}

// Visit all vertex permutations preserving the (genus, legs) decoration
// multiset. Vertices must already be sorted by decoration.
template <typename F>
inline void for_each_decoration_perm(const StableGraph& g, F&& f) {
    long V = g.num_vertices();
    std::vector<std::pair<long, long>> blocks;  // [begin, end)
    long b = 0;
    for (long i = 1; i <= V; ++i) {
        if (i == V || g.vertices[i] != g.vertices[b]) {
            blocks.emplace_back(b, i);
            b = i;
        }
    }
    std::vector<int> perm(static_cast<size_t>(V));
    for (long i = 0; i < V; ++i) perm[i] = (int)i;
    std::function<void(size_t)> rec = [&](size_t bi) {
        if (bi == blocks.size()) {
            f(perm);
            return;
        }
        auto [lo, hi] = blocks[bi];
        std::sort(perm.begin() + lo, perm.begin() + hi);
        do {
            rec(bi + 1);
        } while (std::next_permutation(perm.begin() + lo, perm.begin() + hi));
    };
    rec(0);
}

inline std::vector<int> canonical_encoding(const StableGraph& g) {
    std::vector<int> best;
    for_each_decoration_perm(g, [&](const std::vector<int>& perm) {
        std::vector<int> code = encode_with_perm(g, perm);
        if (best.empty() || code < best) best = std::move(code);
    });
    return best;
}

struct dsu {
    std::vector<int> p;
    explicit dsu(long n) : p(static_cast<size_t>(n)) {
        for (long i = 0; i < n; ++i) p[i] = (int)i;
    }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace detail

/// Order of the automorphism group: decoration-preserving vertex bijections
/// that fix the edge multiset, times parallel-edge permutations, times the
/// half-edge swap of every loop.
inline Int aut_order(const StableGraph& g) {
    long V = g.num_vertices();
    StableGraph sorted = g;
    std::vector<int> order(static_cast<size_t>(V));
    for (long i = 0; i < V; ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return g.vertices[a] < g.vertices[b]; });
    sorted.vertices.clear();
    for (int o : order) sorted.vertices.push_back(g.vertices[o]);
    sorted.adj.assign(static_cast<size_t>(V), std::vector<int>(static_cast<size_t>(V), 0));
    for (long i = 0; i < V; ++i)
        for (long j = 0; j < V; ++j) sorted.adj[i][j] = g.adj[order[i]][order[j]];

    long vertex_perms = 0;
    detail::for_each_decoration_perm(sorted, [&](const std::vector<int>& perm) {
        for (long i = 0; i < V; ++i)
            for (long j = i; j < V; ++j)
                if (sorted.adj[perm[i]][perm[j]] != sorted.adj[i][j]) return;
        ++vertex_perms;
    });
    Int result = vertex_perms;
    for (long i = 0; i < V; ++i) {
        result *= factorial(sorted.adj[i][i]);
        result <<= static_cast<unsigned>(sorted.adj[i][i]);
        for (long j = i + 1; j < V; ++j) result *= factorial(sorted.adj[i][j]);
    }
    return result;
}

/// All isomorphism classes of stable graphs of genus g with n (unlabeled)
/// legs; one canonical representative per class.
inline std::vector<StableGraph> enumerate_stable_graphs(long g, long n) {
    if (2 * g + n < 4) throw math_error("enumerate_stable_graphs: need 2g+n >= 4");
    std::vector<StableGraph> out;
    std::set<std::vector<int>> seen;

    long max_v = 2 * g - 2 + n;
    for (long V = 1; V <= max_v; ++V) {
        // Non-increasing decoration sequences (g_v, l_v).
        std::vector<std::pair<int, int>> decor(static_cast<size_t>(V));
        std::function<void(long, long, long)> choose = [&](long idx, long gens_left, long legs_left) {
            if (idx == V) {
                if (legs_left != 0) return;
                long E = gens_left + V - 1;  // gens_left = g - sum g_v = first Betti number
                if (E < 0) return;
                // Adjacency backtracking, row-major over the upper triangle.
                StableGraph cur;
                cur.vertices = decor;
                cur.adj.assign(static_cast<size_t>(V), std::vector<int>(static_cast<size_t>(V), 0));
                std::vector<long> deg(static_cast<size_t>(V), 0);
                std::function<void(long, long, long)> fill = [&](long i, long j, long used) {
                    if (i == V) {
                        if (used != E) return;
                        detail::dsu uf(V);
                        for (long a = 0; a < V; ++a)
                            for (long b = a + 1; b < V; ++b)
                                if (cur.adj[a][b] > 0) uf.unite((int)a, (int)b);
                        for (long a = 1; a < V; ++a)
                            if (uf.find((int)a) != uf.find(0)) return;
                        std::vector<int> code = detail::canonical_encoding(cur);
                        if (seen.insert(code).second) {
                            // Store the canonical representative.
                            StableGraph canon = cur;
                            detail::for_each_decoration_perm(cur, [&](const std::vector<int>& perm) {
                                if (detail::encode_with_perm(cur, perm) == code) {
                                    for (long a = 0; a < V; ++a)
                                        for (long b = 0; b < V; ++b)
                                            canon.adj[a][b] = cur.adj[perm[a]][perm[b]];
                                }
                            });
                            out.push_back(canon);
                        }
                        return;
                    }
                    if (j == V) {
                        // Row i complete: degree of vertex i is final.
                        if (2 * decor[i].first - 2 + decor[i].second + deg[i] < 1) return;
                        if (V > 1 && deg[i] == 0) return;
                        // Components confined to 0..i with no cross edge are dead.
                        if (i < V - 1) {
                            detail::dsu uf(V);
                            for (long a = 0; a <= i; ++a)
                                for (long b = a + 1; b < V; ++b)
                                    if (cur.adj[a][b] > 0) uf.unite((int)a, (int)b);
                            std::vector<char> open(static_cast<size_t>(V), 0);
                            for (long a = i + 1; a < V; ++a) open[uf.find((int)a)] = 1;
                            for (long a = 0; a <= i; ++a)
                                if (!open[uf.find((int)a)]) return;
                        }
                        // Degree demand of the remaining vertices.
                        long demand = 0;
                        for (long a = i + 1; a < V; ++a) {
                            long need = std::max<long>(1 - (2 * decor[a].first - 2 + decor[a].second),
                                                       V > 1 ? 1 : 0);
                            demand += std::max<long>(0, need - deg[a]);
                        }
                        if (2 * (E - used) < demand) return;
                        fill(i + 1, i + 1, used);
                        return;
                    }
                    long room = E - used;
                    for (long m = 0; m <= room; ++m) {
                        cur.adj[i][j] = (int)m;
                        cur.adj[j][i] = (int)m;
                        if (i == j) {
                            deg[i] += 2 * m;  // a loop contributes two half-edges
                        } else {
                            deg[i] += m;
                            deg[j] += m;
                        }
                        fill(i, j + 1, used + m);
                        if (i == j) {
                            deg[i] -= 2 * m;
                        } else {
                            deg[i] -= m;
                            deg[j] -= m;
                        }
                        cur.adj[i][j] = 0;
                        cur.adj[j][i] = 0;
                    }
                };
                fill(0, 0, 0);
                return;
            }
            std::pair<int, int> cap =
                idx == 0 ? std::make_pair((int)g, (int)n) : decor[static_cast<size_t>(idx - 1)];
            for (int gv = cap.first; gv >= 0; --gv) {
                if (gv > gens_left) continue;
                int lmax = (gv == cap.first) ? cap.second : (int)legs_left;
                for (int lv = std::min<int>(lmax, (int)legs_left); lv >= 0; --lv) {
                    decor[static_cast<size_t>(idx)] = {gv, lv};
                    choose(idx + 1, gens_left - gv, legs_left - lv);
                }
            }
        };
        choose(0, g, n);
    }
    return out;
}

inline std::string to_string(const StableGraph& g) {
    std::ostringstream os;
    os << "V[";
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        if (i) os << ",";
        os << "(" << g.vertices[i].first << "," << g.vertices[i].second << ")";
    }
    os << "] E[";
    bool first = true;
    for (size_t i = 0; i < g.adj.size(); ++i)
        for (size_t j = i; j < g.adj.size(); ++j)
            if (g.adj[i][j] > 0) {
                if (!first) os << ",";
                first = false;
                os << i << "-" << j << "x" << g.adj[i][j];
            }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// P_Gamma and the volume sum.
// ---------------------------------------------------------------------------

namespace detail {

struct edge_list {
    std::vector<std::pair<int, int>> edges;  // one entry per physical edge
    static edge_list build(const StableGraph& g) {
        edge_list el;
        for (size_t i = 0; i < g.adj.size(); ++i)
            for (size_t j = i; j < g.adj.size(); ++j)
                for (int m = 0; m < g.adj[i][j]; ++m) el.edges.emplace_back((int)i, (int)j);
        return el;
    }
};

// N_{g_v, n_v} with legs set to zero and edge slots routed to their edge
// variables, computed term by term without materializing the full N poly.
inline EdgePolynomial vertex_poly_evaluated(const StableGraph& g, long v, const edge_list& el) {
    std::vector<int> slot_edge;  // edge index per slot; loops contribute two slots
    for (size_t e = 0; e < el.edges.size(); ++e) {
        auto [a, b] = el.edges[e];
        if (a == v) slot_edge.push_back((int)e);
        if (b == v) slot_edge.push_back((int)e);
    }
    long legs = g.vertices[v].second;
    long gv = g.vertices[v].first;
    long nv = (long)slot_edge.size() + legs;
    long dim = 3 * gv - 3 + nv;
    Rat norm = pow2(5 * gv - 6 + 2 * nv);

    EdgePolynomial out;
    for_each_composition(dim, (long)slot_edge.size(), [&](const std::vector<int>& comp) {
        std::vector<int> full = comp;
        full.insert(full.end(), static_cast<size_t>(legs), 0);
        Rat corr = correlator(gv, full);
        if (corr == 0) return;
        Int dfact = 1;
        for (int x : comp) dfact *= factorial(x);
        std::vector<int> exps(el.edges.size(), 0);
        for (size_t s = 0; s < comp.size(); ++s) exps[static_cast<size_t>(slot_edge[s])] += comp[s];
        out[exps] += corr / (norm * Rat(dfact));
    });
    return out;
}

inline EdgePolynomial poly_mul(const EdgePolynomial& a, const EdgePolynomial& b) {
    EdgePolynomial out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out[e] += ca * cb;
        }
    return out;
}

}  // namespace detail

/// P_Gamma as a polynomial in the edge variables with the global prefactor
/// folded in. Exponents here are the actual (odd) ones.
inline EdgePolynomial p_gamma(const StableGraph& graph, long g, long n) {
    auto el = detail::edge_list::build(graph);
    EdgePolynomial prod{{std::vector<int>(el.edges.size(), 0), Rat(1)}};
    for (long v = 0; v < graph.num_vertices(); ++v)
        prod = detail::poly_mul(prod, detail::vertex_poly_evaluated(graph, v, el));

    Rat prefactor = pow2(6 * g - 5 + 2 * n) * Rat(factorial(4 * g - 4 + n), factorial(6 * g - 7 + 2 * n));
    prefactor /= pow2(graph.num_vertices() - 1);
    prefactor /= Rat(aut_order(graph));

    EdgePolynomial out;
    for (const auto& [e, c] : prod) {
        std::vector<int> full = e;
        for (size_t i = 0; i < full.size(); ++i) full[i] = 2 * full[i] + 1;  // times prod b_e
        out[full] += c * prefactor;
    }
    return out;
}

/// Z operator: monomial prod b_e^{m_e} -> prod m_e! zeta(m_e + 1).
inline PiValue zeta_transform(const EdgePolynomial& poly) {
    PiValue total;
    for (const auto& [m, c] : poly) {
        PiValue term(c, 0);
        for (int e : m) {
            if (e % 2 == 0) throw math_error("zeta_transform: even exponent would need an odd zeta value");
            term = term * (zeta_even(e + 1) * Rat(factorial(e)));
        }
        total += term;
    }
    return total;
}

struct GraphContribution {
    StableGraph graph;
    Int aut = 1;
    Int leg_multiplicity = 1;   // labeled poles distributed by leg counts
    PiValue value;              // Z(P_Gamma), before the leg multiplicity
    PiValue weighted;           // leg_multiplicity * value
};

inline std::vector<GraphContribution> graph_contributions(long g, long n) {
    std::vector<GraphContribution> out;
    for (const StableGraph& graph : enumerate_stable_graphs(g, n)) {
        GraphContribution c;
        c.graph = graph;
        c.aut = aut_order(graph);
        Int mult = factorial(n);
        for (auto& [gv, lv] : graph.vertices) mult /= factorial(lv);
        c.leg_multiplicity = mult;
        c.value = zeta_transform(p_gamma(graph, g, n));
        if (c.value.is_zero()) c.value = PiValue(Rat(0), 6 * g - 6 + 2 * n);
        c.weighted = c.value * Rat(mult);
        out.push_back(std::move(c));
    }
    return out;
}

/// Masur-Veech volume of Q_{g,n} by the stable graph sum.
inline PiValue masur_veech_volume(long g, long n) {
    if (2 * g + n < 4) throw math_error("masur_veech_volume: need 2g+n >= 4");
    PiValue total(Rat(0), 6 * g - 6 + 2 * n);
    for (const auto& c : graph_contributions(g, n)) total += c.weighted;
    return total;
}

/// Single-band contribution recovered from the one-edge stable graphs:
/// sum of Vol(Gamma) over |E(Gamma)| = 1, divided by zeta(6g-6+2n).
inline Rat cyl1_from_one_edge_graphs(long g, long n) {
    if (2 * g + n < 4) throw math_error("cyl1_from_one_edge_graphs: need 2g+n >= 4");
    PiValue total(Rat(0), 6 * g - 6 + 2 * n);
    for (const auto& c : graph_contributions(g, n))
        if (c.graph.num_edges() == 1) total += c.weighted;
    PiValue r = total / zeta_even(6 * g - 6 + 2 * n);
    if (!r.is_zero() && r.pi_exp != 0) throw math_error("cyl1_from_one_edge_graphs: non-rational result");
    return r.coeff;
}

}  // namespace meanders

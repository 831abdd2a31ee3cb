#pragma once

#include <algorithm>
#include <climits>
#include <deque>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtladder/common.hpp"
#include "gtladder/grid.hpp"
#include "gtladder/ladder.hpp"

namespace gtladder {

struct SkeletonGraph {
    const GammaGrid* grid = nullptr;
    std::vector<VertexDiagram> verts;  // canonical order (sorted by edge bitset)
    std::vector<std::vector<int>> adj;
    long long edge_count = 0;

    int find_vertex(const Bitset& e) const {
        auto it = std::lower_bound(verts.begin(), verts.end(), e,
                                   [](const VertexDiagram& a, const Bitset& b) { return a.edges < b; });
        if (it == verts.end() || !(it->edges == e))
            throw precondition_error("diagram is not a vertex of this skeleton");
        return static_cast<int>(it - verts.begin());
    }
};

namespace detail {

// Tight pair scan for the common word sizes; the criterion is
// |union of edges| == |union of points| (union of two tree diagrams sharing
// the axes is connected, so equality means exactly one bounded region).
template <int WE, int WP>
void scan_pairs_fixed(const std::vector<VertexDiagram>& verts,
                      std::vector<std::vector<int>>& adj, long long& edge_count) {
    constexpr int W = WE + WP;
    constexpr int TILE = 4096;  // keeps the b-side resident in L1/L2
    const int V = static_cast<int>(verts.size());
    std::vector<std::uint64_t> pack(static_cast<std::size_t>(V) * W);
    for (int i = 0; i < V; ++i) {
        std::uint64_t* row = &pack[static_cast<std::size_t>(i) * W];
        for (int k = 0; k < WE; ++k) row[k] = verts[static_cast<std::size_t>(i)].edges.words()[static_cast<std::size_t>(k)];
        for (int k = 0; k < WP; ++k) row[WE + k] = verts[static_cast<std::size_t>(i)].points.words()[static_cast<std::size_t>(k)];
    }
    for (int tb = 0; tb < V; tb += TILE) {
        const int te = std::min(tb + TILE, V);
        for (int a = 0; a < te - 1; ++a) {
            std::uint64_t va[W];
            for (int k = 0; k < W; ++k) va[k] = pack[static_cast<std::size_t>(a) * W + k];
            const int b0 = std::max(a + 1, tb);
            const std::uint64_t* vb = &pack[static_cast<std::size_t>(b0) * W];
            for (int b = b0; b < te; ++b, vb += W) {
                int ec = 0, pc = 0;
                for (int k = 0; k < WE; ++k) ec += __builtin_popcountll(va[k] | vb[k]);
                for (int k = 0; k < WP; ++k) pc += __builtin_popcountll(va[WE + k] | vb[WE + k]);
                if (ec == pc) {
                    adj[static_cast<std::size_t>(a)].push_back(b);
                    adj[static_cast<std::size_t>(b)].push_back(a);
                    ++edge_count;
                }
            }
        }
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
}

}  // namespace detail

inline SkeletonGraph build_skeleton(const GammaGrid& g, std::size_t max_vertices = 20000) {
    SkeletonGraph s;
    s.grid = &g;
    s.verts = enumerate_vertices(g, max_vertices);
    const int V = static_cast<int>(s.verts.size());
    s.adj.assign(static_cast<std::size_t>(V), {});
    if (V == 0) return s;
    const int we = static_cast<int>(s.verts[0].edges.words().size());
    const int wp = static_cast<int>(s.verts[0].points.words().size());
    if (we == 1 && wp == 1)
        detail::scan_pairs_fixed<1, 1>(s.verts, s.adj, s.edge_count);
    else if (we == 2 && wp == 1)
        detail::scan_pairs_fixed<2, 1>(s.verts, s.adj, s.edge_count);
    else if (we == 2 && wp == 2)
        detail::scan_pairs_fixed<2, 2>(s.verts, s.adj, s.edge_count);
    else {
        for (int a = 0; a < V; ++a)
            for (int b = a + 1; b < V; ++b)
                if (is_edge(s.verts[static_cast<std::size_t>(a)], s.verts[static_cast<std::size_t>(b)])) {
                    s.adj[static_cast<std::size_t>(a)].push_back(b);
                    s.adj[static_cast<std::size_t>(b)].push_back(a);
                    ++s.edge_count;
                }
    }
    return s;
}

inline std::vector<int> bfs_from(const SkeletonGraph& s, int src) {
    std::vector<int> dist(s.verts.size(), -1);
    std::deque<int> q{src};
    dist[static_cast<std::size_t>(src)] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : s.adj[static_cast<std::size_t>(u)])
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

inline long long bfs_dist(const SkeletonGraph& s, int a, int b) {
    auto d = bfs_from(s, a);
    if (d[static_cast<std::size_t>(b)] < 0) throw precondition_error("skeleton is disconnected");
    return d[static_cast<std::size_t>(b)];
}

namespace detail {

// Max eccentricity over up to 64 sources at once: a level-synchronous BFS
// whose frontier carries one bit per source. The last level that visits any
// new (vertex, source) pair is the largest source eccentricity.
inline long long ecc_block_max(const std::vector<int>& off, const std::vector<int>& nbr,
                               int V, const int* srcs, int k,
                               std::vector<std::uint64_t>& vis, std::vector<std::uint64_t>& nxt,
                               std::vector<std::pair<int, std::uint64_t>>& frontier,
                               std::vector<int>& touched) {
    std::fill(vis.begin(), vis.end(), 0);
    frontier.clear();
    for (int i = 0; i < k; ++i) {
        vis[static_cast<std::size_t>(srcs[i])] |= 1ULL << i;
        frontier.emplace_back(srcs[i], vis[static_cast<std::size_t>(srcs[i])]);
    }
    // merge duplicate sources (cannot happen for distinct vertices, kept cheap)
    long long level = 0, last = 0;
    std::vector<std::pair<int, std::uint64_t>> next_frontier;
    while (!frontier.empty()) {
        ++level;
        touched.clear();
        for (const auto& [v, m] : frontier)
            for (int j = off[static_cast<std::size_t>(v)]; j < off[static_cast<std::size_t>(v) + 1]; ++j) {
                int w = nbr[static_cast<std::size_t>(j)];
                if (!nxt[static_cast<std::size_t>(w)]) touched.push_back(w);
                nxt[static_cast<std::size_t>(w)] |= m;
            }
        next_frontier.clear();
        for (int w : touched) {
            std::uint64_t nn = nxt[static_cast<std::size_t>(w)] & ~vis[static_cast<std::size_t>(w)];
            nxt[static_cast<std::size_t>(w)] = 0;
            if (nn) {
                vis[static_cast<std::size_t>(w)] |= nn;
                next_frontier.emplace_back(w, nn);
            }
        }
        frontier.swap(next_frontier);
        if (!frontier.empty()) last = level;
    }
    return last;
}

}  // namespace detail

// Exact diameter. Double sweeps give a lower bound and a central root; any
// pair of vertices at root level <= lb/2 stays within lb via the root, so
// only deeper vertices can extend the diameter, and their eccentricities are
// computed exactly, 64 sources per BFS pass.
inline long long bfs_diameter(const SkeletonGraph& s) {
    const int V = static_cast<int>(s.verts.size());
    if (V == 0) throw precondition_error("empty skeleton");
    if (V == 1) return 0;

    std::vector<int> off(static_cast<std::size_t>(V) + 1, 0), nbr;
    for (int i = 0; i < V; ++i) off[static_cast<std::size_t>(i) + 1] = off[static_cast<std::size_t>(i)] + static_cast<int>(s.adj[static_cast<std::size_t>(i)].size());
    nbr.reserve(static_cast<std::size_t>(off[static_cast<std::size_t>(V)]));
    for (int i = 0; i < V; ++i) nbr.insert(nbr.end(), s.adj[static_cast<std::size_t>(i)].begin(), s.adj[static_cast<std::size_t>(i)].end());

    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(V));
    auto bfs = [&](int src, std::vector<int>& dist) -> int {
        dist.assign(static_cast<std::size_t>(V), -1);
        order.clear();
        order.push_back(src);
        dist[static_cast<std::size_t>(src)] = 0;
        int ecc = 0;
        for (std::size_t h = 0; h < order.size(); ++h) {
            int u = order[h];
            for (int j = off[static_cast<std::size_t>(u)]; j < off[static_cast<std::size_t>(u) + 1]; ++j) {
                int w = nbr[static_cast<std::size_t>(j)];
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    ecc = dist[static_cast<std::size_t>(w)];
                    order.push_back(w);
                }
            }
        }
        if (static_cast<int>(order.size()) != V) throw precondition_error("skeleton is disconnected");
        return ecc;
    };
    auto far_of = [&](const std::vector<int>& dist) {
        int best = 0;
        for (int i = 1; i < V; ++i)
            if (dist[static_cast<std::size_t>(i)] > dist[static_cast<std::size_t>(best)]) best = i;
        return best;
    };

    std::vector<int> d0, d1, d2, dr;
    bfs(0, d0);
    int f1 = far_of(d0);
    int e1 = bfs(f1, d1);
    int f2 = far_of(d1);
    int e2 = bfs(f2, d2);
    long long lb = std::max(e1, e2);
    int r = 0;
    for (int i = 1; i < V; ++i)
        if (std::max(d1[static_cast<std::size_t>(i)], d2[static_cast<std::size_t>(i)]) <
            std::max(d1[static_cast<std::size_t>(r)], d2[static_cast<std::size_t>(r)]))
            r = i;
    int h = bfs(r, dr);
    lb = std::max(lb, static_cast<long long>(h));
    std::vector<int> rank(static_cast<std::size_t>(V));  // BFS dequeue order from r, for locality
    for (int i = 0; i < V; ++i) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

    std::vector<int> ub(static_cast<std::size_t>(V));
    for (int i = 0; i < V; ++i)
        ub[static_cast<std::size_t>(i)] = std::min({e1 + d1[static_cast<std::size_t>(i)], e2 + d2[static_cast<std::size_t>(i)], h + dr[static_cast<std::size_t>(i)]});

    // a few extra probes from the least certified vertices sharpen lb and ub
    std::vector<int> dp;
    for (int probe = 0; probe < 6; ++probe) {
        int pick = -1;
        for (int i = 0; i < V; ++i)
            if (ub[static_cast<std::size_t>(i)] > lb && (pick < 0 || ub[static_cast<std::size_t>(i)] > ub[static_cast<std::size_t>(pick)])) pick = i;
        if (pick < 0) return lb;
        int e = bfs(pick, dp);
        lb = std::max(lb, static_cast<long long>(e));
        for (int i = 0; i < V; ++i)
            ub[static_cast<std::size_t>(i)] = std::min(ub[static_cast<std::size_t>(i)], e + dp[static_cast<std::size_t>(i)]);
    }

    // any pair within root level floor(lb/2) is connected through r within lb
    std::vector<int> cand;
    for (int i = 0; i < V; ++i)
        if (2LL * dr[static_cast<std::size_t>(i)] > lb && ub[static_cast<std::size_t>(i)] > lb) cand.push_back(i);
    if (cand.empty()) return lb;
    std::sort(cand.begin(), cand.end(),
              [&](int a, int b) { return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)]; });

    std::vector<std::uint64_t> vis(static_cast<std::size_t>(V)), nxt(static_cast<std::size_t>(V), 0);
    std::vector<std::pair<int, std::uint64_t>> frontier;
    std::vector<int> touched;
    for (std::size_t at = 0; at < cand.size(); at += 64) {
        int k = static_cast<int>(std::min<std::size_t>(64, cand.size() - at));
        lb = std::max(lb, detail::ecc_block_max(off, nbr, V, &cand[at], k, vis, nxt, frontier, touched));
    }
    return lb;
}

// --- zigzag vertices ---------------------------------------------------------

namespace detail {

inline std::vector<int> special_columns(const GammaGrid& g) {
    std::set<int> xs(g.s.begin(), g.s.end());
    if (g.mv.mults.front() > 1) xs.insert(1);
    if (g.mv.mults.back() > 1) xs.insert(g.n - 1);
    return {xs.begin(), xs.end()};
}

inline std::vector<int> special_rows(const GammaGrid& g) {
    std::set<int> ys;
    for (int sj : g.s) ys.insert(g.n - sj);
    if (g.mv.mults.front() > 1) ys.insert(g.n - 1);
    if (g.mv.mults.back() > 1) ys.insert(1);
    return {ys.begin(), ys.end()};
}

// largest special value strictly below c
inline int prev_special(const std::vector<int>& xs, int c) {
    auto it = std::lower_bound(xs.begin(), xs.end(), c);
    if (it == xs.begin()) throw precondition_error("zigzag walk stuck: no special line below");
    return *std::prev(it);
}

// Zigzag path from t_j to the origin, turning at columns/rows that carry a
// terminal or virtual terminal; first leg horizontal ('h') or vertical ('v').
inline LatticePath zigzag_path(const GammaGrid& g, int j, char first) {
    const auto xs = special_columns(g);
    const auto ys = special_rows(g);
    int x = g.terminals[static_cast<std::size_t>(j)].x;
    int y = g.terminals[static_cast<std::size_t>(j)].y;
    LatticePath p{Bitset(static_cast<std::size_t>(g.E)), Bitset(static_cast<std::size_t>(g.npts()))};
    p.points.set(static_cast<std::size_t>(g.pid(x, y)));
    char mode = first;
    while (x > 0 && y > 0) {
        if (mode == 'h') {
            int x2 = prev_special(xs, x);
            while (x > x2) {
                --x;
                p.edges.set(static_cast<std::size_t>(g.eid_checked(x, y, 'h')));
                p.points.set(static_cast<std::size_t>(g.pid(x, y)));
            }
            mode = 'v';
        } else {
            int y2 = prev_special(ys, y);
            while (y > y2) {
                --y;
                p.edges.set(static_cast<std::size_t>(g.eid_checked(x, y, 'v')));
                p.points.set(static_cast<std::size_t>(g.pid(x, y)));
            }
            mode = 'h';
        }
    }
    while (x > 0) {
        --x;
        p.edges.set(static_cast<std::size_t>(g.eid_checked(x, 0, 'h')));
        p.points.set(static_cast<std::size_t>(g.pid(x, 0)));
    }
    while (y > 0) {
        --y;
        p.edges.set(static_cast<std::size_t>(g.eid_checked(0, y, 'v')));
        p.points.set(static_cast<std::size_t>(g.pid(0, y)));
    }
    return p;
}

}  // namespace detail

// The extremal vertex pair of the diameter lower bound: z_h from zigzag paths
// that leave each terminal horizontally, z_v vertically. Construction
// failures are reported, never patched.
inline std::pair<VertexDiagram, VertexDiagram> zigzag_vertices(const GammaGrid& g) {
    if (g.mv.m() < 2) throw precondition_error("zigzag vertices require m >= 2");
    auto make = [&](char first) {
        LatticePath u = detail::axes_diagram(g);
        for (int j = 1; j < g.mv.m(); ++j) {
            LatticePath p = detail::zigzag_path(g, j, first);
            u.edges |= p.edges;
            u.points |= p.points;
        }
        VertexDiagram v{u.edges, u.points};
        if (!validate(g, v.edges) || bounded_regions(g, v.edges) != 0)
            throw precondition_error("zigzag construction did not produce a vertex for " + g.mv.str());
        return v;
    };
    return {make('h'), make('v')};
}

// --- connecting walks ----------------------------------------------------------

namespace detail {

// Unique in-edge walk from a target back to the origin inside a tree diagram.
inline LatticePath backward_path(const GammaGrid& g, const Bitset& edges, GridPoint target) {
    LatticePath p{Bitset(static_cast<std::size_t>(g.E)), Bitset(static_cast<std::size_t>(g.npts()))};
    int x = target.x, y = target.y;
    p.points.set(static_cast<std::size_t>(g.pid(x, y)));
    while (x != 0 || y != 0) {
        int he = g.eid(x - 1, y, 'h');
        int ve = g.eid(x, y - 1, 'v');
        bool hw = he >= 0 && edges.test(static_cast<std::size_t>(he));
        bool vs = ve >= 0 && edges.test(static_cast<std::size_t>(ve));
        if (hw == vs)
            throw precondition_error("diagram lacks a unique in-edge at " + GridPoint{x, y}.str());
        if (hw) {
            p.edges.set(static_cast<std::size_t>(he));
            --x;
        } else {
            p.edges.set(static_cast<std::size_t>(ve));
            --y;
        }
        p.points.set(static_cast<std::size_t>(g.pid(x, y)));
    }
    return p;
}

// Path decomposition of a vertex: origin->t_j for j = 0..m.
inline std::vector<LatticePath> extract_paths(const GammaGrid& g, const VertexDiagram& v) {
    std::vector<LatticePath> out;
    for (const auto& t : g.terminals) out.push_back(backward_path(g, v.edges, t));
    return out;
}

inline VertexDiagram assemble(const GammaGrid& g, const std::vector<LatticePath>& paths) {
    VertexDiagram v{Bitset(static_cast<std::size_t>(g.E)), Bitset(static_cast<std::size_t>(g.npts()))};
    for (const auto& p : paths) {
        v.edges |= p.edges;
        v.points |= p.points;
    }
    return v;
}

// Comb move target: leave t_i horizontally west along its row until first
// meeting the current path to t_{i-1}, then follow that path to the origin.
inline LatticePath comb_path(const GammaGrid& g, const LatticePath& prev, GridPoint ti) {
    LatticePath p{Bitset(static_cast<std::size_t>(g.E)), Bitset(static_cast<std::size_t>(g.npts()))};
    int x = ti.x;
    const int y = ti.y;
    p.points.set(static_cast<std::size_t>(g.pid(x, y)));
    while (!prev.points.test(static_cast<std::size_t>(g.pid(x, y)))) {
        p.edges.set(static_cast<std::size_t>(g.eid_checked(x - 1, y, 'h')));
        --x;
        p.points.set(static_cast<std::size_t>(g.pid(x, y)));
    }
    LatticePath stem = backward_path(g, prev.edges, {x, y});
    p.edges |= stem.edges;
    p.points |= stem.points;
    return p;
}

// a_1 = 1: the path to t_1 = (1, n-1) has exactly one horizontal edge, its
// crossing height.
inline int p1_crossing(const GammaGrid& g, const LatticePath& p1) {
    int r = -1;
    p1.edges.for_each([&](std::size_t i) {
        if (g.edges[i].dir == 'h') r = g.edges[i].y;
    });
    if (r < 0) throw precondition_error("no crossing edge on the path to t_1");
    return r;
}

inline LatticePath p1_crossing_path(const GammaGrid& g, int r) {
    LatticePath p{Bitset(static_cast<std::size_t>(g.E)), Bitset(static_cast<std::size_t>(g.npts()))};
    p.points.set(static_cast<std::size_t>(g.pid(0, 0)));
    for (int y = 0; y < r; ++y) {
        p.edges.set(static_cast<std::size_t>(g.eid_checked(0, y, 'v')));
        p.points.set(static_cast<std::size_t>(g.pid(0, y + 1)));
    }
    p.edges.set(static_cast<std::size_t>(g.eid_checked(0, r, 'h')));
    p.points.set(static_cast<std::size_t>(g.pid(1, r)));
    for (int y = r; y < g.n - 1; ++y) {
        p.edges.set(static_cast<std::size_t>(g.eid_checked(1, y, 'v')));
        p.points.set(static_cast<std::size_t>(g.pid(1, y + 1)));
    }
    return p;
}

// a_m = 1 mirror: the path to t_{m-1} = (n-1, 1) has one vertical edge.
inline int pm1_crossing(const GammaGrid& g, const LatticePath& pm1) {
    int q = -1;
    pm1.edges.for_each([&](std::size_t i) {
        if (g.edges[i].dir == 'v') q = g.edges[i].x;
    });
    if (q < 0) throw precondition_error("no crossing edge on the path to t_{m-1}");
    return q;
}

inline LatticePath pm1_crossing_path(const GammaGrid& g, int q) {
    LatticePath p{Bitset(static_cast<std::size_t>(g.E)), Bitset(static_cast<std::size_t>(g.npts()))};
    p.points.set(static_cast<std::size_t>(g.pid(0, 0)));
    for (int x = 0; x < q; ++x) {
        p.edges.set(static_cast<std::size_t>(g.eid_checked(x, 0, 'h')));
        p.points.set(static_cast<std::size_t>(g.pid(x + 1, 0)));
    }
    p.edges.set(static_cast<std::size_t>(g.eid_checked(q, 0, 'v')));
    p.points.set(static_cast<std::size_t>(g.pid(q, 1)));
    for (int x = q; x < g.n - 1; ++x) {
        p.edges.set(static_cast<std::size_t>(g.eid_checked(x, 1, 'h')));
        p.points.set(static_cast<std::size_t>(g.pid(x + 1, 1)));
    }
    return p;
}

struct Move {
    int index;  // which path changes
    // 0 = comb against index-1, 1 = p1 crossing jump, 2 = p_{m-1} crossing jump
    int kind;
    int param;  // crossing for kinds 1/2
};

// Apply moves in order, verifying each step is a skeleton edge onto a valid
// vertex. Returns the walk (without the starting vertex) or nullopt.
inline std::optional<std::vector<VertexDiagram>> run_schedule(const GammaGrid& g,
                                                              std::vector<LatticePath>& paths,
                                                              const std::vector<Move>& moves) {
    std::vector<VertexDiagram> walk;
    VertexDiagram cur = assemble(g, paths);
    for (const Move& mv_ : moves) {
        LatticePath target;
        if (mv_.kind == 0)
            target = comb_path(g, paths[static_cast<std::size_t>(mv_.index - 1)], g.terminals[static_cast<std::size_t>(mv_.index)]);
        else if (mv_.kind == 1)
            target = p1_crossing_path(g, mv_.param);
        else
            target = pm1_crossing_path(g, mv_.param);
        if (target.edges == paths[static_cast<std::size_t>(mv_.index)].edges) continue;  // no-op
        std::vector<LatticePath> cand_paths = paths;
        cand_paths[static_cast<std::size_t>(mv_.index)] = target;
        VertexDiagram cand = assemble(g, cand_paths);
        if (!validate(g, cand.edges)) return std::nullopt;
        if (bounded_regions(g, cand.edges) != 0) return std::nullopt;
        if (!is_edge(cur, cand)) return std::nullopt;
        paths = std::move(cand_paths);
        cur = cand;
        walk.push_back(cur);
    }
    return walk;
}

inline std::optional<std::vector<VertexDiagram>> bfs_walk(const GammaGrid& g,
                                                          const VertexDiagram& v,
                                                          const VertexDiagram& w,
                                                          const SkeletonGraph* skel) {
    SkeletonGraph local;
    if (!skel) {
        local = build_skeleton(g, 200000);
        skel = &local;
    }
    int a = skel->find_vertex(v.edges), b = skel->find_vertex(w.edges);
    std::vector<int> par(skel->verts.size(), -1);
    std::deque<int> q{a};
    par[static_cast<std::size_t>(a)] = a;
    while (!q.empty() && par[static_cast<std::size_t>(b)] < 0) {
        int u = q.front();
        q.pop_front();
        for (int t : skel->adj[static_cast<std::size_t>(u)])
            if (par[static_cast<std::size_t>(t)] < 0) {
                par[static_cast<std::size_t>(t)] = u;
                q.push_back(t);
            }
    }
    if (par[static_cast<std::size_t>(b)] < 0) return std::nullopt;
    std::vector<VertexDiagram> walk;
    for (int t = b; t != a; t = par[static_cast<std::size_t>(t)]) walk.push_back(skel->verts[static_cast<std::size_t>(t)]);
    std::reverse(walk.begin(), walk.end());
    return walk;
}

}  // namespace detail

// Connecting walk between two vertices: at most the diameter-formula bound
// of skeleton edges (the one exception is (1,1), where two distinct vertices
// are at distance 1 against a formula value of 0). Strategy: move both
// endpoints to a common canonical vertex. When a_1 = 1 (resp. a_m = 1), the
// side whose first (resp. last) crossing is lower jumps up to the higher one
// first, which saves a move versus combing both sides; the middle paths are
// then combed bottom-up on both sides. Every step is verified; if a schedule
// step fails, alternative move orders and finally a shortest-path fallback
// are used.
inline std::vector<VertexDiagram> connect(const GammaGrid& g, const VertexDiagram& v,
                                          const VertexDiagram& w,
                                          const SkeletonGraph* skel = nullptr) {
    const int m = g.mv.m();
    if (v.edges == w.edges) return {v};
    if (m < 2) throw precondition_error("distinct vertices cannot exist for m < 2");

    long long bound = diameter_formula(g.mv);
    bool exception_11 = (g.mv.mults == std::vector<int>{1, 1});
    long long allowed = exception_11 ? 1 : bound;

    auto finish = [&](std::vector<VertexDiagram> walk) -> std::vector<VertexDiagram> {
        walk.insert(walk.begin(), v);
        // drop consecutive duplicates
        std::vector<VertexDiagram> out;
        for (auto& y : walk)
            if (out.empty() || !(out.back().edges == y.edges)) out.push_back(std::move(y));
        if (!(out.front().edges == v.edges) || !(out.back().edges == w.edges))
            throw precondition_error("connecting walk has wrong endpoints (internal error)");
        for (std::size_t i = 0; i + 1 < out.size(); ++i)
            if (!is_edge(out[i], out[i + 1]))
                throw precondition_error("connecting walk contains a non-edge (internal error)");
        if (static_cast<long long>(out.size()) - 1 > allowed)
            throw precondition_error("connecting walk exceeds the diameter bound for " + g.mv.str());
        return out;
    };

    if (is_edge(v, w)) return finish({w});

    auto pv = detail::extract_paths(g, v);
    auto pw_ = detail::extract_paths(g, w);

    // Build the per-side schedules toward the common target.
    const bool low1 = (g.mv.mults.front() == 1);
    const bool high1 = (g.mv.mults.back() == 1);
    int rstar = 0, qstar = 0;
    if (low1 && m >= 2)
        rstar = std::max(detail::p1_crossing(g, pv[1]), detail::p1_crossing(g, pw_[1]));
    if (high1 && m >= 2)
        qstar = std::max(detail::pm1_crossing(g, pv[static_cast<std::size_t>(m - 1)]),
                         detail::pm1_crossing(g, pw_[static_cast<std::size_t>(m - 1)]));

    std::vector<detail::Move> head, mids, tail;
    if (m == 2) {
        if (low1)
            head.push_back({1, 1, rstar});
        else if (high1)
            head.push_back({1, 2, qstar});
        else
            head.push_back({1, 0, 0});
    } else {
        if (low1)
            head.push_back({1, 1, rstar});
        else
            head.push_back({1, 0, 0});
        for (int i = 2; i <= m - 2; ++i) mids.push_back({i, 0, 0});
        if (high1)
            tail.push_back({m - 1, 2, qstar});
        else
            tail.push_back({m - 1, 0, 0});
    }

    auto cat = [](std::initializer_list<const std::vector<detail::Move>*> parts) {
        std::vector<detail::Move> out;
        for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
        return out;
    };
    std::vector<std::vector<detail::Move>> orders = {
        cat({&head, &mids, &tail}),
        cat({&head, &tail, &mids}),
        cat({&tail, &head, &mids}),
    };

    for (const auto& order : orders) {
        auto a = pv;
        auto b = pw_;
        auto wa = detail::run_schedule(g, a, order);
        if (!wa) continue;
        auto wb = detail::run_schedule(g, b, order);
        if (!wb) continue;
        if (!(detail::assemble(g, a).edges == detail::assemble(g, b).edges)) continue;
        std::vector<VertexDiagram> walk = *wa;
        for (auto it = wb->rbegin(); it != wb->rend(); ++it) {
            if (it == wb->rbegin()) continue;  // shared endpoint
            walk.push_back(*it);
        }
        walk.push_back(w);
        try {
            return finish(walk);
        } catch (const precondition_error&) {
            continue;
        }
    }

    auto fb = detail::bfs_walk(g, v, w, skel);
    if (!fb) throw precondition_error("no connecting walk found (skeleton disconnected?)");
    return finish(*fb);
}

}  // namespace gtladder

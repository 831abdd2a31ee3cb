#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gtladder/common.hpp"
#include "gtladder/grid.hpp"

namespace gtladder {

// A ladder diagram is an edge subset of its grid; validity is the two-part
// condition checked by GammaGrid::is_valid.
inline bool validate(const GammaGrid& g, const Bitset& edge_set) {
    return g.is_valid(edge_set);
}

// Delete edges violating condition 2 until none remain. Deleting an edge can
// only shrink reach/coreach, so the fixed point is unique.
inline Bitset condition2_fixpoint(const GammaGrid& g, Bitset x) {
    for (;;) {
        Bitset r = g.reach_from_origin(x);
        Bitset c = g.coreach_terminals(x);
        Bitset del(x.size());
        bool any = false;
        x.for_each([&](std::size_t i) {
            if (!r.test(static_cast<std::size_t>(g.edge_sw_pid(static_cast<int>(i)))) ||
                !c.test(static_cast<std::size_t>(g.edge_ne_pid(static_cast<int>(i))))) {
                del.set(i);
                any = true;
            }
        });
        if (!any) return x;
        x -= del;
    }
}

// Largest valid diagram contained in x; nullopt encodes the EMPTY face.
inline std::optional<Bitset> repair(const GammaGrid& g, Bitset x) {
    x = condition2_fixpoint(g, std::move(x));
    Bitset r = g.reach_from_origin(x);
    for (const auto& t : g.terminals)
        if (!r.test(static_cast<std::size_t>(g.pid(t.x, t.y)))) return std::nullopt;
    return x;
}

// Planar Euler count of bounded regions: E - V + C, where V counts incident
// points and C the connected components. With union-find, each union that
// merges two components cancels one edge, so the result is E minus the
// number of merging unions.
inline long long bounded_regions(const GammaGrid& g, const Bitset& x) {
    std::vector<int> parent(static_cast<std::size_t>(g.npts()), -1);
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    long long merges = 0, edges = 0;
    x.for_each([&](std::size_t i) {
        ++edges;
        int a = g.edge_sw_pid(static_cast<int>(i));
        int b = g.edge_ne_pid(static_cast<int>(i));
        if (parent[static_cast<std::size_t>(a)] < 0) parent[static_cast<std::size_t>(a)] = a;
        if (parent[static_cast<std::size_t>(b)] < 0) parent[static_cast<std::size_t>(b)] = b;
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            ++merges;
        }
    });
    return edges - merges;
}

// Face order: ld1 <= ld2 iff edge set of ld1 is contained in ld2's.
inline bool includes(const Bitset& ld1, const Bitset& ld2) {
    return ld1.is_subset_of(ld2);
}

// Lattice join; the union of valid diagrams is valid.
inline Bitset superimpose(const Bitset& ld1, const Bitset& ld2) {
    return ld1 | ld2;
}

// Lattice meet; nullopt is the EMPTY bottom face.
inline std::optional<Bitset> meet(const GammaGrid& g, const Bitset& ld1, const Bitset& ld2) {
    return repair(g, ld1 & ld2);
}

// --- vertices ---------------------------------------------------------------

struct VertexDiagram {
    Bitset edges;
    Bitset points;  // endpoints of present edges
};

// Monotone NE path from the origin to a fixed target, as edge+point bitsets.
struct LatticePath {
    Bitset edges;
    Bitset points;
};

namespace detail {

// All monotone origin->target paths inside the grid.
inline std::vector<LatticePath> paths_to(const GammaGrid& g, GridPoint target) {
    std::vector<LatticePath> out;
    Bitset e(static_cast<std::size_t>(g.E));
    Bitset p(static_cast<std::size_t>(g.npts()));
    p.set(static_cast<std::size_t>(g.pid(0, 0)));

    auto rec = [&](auto&& self, int x, int y) -> void {
        if (x == target.x && y == target.y) {
            out.push_back({e, p});
            return;
        }
        if (x < target.x) {
            int he = g.eid(x, y, 'h');
            if (he >= 0) {
                e.set(static_cast<std::size_t>(he));
                p.set(static_cast<std::size_t>(g.pid(x + 1, y)));
                self(self, x + 1, y);
                e.reset(static_cast<std::size_t>(he));
                p.reset(static_cast<std::size_t>(g.pid(x + 1, y)));
            }
        }
        if (y < target.y) {
            int ve = g.eid(x, y, 'v');
            if (ve >= 0) {
                e.set(static_cast<std::size_t>(ve));
                p.set(static_cast<std::size_t>(g.pid(x, y + 1)));
                self(self, x, y + 1);
                e.reset(static_cast<std::size_t>(ve));
                p.reset(static_cast<std::size_t>(g.pid(x, y + 1)));
            }
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Two monotone paths from the origin are noncrossing iff their union is a
// tree: edge count = point count - 1 (the union is always connected).
inline bool noncrossing(const LatticePath& a, const LatticePath& b) {
    return a.edges.or_count(b.edges) == a.points.or_count(b.points) - 1;
}

// Both axes: the forced paths to t_0 and t_m.
inline LatticePath axes_diagram(const GammaGrid& g) {
    LatticePath axes;
    axes.edges = Bitset(static_cast<std::size_t>(g.E));
    axes.points = Bitset(static_cast<std::size_t>(g.npts()));
    axes.points.set(static_cast<std::size_t>(g.pid(0, 0)));
    for (int y = 0; y < g.n; ++y) {
        axes.edges.set(static_cast<std::size_t>(g.eid_checked(0, y, 'v')));
        axes.points.set(static_cast<std::size_t>(g.pid(0, y + 1)));
    }
    for (int x = 0; x < g.n; ++x) {
        axes.edges.set(static_cast<std::size_t>(g.eid_checked(x, 0, 'h')));
        axes.points.set(static_cast<std::size_t>(g.pid(x + 1, 0)));
    }
    return axes;
}

}  // namespace detail

// All 0-dimensional faces, as unions of m+1 pairwise-noncrossing paths
// (the paths to t_0 and t_m are forced along the axes). Canonical order:
// sorted by edge bitset.
inline std::vector<VertexDiagram> enumerate_vertices(const GammaGrid& g,
                                                     std::size_t max_vertices = 20000) {
    const int m = g.mv.m();
    std::vector<std::vector<LatticePath>> options;
    for (int j = 1; j < m; ++j) options.push_back(detail::paths_to(g, g.terminals[static_cast<std::size_t>(j)]));

    LatticePath axes = detail::axes_diagram(g);

    std::vector<VertexDiagram> out;
    std::vector<const LatticePath*> chosen;
    auto rec = [&](auto&& self, std::size_t level) -> void {
        if (level == options.size()) {
            VertexDiagram v{axes.edges, axes.points};
            for (const auto* q : chosen) {
                v.edges |= q->edges;
                v.points |= q->points;
            }
            if (out.size() >= max_vertices)
                throw budget_error("vertex budget exceeded: more than " +
                                   std::to_string(max_vertices) + " vertices in " + g.mv.str());
            out.push_back(std::move(v));
            return;
        }
        for (const auto& cand : options[level]) {
            bool ok = true;
            for (const auto* q : chosen)
                if (!detail::noncrossing(*q, cand)) { ok = false; break; }
            if (!ok) continue;
            chosen.push_back(&cand);
            self(self, level + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(),
              [](const VertexDiagram& a, const VertexDiagram& b) { return a.edges < b.edges; });
    return out;
}

// Skeleton edge criterion: the union of two vertex diagrams is connected, so
// it has exactly one bounded region iff edge count equals point count.
inline bool is_edge(const VertexDiagram& v, const VertexDiagram& w) {
    if (v.edges == w.edges) return false;
    return v.edges.or_count(w.edges) == v.points.or_count(w.points);
}

inline bool is_edge(const GammaGrid& g, const Bitset& v, const Bitset& w) {
    if (v == w) return false;
    return bounded_regions(g, v | w) == 1;
}

// --- face lattice ------------------------------------------------------------

struct FaceLattice {
    long long d = 0;                       // dimension of the polytope
    std::vector<std::vector<Bitset>> by_dim;  // faces at each dimension 0..d, sorted
    std::unordered_map<Bitset, std::pair<int, int>, BitsetHash> index;  // face -> (dim, pos)
    // The EMPTY face is the implicit lattice bottom below every vertex.

    long long total_faces() const {
        long long t = 0;
        for (const auto& lvl : by_dim) t += static_cast<long long>(lvl.size());
        return t;
    }
    std::vector<long long> f_vector() const {
        std::vector<long long> f;
        for (const auto& lvl : by_dim) f.push_back(static_cast<long long>(lvl.size()));
        return f;
    }
    std::pair<int, int> locate(const Bitset& face) const {
        auto it = index.find(face);
        if (it == index.end()) throw precondition_error("diagram is not an enumerated face");
        return it->second;
    }
};

// Downward closure from the top face: delete one non-axis edge, then repair.
// Plain single-edge deletion misses faces whose covers differ by a cascade,
// so the repair step is essential for completeness.
inline FaceLattice enumerate_faces(const GammaGrid& g, std::size_t max_cells = 200000) {
    FaceLattice L;
    L.d = dimension(g.mv);
    if (bounded_regions(g, g.full_edges) != L.d)
        throw precondition_error("grid regions disagree with dimension formula for " + g.mv.str());
    L.by_dim.assign(static_cast<std::size_t>(L.d) + 1, {});

    std::unordered_map<Bitset, long long, BitsetHash> seen;
    std::vector<Bitset> frontier = {g.full_edges};
    seen.emplace(g.full_edges, L.d);

    Bitset interior = g.full_edges - g.axis_edges;
    while (!frontier.empty()) {
        std::vector<Bitset> next;
        for (const Bitset& x : frontier) {
            Bitset candidates = x & interior;
            candidates.for_each([&](std::size_t i) {
                Bitset y = x;
                y.reset(i);
                auto rep = repair(g, std::move(y));
                if (!rep) return;
                if (seen.find(*rep) != seen.end()) return;
                if (seen.size() >= max_cells)
                    throw budget_error("face budget exceeded: at least " +
                                       std::to_string(seen.size() + 1) + " faces in " + g.mv.str() +
                                       " (budget " + std::to_string(max_cells) + ")");
                long long dim = bounded_regions(g, *rep);
                seen.emplace(*rep, dim);
                next.push_back(std::move(*rep));
            });
        }
        frontier = std::move(next);
    }

    for (auto& [face, dim] : seen)
        L.by_dim[static_cast<std::size_t>(dim)].push_back(face);
    for (auto& lvl : L.by_dim) std::sort(lvl.begin(), lvl.end());
    for (int k = 0; k <= L.d; ++k)
        for (int i = 0; i < static_cast<int>(L.by_dim[static_cast<std::size_t>(k)].size()); ++i)
            L.index.emplace(L.by_dim[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)], std::make_pair(k, i));
    return L;
}

// --- GT points ---------------------------------------------------------------

// Triangular array x_{i,j}, 1 <= j <= i <= n, with x_{i,i} = lambda_i.
struct GTPoint {
    int n = 0;
    std::vector<Rat> entries;  // row-major: (i,j) at i(i-1)/2 + j-1

    explicit GTPoint(int n_) : n(n_), entries(static_cast<std::size_t>(n_) * (n_ + 1) / 2) {}
    Rat& at(int i, int j) { return entries[static_cast<std::size_t>(i) * (i - 1) / 2 + j - 1]; }
    const Rat& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * (i - 1) / 2 + j - 1]; }
};

// Value forced on the diagonal: lambda_i = k for s_{k-1} < i <= s_k.
inline int lambda_value(const GammaGrid& g, int i) {
    for (int k = 1; k <= g.mv.m(); ++k)
        if (i <= g.s[static_cast<std::size_t>(k)]) return k;
    throw precondition_error("row index out of range");
}

// Checks the defining inequalities; throws naming the first violated one.
inline void validate_point(const GammaGrid& g, const GTPoint& p) {
    if (p.n != g.n) throw precondition_error("point size does not match grid");
    auto name = [](int i, int j) {
        return "x_{" + std::to_string(i) + "," + std::to_string(j) + "}";
    };
    for (int i = 1; i <= g.n; ++i) {
        if (p.at(i, i) != Rat(lambda_value(g, i)))
            throw precondition_error(name(i, i) + " must equal " +
                                     std::to_string(lambda_value(g, i)));
        for (int j = 1; j < i; ++j)
            if (!(p.at(i, j) <= p.at(i, j + 1)))
                throw precondition_error(name(i, j) + " > " + name(i, j + 1));
        if (i < g.n)
            for (int j = 1; j <= i; ++j)
                if (!(p.at(i, j) <= p.at(i + 1, j)))
                    throw precondition_error(name(i, j) + " > " + name(i + 1, j));
    }
}

// Entry of the unit cell with lower-left corner (c,r): x_{n-r, c+1}.
inline const Rat& cell_entry(const GammaGrid& g, const GTPoint& p, int cell) {
    int c = cell % g.n, r = cell / g.n;
    return p.at(g.n - r, c + 1);
}

// Minimal face containing p: an edge is drawn iff it separates entries with
// different values or borders the outside of the staircase.
inline Bitset point_to_ladder(const GammaGrid& g, const GTPoint& p) {
    validate_point(g, p);
    Bitset x(static_cast<std::size_t>(g.E));
    for (int i = 0; i < g.E; ++i) {
        auto [a, b] = g.edge_cells(i);
        if (a < 0 || b < 0) {
            x.set(static_cast<std::size_t>(i));
            continue;
        }
        if (cell_entry(g, p, a) != cell_entry(g, p, b)) x.set(static_cast<std::size_t>(i));
    }
    if (!g.is_valid(x))
        throw precondition_error("point produced an invalid diagram (internal error)");
    return x;
}

// Generic point of a face: equal entries exactly within each region of the
// diagram's cell partition, strict across every present interior edge.
// Free regions get value lo + rank/(D+1) where lo is the largest pinned
// value below, rank the longest free chain from below, D the max rank.
inline GTPoint generic_point(const GammaGrid& g, const Bitset& face) {
    const int ncell = g.ncells();
    std::vector<int> parent(static_cast<std::size_t>(ncell));
    for (int i = 0; i < ncell; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };

    // merge across absent separations
    for (int c = 0; c < g.n; ++c)
        for (int r = 0; r < g.n; ++r) {
            if (!g.cell_in_domain(c, r)) continue;
            if (g.cell_in_domain(c + 1, r)) {
                int e = g.eid(c + 1, r, 'v');
                if (e < 0 || !face.test(static_cast<std::size_t>(e))) unite(g.cell_id(c, r), g.cell_id(c + 1, r));
            }
            if (g.cell_in_domain(c, r + 1)) {
                int e = g.eid(c, r + 1, 'h');
                if (e < 0 || !face.test(static_cast<std::size_t>(e))) unite(g.cell_id(c, r), g.cell_id(c, r + 1));
            }
        }

    std::vector<int> pinned(static_cast<std::size_t>(ncell), 0);
    for (int c = 0; c < g.n; ++c)
        for (int r = 0; r < g.n; ++r) {
            int k = g.cell_fixed_value(c, r);
            if (k == 0) continue;
            int root = find(g.cell_id(c, r));
            if (pinned[static_cast<std::size_t>(root)] != 0 && pinned[static_cast<std::size_t>(root)] != k)
                throw precondition_error("inconsistent pinned regions (invalid diagram?)");
            pinned[static_cast<std::size_t>(root)] = k;
        }

    // strict order across present edges: first < second
    std::vector<std::pair<int, int>> strict;
    face.for_each([&](std::size_t i) {
        auto [a, b] = g.edge_cells(static_cast<int>(i));
        if (a < 0 || b < 0) return;
        strict.push_back({find(a), find(b)});
    });

    // lo: largest pinned value among ancestors; rank: longest chain of free
    // regions from below. Relaxation converges in <= #regions rounds on the
    // acyclic strict relation of a valid face; more rounds means a cycle.
    std::vector<int> lo(static_cast<std::size_t>(ncell), 0), rank(static_cast<std::size_t>(ncell), 0);
    for (int i = 0; i < ncell; ++i) {
        if (pinned[static_cast<std::size_t>(i)] != 0) lo[static_cast<std::size_t>(i)] = pinned[static_cast<std::size_t>(i)];
        else if (find(i) == i) rank[static_cast<std::size_t>(i)] = 1;
    }
    bool changed = true;
    int rounds = 0;
    while (changed) {
        if (++rounds > ncell + 1)
            throw precondition_error("cyclic strict constraints (invalid diagram?)");
        changed = false;
        for (auto [a, b] : strict) {
            if (a == b)
                throw precondition_error("edge separates a region from itself (invalid diagram?)");
            if (pinned[static_cast<std::size_t>(b)] != 0) continue;
            if (lo[static_cast<std::size_t>(a)] > lo[static_cast<std::size_t>(b)]) { lo[static_cast<std::size_t>(b)] = lo[static_cast<std::size_t>(a)]; changed = true; }
            if (pinned[static_cast<std::size_t>(a)] == 0 && rank[static_cast<std::size_t>(a)] + 1 > rank[static_cast<std::size_t>(b)]) {
                rank[static_cast<std::size_t>(b)] = rank[static_cast<std::size_t>(a)] + 1;
                changed = true;
            }
        }
    }
    long long D = 0;
    for (int i = 0; i < ncell; ++i)
        if (find(i) == i && pinned[static_cast<std::size_t>(i)] == 0) D = std::max(D, static_cast<long long>(rank[static_cast<std::size_t>(i)]));

    GTPoint p(g.n);
    for (int c = 0; c < g.n; ++c)
        for (int r = 0; r < g.n; ++r) {
            if (!g.cell_in_domain(c, r)) continue;
            int root = find(g.cell_id(c, r));
            Rat v = (pinned[static_cast<std::size_t>(root)] != 0)
                        ? Rat(pinned[static_cast<std::size_t>(root)])
                        : Rat(lo[static_cast<std::size_t>(root)]) + Rat(rank[static_cast<std::size_t>(root)], D + 1);
            p.at(g.n - r, c + 1) = v;
        }
    return p;
}

}  // namespace gtladder

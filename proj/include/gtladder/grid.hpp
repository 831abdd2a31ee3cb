#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gtladder/common.hpp"
#include "gtladder/partition.hpp"

namespace gtladder {

struct GridPoint {
    int x = 0, y = 0;
    bool operator==(const GridPoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const GridPoint& o) const { return !(*this == o); }
    std::string str() const {
        return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    }
};

// dir 'h': (x,y)-(x+1,y).  dir 'v': (x,y)-(x,y+1).
struct GridEdge {
    int x = 0, y = 0;
    char dir = 'h';

    GridPoint sw() const { return {x, y}; }
    GridPoint ne() const { return dir == 'h' ? GridPoint{x + 1, y} : GridPoint{x, y + 1}; }

    bool operator==(const GridEdge& o) const {
        return x == o.x && y == o.y && dir == o.dir;
    }
    // canonical order: by (y, x), horizontal before vertical
    bool operator<(const GridEdge& o) const {
        if (y != o.y) return y < o.y;
        if (x != o.x) return x < o.x;
        return dir < o.dir;  // 'h' < 'v'
    }
    std::string str() const {
        return std::string(1, dir) + sw().str() + "-" + ne().str();
    }
};

// The ladder grid Gamma(lambda): the union of the rectangles
// [0,s_j] x [0,n-s_j] for j = 0..m, with its lattice points and unit edges.
// An edge belongs to the grid iff some rectangle contains it entirely,
// which reduces to membership of its NE endpoint.
class GammaGrid {
public:
    MultiplicityVector mv;
    int n = 0;
    std::vector<int> s;  // prefix sums, s[0]=0 .. s[m]=n

    std::vector<GridEdge> edges;  // canonical order
    int E = 0;
    Bitset full_edges;
    Bitset gamma_points;  // pids of grid points
    Bitset axis_edges;
    std::vector<GridPoint> terminals;          // t_j = (s_j, n - s_j)
    std::vector<GridPoint> virtual_terminals;  // (1,n-1) if a_1>1; (n-1,1) if a_m>1

    std::vector<int> removable_list;  // edge ids, canonical order; facet f <-> removable_list[f]
    Bitset removable;

    explicit GammaGrid(const MultiplicityVector& mv_) : mv(mv_) {
        n = mv.n();
        s = mv.prefix();
        if (n < 1) throw precondition_error("empty partition");
        const int w = n + 1;
        npts_ = w * w;

        gamma_points = Bitset(static_cast<std::size_t>(npts_));
        for (int y = 0; y <= n; ++y)
            for (int x = 0; x <= n; ++x)
                if (has_point(x, y)) gamma_points.set(static_cast<std::size_t>(pid(x, y)));

        for (int y = 0; y <= n; ++y)
            for (int x = 0; x <= n; ++x) {
                if (has_point(x + 1, y)) edges.push_back({x, y, 'h'});
                if (has_point(x, y + 1)) edges.push_back({x, y, 'v'});
            }
        std::sort(edges.begin(), edges.end());
        E = static_cast<int>(edges.size());

        eid_h_.assign(static_cast<std::size_t>(npts_), -1);
        eid_v_.assign(static_cast<std::size_t>(npts_), -1);
        e_sw_.resize(edges.size());
        e_ne_.resize(edges.size());
        full_edges = Bitset(edges.size());
        axis_edges = Bitset(edges.size());
        for (int i = 0; i < E; ++i) {
            const GridEdge& e = edges[static_cast<std::size_t>(i)];
            auto& table = (e.dir == 'h') ? eid_h_ : eid_v_;
            table[static_cast<std::size_t>(pid(e.x, e.y))] = i;
            e_sw_[static_cast<std::size_t>(i)] = pid(e.sw().x, e.sw().y);
            e_ne_[static_cast<std::size_t>(i)] = pid(e.ne().x, e.ne().y);
            full_edges.set(static_cast<std::size_t>(i));
            if ((e.dir == 'h' && e.y == 0) || (e.dir == 'v' && e.x == 0))
                axis_edges.set(static_cast<std::size_t>(i));
        }

        for (int j = 0; j <= mv.m(); ++j) terminals.push_back({s[static_cast<std::size_t>(j)], n - s[static_cast<std::size_t>(j)]});
        if (mv.mults.front() > 1) virtual_terminals.push_back({1, n - 1});
        if (mv.mults.back() > 1) virtual_terminals.push_back({n - 1, 1});

        removable = Bitset(edges.size());
        for (int i = 0; i < E; ++i) {
            Bitset x = full_edges;
            x.reset(static_cast<std::size_t>(i));
            if (is_valid(x)) {
                removable.set(static_cast<std::size_t>(i));
                removable_list.push_back(i);
            }
        }
    }

    int npts() const { return npts_; }
    int pid(int x, int y) const { return y * (n + 1) + x; }
    GridPoint point_of(int p) const { return {p % (n + 1), p / (n + 1)}; }

    bool has_point(int x, int y) const {
        if (x < 0 || y < 0 || x > n || y > n) return false;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (x <= s[j] && y <= n - s[j]) return true;
        return false;
    }

    // -1 if the edge is not part of the grid
    int eid(int x, int y, char dir) const {
        if (x < 0 || y < 0 || x > n || y > n) return -1;
        return (dir == 'h' ? eid_h_ : eid_v_)[static_cast<std::size_t>(pid(x, y))];
    }
    int eid(const GridEdge& e) const { return eid(e.x, e.y, e.dir); }
    int eid_checked(int x, int y, char dir) const {
        int i = eid(x, y, dir);
        if (i < 0)
            throw precondition_error("edge " + GridEdge{x, y, dir}.str() + " not in grid " + mv.str());
        return i;
    }

    int edge_sw_pid(int i) const { return e_sw_[static_cast<std::size_t>(i)]; }
    int edge_ne_pid(int i) const { return e_ne_[static_cast<std::size_t>(i)]; }

    // Points reachable from the origin along present edges, moving N/E only.
    Bitset reach_from_origin(const Bitset& present) const {
        Bitset r(static_cast<std::size_t>(npts_));
        std::vector<int> stack = {pid(0, 0)};
        r.set(static_cast<std::size_t>(pid(0, 0)));
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            GridPoint q = point_of(p);
            int he = eid(q.x, q.y, 'h');
            if (he >= 0 && present.test(static_cast<std::size_t>(he))) {
                int t = pid(q.x + 1, q.y);
                if (!r.test(static_cast<std::size_t>(t))) { r.set(static_cast<std::size_t>(t)); stack.push_back(t); }
            }
            int ve = eid(q.x, q.y, 'v');
            if (ve >= 0 && present.test(static_cast<std::size_t>(ve))) {
                int t = pid(q.x, q.y + 1);
                if (!r.test(static_cast<std::size_t>(t))) { r.set(static_cast<std::size_t>(t)); stack.push_back(t); }
            }
        }
        return r;
    }

    // Points from which some terminal is reachable (walk edges backward, S/W).
    Bitset coreach_terminals(const Bitset& present) const {
        Bitset r(static_cast<std::size_t>(npts_));
        std::vector<int> stack;
        for (const auto& t : terminals) {
            int p = pid(t.x, t.y);
            if (!r.test(static_cast<std::size_t>(p))) { r.set(static_cast<std::size_t>(p)); stack.push_back(p); }
        }
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            GridPoint q = point_of(p);
            int he = eid(q.x - 1, q.y, 'h');
            if (he >= 0 && present.test(static_cast<std::size_t>(he))) {
                int t = pid(q.x - 1, q.y);
                if (!r.test(static_cast<std::size_t>(t))) { r.set(static_cast<std::size_t>(t)); stack.push_back(t); }
            }
            int ve = eid(q.x, q.y - 1, 'v');
            if (ve >= 0 && present.test(static_cast<std::size_t>(ve))) {
                int t = pid(q.x, q.y - 1);
                if (!r.test(static_cast<std::size_t>(t))) { r.set(static_cast<std::size_t>(t)); stack.push_back(t); }
            }
        }
        return r;
    }

    // A ladder diagram (edge subset) is valid iff
    //  (1) every terminal is reachable from the origin, and
    //  (2) every present edge lies on some origin-to-terminal monotone path,
    //      i.e. its SW endpoint is reachable and its NE endpoint co-reaches.
    bool is_valid(const Bitset& present) const {
        Bitset r = reach_from_origin(present);
        for (const auto& t : terminals)
            if (!r.test(static_cast<std::size_t>(pid(t.x, t.y)))) return false;
        Bitset c = coreach_terminals(present);
        bool ok = true;
        present.for_each([&](std::size_t i) {
            if (!r.test(static_cast<std::size_t>(e_sw_[i])) || !c.test(static_cast<std::size_t>(e_ne_[i]))) ok = false;
        });
        return ok;
    }

    // --- array cells -------------------------------------------------------
    // Unit cell (c,r) = [c,c+1] x [r,r+1] corresponds to the array entry
    // x_{n-r, c+1}; the domain is the staircase c,r >= 0, c + r <= n-1.
    bool cell_in_domain(int c, int r) const { return c >= 0 && r >= 0 && c + r <= n - 1; }
    int cell_id(int c, int r) const { return r * n + c; }
    int ncells() const { return n * n; }

    // Entry forced to the value k on the whole polytope; 0 when free.
    int cell_fixed_value(int c, int r) const {
        if (!cell_in_domain(c, r)) return 0;
        for (int k = 1; k <= mv.m(); ++k)
            if (c >= s[static_cast<std::size_t>(k - 1)] && r >= n - s[static_cast<std::size_t>(k)]) return k;
        return 0;
    }

    // Cells separated by an edge, as cell ids; -1 encodes the outside.
    // For 'h' the first cell is the one above (smaller entry), for 'v' the
    // one to the left (smaller entry).
    std::pair<int, int> edge_cells(int i) const {
        const GridEdge& e = edges[static_cast<std::size_t>(i)];
        if (e.dir == 'h') {
            int above = cell_in_domain(e.x, e.y) ? cell_id(e.x, e.y) : -1;
            int below = cell_in_domain(e.x, e.y - 1) ? cell_id(e.x, e.y - 1) : -1;
            return {above, below};
        }
        int left = cell_in_domain(e.x - 1, e.y) ? cell_id(e.x - 1, e.y) : -1;
        int right = cell_in_domain(e.x, e.y) ? cell_id(e.x, e.y) : -1;
        return {left, right};
    }

    // Transpose symmetry (x,y) -> (y,x); the grid maps onto itself exactly
    // when the multiplicity vector is palindromic.
    int transpose_eid(int i) const {
        const GridEdge& e = edges[static_cast<std::size_t>(i)];
        GridEdge t = (e.dir == 'h') ? GridEdge{e.y, e.x, 'v'} : GridEdge{e.y, e.x, 'h'};
        return eid_checked(t.x, t.y, t.dir);
    }

private:
    int npts_ = 0;
    std::vector<int> eid_h_, eid_v_;
    std::vector<int> e_sw_, e_ne_;
};

}  // namespace gtladder

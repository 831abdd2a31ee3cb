#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtladder/common.hpp"
#include "gtladder/grid.hpp"
#include "gtladder/ladder.hpp"

namespace gtladder {

// A combinatorial automorphism, stored as its permutation of facets. Facet i
// is the diagram missing exactly the i-th removable edge, so a permutation of
// facets determines the image of every face (each face is the meet of the
// facets containing it).
struct Automorphism {
    std::vector<int> perm;  // facet index -> facet index
    std::string label;

    bool operator==(const Automorphism& o) const { return perm == o.perm; }
    bool operator!=(const Automorphism& o) const { return perm != o.perm; }
    bool operator<(const Automorphism& o) const { return perm < o.perm; }
    bool is_identity() const {
        for (std::size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != static_cast<int>(i)) return false;
        return true;
    }
};

inline Automorphism aut_identity(int nfacets, std::string label = "id") {
    Automorphism a;
    a.perm.resize(static_cast<std::size_t>(nfacets));
    std::iota(a.perm.begin(), a.perm.end(), 0);
    a.label = std::move(label);
    return a;
}

// compose(a, b): apply b first, then a.
inline Automorphism compose(const Automorphism& a, const Automorphism& b) {
    if (a.perm.size() != b.perm.size())
        throw precondition_error("composing automorphisms of different polytopes");
    Automorphism c;
    c.perm.resize(a.perm.size());
    for (std::size_t i = 0; i < c.perm.size(); ++i)
        c.perm[i] = a.perm[static_cast<std::size_t>(b.perm[i])];
    if (!a.label.empty() && !b.label.empty()) c.label = a.label + "*" + b.label;
    return c;
}

inline Automorphism inverse_of(const Automorphism& a) {
    Automorphism inv;
    inv.perm.resize(a.perm.size());
    for (std::size_t i = 0; i < a.perm.size(); ++i)
        inv.perm[static_cast<std::size_t>(a.perm[i])] = static_cast<int>(i);
    if (!a.label.empty()) inv.label = a.label + "^-1";
    return inv;
}

inline long long aut_order_of(const Automorphism& a) {
    Automorphism x = a;
    long long k = 1;
    while (!x.is_identity()) {
        x = compose(a, x);
        ++k;
        if (k > 1'000'000) throw precondition_error("element order too large");
    }
    return k;
}

inline int facet_index(const GammaGrid& g, int eid) {
    auto it = std::lower_bound(g.removable_list.begin(), g.removable_list.end(), eid);
    if (it == g.removable_list.end() || *it != eid)
        throw precondition_error("edge " + g.edges[static_cast<std::size_t>(eid)].str() +
                                 " is not a facet edge of " + g.mv.str());
    return static_cast<int>(it - g.removable_list.begin());
}

namespace detail {

inline Automorphism facet_transposition(const GammaGrid& g, GridEdge e1, GridEdge e2,
                                        std::string label) {
    int f1 = facet_index(g, g.eid_checked(e1.x, e1.y, e1.dir));
    int f2 = facet_index(g, g.eid_checked(e2.x, e2.y, e2.dir));
    Automorphism a = aut_identity(static_cast<int>(g.removable_list.size()), std::move(label));
    std::swap(a.perm[static_cast<std::size_t>(f1)], a.perm[static_cast<std::size_t>(f2)]);
    return a;
}

}  // namespace detail

// The corner symmetry at the origin: on coordinates it replaces the origin
// cell value x by (east + north - x), which swaps the presence of the two
// non-axis edges of the origin cell. As a facet permutation that is the
// transposition of their facets.
inline std::optional<Automorphism> gen_corner(const GammaGrid& g) {
    if (dimension(g.mv) < 1) return std::nullopt;
    return detail::facet_transposition(g, {0, 1, 'h'}, {1, 0, 'v'}, "mu");
}

// The k-corner symmetry at terminal t_k (needs a_k, a_{k+1} >= 2): replaces
// the value of the cell just southwest of t_k by (west + south - x), which
// transposes the facets of that cell's west and south edges.
inline std::optional<Automorphism> gen_k_corner(const GammaGrid& g, int k) {
    const auto& a = g.mv.mults;
    const int m = g.mv.m();
    if (k < 1 || k >= m) return std::nullopt;
    if (a[static_cast<std::size_t>(k - 1)] < 2 || a[static_cast<std::size_t>(k)] < 2) return std::nullopt;
    int q = g.s[static_cast<std::size_t>(k)] - 1;
    int r = g.n - g.s[static_cast<std::size_t>(k)] - 1;
    return detail::facet_transposition(g, {q, r, 'v'}, {q, r, 'h'}, "mu_" + std::to_string(k));
}

// Symmetric group symmetry for a_1 = 1: the path into t_1 = (1, n-1) lives in
// a width-one strip and is determined by the height of its single crossing.
// The topmost a_2 crossing heights are free slots that no other path can use;
// swapping the slot-t and slot-(t+1) facets (slots count from the top) is the
// adjacent transposition generating S_{a_2}.
inline std::optional<Automorphism> gen_symmetric_low(const GammaGrid& g, int t) {
    const auto& a = g.mv.mults;
    if (g.mv.m() < 2 || a.front() != 1) return std::nullopt;
    if (t < 1 || t + 1 > a[1]) return std::nullopt;
    return detail::facet_transposition(g, {0, g.n - t, 'h'}, {0, g.n - t - 1, 'h'},
                                       "sigma_low(" + std::to_string(t) + ")");
}

// Mirror of gen_symmetric_low for a_m = 1, acting on the height-one strip
// into t_{m-1} = (n-1, 1).
inline std::optional<Automorphism> gen_symmetric_high(const GammaGrid& g, int t) {
    const auto& a = g.mv.mults;
    const int m = g.mv.m();
    if (m < 2 || a.back() != 1) return std::nullopt;
    if (t < 1 || t + 1 > a[static_cast<std::size_t>(m - 2)]) return std::nullopt;
    return detail::facet_transposition(g, {g.n - t, 0, 'v'}, {g.n - t - 1, 0, 'v'},
                                       "sigma_high(" + std::to_string(t) + ")");
}

// Flip over y = x, defined when the multiplicity vector is reverse symmetric.
inline std::optional<Automorphism> gen_flip(const GammaGrid& g) {
    if (!is_reverse_symmetric(g.mv) || dimension(g.mv) < 1) return std::nullopt;
    Automorphism a = aut_identity(static_cast<int>(g.removable_list.size()), "rho");
    for (std::size_t f = 0; f < g.removable_list.size(); ++f)
        a.perm[f] = facet_index(g, g.transpose_eid(g.removable_list[f]));
    return a;
}

// m = 2 rotation: paths to t_1 rotate 180 degrees inside the rectangle
// [0,a_1] x [0,a_2]. Facets of edges strictly inside the rectangle rotate
// along; the two reflex-corner facets (top-left horizontal, bottom-right
// vertical) swap with each other, since the rotation carries their roles.
inline std::optional<Automorphism> gen_rotation(const GammaGrid& g) {
    if (g.mv.m() != 2 || dimension(g.mv) < 1) return std::nullopt;
    const int a1 = g.s[1], a2 = g.n - g.s[1];
    const int e_top = g.eid_checked(0, a2, 'h');
    const int e_right = g.eid_checked(a1, 0, 'v');
    Automorphism a = aut_identity(static_cast<int>(g.removable_list.size()), "tau");
    for (std::size_t f = 0; f < g.removable_list.size(); ++f) {
        int e = g.removable_list[f];
        int img;
        if (e == e_top)
            img = e_right;
        else if (e == e_right)
            img = e_top;
        else {
            const GridEdge& ge = g.edges[static_cast<std::size_t>(e)];
            img = ge.dir == 'h' ? g.eid_checked(a1 - 1 - ge.x, a2 - ge.y, 'h')
                                : g.eid_checked(a1 - ge.x, a2 - 1 - ge.y, 'v');
        }
        a.perm[f] = facet_index(g, img);
    }
    return a;
}

// m = 2 vertex symmetry: swaps the two vertices whose path to t_1 turns
// exactly once. Those vertices are the only ones containing the first edge of
// the rectangle's right column (resp. top row), so this is the transposition
// of those two facets.
inline std::optional<Automorphism> gen_vertex_swap(const GammaGrid& g) {
    if (g.mv.m() != 2 || dimension(g.mv) < 1) return std::nullopt;
    const int a1 = g.s[1], a2 = g.n - g.s[1];
    return detail::facet_transposition(g, {0, a2, 'h'}, {a1, 0, 'v'}, "alpha");
}

inline std::vector<Automorphism> generators(const GammaGrid& g) {
    std::vector<Automorphism> out;
    auto add = [&](std::optional<Automorphism> x) {
        if (x) out.push_back(std::move(*x));
    };
    add(gen_corner(g));
    for (int k = 1; k < g.mv.m(); ++k) add(gen_k_corner(g, k));
    for (int t = 1;; ++t) {
        auto x = gen_symmetric_low(g, t);
        if (!x) break;
        out.push_back(std::move(*x));
    }
    for (int t = 1;; ++t) {
        auto x = gen_symmetric_high(g, t);
        if (!x) break;
        out.push_back(std::move(*x));
    }
    add(gen_flip(g));
    add(gen_rotation(g));
    add(gen_vertex_swap(g));
    return out;
}

inline std::vector<Automorphism> close_group(const GammaGrid& g,
                                             const std::vector<Automorphism>& gens,
                                             std::size_t max_group = 1000000) {
    Automorphism e = aut_identity(static_cast<int>(g.removable_list.size()));
    std::set<std::vector<int>> seen{e.perm};
    std::vector<Automorphism> out{e};
    for (std::size_t head = 0; head < out.size(); ++head)
        for (const Automorphism& gen : gens) {
            Automorphism c = compose(gen, out[head]);
            c.label.clear();
            if (seen.insert(c.perm).second) {
                out.push_back(std::move(c));
                if (out.size() > max_group)
                    throw budget_error("automorphism group closure exceeds " +
                                       std::to_string(max_group) + " elements in " + g.mv.str());
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Image of a face diagram under a facet permutation: a face is the meet of
// the facets containing it, and facet f contains X iff e_f is absent from X.
inline Bitset apply_to_face(const GammaGrid& g, const Automorphism& aut, const Bitset& face) {
    Bitset x = g.full_edges;
    for (std::size_t f = 0; f < g.removable_list.size(); ++f)
        if (!face.test(static_cast<std::size_t>(g.removable_list[f])))
            x.reset(static_cast<std::size_t>(g.removable_list[static_cast<std::size_t>(aut.perm[f])]));
    auto rep = repair(g, x);
    if (!rep)
        throw precondition_error("facet permutation " + aut.label +
                                 " does not map a face to a face in " + g.mv.str());
    return *rep;
}

// Full check against an enumerated lattice: dimension-preserving bijection
// that preserves covering relations (hence all inclusions).
inline bool validate_automorphism(const GammaGrid& g, const FaceLattice& lat,
                                  const Automorphism& aut) {
    std::vector<std::vector<int>> image(lat.by_dim.size());
    for (std::size_t k = 0; k < lat.by_dim.size(); ++k) {
        std::vector<char> hit(lat.by_dim[k].size(), 0);
        image[k].resize(lat.by_dim[k].size());
        for (std::size_t i = 0; i < lat.by_dim[k].size(); ++i) {
            Bitset img(0);
            try {
                img = apply_to_face(g, aut, lat.by_dim[k][i]);
            } catch (const precondition_error&) {
                return false;  // image of a face is not a face
            }
            auto loc = lat.index.find(img);
            if (loc == lat.index.end()) return false;
            auto [dim, pos] = loc->second;
            if (dim != static_cast<int>(k) || hit[static_cast<std::size_t>(pos)]) return false;
            hit[static_cast<std::size_t>(pos)] = 1;
            image[k][i] = static_cast<int>(pos);
        }
    }
    // covering pairs: X < Y in consecutive dimensions must map to X' < Y'
    for (std::size_t k = 0; k + 1 < lat.by_dim.size(); ++k)
        for (std::size_t i = 0; i < lat.by_dim[k].size(); ++i)
            for (std::size_t j = 0; j < lat.by_dim[k + 1].size(); ++j)
                if (lat.by_dim[k][i].is_subset_of(lat.by_dim[k + 1][j]) &&
                    !lat.by_dim[k][static_cast<std::size_t>(image[k][i])].is_subset_of(
                        lat.by_dim[k + 1][static_cast<std::size_t>(image[k + 1][j])]))
                    return false;
    return true;
}

// Every facet permutation that extends to a face-lattice automorphism, found
// by backtracking over facet images. Vertex-facet incidence determines the
// face lattice of a polytope, so a permutation extends iff it induces a
// bijection on vertex incidence signatures; intermediate pruning uses
// incidence counts and pairwise intersection sizes.
inline std::vector<Automorphism> brute_force_aut(const GammaGrid& g,
                                                 std::size_t max_vertices = 20000) {
    const int F = static_cast<int>(g.removable_list.size());
    if (F == 0) return {aut_identity(0)};
    auto verts = enumerate_vertices(g, max_vertices);
    const int V = static_cast<int>(verts.size());

    std::vector<Bitset> inc(static_cast<std::size_t>(F), Bitset(static_cast<std::size_t>(V)));
    for (int f = 0; f < F; ++f)
        for (int v = 0; v < V; ++v)
            if (!verts[static_cast<std::size_t>(v)].edges.test(
                    static_cast<std::size_t>(g.removable_list[static_cast<std::size_t>(f)])))
                inc[static_cast<std::size_t>(f)].set(static_cast<std::size_t>(v));

    std::vector<int> incsize(static_cast<std::size_t>(F));
    for (int f = 0; f < F; ++f) incsize[static_cast<std::size_t>(f)] = static_cast<int>(inc[static_cast<std::size_t>(f)].count());
    std::vector<std::vector<int>> inter(static_cast<std::size_t>(F), std::vector<int>(static_cast<std::size_t>(F)));
    for (int i = 0; i < F; ++i)
        for (int j = 0; j < F; ++j)
            inter[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<int>(
                inc[static_cast<std::size_t>(i)].and_count(inc[static_cast<std::size_t>(j)]));

    std::vector<std::vector<int>> sig(static_cast<std::size_t>(V));
    std::map<std::vector<int>, int> sig_index;
    for (int v = 0; v < V; ++v) {
        for (int f = 0; f < F; ++f)
            if (inc[static_cast<std::size_t>(f)].test(static_cast<std::size_t>(v)))
                sig[static_cast<std::size_t>(v)].push_back(f);
        sig_index[sig[static_cast<std::size_t>(v)]] = v;
    }

    std::vector<Automorphism> found;
    std::vector<int> perm(static_cast<std::size_t>(F), -1);
    std::vector<char> used(static_cast<std::size_t>(F), 0);
    auto leaf_ok = [&]() {
        std::vector<int> timg;
        for (int v = 0; v < V; ++v) {
            timg.clear();
            for (int f : sig[static_cast<std::size_t>(v)]) timg.push_back(perm[static_cast<std::size_t>(f)]);
            std::sort(timg.begin(), timg.end());
            if (!sig_index.count(timg)) return false;
        }
        return true;  // injectivity is automatic: signatures are distinct
    };
    auto rec = [&](auto&& self, int i) -> void {
        if (i == F) {
            if (leaf_ok()) {
                Automorphism a;
                a.perm = perm;
                found.push_back(std::move(a));
            }
            return;
        }
        for (int j = 0; j < F; ++j) {
            if (used[static_cast<std::size_t>(j)] ||
                incsize[static_cast<std::size_t>(j)] != incsize[static_cast<std::size_t>(i)])
                continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k)
                if (inter[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] !=
                    inter[static_cast<std::size_t>(j)][static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])])
                    ok = false;
            if (!ok) continue;
            perm[static_cast<std::size_t>(i)] = j;
            used[static_cast<std::size_t>(j)] = 1;
            self(self, i + 1);
            used[static_cast<std::size_t>(j)] = 0;
            perm[static_cast<std::size_t>(i)] = -1;
        }
    };
    rec(rec, 0);
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace gtladder

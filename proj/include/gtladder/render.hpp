#pragma once

#include <string>
#include <vector>

#include "gtladder/chains.hpp"
#include "gtladder/skeleton.hpp"

namespace gtladder {

namespace detail {

// (2,1,2) -> "2_1_2", usable as a DOT identifier suffix
inline std::string mv_slug(const MultiplicityVector& mv) {
    std::string out;
    for (std::size_t i = 0; i < mv.mults.size(); ++i) {
        if (i) out += "_";
        out += std::to_string(mv.mults[i]);
    }
    return out;
}

}  // namespace detail

// Text picture of a diagram, rows top (y = n) to bottom (y = 0). Points in the
// grid print as '.', terminals as 'T', virtual terminals as 'o'; edges of the
// given set as '---' and '|'.
inline std::string ascii_diagram(const GammaGrid& g, const Bitset& edges) {
    const int n = g.n;
    auto point_char = [&](int x, int y) -> char {
        if (!g.has_point(x, y)) return ' ';
        for (const GridPoint& t : g.terminals)
            if (t.x == x && t.y == y) return 'T';
        for (const GridPoint& t : g.virtual_terminals)
            if (t.x == x && t.y == y) return 'o';
        return '.';
    };
    auto has = [&](int x, int y, char dir) {
        const int e = g.eid(x, y, dir);
        return e >= 0 && edges.test(static_cast<std::size_t>(e));
    };

    std::string out;
    for (int y = n; y >= 0; --y) {
        std::string row;
        for (int x = 0; x <= n; ++x) {
            row += point_char(x, y);
            if (x < n) row += has(x, y, 'h') ? "---" : "   ";
        }
        while (!row.empty() && row.back() == ' ') row.pop_back();
        out += row + "\n";
        if (y == 0) break;
        std::string mid;
        for (int x = 0; x <= n; ++x) {
            mid += has(x, y - 1, 'v') ? '|' : ' ';
            if (x < n) mid += "   ";
        }
        while (!mid.empty() && mid.back() == ' ') mid.pop_back();
        out += mid + "\n";
    }
    return out;
}

inline std::string ascii_grid(const GammaGrid& g) { return ascii_diagram(g, g.full_edges); }

// Standalone SVG: the whole grid in light gray, the given edge set bold,
// terminals as large dots, virtual terminals as hollow dots. Integer
// coordinates only, so output is byte-deterministic.
inline std::string svg_diagram(const GammaGrid& g, const Bitset& edges) {
    const int scale = 48, margin = 28;
    const int side = 2 * margin + scale * g.n;
    auto px = [&](int x) { return margin + scale * x; };
    auto py = [&](int y) { return margin + scale * (g.n - y); };
    auto num = [](int v) { return std::to_string(v); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(side) + "\" height=\"" +
         num(side) + "\" viewBox=\"0 0 " + num(side) + " " + num(side) + "\">\n";
    s += "<rect width=\"" + num(side) + "\" height=\"" + num(side) + "\" fill=\"white\"/>\n";

    auto line = [&](const GridEdge& e, const char* color, int width) {
        const int x2 = e.dir == 'h' ? e.x + 1 : e.x;
        const int y2 = e.dir == 'h' ? e.y : e.y + 1;
        s += "<line x1=\"" + num(px(e.x)) + "\" y1=\"" + num(py(e.y)) + "\" x2=\"" + num(px(x2)) +
             "\" y2=\"" + num(py(y2)) + "\" stroke=\"" + color + "\" stroke-width=\"" +
             num(width) + "\" stroke-linecap=\"round\"/>\n";
    };
    for (std::size_t i = 0; i < g.edges.size(); ++i) line(g.edges[i], "#c8c8c8", 2);
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (edges.test(i)) line(g.edges[i], "#1a1a1a", 5);

    for (int y = 0; y <= g.n; ++y)
        for (int x = 0; x <= g.n; ++x) {
            if (!g.has_point(x, y)) continue;
            s += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
                 "\" r=\"3\" fill=\"#555555\"/>\n";
        }
    for (const GridPoint& t : g.terminals)
        s += "<circle cx=\"" + num(px(t.x)) + "\" cy=\"" + num(py(t.y)) +
             "\" r=\"7\" fill=\"#1a1a1a\"/>\n";
    for (const GridPoint& t : g.virtual_terminals)
        s += "<circle cx=\"" + num(px(t.x)) + "\" cy=\"" + num(py(t.y)) +
             "\" r=\"6\" fill=\"white\" stroke=\"#1a1a1a\" stroke-width=\"2\"/>\n";
    s += "</svg>\n";
    return s;
}

// neato-ready graph of the full grid; terminals and virtual terminals marked.
inline std::string dot_grid(const GammaGrid& g) {
    std::string s = "graph grid_" + detail::mv_slug(g.mv) + " {\n";
    s += "  layout=neato;\n  node [shape=point, width=0.08];\n";
    auto name = [](int x, int y) {
        return "p" + std::to_string(x) + "_" + std::to_string(y);
    };
    for (int y = 0; y <= g.n; ++y)
        for (int x = 0; x <= g.n; ++x) {
            if (!g.has_point(x, y)) continue;
            std::string attrs = "pos=\"" + std::to_string(x) + "," + std::to_string(y) + "!\"";
            for (std::size_t j = 0; j < g.terminals.size(); ++j)
                if (g.terminals[j].x == x && g.terminals[j].y == y)
                    attrs += ", shape=circle, width=0.22, label=\"t" + std::to_string(j) + "\"";
            for (const GridPoint& t : g.virtual_terminals)
                if (t.x == x && t.y == y)
                    attrs += ", shape=circle, width=0.18, label=\"v\"";
            s += "  " + name(x, y) + " [" + attrs + "];\n";
        }
    for (const GridEdge& e : g.edges) {
        const int x2 = e.dir == 'h' ? e.x + 1 : e.x;
        const int y2 = e.dir == 'h' ? e.y : e.y + 1;
        s += "  " + name(e.x, e.y) + " -- " + name(x2, y2) + ";\n";
    }
    return s + "}\n";
}

inline std::string dot_skeleton(const GammaGrid& g, const SkeletonGraph& sk) {
    std::string s = "graph skeleton_" + detail::mv_slug(g.mv) + " {\n  node [shape=circle];\n";
    for (std::size_t v = 0; v < sk.verts.size(); ++v)
        s += "  v" + std::to_string(v) + ";\n";
    for (std::size_t v = 0; v < sk.verts.size(); ++v)
        for (int w : sk.adj[v])
            if (static_cast<std::size_t>(w) > v)
                s += "  v" + std::to_string(v) + " -- v" + std::to_string(w) + ";\n";
    return s + "}\n";
}

// The chain adjacency tree; node label = chain label and length, edge label =
// number of shared ridge points.
inline std::string dot_chain_graph(const GammaGrid& g, const ChainSet& cs, const ChainGraph& cg) {
    std::string s = "graph chains_" + detail::mv_slug(g.mv) + " {\n  node [shape=box];\n";
    for (int c : cg.nodes)
        s += "  c" + std::to_string(c) + " [label=\"" +
             cs.chains[static_cast<std::size_t>(c)].label + " (" +
             std::to_string(cs.chains[static_cast<std::size_t>(c)].length()) + ")\"];\n";
    for (const auto& [a, b] : cg.edges)
        s += "  c" + std::to_string(a) + " -- c" + std::to_string(b) + " [label=\"" +
             std::to_string(cs.adjacency[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) +
             "\"];\n";
    return s + "}\n";
}

// Edge indices of a diagram in canonical order, for serialization.
inline std::vector<int> edge_indices(const Bitset& edges) {
    std::vector<int> out;
    edges.for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
}

}  // namespace gtladder

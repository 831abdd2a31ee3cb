// Release acceptance suite.  Each numbered check prints exactly one PASS/FAIL
// line with a short account of what was covered; the exit code is the number
// of failed checks.  Budget-limited enumerations are reported as explicit
// skips, never silently narrowed.

#include "gtladder/gtladder.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace gtladder;

namespace {

int g_failures = 0;

void report(int num, const char* what, bool pass, const std::string& detail, double secs) {
    std::printf("%d. %-42s %s  (%s) [%.1fs]\n", num, what, pass ? "PASS" : "FAIL",
                detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::vector<MultiplicityVector> shapes(int n_lo, int n_hi, int m_min) {
    std::vector<MultiplicityVector> out;
    for (int n = n_lo; n <= n_hi; ++n)
        for (const MultiplicityVector& v : compositions(n))
            if (v.m() >= m_min) out.push_back(v);
    return out;
}

bool is_segment(const MultiplicityVector& v) { return v.mults == std::vector<int>{1, 1}; }

const Automorphism* find_gen(const std::vector<Automorphism>& gens, const std::string& label) {
    for (const auto& a : gens)
        if (a.label == label) return &a;
    return nullptr;
}

Automorphism conj(const Automorphism& t, const Automorphism& a) {
    return compose(t, compose(a, t));
}

std::string read_all(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// --- 1 + 2: diameter formula and the zigzag witness, n <= 7 -------------------

void check_diameter(bool& ok1, std::string& det1, bool& ok2, std::string& det2) {
    ok1 = ok2 = true;
    int count = 0;
    std::string note, bad1, bad2;
    for (const MultiplicityVector& v : shapes(2, 7, 2)) {
        GammaGrid g(v);
        SkeletonGraph s = build_skeleton(g, 150000);
        const long long want = diameter_formula(v);
        const long long bfs = bfs_diameter(s);
        auto [zh, zv] = zigzag_vertices(g);
        const long long zd = bfs_dist(s, s.find_vertex(zh.edges), s.find_vertex(zv.edges));
        ++count;
        if (is_segment(v)) {
            // the one exception: must be observed and reported, not asserted away
            note = "; (1,1) reported: BFS=" + std::to_string(bfs) + " vs formula=" +
                   std::to_string(want);
            if (bfs != 1 || want != 0) ok1 = false;
            if (zd != 1) ok2 = false;
            continue;
        }
        if (bfs != want) {
            ok1 = false;
            bad1 += " " + v.str();
        }
        if (zd != want) {
            ok2 = false;
            bad2 += " " + v.str();
        }
    }
    det1 = std::to_string(count) + " shapes, n<=7, m>=2" + note + bad1;
    det2 = std::to_string(count - 1) + " zigzag pairs match the formula" + bad2;
}

// --- 3: random connecting walks ------------------------------------------------

void check_connect(bool& ok, std::string& det) {
    ok = true;
    long long pairs = 0;
    std::string bad;
    for (const MultiplicityVector& v : shapes(1, 6, 1)) {
        GammaGrid g(v);
        auto verts = enumerate_vertices(g, 30000);
        SkeletonGraph s = build_skeleton(g, 30000);
        const long long bound = is_segment(v) ? 1 : diameter_formula(v);
        std::mt19937 rng(20240817u);
        std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
        for (int t = 0; t < 100; ++t) {
            const VertexDiagram& a = verts[pick(rng)];
            const VertexDiagram& b = verts[pick(rng)];
            auto walk = connect(g, a, b, &s);
            ++pairs;
            bool good = !walk.empty() && walk.front().edges == a.edges &&
                        walk.back().edges == b.edges &&
                        static_cast<long long>(walk.size()) - 1 <= bound;
            for (std::size_t i = 0; good && i + 1 < walk.size(); ++i)
                if (!is_edge(g, walk[i].edges, walk[i + 1].edges)) good = false;
            if (!good) {
                ok = false;
                bad += " " + v.str() + "#" + std::to_string(t);
                break;
            }
        }
    }
    det = std::to_string(pairs) + " random pairs, 100 per shape, n<=6" + bad;
}

// --- 4: the worked 3x3 example --------------------------------------------------

void check_example(bool& ok, std::string& det) {
    MultiplicityVector v = normalize(parse_partition("1,2,3"));
    GammaGrid g(v);
    const std::size_t f0 = enumerate_vertices(g).size();
    const long long diam = bfs_diameter(build_skeleton(g));
    const std::size_t order = close_group(g, generators(g)).size();
    ok = f0 == 7 && diam == 2 && order == 4;
    det = "(1,1,1): f_0=" + std::to_string(f0) + ", diameter=" + std::to_string(diam) +
          ", |Aut|=" + std::to_string(order) + ", want 7/2/4";
}

// --- 5: three independent group orders ------------------------------------------

void check_aut_orders(bool& ok, std::string& det) {
    ok = true;
    int count = 0;
    std::string bad;
    for (const MultiplicityVector& v : shapes(1, 6, 1)) {
        GammaGrid g(v);
        const unsigned long long want = aut_order_formula(v);
        const std::size_t closed = close_group(g, generators(g)).size();
        const std::size_t brute = brute_force_aut(g, 30000).size();
        ++count;
        if (closed != want || brute != want) {
            ok = false;
            bad += " " + v.str() + "(closed " + std::to_string(closed) + ", brute " +
                   std::to_string(brute) + ", formula " + std::to_string(want) + ")";
        }
    }
    det = std::to_string(count) + " shapes n<=6: closure = brute force = formula" + bad;
}

// --- 6: generator relations -------------------------------------------------------

void check_relations(bool& ok, std::string& det) {
    ok = true;
    int count = 0;
    std::string bad;
    for (const MultiplicityVector& v : shapes(1, 6, 1)) {
        GammaGrid g(v);
        std::vector<Automorphism> gens = generators(g);
        bool good = true;
        for (const Automorphism& a : gens)
            if (a.is_identity() || !compose(a, a).is_identity()) good = false;
        const Automorphism* mu = find_gen(gens, "mu");
        const Automorphism* tau = find_gen(gens, "tau");
        const Automorphism* rho = find_gen(gens, "rho");
        if (tau && mu) {
            if (const Automorphism* mu1 = find_gen(gens, "mu_1")) {
                if (!(conj(*tau, *mu) == *mu1)) good = false;
                if (!(conj(*tau, *mu1) == *mu)) good = false;
            }
        }
        if (rho && is_reverse_symmetric(v)) {
            if (mu && !(conj(*rho, *mu) == *mu)) good = false;
            for (int k = 1; k < v.m(); ++k) {
                const Automorphism* a = find_gen(gens, "mu_" + std::to_string(k));
                if (!a) continue;
                const Automorphism* b = find_gen(gens, "mu_" + std::to_string(v.m() - k));
                if (!b || !(conj(*rho, *a) == *b)) good = false;
            }
        }
        ++count;
        if (!good) {
            ok = false;
            bad += " " + v.str();
        }
    }
    det = std::to_string(count) + " shapes n<=6: involutions, tau and rho conjugation" + bad;
}

// --- 7: face lattice structure ------------------------------------------------------

void check_lattices(bool& ok, std::string& det) {
    ok = true;
    int enumerated = 0, exhaustive = 0;
    long long children = 0;
    std::string bad, skipped;
    int skip_count = 0;
    for (const MultiplicityVector& v : shapes(1, 6, 1)) {
        if (dimension(v) < 1) continue;
        GammaGrid g(v);
        FaceLattice L;
        try {
            L = enumerate_faces(g, 200000);
        } catch (const budget_error&) {
            ++skip_count;
            skipped += (skipped.empty() ? "" : " ") + v.str();
            continue;
        }
        ++enumerated;
        bool good = true;

        // Euler relation including the top face
        auto fv = L.f_vector();
        long long alt = 0, sign = 1;
        for (long long f : fv) {
            alt += sign * f;
            sign = -sign;
        }
        if (alt != 1) good = false;

        // facets are exactly the removable edges
        if (fv[static_cast<std::size_t>(L.d - 1)] !=
            static_cast<long long>(g.removable.count()))
            good = false;

        // grading sanity plus downward closure: every face sits at its
        // recomputed region count, and every repaired single-deletion child is
        // itself an enumerated face (deletions may cascade past one level, so
        // children are subfaces, not necessarily covers)
        for (long long k = 0; good && k <= L.d; ++k)
            for (const Bitset& face : L.by_dim[static_cast<std::size_t>(k)]) {
                if (bounded_regions(g, face) != k) {
                    good = false;
                    break;
                }
                if (k == 0) continue;
                face.for_each([&](std::size_t e) {
                    Bitset cut = face;
                    cut.reset(e);
                    if (auto child = repair(g, cut)) {
                        auto it = L.index.find(*child);
                        if (it == L.index.end() || it->second.first >= k)
                            good = false;
                        else
                            ++children;
                    }
                });
            }

        // the covering-pair claim itself: no strict inclusion with a level gap
        // may lack an intermediate face, so every cover steps exactly one level
        if (good && L.total_faces() <= 10000) {
            ++exhaustive;
            std::vector<std::pair<Bitset, long long>> all;
            for (long long k = L.d; k >= 0; --k)
                for (const Bitset& f : L.by_dim[static_cast<std::size_t>(k)])
                    all.push_back({f, k});
            for (std::size_t gi = 0; good && gi < all.size(); ++gi) {
                std::vector<std::size_t> below;
                for (std::size_t fi = 0; fi < all.size(); ++fi)
                    if (fi != gi && all[fi].second < all[gi].second &&
                        includes(all[fi].first, all[gi].first))
                        below.push_back(fi);
                for (std::size_t fi : below) {
                    if (all[fi].second >= all[gi].second - 1) continue;
                    bool between = false;
                    for (std::size_t hi : below)
                        if (hi != fi && all[hi].second > all[fi].second &&
                            includes(all[fi].first, all[hi].first)) {
                            between = true;
                            break;
                        }
                    if (!between) {
                        good = false;
                        break;
                    }
                }
            }
        }

        if (!good) {
            ok = false;
            bad += " " + v.str();
        }
    }
    det = std::to_string(enumerated) + " lattices enumerated, " + std::to_string(children) +
          " closure children, no-gap cover check on " + std::to_string(exhaustive) +
          " lattices <=10000 faces";
    if (skip_count > 0)
        det += "; " + std::to_string(skip_count) + " skipped over face budget: " + skipped;
    if (!bad.empty()) det += "; FAILED:" + bad;
}

// --- 8: chain structure under the automorphism group --------------------------------

void check_chains(bool& ok, std::string& det) {
    ok = true;
    int count = 0;
    long long auts = 0;
    std::string bad;
    for (const MultiplicityVector& v : shapes(1, 6, 1)) {
        GammaGrid g(v);
        ChainSet cs = partition_chains(g);
        bool good = true;

        std::vector<int> seen(g.removable_list.size(), 0);
        for (const FacetChain& c : cs.chains)
            for (int f : c.facets) ++seen[static_cast<std::size_t>(f)];
        for (int s : seen)
            if (s != 1) good = false;

        if (v.m() >= 2) {
            try {
                ChainGraph cg = build_chain_graph(g, cs);  // throws unless a tree
                for (int node : cg.nodes)
                    if ((cg.degree(node) <= 1) !=
                        (cs.chains[static_cast<std::size_t>(node)].length() == 2))
                        good = false;
            } catch (const precondition_error&) {
                good = false;
            }
        }

        auto group = close_group(g, generators(g));
        for (const Automorphism& a : group) {
            ++auts;
            if (!check_orientation_lemmas(g, cs, a).all()) good = false;
        }

        if (v.m() >= 3) {
            BoundarySequence seq = boundary_sequence(g, cs);
            bool reversed = false;
            for (const Automorphism& a : group) {
                const int act = boundary_sequence_action(g, cs, seq, a);
                if (act == 0) good = false;
                if (act == -1) reversed = true;
            }
            if (reversed && !is_reverse_symmetric(v)) good = false;
        }

        ++count;
        if (!good) {
            ok = false;
            bad += " " + v.str();
        }
    }
    det = std::to_string(count) + " shapes n<=6, " + std::to_string(auts) +
          " group elements pass the orientation lemmas" + bad;
}

// --- 9: byte-identical JSON from the binary -------------------------------------------

void check_determinism(bool& ok, std::string& det) {
    ok = true;
    std::string bad;
#ifdef GTPOLY_BIN
    const std::string bin = GTPOLY_BIN;
#else
    const std::string bin = "./gtpoly";
#endif
    const std::vector<std::string> invocations = {
        "info 1,2,2,3 --format json",  "diameter 1,2,3 --format json",
        "aut 1,2,2 --format json",     "chains 2,2,3,3 --format json",
        "verify --max-n 3 --format json"};
    int runs = 0;
    for (const std::string& args : invocations) {
        std::string out[2];
        for (int r = 0; r < 2; ++r) {
            const std::string path = "/tmp/gtpoly_acceptance_" + std::to_string(r) + ".json";
            const std::string cmd = bin + " " + args + " > " + path + " 2>/dev/null";
            if (std::system(cmd.c_str()) != 0) {
                ok = false;
                bad += " [" + args + " exited nonzero]";
                break;
            }
            out[r] = read_all(path);
            std::remove(path.c_str());
            ++runs;
        }
        if (out[0].empty() || out[0] != out[1]) {
            ok = false;
            bad += " [" + args + " differs]";
        }
    }
    det = std::to_string(runs) + " runs over " + std::to_string(invocations.size()) +
          " subcommands" + bad;
}

}  // namespace

int main() {
    {
        Timer t;
        bool ok1, ok2;
        std::string det1, det2;
        check_diameter(ok1, det1, ok2, det2);
        const double shared = t.secs();
        report(1, "skeleton diameter matches the formula", ok1, det1, shared);
        report(2, "zigzag pair realizes the diameter", ok2, det2 + "; same sweep", 0.0);
    }
    {
        Timer t;
        bool ok;
        std::string det;
        check_connect(ok, det);
        report(3, "connect() walks are valid and short", ok, det, t.secs());
    }
    {
        Timer t;
        bool ok;
        std::string det;
        check_example(ok, det);
        report(4, "order-3 example: 7 vertices, diam 2, Aut 4", ok, det, t.secs());
    }
    {
        Timer t;
        bool ok;
        std::string det;
        check_aut_orders(ok, det);
        report(5, "group orders: closure = brute = formula", ok, det, t.secs());
    }
    {
        Timer t;
        bool ok;
        std::string det;
        check_relations(ok, det);
        report(6, "generator relations hold exactly", ok, det, t.secs());
    }
    {
        Timer t;
        bool ok;
        std::string det;
        check_lattices(ok, det);
        report(7, "face lattices are graded with Euler = 1", ok, det, t.secs());
    }
    {
        Timer t;
        bool ok;
        std::string det;
        check_chains(ok, det);
        report(8, "chain structure respected by the group", ok, det, t.secs());
    }
    {
        Timer t;
        bool ok;
        std::string det;
        check_determinism(ok, det);
        report(9, "JSON output is byte-identical", ok, det, t.secs());
    }
    if (g_failures == 0)
        std::printf("all 9 criteria pass\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures;
}

#include "hqg/holographic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

namespace hqg {

namespace {

using SideKey = std::pair<int, int>;

SideKey side_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::map<SideKey, std::vector<std::pair<int, int>>> side_map(const Tiling &t) {
    std::map<SideKey, std::vector<std::pair<int, int>>> m;
    for (std::size_t i = 0; i < t.tiles.size(); ++i)
        for (int j = 0; j < 5; ++j)
            m[side_key(t.tiles[i][j], t.tiles[i][(j + 1) % 5])].push_back({static_cast<int>(i), j});
    return m;
}

int side_of(const LabeledGraph &g, int t, int e) {
    const auto &rot = g.rotation(t);
    auto it = std::find(rot.begin(), rot.end(), e);
    if (it == rot.end()) throw LabelMismatch("edge not in the rotation of " + vertex_label(t));
    return static_cast<int>(it - rot.begin());
}

std::string tile_leg(int t, int j) { return "t" + std::to_string(t) + "_" + std::to_string(j); }
std::string layer_leg(int t, int k, int j) {
    return "t" + std::to_string(t) + "L" + std::to_string(k) + "_" + std::to_string(j);
}

int dangling_vertex_tile(const LabeledGraph &g, int u) { return g.other_end(g.incident(u).at(0), u); }

Pauli letter_pauli(int n, const std::vector<std::pair<int, char>> &ops) {
    Pauli p(n);
    for (auto [q, c] : ops) {
        if (c == 'X' || c == 'Y') p.x[q] ^= 1;
        if (c == 'Z' || c == 'Y') p.z[q] ^= 1;
        if (c == 'Y') p.phase = (p.phase + 1) & 3;
    }
    return p;
}

// Z2 gauge and flux constraints on the listed legs; missing labels are skipped.
std::vector<Pauli> z2_constraints(const LabeledGraph &g, const std::vector<std::string> &labels, bool flux) {
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) idx[labels[i]] = static_cast<int>(i);
    const int n = static_cast<int>(labels.size());
    std::vector<Pauli> out;
    for (int v : g.V1()) {
        Pauli p(n);
        auto it = idx.find(vertex_label(v));
        if (it != idx.end()) p.x[it->second] = 1;
        for (int e : g.incident(v)) {
            auto ie = idx.find(g.edges()[e].label());
            if (ie != idx.end()) p.x[ie->second] = 1;
        }
        if (!p.is_identity()) out.push_back(p);
    }
    if (flux) {
        const auto V1 = g.V1();
        const int ne = static_cast<int>(g.edges().size());
        std::vector<std::vector<std::uint8_t>> rows;
        for (int v : V1) {
            std::vector<std::uint8_t> r(ne, 0);
            for (int e : g.incident(v)) r[e] = 1;
            rows.push_back(r);
        }
        for (const auto &z : gf2_nullspace(rows, ne)) {
            Pauli p(n);
            for (int e = 0; e < ne; ++e)
                if (z[e]) {
                    auto ie = idx.find(g.edges()[e].label());
                    if (ie == idx.end()) throw LabelMismatch("edge " + g.edges()[e].label() + " has no leg");
                    p.z[ie->second] = 1;
                }
            out.push_back(p);
        }
    }
    return independent_subset(out);
}

std::vector<std::string> leg_labels(const StabilizerState &s) {
    std::vector<std::string> out;
    for (const auto &l : s.legs()) out.push_back(l.label);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- tiling

Tiling pentagon_tiling(int l) {
    if (l < 0) throw UnsupportedSpec("negative cutoff");
    if (l > 2) throw CutoffTooLarge("cutoff " + std::to_string(l) + " exceeds 2");
    Tiling t;
    t.cutoff = l;
    t.tiles.push_back({0, 1, 2, 3, 4});
    t.layer.push_back(0);
    std::vector<int> c(5, 1);
    t.boundary = {0, 1, 2, 3, 4};
    int next = 5;
    for (int layer = 1; layer <= l; ++layer) {
        const auto &b = t.boundary;
        const int m = static_cast<int>(b.size());
        int s0 = 0;
        while (s0 < m && c[b[s0]] == 3) ++s0;
        if (s0 == m) throw DecompositionFailed("patch boundary has no corner to start from");
        std::vector<std::vector<int>> runs;
        int i = s0;
        do {
            std::vector<int> run{b[i]};
            int j = i;
            do {
                j = (j + 1) % m;
                run.push_back(b[j]);
            } while (c[b[j]] == 3);
            runs.push_back(run);
            i = j;
        } while (i != s0);

        std::map<int, int> spoke;
        for (const auto &run : runs)
            if (c[run.back()] == 2) spoke[run.back()] = next++;
        std::vector<int> nb;
        std::vector<std::array<int, 5>> fresh;
        for (const auto &run : runs) {
            const int A = run.front(), B = run.back();
            const int k = static_cast<int>(run.size()) - 1;
            const int r = 4 - k;
            if (r < 0) throw DecompositionFailed("run of " + std::to_string(k) + " sides cannot close a pentagon");
            std::vector<int> path(r, -1);
            if (c[B] == 2) {
                if (r == 0) throw DecompositionFailed("no room for a spoke");
                path[0] = spoke.at(B);
            }
            if (c[A] == 2) {
                if (r == 0 || path[r - 1] != -1) throw DecompositionFailed("spokes collide");
                path[r - 1] = spoke.at(A);
            }
            for (auto &p : path)
                if (p < 0) p = next++;
            std::array<int, 5> tile{};
            int q = 0;
            for (int x = k; x >= 0; --x) tile[q++] = run[x];
            for (int x = r - 1; x >= 0; --x) tile[q++] = path[x];
            fresh.push_back(tile);
            if (c[A] == 1) nb.push_back(A);
            if (c[A] == 2) nb.push_back(spoke.at(A));
            for (int x = r - 1; x >= 0; --x) {
                if (c[A] == 2 && x == r - 1) continue;
                if (c[B] == 2 && x == 0) continue;
                nb.push_back(path[x]);
            }
        }
        c.resize(next, 0);
        for (const auto &tile : fresh) {
            for (int p : tile) ++c[p];
            t.tiles.push_back(tile);
            t.layer.push_back(layer);
        }
        t.boundary = nb;
    }
    t.num_points = next;
    return t;
}

TilingRecount recount(const Tiling &t) {
    TilingRecount r;
    r.tiles = static_cast<int>(t.tiles.size());
    auto sm = side_map(t);
    bool sides_ok = true;
    std::vector<std::vector<int>> adj(r.tiles);
    for (const auto &[k, v] : sm) {
        if (v.size() == 1) ++r.dangling;
        else if (v.size() == 2) {
            ++r.bonds;
            adj[v[0].first].push_back(v[1].first);
            adj[v[1].first].push_back(v[0].first);
        } else sides_ok = false;
    }
    std::map<int, int> valence;
    for (const auto &tile : t.tiles)
        for (int p : tile) ++valence[p];
    r.points = static_cast<int>(valence.size());
    r.euler = r.points - static_cast<int>(sm.size()) + r.tiles;

    std::set<int> bpts(t.boundary.begin(), t.boundary.end());
    r.valence_ok = sides_ok;
    for (const auto &[p, n] : valence)
        if (bpts.count(p) ? n > 3 : n != 4) r.valence_ok = false;
    const int m = static_cast<int>(t.boundary.size());
    for (int i = 0; i < m; ++i) {
        auto it = sm.find(side_key(t.boundary[i], t.boundary[(i + 1) % m]));
        if (it == sm.end() || it->second.size() != 1) r.valence_ok = false;
    }
    if (m != r.dangling) r.valence_ok = false;

    std::vector<int> dist(r.tiles, -1);
    std::deque<int> q{0};
    dist[0] = 0;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y : adj[x])
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
    }
    r.layers_match = dist == t.layer;
    int maxd = *std::max_element(dist.begin(), dist.end());
    r.per_layer.assign(std::max(maxd, 0) + 1, 0);
    for (int d : dist)
        if (d >= 0) ++r.per_layer[d];
    return r;
}

LabeledGraph happy_graph(const Tiling &t) {
    LabeledGraph g;
    const int T = static_cast<int>(t.tiles.size());
    for (int i = 0; i < T; ++i) g.add_vertex(i, 1);
    auto sm = side_map(t);
    std::vector<std::vector<int>> rot(T, std::vector<int>(5, -1));
    std::set<int> boundary_tiles;
    const int m = static_cast<int>(t.boundary.size());
    for (int i = 0; i < m; ++i) {
        const auto &owners = sm.at(side_key(t.boundary[i], t.boundary[(i + 1) % m]));
        auto [tile, j] = owners.at(0);
        int u = T + i;
        g.add_vertex(u, 0, true);
        int e = g.add_edge(u, tile);
        rot[tile][j] = e;
        g.set_rotation(u, {e});
        boundary_tiles.insert(tile);
    }
    for (const auto &[k, v] : sm) {
        if (v.size() != 2) continue;
        auto [a, ja] = v[0];
        auto [b, jb] = v[1];
        if (a > b) {
            std::swap(a, b);
            std::swap(ja, jb);
        }
        int e = g.add_edge(a, b);
        rot[a][ja] = e;
        rot[b][jb] = e;
    }
    for (int i = 0; i < T; ++i) {
        g.set_rotation(i, rot[i]);
        if (boundary_tiles.count(i)) g.set_boundary(i, true);
    }
    g.canonicalize();
    return g;
}

std::string projector_name(BulkProjector p) {
    switch (p) {
    case BulkProjector::identity: return "identity";
    case BulkProjector::gauge_invariant: return "gauge-invariant";
    case BulkProjector::flux_free: return "flux-free";
    }
    return "?";
}

// ---------------------------------------------------------------- codes

std::vector<Pauli> HolographicCode::bulk_constraints() const {
    if (projector == BulkProjector::identity) return {};
    return z2_constraints(graph, leg_labels(encoder), projector == BulkProjector::flux_free);
}

StabilizerState HolographicCode::codespace_state() const {
    StabilizerState s = encoder;
    for (const auto &p : bulk_constraints()) s.project(p);
    return s;
}

std::set<int> HolographicCode::boundary_qubits(const std::set<int> &R) const {
    std::set<int> out;
    for (int u : R)
        for (const auto &l : boundary_legs.at(u)) out.insert(encoder.leg_index(l));
    return out;
}

std::vector<std::string> HolographicCode::input_labels() const {
    std::vector<std::string> out;
    for (int q : encoder.inputs()) out.push_back(encoder.legs()[q].label);
    return out;
}

Pauli HolographicCode::logical(const std::map<std::string, char> &ops) const {
    auto in = input_labels();
    std::vector<std::pair<int, char>> list;
    for (const auto &[l, c] : ops) {
        auto it = std::find(in.begin(), in.end(), l);
        if (it == in.end()) throw LabelMismatch("no bulk leg " + l);
        list.push_back({static_cast<int>(it - in.begin()), c});
    }
    return letter_pauli(static_cast<int>(in.size()), list);
}

Pauli HolographicCode::boundary_pauli(const std::map<std::string, char> &ops) const {
    std::vector<std::pair<int, char>> list;
    for (const auto &[l, c] : ops) {
        int q = encoder.leg_index(l);
        if (q < 0) throw LabelMismatch("no leg " + l);
        list.push_back({q, c});
    }
    return letter_pauli(encoder.size(), list);
}

HolographicCode build_happy(int l) {
    HolographicCode c;
    c.name = "happy-l" + std::to_string(l);
    c.cutoff = l;
    c.tiling = pentagon_tiling(l);
    c.graph = happy_graph(c.tiling);
    const auto &g = c.graph;
    const int T = static_cast<int>(c.tiling.tiles.size());
    StabilizerState s;
    for (int t = 0; t < T; ++t) {
        auto pt = perfect_tensor("t" + std::to_string(t) + "_");
        s = t == 0 ? pt : tensor_product(s, pt);
        for (int j = 0; j < 5; ++j) {
            int e = g.rotation(t)[j];
            if (g.is_dangling(e)) continue;
            int o = g.other_end(e, t);
            if (o < t) s.contract(tile_leg(t, j + 1), tile_leg(o, side_of(g, o, e) + 1));
        }
        s.relabel(tile_leg(t, 0), vertex_label(t));
    }
    if (!s.is_isometry()) throw NotIsometryAfterContraction("HaPPY network is not an isometry");
    c.encoder = s;
    for (int u : g.V0()) {
        int t = dangling_vertex_tile(g, u);
        c.boundary_legs[u] = {tile_leg(t, side_of(g, t, g.incident(u)[0]) + 1)};
    }
    if (l == 0) {
        std::vector<Subsystem> phys;
        for (int q : s.outputs()) phys.push_back({s.legs()[q].label, 2});
        c.dense = CodeIsometry(s.dense_isometry(), Factorization({{vertex_label(0), 2}}), Factorization(phys));
    }
    return c;
}

HolographicCode build_lote(int l, const FiniteGroup &G, bool gauged) {
    if (G.order() != 2)
        throw ScaleExceeded("LOTE assembly is available for Z2 only (requested order " + std::to_string(G.order()) + ")");
    HolographicCode c;
    c.name = std::string(gauged ? "gauged-" : "") + "lote-z2-l" + std::to_string(l);
    c.cutoff = l;
    c.tiling = pentagon_tiling(l);
    c.graph = happy_graph(c.tiling);
    c.edge_qubits = true;
    c.projector = gauged ? BulkProjector::gauge_invariant : BulkProjector::identity;
    const auto &g = c.graph;
    const int T = static_cast<int>(c.tiling.tiles.size());
    StabilizerState s;
    for (int t = 0; t < T; ++t) {
        for (int k = 0; k < 6; ++k) {
            auto pt = perfect_tensor("t" + std::to_string(t) + "L" + std::to_string(k) + "_");
            s = (t == 0 && k == 0) ? pt : tensor_product(s, pt);
        }
        for (int j = 0; j < 5; ++j) {
            int e = g.rotation(t)[j];
            const std::string el = g.edges()[e].label();
            if (g.is_dangling(e)) {
                s.relabel(layer_leg(t, j, 0), el);
                continue;
            }
            int o = g.other_end(e, t);
            if (o > t) continue;
            int jo = side_of(g, o, e);
            for (int k = 0; k < 6; ++k) s.contract(layer_leg(t, k, j + 1), layer_leg(o, k, jo + 1));
            const std::string cp = "c" + el + "_";
            s = tensor_product(s, copy_tensor_z2(cp));
            s.contract(cp + "o1", layer_leg(o, jo, 0));
            s.contract(cp + "o2", layer_leg(t, j, 0));
            s.relabel(cp + "in", el);
        }
        s.relabel(layer_leg(t, 5, 0), vertex_label(t));
    }
    if (!s.is_isometry()) throw NotIsometryAfterContraction("LOTE network is not an isometry");
    c.encoder = s;
    for (int u : g.V0()) {
        int t = dangling_vertex_tile(g, u);
        int side = side_of(g, t, g.incident(u)[0]);
        std::vector<int> dsides, other;
        for (int j = 0; j < 5; ++j) (g.is_dangling(g.rotation(t)[j]) ? dsides : other).push_back(j);
        other.push_back(5);
        std::vector<std::string> legs;
        for (int j : dsides) legs.push_back(layer_leg(t, side, j + 1));
        for (int k : other) legs.push_back(layer_leg(t, k, side + 1));
        std::sort(legs.begin(), legs.end(),
                  [&](const std::string &a, const std::string &b) { return s.leg_index(a) < s.leg_index(b); });
        c.boundary_legs[u] = legs;
    }
    return c;
}

bool happy_global_duality(const HolographicCode &c) {
    std::map<std::string, char> ops;
    for (const auto &[u, legs] : c.boundary_legs)
        for (const auto &l : legs) ops[l] = 'X';
    for (int t : c.graph.V1()) ops[vertex_label(t)] = 'X';
    return c.codespace_state().membership(c.boundary_pauli(ops)) == 1;
}

// ---------------------------------------------------------------- wedges

std::set<int> Wedge::interior_edges() const {
    std::set<int> out;
    for (int e : edges)
        if (!ext.count(e)) out.insert(e);
    return out;
}

Wedge make_wedge(const LabeledGraph &g, const std::set<int> &R, const std::set<int> &vertices,
                 const std::set<int> &edges) {
    Wedge w;
    w.region = R;
    w.vertices = vertices;
    w.edges = edges;
    auto inside = [&](int v) { return R.count(v) > 0 || vertices.count(v) > 0; };
    for (int e : edges) {
        if (g.is_dangling(e)) continue;
        const Edge &ed = g.edges()[e];
        if (!inside(ed.tail) || !inside(ed.head)) w.ext.insert(e);
    }
    for (const auto &ed : g.edges())
        if (inside(ed.tail) != inside(ed.head)) ++w.gamma;
    return w;
}

Wedge greedy_wedge(const LabeledGraph &g, const std::set<int> &R, const std::vector<int> &order) {
    std::set<int> edges, verts;
    for (int u : R) {
        if (!g.has_vertex(u) || g.alpha(u) != 0) throw LabelMismatch(vertex_label(u) + " is not a boundary vertex");
        for (int e : g.incident(u)) edges.insert(e);
    }
    const std::vector<int> V1 = order.empty() ? g.V1() : order;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v : V1) {
            if (verts.count(v)) continue;
            auto inc = g.incident(v);
            int in = 0;
            for (int e : inc) in += edges.count(e) ? 1 : 0;
            if (2 * in >= static_cast<int>(inc.size())) {
                verts.insert(v);
                for (int e : inc)
                    if (!g.is_dangling(e)) edges.insert(e);
                changed = true;
            }
        }
    }
    return make_wedge(g, R, verts, edges);
}

Wedge complement_wedge(const LabeledGraph &g, const std::set<int> &R) {
    std::set<int> Rc;
    for (int u : g.V0())
        if (!R.count(u)) Rc.insert(u);
    Wedge wc = greedy_wedge(g, Rc);
    std::set<int> verts, edges;
    for (int v : g.V1())
        if (!wc.vertices.count(v)) verts.insert(v);
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e)
        if (!wc.edges.count(e) || wc.ext.count(e)) edges.insert(e);
    return make_wedge(g, R, verts, edges);
}

ProbingReport near_boundary_probing(const LabeledGraph &g, const Wedge &w) {
    ProbingReport r;
    auto fail = [&](int c, const std::string &d) {
        if (r.ok) {
            r.ok = false;
            r.condition = c;
            r.detail = d;
        }
    };
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        if (!g.is_dangling(e)) continue;
        const Edge &ed = g.edges()[e];
        int u = g.alpha(ed.tail) == 0 ? ed.tail : ed.head;
        if (w.edges.count(e) != w.region.count(u)) fail(1, ed.label() + " breaks the dangling-edge condition");
    }
    std::set<int> reached(w.region.begin(), w.region.end());
    std::vector<int> stack(w.region.begin(), w.region.end());
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int e : g.incident(x)) {
            if (!w.edges.count(e)) continue;
            int y = g.other_end(e, x);
            if ((w.vertices.count(y) || w.region.count(y)) && reached.insert(y).second) stack.push_back(y);
        }
    }
    for (int v : w.vertices)
        if (!reached.count(v)) fail(2, vertex_label(v) + " has no path to the region");
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        if (g.is_dangling(e)) continue;
        const Edge &ed = g.edges()[e];
        bool touches = w.vertices.count(ed.tail) || w.vertices.count(ed.head);
        if (touches != (w.edges.count(e) > 0)) fail(3, ed.label() + " breaks the edge-inclusion condition");
    }
    return r;
}

bool greedy_order_independent(const LabeledGraph &g, const std::set<int> &R, int trials, unsigned seed) {
    Wedge ref = greedy_wedge(g, R);
    std::mt19937 rng(seed);
    auto order = g.V1();
    for (int i = 0; i < trials; ++i) {
        std::shuffle(order.begin(), order.end(), rng);
        Wedge w = greedy_wedge(g, R, order);
        if (w.vertices != ref.vertices || w.edges != ref.edges) return false;
    }
    return true;
}

std::vector<std::set<int>> contiguous_regions(const LabeledGraph &g, int max_size) {
    auto b = g.V0();
    const int m = static_cast<int>(b.size());
    std::vector<std::set<int>> out;
    for (int s = 1; s <= std::min(max_size, m - 1); ++s)
        for (int i = 0; i < m; ++i) {
            std::set<int> R;
            for (int k = 0; k < s; ++k) R.insert(b[(i + k) % m]);
            out.push_back(R);
        }
    if (max_size >= m) out.push_back(std::set<int>(b.begin(), b.end()));
    return out;
}

std::vector<Pauli> wedge_generators(const HolographicCode &c, const Wedge &w) {
    const auto &g = c.graph;
    std::vector<std::string> qubits;
    for (int v : w.vertices) qubits.push_back(vertex_label(v));
    if (c.edge_qubits)
        for (int e : w.interior_edges()) qubits.push_back(g.edges()[e].label());
    const int nq = static_cast<int>(qubits.size());
    std::vector<int> leg(nq);
    for (int i = 0; i < nq; ++i) leg[i] = c.encoder.leg_index(qubits[i]);
    std::vector<std::vector<std::uint8_t>> xrows, zrows;
    const auto cons = c.bulk_constraints();
    for (const auto &p : cons) {
        std::vector<std::uint8_t> xr(nq, 0), zr(nq, 0);
        for (int i = 0; i < nq; ++i) {
            xr[i] = p.x[leg[i]];
            zr[i] = p.z[leg[i]];
        }
        xrows.push_back(xr);
        zrows.push_back(zr);
    }
    std::vector<Pauli> out;
    for (char letter : {'X', 'Z'}) {
        // X-type products must overlap every Z part evenly and vice versa
        for (const auto &v : gf2_nullspace(letter == 'X' ? zrows : xrows, nq)) {
            std::map<std::string, char> ops;
            for (int i = 0; i < nq; ++i)
                if (v[i]) ops[qubits[i]] = letter;
            if (!ops.empty()) out.push_back(c.logical(ops));
        }
    }
    if (c.edge_qubits)
        for (int e : w.ext) {
            const int q = c.encoder.leg_index(g.edges()[e].label());
            bool central = true;
            for (const auto &p : cons) central = central && !p.z[q];
            if (central) out.push_back(c.logical({{g.edges()[e].label(), 'X'}}));
        }
    return out;
}

ReconstructionReport wedge_reconstruction(const HolographicCode &c, const Wedge &w) {
    ReconstructionReport r;
    auto gens = wedge_generators(c, w);
    r.generators = static_cast<int>(gens.size());
    if (gens.empty()) return r;
    auto res = pauli_reconstruct_many(c.codespace_state(), gens, c.boundary_qubits(w.region));
    for (const auto &p : res)
        if (p) {
            ++r.reconstructed;
            r.boundary_ops.push_back(*p);
        }
    return r;
}

// ---------------------------------------------------------------- grand orthogonality

CodeIsometry grand_orthogonality_tensor(const FiniteGroup &G) {
    auto rd = representations(G);
    int D = 0;
    for (const auto &r : rd.irreps) D += r.dim;
    const int n = G.order();
    Mat W = Mat::Zero(static_cast<long>(D) * D, n);
    int off = 0;
    for (const auto &r : rd.irreps) {
        const double s = std::sqrt(double(r.dim) / n);
        for (int g = 0; g < n; ++g)
            for (int i = 0; i < r.dim; ++i)
                for (int j = 0; j < r.dim; ++j)
                    W(static_cast<long>(off + i) * D + off + j, g) = s * std::conj(r.mats[g](i, j));
        off += r.dim;
    }
    return CodeIsometry(W, Factorization({{"g", n}}), Factorization({{"left", D}, {"right", D}}));
}

namespace {

Mat irrep_block_sum(const FiniteGroup &G, int h, bool conjugate) {
    auto rd = representations(G);
    int D = 0;
    for (const auto &r : rd.irreps) D += r.dim;
    Mat M = Mat::Zero(D, D);
    int off = 0;
    for (const auto &r : rd.irreps) {
        M.block(off, off, r.dim, r.dim) = conjugate ? Mat(r.mats[h].conjugate()) : r.mats[h];
        off += r.dim;
    }
    return M;
}

}  // namespace

Mat grand_left_action(const FiniteGroup &G, int h) { return irrep_block_sum(G, h, true); }
Mat grand_right_action(const FiniteGroup &G, int h) { return irrep_block_sum(G, h, false); }

// ---------------------------------------------------------------- gauging codes

StabilizerState gauging_map_state(const LabeledGraph &g, const std::string &input_prefix) {
    const auto V1 = g.V1();
    const int nv = static_cast<int>(V1.size()), ne = static_cast<int>(g.edges().size());
    std::vector<Leg> legs;
    for (int v : V1) legs.push_back({input_prefix + vertex_label(v), true});
    for (int v : V1) legs.push_back({vertex_label(v), false});
    for (const auto &e : g.edges()) legs.push_back({e.label(), false});
    const int n = static_cast<int>(legs.size());
    std::map<int, int> vpos;
    for (int i = 0; i < nv; ++i) vpos[V1[i]] = i;
    std::vector<Pauli> gens;
    for (int i = 0; i < nv; ++i) {
        Pauli p(n);
        p.x[i] = p.x[nv + i] = 1;
        gens.push_back(p);
        Pauli a(n);
        a.x[nv + i] = 1;
        for (int e : g.incident(V1[i])) a.x[2 * nv + e] = 1;
        gens.push_back(a);
    }
    std::vector<std::vector<std::uint8_t>> rows;
    for (int i = 0; i < nv; ++i) {
        std::vector<std::uint8_t> r(nv + ne, 0);
        r[i] = 1;
        for (int e : g.incident(V1[i])) r[nv + e] = 1;
        rows.push_back(r);
    }
    for (const auto &z : gf2_nullspace(rows, nv + ne)) {
        Pauli p(n);
        for (int i = 0; i < nv; ++i)
            if (z[i]) p.z[i] = p.z[nv + i] = 1;
        for (int e = 0; e < ne; ++e)
            if (z[nv + e]) p.z[2 * nv + e] = 1;
        gens.push_back(p);
    }
    StabilizerState s(legs, gens);
    if (!s.valid()) throw DecompositionFailed("gauging-map tableau is not a valid stabilizer state");
    return s;
}

std::vector<Pauli> z2_flux_free_constraints(const LabeledGraph &g, const std::vector<std::string> &labels) {
    return z2_constraints(g, labels, true);
}

namespace {

SymmetricSystem z2_system(const LabeledGraph &g) {
    auto Z2 = cyclic_group(2);
    Mat X = Mat::Zero(2, 2);
    X(0, 1) = X(1, 0) = 1.0;
    return make_symmetric_system(g, Z2, {Mat::Identity(2, 2), X});
}

Mat x_all(int qubits) {
    Mat X = Mat::Zero(2, 2);
    X(0, 1) = X(1, 0) = 1.0;
    Mat out = Mat::Identity(1, 1);
    for (int i = 0; i < qubits; ++i) out = kron(out, X);
    return out;
}

Pauli all_x_boundary(const HolographicCode &c) {
    std::map<std::string, char> ops;
    for (const auto &[u, legs] : c.boundary_legs)
        for (const auto &l : legs) ops[l] = 'X';
    return c.boundary_pauli(ops);
}

}  // namespace

GaugedCodeResult gauge_code(const HolographicCode &code, const FiniteGroup &G) {
    GaugedCodeResult r;
    if (G.order() == 1) {
        r.code = code;
        return r;
    }
    if (G.order() != 2) throw DualityAbsent("the code carries a Z2 global/global duality only");
    if (code.projector != BulkProjector::identity || code.edge_qubits)
        throw DualityAbsent("gauging needs an unconstrained bulk with trivial edges");
    if (!happy_global_duality(code)) throw DualityAbsent("global/global duality check failed on the input code");

    HolographicCode out = code;
    out.name = "gauged-" + code.name;
    out.projector = BulkProjector::flux_free;
    out.edge_qubits = true;
    out.dense.reset();
    StabilizerState gadj = adjoint_map(gauging_map_state(code.graph, "p:"));
    StabilizerState enc = code.encoder;
    for (int t : code.graph.V1()) enc.relabel(vertex_label(t), "p:" + vertex_label(t));
    out.encoder = chain(gadj, enc);

    std::map<std::string, char> a;
    for (int u : code.graph.V0()) a[code.graph.edges()[code.graph.incident(u)[0]].label()] = 'X';
    auto cs = out.codespace_state();
    Pauli T = all_x_boundary(out);
    for (const auto &[l, ch] : a) T.x[out.encoder.leg_index(l)] = 1;
    r.duality_deviation = cs.membership(T) == 1 ? 0.0 : 2.0;

    if (code.dense) {
        GaugeStructure gs(z2_system(code.graph));
        Mat Gm = gs.gauging_map(true);
        const Mat &V = code.dense->matrix();
        Mat Vp = V * Gm.adjoint();
        Mat Pff = Gm * Gm.adjoint();
        Mat A = Mat::Identity(gs.full_dim(), gs.full_dim());
        gs.apply_gauge_set(code.graph.V0(), 1, A);
        Mat U = x_all(static_cast<int>(code.dense->physical().size()));
        r.duality_deviation = std::max(r.duality_deviation, dev_norm((U * Vp - Vp * A) * Pff));
        out.dense_map = Vp;
        out.dense_bulk = gs.full_fact();
        out.dense_boundary = code.dense->physical();

        for (const auto &R : contiguous_regions(code.graph, static_cast<int>(code.graph.V0().size()))) {
            Wedge w = greedy_wedge(code.graph, R);
            if (w.vertices.empty()) continue;
            std::set<std::string> erase;
            for (int u : code.graph.V0())
                if (!R.count(u))
                    for (const auto &l : code.boundary_legs.at(u)) erase.insert(l);
            for (int t : w.vertices) {
                int u0 = -1;
                for (int u : R)
                    if (dangling_vertex_tile(code.graph, u) == t) u0 = u;
                if (u0 < 0) continue;
                GraphPath path = make_path(code.graph, {t, u0});
                for (const Mat &O : {x_all(1), Mat(Pauli::from_string("Z").dense())}) {
                    LabeledOperator Og = gs.dressed_operator(O, path);
                    Mat Ou = gs.undress_operator(Og, {t}, Gm);
                    auto rec = reconstruct_on_complement(*code.dense, erase, Ou);
                    Mat Ob = Mat::Identity(V.rows(), V.rows());
                    apply_local(rec.matrix, code.dense->physical(), rec.fact.labels(), Ob);
                    Mat Ofull = gs.apply_labeled(Og, Mat::Identity(gs.full_dim(), gs.full_dim()));
                    r.reconstruction_residual =
                        std::max(r.reconstruction_residual, dev_norm((Ob * Vp - Vp * Ofull) * Pff));
                    ++r.reconstructed;
                }
            }
        }
    }
    r.code = out;
    return r;
}

BoundarySymmetry induce_boundary_symmetry(const HolographicCode &code, const FiniteGroup &G) {
    BoundarySymmetry b;
    const auto &g = code.graph;
    if (G.order() == 1) {
        for (int u : g.V0()) b.site[u] = Pauli(code.encoder.size());
        b.representation_ok = true;
        return b;
    }
    if (G.order() != 2) throw UnsupportedSpec("symplectic boundary symmetry needs Z2");
    if (code.projector != BulkProjector::gauge_invariant)
        throw NotCorrectable("asymptotic symmetry is reconstructable only on a gauge-invariant bulk");
    auto cs = code.codespace_state();
    b.representation_ok = true;
    Pauli total(code.encoder.size());
    std::map<std::string, char> a;
    for (int u : g.V0()) {
        std::string el = g.edges()[g.incident(u)[0]].label();
        a[el] = 'X';
        auto p = pauli_reconstruct(cs, code.logical({{el, 'X'}}), code.boundary_qubits({u}));
        if (!p) throw NotCorrectable("A_" + vertex_label(u) + " is not reconstructable on its boundary site");
        Pauli sq = *p * *p;
        if (!p->hermitian() || !sq.is_identity() || sq.phase != 0) b.representation_ok = false;
        b.site[u] = *p;
        total = total * *p;
    }
    Pauli T = total;
    for (const auto &[l, ch] : a) T.x[code.encoder.leg_index(l)] ^= 1;
    b.duality_deviation = cs.membership(T) == 1 ? 0.0 : 2.0;
    return b;
}

UngaugedCodeResult ungauge_code(const HolographicCode &code, const FiniteGroup &G) {
    UngaugedCodeResult r;
    if (G.order() == 1) {
        r.code = code;
        return r;
    }
    if (G.order() != 2) throw DualityAbsent("ungauging is implemented for Z2 bulks");
    if (code.projector == BulkProjector::identity || !code.edge_qubits)
        throw DualityAbsent("ungauging needs a gauged bulk");
    HolographicCode out = code;
    out.name = "ungauged-" + code.name;
    out.projector = BulkProjector::identity;
    out.edge_qubits = false;
    out.dense_map.reset();
    out.encoder = chain(gauging_map_state(code.graph, "p:"), code.encoder);
    for (int t : code.graph.V1()) out.encoder.relabel("p:" + vertex_label(t), vertex_label(t));

    Pauli U(out.encoder.size());
    if (code.projector == BulkProjector::gauge_invariant) {
        auto bs = induce_boundary_symmetry(code, G);
        for (const auto &[u, p] : bs.site)
            for (const auto &l : code.boundary_legs.at(u)) {
                int qo = code.encoder.leg_index(l), qn = out.encoder.leg_index(l);
                U.x[qn] = p.x[qo];
                U.z[qn] = p.z[qo];
            }
    } else {
        U = all_x_boundary(out);
    }
    for (int t : code.graph.V1()) U.x[out.encoder.leg_index(vertex_label(t))] ^= 1;
    r.duality_deviation = out.encoder.membership(U) == 1 ? 0.0 : 2.0;

    if (code.dense_map) {
        GaugeStructure gs(z2_system(code.graph));
        Mat W = *code.dense_map * gs.gauging_map(true);
        std::vector<Subsystem> logical;
        for (int t : code.graph.V1()) logical.push_back({vertex_label(t), 2});
        out.dense = CodeIsometry(W, Factorization(logical), code.dense_boundary);
        Mat Ub = x_all(static_cast<int>(code.dense_boundary.size()));
        Mat Uv = x_all(static_cast<int>(logical.size()));
        r.duality_deviation = std::max(r.duality_deviation, dev_norm(Ub * W - W * Uv));
    }
    r.code = out;
    return r;
}

// ---------------------------------------------------------------- single-tile dense LOTE

BlockDenseLote block_dense_lote(const HolographicCode &code) {
    if (code.tiling.tiles.size() != 1 || !code.edge_qubits)
        throw ScaleExceeded("block-dense form is available for the single-tile LOTE only");
    BlockDenseLote b;
    const auto &g = code.graph;
    for (int k = 0; k < 6; ++k) {
        auto pt = perfect_tensor(layer_leg(0, k, 0).substr(0, layer_leg(0, k, 0).size() - 1));
        std::string in = k < 5 ? g.edges()[g.rotation(0)[k]].label() : vertex_label(0);
        std::vector<Subsystem> phys;
        for (int j = 1; j <= 5; ++j) phys.push_back({layer_leg(0, k, j), 2});
        b.blocks.emplace_back(pt.dense_isometry(), Factorization({{in, 2}}), Factorization(phys));
        b.block_inputs.push_back(in);
    }
    GaugeStructure gs(z2_system(g));
    b.bulk = gs.full_fact();
    b.pi_gi = gs.pi_gi();
    b.boundary_legs = code.boundary_legs;
    return b;
}

namespace {

Mat bulk_x_on(const Factorization &f, const std::set<std::string> &labels) {
    std::vector<Mat> parts;
    for (const auto &s : f.subsystems())
        parts.push_back(labels.count(s.label) ? x_all(1) : Mat(Mat::Identity(s.dim, s.dim)));
    return kron_all(parts);
}

}  // namespace

DenseBoundarySymmetry induce_boundary_symmetry_dense(const BlockDenseLote &b, const FiniteGroup &G) {
    DenseBoundarySymmetry s;
    if (G.order() > 2) throw UnsupportedSpec("dense block lift implemented for Z2");
    auto Z2 = cyclic_group(2);
    std::set<std::string> edges;
    for (const auto &[u, legs] : b.boundary_legs) {
        std::vector<Subsystem> subs;
        for (const auto &l : legs) subs.push_back({l, 2});
        Factorization site(subs);
        if (G.order() == 1) {
            s.site[u] = local_operator(Mat::Identity(site.total_dim(), site.total_dim()), site);
            continue;
        }
        int k = -1;
        // the block whose input is the dangling edge of u
        for (std::size_t i = 0; i < b.block_inputs.size(); ++i) {
            const auto &in = b.block_inputs[i];
            if (in.rfind("e" + std::to_string(u) + "-", 0) == 0) k = static_cast<int>(i);
        }
        if (k < 0) throw LabelMismatch("no block feeds the dangling edge of " + vertex_label(u));
        edges.insert(b.block_inputs[k]);
        const auto &code = b.blocks[k];
        std::set<std::string> mine(legs.begin(), legs.end()), erased;
        for (const auto &l : code.physical().labels())
            if (!mine.count(l)) erased.insert(l);
        auto lifts = lift_representation(code, erased, {Mat::Identity(2, 2), x_all(1)}, Z2.mul);
        s.homomorphism_deviation = std::max(s.homomorphism_deviation, lift_homomorphism_deviation(lifts, Z2.mul));
        Mat full = Mat::Identity(code.physical_dim(), code.physical_dim());
        apply_local(lifts[1].matrix, code.physical(), lifts[1].fact.labels(), full);
        s.block_lift[k] = full;
        s.duality_deviation += op_norm(full * code.matrix() - code.matrix() * x_all(1));
        s.site[u] = embed(lifts[1], site);
        Mat sq = s.site[u].matrix * s.site[u].matrix;
        s.homomorphism_deviation =
            std::max(s.homomorphism_deviation, op_norm(sq - Mat::Identity(sq.rows(), sq.cols())));
    }
    if (G.order() == 2) {
        Mat A = bulk_x_on(b.bulk, edges);
        s.duality_deviation += op_norm(A * b.pi_gi - b.pi_gi * A);
    }
    return s;
}

double restricted_symmetry_leak(const BlockDenseLote &b, const DenseBoundarySymmetry &s, const std::set<int> &R) {
    double dev = 0.0;
    std::set<std::string> edges;
    for (int u : R)
        for (std::size_t k = 0; k < b.block_inputs.size(); ++k)
            if (b.block_inputs[k].rfind("e" + std::to_string(u) + "-", 0) == 0) {
                edges.insert(b.block_inputs[k]);
                auto it = s.block_lift.find(static_cast<int>(k));
                if (it != s.block_lift.end())
                    dev += op_norm(it->second * b.blocks[k].matrix() - b.blocks[k].matrix() * x_all(1));
            }
    Mat A = bulk_x_on(b.bulk, edges);
    return dev + op_norm(A * b.pi_gi - b.pi_gi * A);
}

double image_overlap_deficiency(const Mat &P, const Mat &U) {
    double tr = P.trace().real();
    if (tr < 1e-12) throw NullState("empty code projector");
    return 1.0 - (P * U * P * U.adjoint()).trace().real() / tr;
}

double restricted_image_deficiency(const BlockDenseLote &b, const DenseBoundarySymmetry &s, const std::set<int> &R) {
    std::map<std::string, Mat> local;
    for (int u : R)
        for (std::size_t k = 0; k < b.block_inputs.size(); ++k) {
            auto it = s.block_lift.find(static_cast<int>(k));
            if (it == s.block_lift.end() || b.block_inputs[k].rfind("e" + std::to_string(u) + "-", 0) != 0) continue;
            const Mat &V = b.blocks[k].matrix();
            local[b.block_inputs[k]] = V.adjoint() * it->second * V;
        }
    std::vector<Mat> parts;
    for (const auto &sub : b.bulk.subsystems()) {
        auto it = local.find(sub.label);
        parts.push_back(it == local.end() ? Mat(Mat::Identity(sub.dim, sub.dim)) : it->second);
    }
    Mat B = kron_all(parts);
    const Mat &P = b.pi_gi;
    double tr = P.trace().real();
    if (tr < 1e-12) throw NullState("empty bulk projector");
    return 1.0 - (P * B * P * B.adjoint()).trace().real() / tr;
}

// ---------------------------------------------------------------- entropy

std::vector<EntropyRecord> gauged_entropy_check(const GaugeStructure &gs, const Vec &psi,
                                                const std::vector<std::set<int>> &regions) {
    const auto &g = gs.graph();
    if (!gs.group().is_abelian()) throw HypothesisViolated("entropy formula assumes an abelian group");
    if (!g.V0().empty()) throw HypothesisViolated("entropy formula assumes no NGC vertices");
    for (int h = 0; h < gs.group().order(); ++h)
        if ((gs.global_symmetry(h) * psi - psi).norm() > 1e-9)
            throw HypothesisViolated("input state is not symmetric");
    Vec gauged = symmetric_sector_state(gs, psi);
    StateVector full{gauged, gs.full_fact()}, bare{psi, gs.vertex_fact()};
    const double lnG = std::log(double(gs.group().order()));
    std::vector<EntropyRecord> out;
    for (const auto &A : regions) {
        EntropyRecord r;
        for (int v : A) r.region += (r.region.empty() ? "" : ",") + std::to_string(v);
        std::set<std::string> keep, vkeep;
        for (int v : A) {
            keep.insert(vertex_label(v));
            vkeep.insert(vertex_label(v));
        }
        int cut = 0;
        for (const auto &e : g.edges()) {
            bool t = A.count(e.tail), h = A.count(e.head);
            if (t && h) keep.insert(e.label());
            if (t != h) ++cut;
        }
        std::vector<int> verts(A.begin(), A.end());
        LabeledGraph sub;
        for (int v : verts) sub.add_vertex(v, 1);
        for (const auto &e : g.edges())
            if (A.count(e.tail) && A.count(e.head)) sub.add_edge(e.tail, e.head);
        r.connected = connectivity(sub, ConnectivityMode::full);
        if (cut == 0) {
            r.skipped = true;
            out.push_back(r);
            continue;
        }
        r.lhs = entropy(partial_trace(full, keep)) - entropy(partial_trace(bare, vkeep));
        r.rhs = (cut - 1) * lnG;
        out.push_back(r);
    }
    return out;
}

std::vector<EntropyRecord> holographic_rt_check(const HolographicCode &c, const Mat &rho_bulk,
                                                const std::vector<std::set<int>> &regions) {
    if (!c.dense) throw ScaleExceeded("RT check needs a dense encoder");
    const auto &code = *c.dense;
    Mat rho_b = code.matrix() * rho_bulk * code.matrix().adjoint();
    std::vector<EntropyRecord> out;
    for (const auto &R : regions) {
        EntropyRecord r;
        for (int u : R) r.region += (r.region.empty() ? "" : ",") + std::to_string(u);
        Wedge w = greedy_wedge(c.graph, R);
        std::set<int> Rc;
        for (int u : c.graph.V0())
            if (!R.count(u)) Rc.insert(u);
        Wedge wc = greedy_wedge(c.graph, Rc);
        for (int v : c.graph.V1())
            if (w.vertices.count(v) == wc.vertices.count(v)) r.skipped = true;
        std::set<std::string> keep, wedge_labels;
        for (int u : R)
            for (const auto &l : c.boundary_legs.at(u)) keep.insert(l);
        for (int v : w.vertices) wedge_labels.insert(vertex_label(v));
        r.lhs = keep.empty() ? 0.0 : entropy(partial_trace(rho_b, code.physical(), keep));
        double s_w = wedge_labels.empty() ? 0.0 : entropy(partial_trace(rho_bulk, code.logical(), wedge_labels));
        r.rhs = s_w + w.gamma * std::log(2.0);
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------- domain walls

std::map<int, Pauli> boundary_x_symmetry(const HolographicCode &code) {
    std::map<int, Pauli> out;
    for (const auto &[u, legs] : code.boundary_legs) {
        std::map<std::string, char> ops;
        for (const auto &l : legs) ops[l] = 'X';
        out[u] = code.boundary_pauli(ops);
    }
    return out;
}

DomainWallResult domain_wall_removal(const HolographicCode &code, const std::set<int> &R, int radius,
                                     const std::map<int, Pauli> &site_symmetry) {
    const auto &g = code.graph;
    DomainWallResult res;
    res.radius = radius;
    res.regions_tested = 1;
    auto cs = code.codespace_state();
    const int n = cs.size();

    std::set<int> bdry;
    for (int u : g.V0())
        if (R.count(dangling_vertex_tile(g, u))) bdry.insert(u);
    Pauli T(n);
    for (int u : bdry) T = T * site_symmetry.at(u);
    for (int v : R) T.x[cs.leg_index(vertex_label(v))] ^= 1;

    std::set<int> free_legs;
    // bulk wall neighbourhood in the vertex/edge incidence graph
    std::set<int> wall_edges, wall_verts;
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        if (g.is_dangling(e)) continue;
        const Edge &ed = g.edges()[e];
        if (R.count(ed.tail) != R.count(ed.head)) wall_edges.insert(e);
    }
    std::set<int> fe = wall_edges, fv;
    for (int step = 1; step <= radius; ++step) {
        if (step % 2 == 1) {
            for (int e : fe)
                for (int v : {g.edges()[e].tail, g.edges()[e].head})
                    if (g.alpha(v) == 1) fv.insert(v);
        } else {
            for (int v : fv)
                for (int e : g.incident(v)) fe.insert(e);
        }
    }
    for (int v : fv) free_legs.insert(cs.leg_index(vertex_label(v)));
    if (code.edge_qubits)
        for (int e : fe) {
            int q = cs.leg_index(g.edges()[e].label());
            if (q >= 0) free_legs.insert(q);
        }
    // boundary twist-defect neighbourhood
    auto b = g.V0();
    const int m = static_cast<int>(b.size());
    std::set<int> near;
    for (int i = 0; i < m && radius > 0; ++i) {
        int j = (i + 1) % m;
        if (bdry.count(b[i]) == bdry.count(b[j])) continue;
        for (int d = 0; d < radius; ++d) {
            near.insert(b[((i - d) % m + m) % m]);
            near.insert(b[(j + d) % m]);
        }
    }
    for (int q : code.boundary_qubits(near)) free_legs.insert(q);

    auto s = find_stabilizer_matching(cs, T, free_legs);
    if (!s) {
        res.failing_region = R;
        return res;
    }
    res.found = true;
    Pauli D = *s * T;
    std::string db, dv;
    for (int q : free_legs) {
        char ch = D.x[q] ? (D.z[q] ? 'Y' : 'X') : (D.z[q] ? 'Z' : 'I');
        (cs.legs()[q].input ? dv : db) += ch;
    }
    res.witness = {db, dv};
    return res;
}

DomainWallResult domain_wall_search(const HolographicCode &code, int radius, const std::map<int, Pauli> &site_symmetry,
                                    int max_size) {
    const auto &g = code.graph;
    std::set<std::set<int>> regions, frontier;
    for (int t : g.V1())
        if (g.is_boundary(t)) frontier.insert({t});
    while (!frontier.empty()) {
        std::set<std::set<int>> next;
        for (const auto &R : frontier) {
            regions.insert(R);
            if (static_cast<int>(R.size()) >= max_size) continue;
            for (int v : R)
                for (int w : g.neighbors(v))
                    if (g.alpha(w) == 1 && !R.count(w)) {
                        auto S = R;
                        S.insert(w);
                        if (!regions.count(S)) next.insert(S);
                    }
        }
        frontier = next;
    }
    DomainWallResult out;
    out.radius = radius;
    out.found = true;
    for (const auto &R : regions) {
        auto r = domain_wall_removal(code, R, radius, site_symmetry);
        ++out.regions_tested;
        if (!r.found) {
            out.found = false;
            out.failing_region = R;
            break;
        }
        out.witness = r.witness;
    }
    return out;
}

Mat restore_isometry(const Mat &V) {
    Mat M = V.adjoint() * V;
    M = (M + M.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    if (es.eigenvalues().minCoeff() < 1e-12) throw NotPSD("encoder has a null direction");
    Eigen::VectorXd d = es.eigenvalues().cwiseSqrt().cwiseInverse();
    return V * es.eigenvectors() * d.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace hqg

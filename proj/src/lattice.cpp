#include "hqg/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace hqg {

void LabeledGraph::add_vertex(int id, int alpha, bool boundary) {
    if (alpha != 0 && alpha != 1) throw InvalidPath("vertex label must be 0 or 1");
    if (alpha_.count(id)) throw InvalidPath("duplicate vertex " + std::to_string(id));
    alpha_[id] = alpha;
    verts_.insert(std::upper_bound(verts_.begin(), verts_.end(), id), id);
    if (boundary) boundary_.insert(id);
}

int LabeledGraph::add_edge(int tail, int head) {
    if (!has_vertex(tail) || !has_vertex(head)) throw InvalidPath("edge endpoint missing");
    if (tail == head) throw InvalidPath("self loops are not allowed");
    if (find_edge(tail, head) >= 0) throw InvalidPath("edge between these vertices already present");
    edges_.push_back({tail, head});
    return static_cast<int>(edges_.size()) - 1;
}

void LabeledGraph::set_rotation(int v, std::vector<int> edge_ids) { rotation_[v] = std::move(edge_ids); }

void LabeledGraph::set_boundary(int v, bool flag) {
    if (flag) boundary_.insert(v);
    else boundary_.erase(v);
}

const std::vector<int> &LabeledGraph::rotation(int v) const {
    static const std::vector<int> empty;
    auto it = rotation_.find(v);
    return it == rotation_.end() ? empty : it->second;
}

std::vector<int> LabeledGraph::V0() const {
    std::vector<int> out;
    for (int v : verts_)
        if (alpha_.at(v) == 0) out.push_back(v);
    return out;
}

std::vector<int> LabeledGraph::V1() const {
    std::vector<int> out;
    for (int v : verts_)
        if (alpha_.at(v) == 1) out.push_back(v);
    return out;
}

bool LabeledGraph::is_dangling(int e) const {
    return alpha_.at(edges_[e].tail) == 0 || alpha_.at(edges_[e].head) == 0;
}

std::vector<int> LabeledGraph::E0() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
        if (is_dangling(e)) out.push_back(e);
    return out;
}

std::vector<int> LabeledGraph::E1() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
        if (!is_dangling(e)) out.push_back(e);
    return out;
}

std::vector<int> LabeledGraph::incident(int v) const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
        if (edges_[e].tail == v || edges_[e].head == v) out.push_back(e);
    return out;
}

std::vector<int> LabeledGraph::out_edges(int v) const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
        if (edges_[e].tail == v) out.push_back(e);
    return out;
}

std::vector<int> LabeledGraph::in_edges(int v) const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
        if (edges_[e].head == v) out.push_back(e);
    return out;
}

int LabeledGraph::find_edge(int a, int b) const {
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
        if ((edges_[e].tail == a && edges_[e].head == b) || (edges_[e].tail == b && edges_[e].head == a))
            return e;
    return -1;
}

int LabeledGraph::other_end(int e, int v) const {
    return edges_[e].tail == v ? edges_[e].head : edges_[e].tail;
}

std::vector<int> LabeledGraph::neighbors(int v) const {
    std::vector<int> out;
    for (int e : incident(v)) out.push_back(other_end(e, v));
    std::sort(out.begin(), out.end());
    return out;
}

void LabeledGraph::canonicalize() {
    std::vector<int> order(edges_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::make_pair(edges_[a].tail, edges_[a].head) < std::make_pair(edges_[b].tail, edges_[b].head);
    });
    std::vector<int> new_index(edges_.size());
    std::vector<Edge> sorted;
    for (std::size_t i = 0; i < order.size(); ++i) {
        new_index[order[i]] = static_cast<int>(i);
        sorted.push_back(edges_[order[i]]);
    }
    edges_ = sorted;
    for (auto &[v, rot] : rotation_)
        for (int &e : rot) e = new_index[e];
}

DanglingReport validate_dangling(const LabeledGraph &g) {
    DanglingReport r;
    auto add = [&](char c, const std::string &d) {
        r.valid = false;
        r.violations.push_back({c, d});
    };
    for (int u : g.V0()) {
        std::string name = vertex_label(u);
        if (!g.is_boundary(u)) add('a', name + " is in V0 but not on the boundary");
        auto inc = g.incident(u);
        if (inc.size() > 1) add('c', name + " participates in more than one edge");
        for (int e : inc) {
            int v = g.other_end(e, u);
            if (g.alpha(v) == 0) {
                add('d', g.edges()[e].label() + " connects two V0 vertices");
                continue;
            }
            if (g.edges()[e].tail != u) add('b', g.edges()[e].label() + " does not point from V0 to V1");
            if (!g.is_boundary(v)) add('b', name + " is not connected to a boundary V1 vertex");
        }
        if (inc.empty()) add('b', name + " is not connected to any V1 vertex");
    }
    return r;
}

namespace {

bool connected_subset(const LabeledGraph &g, const std::vector<int> &verts, bool bulk_edges_only) {
    if (verts.size() <= 1) return true;
    std::set<int> allowed(verts.begin(), verts.end());
    std::set<int> seen{verts[0]};
    std::vector<int> stack{verts[0]};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : g.incident(v)) {
            if (bulk_edges_only && g.is_dangling(e)) continue;
            int w = g.other_end(e, v);
            if (allowed.count(w) && seen.insert(w).second) stack.push_back(w);
        }
    }
    return seen.size() == allowed.size();
}

}  // namespace

bool connectivity(const LabeledGraph &g, ConnectivityMode mode) {
    if (mode == ConnectivityMode::full) return connected_subset(g, g.vertices(), false);
    return connected_subset(g, g.V1(), true);
}

bool bulk_connected(const LabeledGraph &g) { return connectivity(g, ConnectivityMode::bulk_only); }

GraphPath make_path(const LabeledGraph &g, const std::vector<int> &vertices, bool closed) {
    GraphPath p;
    p.vertices = vertices;
    p.closed = closed;
    const std::size_t steps = closed ? vertices.size() : vertices.size() - 1;
    for (std::size_t i = 0; i < steps; ++i) {
        int a = vertices[i], b = vertices[(i + 1) % vertices.size()];
        int e = g.find_edge(a, b);
        if (e < 0) throw InvalidPath("no edge between " + vertex_label(a) + " and " + vertex_label(b));
        p.edges.push_back(e);
        p.forward.push_back(g.edges()[e].tail == a);
    }
    return p;
}

std::vector<GraphPath> enumerate_paths_and_cycles(const LabeledGraph &g, PathKind kind,
                                                  const PathBounds &bounds) {
    std::vector<GraphPath> out;
    auto push = [&](const std::vector<int> &vs, bool closed) {
        if (static_cast<int>(out.size()) >= bounds.max_count)
            throw BoundsExceeded("path enumeration exceeded " + std::to_string(bounds.max_count));
        out.push_back(make_path(g, vs, closed));
    };
    std::vector<int> cur;
    std::set<int> on_path;

    if (kind == PathKind::cycle_in_v1) {
        std::function<void(int)> dfs = [&](int v) {
            for (int w : g.neighbors(v)) {
                if (g.alpha(w) != 1) continue;
                if (w == cur[0] && cur.size() >= 3 && cur[1] < cur.back()) {
                    push(cur, true);
                    continue;
                }
                if (w <= cur[0] || on_path.count(w)) continue;
                if (static_cast<int>(cur.size()) >= bounds.max_length) continue;
                cur.push_back(w);
                on_path.insert(w);
                dfs(w);
                on_path.erase(w);
                cur.pop_back();
            }
        };
        for (int s : g.V1()) {
            cur = {s};
            on_path = {s};
            dfs(s);
        }
        return out;
    }

    // Simple paths from a start through V1 interiors to a V0 endpoint.
    std::function<void(int, bool)> dfs = [&](int v, bool ngc_pairs) {
        for (int w : g.neighbors(v)) {
            if (ngc_pairs && w == cur[0] && cur.size() >= 3 && cur[1] < cur.back()) {
                cur.push_back(w);
                push(cur, false);
                cur.pop_back();
                continue;
            }
            if (on_path.count(w)) continue;
            if (static_cast<int>(cur.size()) > bounds.max_length) continue;
            if (g.alpha(w) == 0) {
                if (ngc_pairs && w <= cur[0]) continue;
                if (static_cast<int>(cur.size()) <= bounds.max_length) {
                    cur.push_back(w);
                    push(cur, false);
                    cur.pop_back();
                }
                continue;
            }
            if (static_cast<int>(cur.size()) >= bounds.max_length) continue;
            cur.push_back(w);
            on_path.insert(w);
            dfs(w, ngc_pairs);
            on_path.erase(w);
            cur.pop_back();
        }
    };
    if (kind == PathKind::ngc_to_ngc) {
        for (int s : g.V0()) {
            cur = {s};
            on_path = {s};
            dfs(s, true);
        }
    } else {
        if (!g.has_vertex(bounds.start) || g.alpha(bounds.start) != 1)
            throw InvalidPath("vertex_to_boundary needs a V1 start vertex");
        cur = {bounds.start};
        on_path = {bounds.start};
        dfs(bounds.start, false);
    }
    return out;
}

namespace {

void oriented_edge(LabeledGraph &g, int a, int b) {
    if (g.alpha(a) == 1 && g.alpha(b) == 0) g.add_edge(b, a);
    else g.add_edge(a, b);
}

}  // namespace

LabeledGraph line_graph(const std::vector<int> &alphas) {
    LabeledGraph g;
    for (int i = 0; i < static_cast<int>(alphas.size()); ++i) g.add_vertex(i, alphas[i]);
    for (int i = 0; i + 1 < static_cast<int>(alphas.size()); ++i) oriented_edge(g, i, i + 1);
    g.canonicalize();
    return g;
}

LabeledGraph cycle_graph(int n, int alpha) {
    LabeledGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i, alpha);
    for (int i = 0; i < n; ++i) oriented_edge(g, i, (i + 1) % n);
    g.canonicalize();
    return g;
}

LabeledGraph star_graph(int leaves, int center_alpha, int leaf_alpha) {
    LabeledGraph g;
    g.add_vertex(0, center_alpha);
    for (int i = 1; i <= leaves; ++i) {
        g.add_vertex(i, leaf_alpha);
        oriented_edge(g, 0, i);
    }
    g.canonicalize();
    return g;
}

LabeledGraph triangle_graph(const std::vector<int> &alphas) {
    LabeledGraph g;
    for (int i = 0; i < 3; ++i) g.add_vertex(i, alphas[i]);
    oriented_edge(g, 0, 1);
    oriented_edge(g, 1, 2);
    oriented_edge(g, 0, 2);
    g.canonicalize();
    return g;
}

LabeledGraph triangle_pendant_graph() {
    LabeledGraph g;
    for (int i = 0; i < 3; ++i) g.add_vertex(i, 1);
    g.add_vertex(3, 0);
    oriented_edge(g, 0, 1);
    oriented_edge(g, 1, 2);
    oriented_edge(g, 0, 2);
    oriented_edge(g, 3, 0);
    g.canonicalize();
    return g;
}

}  // namespace hqg

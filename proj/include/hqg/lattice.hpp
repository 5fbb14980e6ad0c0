#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hqg/errors.hpp"

namespace hqg {

struct Edge {
    int tail = 0;
    int head = 0;
    std::string label() const { return "e" + std::to_string(tail) + "-" + std::to_string(head); }
};

inline std::string vertex_label(int v) { return "v" + std::to_string(v); }

// Oriented graph with a 0/1 labeling. Label 0 = NGC (V0), label 1 = GC (V1).
class LabeledGraph {
public:
    void add_vertex(int id, int alpha, bool boundary = false);
    int add_edge(int tail, int head);
    void set_rotation(int v, std::vector<int> edge_ids);
    void set_boundary(int v, bool flag);

    const std::vector<int> &vertices() const { return verts_; }
    const std::vector<Edge> &edges() const { return edges_; }
    int alpha(int v) const { return alpha_.at(v); }
    bool has_vertex(int v) const { return alpha_.count(v) > 0; }
    bool is_boundary(int v) const { return boundary_.count(v) > 0; }
    bool has_embedding() const { return !rotation_.empty(); }
    const std::vector<int> &rotation(int v) const;

    std::vector<int> V0() const;
    std::vector<int> V1() const;
    std::vector<int> E0() const;  // edge indices touching V0
    std::vector<int> E1() const;
    bool is_dangling(int e) const;

    std::vector<int> incident(int v) const;
    std::vector<int> out_edges(int v) const;  // E+(v), v is the tail
    std::vector<int> in_edges(int v) const;   // E-(v), v is the head
    int find_edge(int a, int b) const;        // either orientation, -1 if none
    int other_end(int e, int v) const;
    std::vector<int> neighbors(int v) const;

    // Edge indices sorted by (tail, head).
    void canonicalize();

private:
    std::vector<int> verts_;
    std::map<int, int> alpha_;
    std::set<int> boundary_;
    std::vector<Edge> edges_;
    std::map<int, std::vector<int>> rotation_;
};

struct DanglingViolation {
    char category;  // 'a'..'d'
    std::string description;
};

struct DanglingReport {
    bool valid = true;
    std::vector<DanglingViolation> violations;
};

DanglingReport validate_dangling(const LabeledGraph &g);

enum class ConnectivityMode { full, bulk_only };
bool connectivity(const LabeledGraph &g, ConnectivityMode mode);
// Thm 3.5 hypothesis: graph minus V0 and E0 is connected.
bool bulk_connected(const LabeledGraph &g);

struct GraphPath {
    std::vector<int> vertices;
    std::vector<int> edges;
    std::vector<bool> forward;  // step i goes along edges[i] from tail to head
    bool closed = false;
};

enum class PathKind { ngc_to_ngc, cycle_in_v1, vertex_to_boundary };

struct PathBounds {
    int max_length = 8;
    int max_count = 10000;
    int start = -1;  // source vertex for vertex_to_boundary
};

std::vector<GraphPath> enumerate_paths_and_cycles(const LabeledGraph &g, PathKind kind,
                                                  const PathBounds &bounds);

GraphPath make_path(const LabeledGraph &g, const std::vector<int> &vertices, bool closed = false);

// Builders for the small-graph catalog.
LabeledGraph line_graph(const std::vector<int> &alphas);
LabeledGraph cycle_graph(int n, int alpha = 1);
LabeledGraph star_graph(int leaves, int center_alpha, int leaf_alpha);
LabeledGraph triangle_graph(const std::vector<int> &alphas);
LabeledGraph triangle_pendant_graph();

}  // namespace hqg

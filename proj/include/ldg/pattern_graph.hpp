#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ldg {

// Small fixed pattern graph H (the counted motif). Simple and labeled on
// [0, n); the edge list is kept sorted lexicographically so every
// downstream enumeration is deterministic.
class PatternGraph {
public:
    PatternGraph() = default;
    PatternGraph(int n_vertices, std::vector<std::pair<int, int>> edges);

    static PatternGraph cycle(int length);                     // C_l, l >= 3
    static PatternGraph complete(int n);                       // K_n
    static PatternGraph complete_bipartite(int m, int n);      // K_{m,n}
    static PatternGraph star(int leaves);                      // K_{1,k}
    static PatternGraph path(int n_vertices);                  // P_n
    static PatternGraph single_edge();                         // K_2
    static PatternGraph empty(int n_vertices);

    // Named patterns: "C3".."C12", "K2", "K4", "K_{m,n}", "star_k", "path_k".
    static PatternGraph from_name(const std::string& name);

    // Line 1 "n m", then m lines "u v" (0-based); '#' starts a comment.
    static PatternGraph load(std::istream& in);
    static PatternGraph load_file(const std::string& path);

    int n_vertices() const { return n_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool adjacent(int u, int v) const;
    int degree(int v) const;
    bool connected() const { return connected_; }

    std::vector<int> degrees() const;
    std::uint32_t neighbor_mask(int v) const { return adj_[v]; }

    // Induced subgraph on the vertices with keep[v] true, relabeled in order.
    PatternGraph induced(const std::vector<bool>& keep) const;

    bool isomorphic_to(const PatternGraph& other) const;  // brute force, n <= 8

    std::string to_string() const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::uint32_t> adj_;  // adjacency bitmask per vertex
    bool connected_ = true;
};

struct DegreeProfile {
    int max_degree = 0;        // Delta
    int delta_star = 0;        // Delta_star, computed two ways and cross-checked
    PatternGraph max_degree_core;  // induced subgraph on max-degree vertices
};

// Delta and Delta_star (max over e={v,w} of deg(v)+deg(w)-1, equivalently
// e(H) - min_e e(H_(e))); throws if H has no edges.
DegreeProfile degree_profile(const PatternGraph& h);

// Induced subgraph on V(H) minus all endpoints of the listed edges.
PatternGraph remove_edge_closure(const PatternGraph& h,
                                 const std::vector<std::pair<int, int>>& edges);

struct QuotientEntry {
    std::vector<int> partition;  // part label per vertex of H
    PatternGraph quotient;       // simple quotient graph (loop-free retained only)
    int n_parts = 0;
};

struct QuotientFamily {
    std::vector<QuotientEntry> entries;
};

// All partitions of V(H) whose parts are independent sets (the loop-free
// quotients); the identity partition comes first. Guarded at n <= 8.
QuotientFamily quotients(const PatternGraph& h);

// a_k = number of independent sets of size k; a_0 = 1. Guarded at n <= 24.
std::vector<std::int64_t> independence_polynomial(const PatternGraph& g);

enum class TriState { Yes, No, Unknown };

struct Classification {
    bool bipartite = false;
    bool regular = false;
    TriState seminorming = TriState::Unknown;
    TriState sidorenko = TriState::Unknown;
};

// Seminorming is reported Yes only for the named families (even cycles and
// K_{m,n} with m,n both even), No for non-bipartite graphs, else Unknown;
// Sidorenko only propagates from seminorming.
Classification classify(const PatternGraph& h);

// All connected graphs on 1..max_vertices vertices, up to isomorphism.
std::vector<PatternGraph> connected_patterns_up_to(int max_vertices);

}  // namespace ldg

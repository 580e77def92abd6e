#pragma once

#include <optional>

#include "sg/core.hpp"
#include "sg/flow.hpp"

namespace sg {

enum class CircuitType { I, II, III };

// Signed-graph circuit: a positive circle (I), two negative circles meeting in
// one vertex (II), or two disjoint negative circles joined by a nontrivial
// path (III). Edge/vertex fields are ambient indexes.
struct Circuit {
    CircuitType type = CircuitType::I;
    std::vector<int> circle_a;      // sorted edge indexes
    std::vector<int> circle_b;      // empty for Type I
    std::vector<int> path_edges;    // circuit path, in order (Type III)
    int joint_vertex = -1;          // Type II shared vertex
    std::vector<int> all_edges() const;
};

struct BlockPathInfo {
    std::vector<int> edges;  // in order from cut_a to cut_b; empty = shared cut-vertex
    int cut_a = -1;
    int cut_b = -1;
    int circle_a = -1;  // circle block indexes the path joins
    int circle_b = -1;
};

// Connected subgraph whose blocks are circles or edges, with circle end blocks
// and every cut-vertex in exactly two blocks. Sesqui-Eulerian when each circle
// block C has sign (-1)^p for p cut-vertices on C.
struct CircleTree {
    std::vector<int> edges;  // sorted ambient edge indexes
    std::vector<std::vector<int>> circle_blocks;     // cyclic edge order per circle
    std::vector<std::vector<int>> circle_vertices;   // start vertex of each cyclic edge
    std::vector<BlockPathInfo> block_paths;
    std::vector<int> cut_vertices;  // sorted
    std::vector<int> cuts_on_circle;
    std::vector<int> circle_sign;
    bool sesqui_eulerian = false;
    long long tree_length = 0;  // sum of circle lengths + twice path lengths

    int circle_count() const { return static_cast<int>(circle_blocks.size()); }
    bool is_end_circle(int c) const { return cuts_on_circle[c] <= 1; }
};

struct RecognitionFailure {
    char condition = '?';  // 'a'..'e'
    std::string detail;
};

struct RecognitionResult {
    std::optional<CircleTree> tree;
    std::optional<RecognitionFailure> failure;
    bool ok() const { return tree.has_value(); }
};

RecognitionResult recognize_circle_tree(const SignedGraph& g, std::span<const int> edges);

std::optional<Circuit> classify_circuit(const SignedGraph& g, std::span<const int> edges);

// All frame-matroid circuits, by exhaustive subset search.
std::vector<Circuit> enumerate_circuits(const SignedGraph& g, int edge_cap = 16);

// 1 on circle-block edges, 2 on block-path edges.
EdgeFn indicator(const SignedGraph& g, const CircleTree& t);

// An orientation o of the tree edges is a direction when the tree has neither
// sink nor source and each circle block has a sink or source exactly at the
// cut-vertices on it.
bool is_direction(const SignedGraph& g, const CircleTree& t, const Orientation& o);

struct TourResult {
    Walk walk;
    WalkDirection dir;      // omega_T restricted to the tour
    Orientation omega_t;    // the direction of T, slot-0 value -1 on the least edge
};

// Canonical minimal tour: each circle edge once, each path edge twice,
// crossing blocks at every cut-vertex. Throws unless sesqui-Eulerian.
TourResult minimal_tour(const SignedGraph& g, const CircleTree& t);

// The direction omega_T, unique up to negation.
Orientation direction_of(const SignedGraph& g, const CircleTree& t);

// Number of minimal tours up to rotation and reversal: 2^q for q circle blocks.
long long tour_count(const CircleTree& t);

}  // namespace sg

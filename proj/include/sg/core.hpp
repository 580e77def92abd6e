#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sg {

// Thrown for bad inputs (malformed files, precondition violations). CLI exit code 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an internal invariant fails. CLI exit code 2.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_internal(bool ok, const char* msg) {
    if (!ok) throw InternalError(std::string("internal invariant failed: ") + msg);
}

using EdgeFn = std::vector<long long>;    // value per edge index
using VertexFn = std::vector<long long>;  // value per vertex index

struct EdgeRecord {
    int id = 0;
    int u = 0;  // external vertex ids
    int v = 0;
    int sign = +1;
};

struct IncidentEnd {
    int edge;  // edge index
    int slot;  // 0 or 1
};

// Signed multigraph. Loops and parallel edges are allowed; every edge has two
// distinguishable ends (edge, slot)), even when both endpoints coincide.
// Vertices and edges are stored sorted by external id, so index order equals
// id order and all smallest-id tie-breaks can use indexes.
class SignedGraph {
public:
    SignedGraph() = default;

    // declared_vertices may add isolated vertices. With strict_endpoints, every
    // endpoint must appear in declared_vertices.
    static SignedGraph build(std::span<const EdgeRecord> edges,
                             std::span<const int> declared_vertices = {},
                             bool strict_endpoints = false);

    int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    int vertex_id(int vi) const { return vertex_ids_[vi]; }
    int edge_id(int ei) const { return edges_[ei].id; }
    int vertex_index(int vertex_id) const;  // throws ValidationError if unknown
    int edge_index(int edge_id) const;

    // endpoint at the given slot, as a vertex index
    int endpoint(int ei, int slot) const { return endpoints_[ei][slot]; }
    int sign(int ei) const { return edges_[ei].sign; }
    bool is_loop(int ei) const { return endpoints_[ei][0] == endpoints_[ei][1]; }

    const std::vector<IncidentEnd>& ends_at(int vi) const { return incidence_[vi]; }
    int degree(int vi) const { return static_cast<int>(incidence_[vi].size()); }

    const EdgeRecord& record(int ei) const { return edges_[ei]; }
    const std::vector<EdgeRecord>& records() const { return edges_; }

private:
    std::vector<int> vertex_ids_;                 // sorted
    std::vector<EdgeRecord> edges_;               // sorted by id
    std::vector<std::array<int, 2>> endpoints_;   // vertex indexes per slot
    std::vector<std::vector<IncidentEnd>> incidence_;
};

// Orientation: +-1 per edge end, with sigma(e) = -omega(u,e)*omega(v,e).
// Entries may be 0 to leave an edge unoriented (orientation of a subgraph).
struct Orientation {
    std::vector<std::array<int, 2>> end;

    int value(int ei, int slot) const { return end[ei][slot]; }
    bool defined(int ei) const { return end[ei][0] != 0; }
};

// slot0 = +1, slot1 = -sigma(e); a fixed reference orientation.
Orientation default_orientation(const SignedGraph& g);
void validate_orientation(const SignedGraph& g, const Orientation& o, bool require_full = true);
Orientation restrict_orientation(const SignedGraph& g, const Orientation& o,
                                 std::span<const int> edges);
Orientation reorient(const SignedGraph& g, const Orientation& o, std::span<const int> edges);

// [o1,o2](e): +1 / -1 where both defined and ends agree / disagree, 0 otherwise.
std::vector<int> coupling(const SignedGraph& g, const Orientation& o1, const Orientation& o2);

struct WalkStep {
    int edge;        // edge index
    int entry_slot;  // end used at v_{i-1}
    int exit_slot;   // end used at v_i (always != entry_slot)
};

// Walk v_0 e_1 v_1 ... e_n v_n. start is a vertex index, v_i follows from the
// steps' exit endpoints.
struct Walk {
    int start = 0;
    std::vector<WalkStep> steps;

    int length() const { return static_cast<int>(steps.size()); }
};

void validate_walk(const SignedGraph& g, const Walk& w);
std::vector<int> walk_vertices(const SignedGraph& g, const Walk& w);  // v_0..v_n
bool walk_closed(const SignedGraph& g, const Walk& w);
int walk_sign(const SignedGraph& g, const Walk& w);
Walk reverse_walk(const SignedGraph& g, const Walk& w);
// Rotate a closed walk so that position pos becomes the base.
Walk rotate_walk(const SignedGraph& g, const Walk& w, int pos);

// Per-occurrence end values of a walk: val[i] = {entry end value, exit end value},
// each pair satisfying sigma(e_i) = -entry*exit.
struct WalkDirection {
    std::vector<std::array<int, 2>> val;
};

// The unique end-value assignment with the given first entry value that is
// coherent at all internal vertices.
WalkDirection propagate_direction(const SignedGraph& g, const Walk& w, int first_entry_value);
// Sample a (possibly incoherent) per-occurrence assignment from a global orientation.
WalkDirection restrict_to_walk(const SignedGraph& g, const Orientation& o, const Walk& w);
WalkDirection reverse_direction(const WalkDirection& d);
WalkDirection rotate_direction(const WalkDirection& d, int pos);
void validate_direction(const SignedGraph& g, const Walk& w, const WalkDirection& d);

// position 1..n-1: internal vertex v_pos; position 0: base of a closed walk.
bool is_coherent_at(const SignedGraph& g, const Walk& w, const WalkDirection& d, int position);
// Coherent at every internal vertex (the defining property of a direction).
bool coherent_internally(const SignedGraph& g, const Walk& w, const WalkDirection& d);
// Closed, coherent everywhere including the base; such walks are positive.
bool is_closed_coherent(const SignedGraph& g, const Walk& w, const WalkDirection& d);

struct WalkSignReport {
    int sign = 0;                 // sigma(W)
    bool closed = false;
    int incoherent_internal = 0;  // ell
    int incoherent_total = 0;     // k (internal + base, closed walks only)
    int predicted_open = 0;       // (-1)^(ell+1) * w(v0,e1) * w(vn,en)
    int predicted_closed = 0;     // (-1)^k
    bool holds = false;
};

WalkSignReport check_walk_sign_lemma(const SignedGraph& g, const Walk& w, const WalkDirection& d);

struct BalanceResult {
    bool balanced = false;
    std::vector<int> labels;           // +-1 per vertex index (valid when balanced)
    std::vector<int> negative_circle;  // witness edge indexes (when unbalanced)
};

BalanceResult is_balanced(const SignedGraph& g);

// Blocks partition the edge set. Loops are blocks of their own, and a vertex
// incident with a loop and at least one other edge counts as a cut-vertex.
struct BlockDecomposition {
    std::vector<std::vector<int>> blocks;        // edge indexes, sorted; blocks sorted by first edge
    std::vector<int> cut_vertices;               // vertex indexes, sorted
    std::vector<std::vector<int>> blocks_at_cut; // parallel to cut_vertices
    std::vector<int> edge_block;                 // block index per edge

    bool is_cut_vertex(int vi) const;
};

BlockDecomposition blocks(const SignedGraph& g);

// Connected components of the whole graph: component index per vertex.
std::vector<int> vertex_components(const SignedGraph& g);
// Groups of edge indexes forming connected components of the support of f.
std::vector<std::vector<int>> support_components(const SignedGraph& g, const EdgeFn& f);

}  // namespace sg

#pragma once

#include "sg/core.hpp"

namespace sg {

// Double covering graph. Each base vertex v lifts to v^+ and v^-, each base
// edge e = uv to e^+ and e^- with endpoints u^a -- v^(a*sigma(e)). All cover
// edges are positive. The lift e^+ is the one whose end at the smaller-id
// endpoint (slot 0 on ties) sits on the + level, so outputs are reproducible.
//
// Ids and indexes interleave levels: cover vertex index 2*vi + (0 for +, 1
// for -), and the external id is 2*base_id + the same bit; likewise for
// edges. The canonical involution * flips the low bit, the projection drops it.
struct CoverGraph {
    SignedGraph graph;
    int base_vertices = 0;
    int base_edges = 0;

    int lift_vertex(int base_vi, int level) const { return 2 * base_vi + (level < 0 ? 1 : 0); }
    int base_vertex_of(int cvi) const { return cvi >> 1; }
    int vertex_level(int cvi) const { return (cvi & 1) ? -1 : +1; }
    int partner_vertex(int cvi) const { return cvi ^ 1; }

    int lifted_edge(int base_ei, int beta) const { return 2 * base_ei + (beta < 0 ? 1 : 0); }
    int base_edge_of(int cei) const { return cei >> 1; }
    int edge_beta(int cei) const { return (cei & 1) ? -1 : +1; }
    int partner_edge(int cei) const { return cei ^ 1; }
};

// Slot whose endpoint has the smaller vertex id (slot 0 for loops).
int anchor_slot(const SignedGraph& g, int ei);
// Level of the slot-s endpoint of the lift e^beta.
int end_level(const SignedGraph& g, int ei, int beta, int slot);

CoverGraph build_cover(const SignedGraph& g);

// w~(v^a, e^b) = a * w(v, e). Every cover edge gets an ordinary direction.
Orientation lift_orientation(const SignedGraph& g, const CoverGraph& cover, const Orientation& o);

struct LiftedWalk {
    Walk walk;               // walk in the cover
    std::vector<int> levels; // alpha_0..alpha_n with alpha_i = alpha_{i-1} * sigma(e_i)
};

LiftedWalk lift_walk(const SignedGraph& g, const CoverGraph& cover, const Walk& w, int alpha0);
// Direction of the lifted walk induced from a direction of the base walk.
WalkDirection lift_direction(const WalkDirection& d, const LiftedWalk& lw);

Walk project_walk(const CoverGraph& cover, const Walk& cover_walk);
WalkDirection project_direction(const CoverGraph& cover, const Walk& cover_walk,
                                const WalkDirection& d);

// pi(f~)(e) = f~(e^+) + f~(e^-)
EdgeFn project_function(const CoverGraph& cover, const EdgeFn& cover_fn);

}  // namespace sg

#pragma once

#include "sg/core.hpp"
#include "sg/cover.hpp"

namespace sg {

// Incidence matrix entry m(v,e): sum of the end values of e at v. +-1 for a
// link end, +-2 for a negative loop, 0 for a positive loop or a non-endpoint.
int incidence_value(const SignedGraph& g, const Orientation& o, int vi, int ei);

// Boundary df(v) = sum over ends (v,e) of w(v,e) f(e).
VertexFn boundary(const SignedGraph& g, const Orientation& o, const EdgeFn& f);
bool is_flow(const SignedGraph& g, const Orientation& o, const EdgeFn& f);
void require_flow(const SignedGraph& g, const Orientation& o, const EdgeFn& f);

long long total_weight(const EdgeFn& f);
bool is_zero(const EdgeFn& f);

// f(e) = sum over occurrences of e in W of [w, w_W](e_i).
EdgeFn flow_from_walk(const SignedGraph& g, const Orientation& o, const Walk& w,
                      const WalkDirection& d);

// w_f: both ends flipped exactly where f(e) < 0, so |f| = [w,w_f] f is a
// nonnegative flow with respect to w_f.
Orientation orientation_of_flow(const SignedGraph& g, const Orientation& o, const EdgeFn& f);

EdgeFn abs_function(const EdgeFn& f);

struct DirectedWalk {
    Walk walk;
    WalkDirection dir;
};

inline constexpr long long kDefaultWeightCap = 1'000'000;

// Greedy extraction of a directed closed positive walk W with f_W = f, for a
// nonnegative nonzero flow with connected support. Extensions pick the
// admissible end of smallest edge id (slot 0 first); residual subtours are
// spliced at their first shared vertex along the tour. The direction is o
// restricted to the walk.
DirectedWalk walk_from_flow(const SignedGraph& g, const Orientation& o, const EdgeFn& f,
                            long long weight_cap = kDefaultWeightCap);

// Closed positive walks representing an arbitrary nonneg nonzero flow, one per
// ambient component touched. Support components inside one ambient component
// are joined through connecting paths traversed forward and back, which cancel
// in f_W; the direction is then per-occurrence rather than o restricted.
std::vector<DirectedWalk> walks_of_flow(const SignedGraph& g, const Orientation& o,
                                        const EdgeFn& f,
                                        long long weight_cap = kDefaultWeightCap);

// Splice a closed coherent sub-walk into a closed coherent walk at position
// pos (0 <= pos < length, vertex v_pos must lie on the sub-walk), reversing
// the sub-walk when needed to keep the result coherent.
DirectedWalk splice_closed_walk(const SignedGraph& g, const DirectedWalk& main, int pos,
                                const DirectedWalk& sub);

// Splice every sub-walk into main, each at its first shared vertex along the
// evolving walk (ties broken by the smallest vertex of the sub-walk). Every
// sub-walk must share a vertex with the result eventually.
DirectedWalk splice_components(const SignedGraph& g, DirectedWalk main,
                               std::vector<DirectedWalk> subs);

// Lift of a flow to the cover through the walk correspondence, per support
// component, with the + level at each component walk's initial vertex.
EdgeFn lift_flow(const SignedGraph& g, const CoverGraph& cover, const Orientation& o,
                 const EdgeFn& f, long long weight_cap = kDefaultWeightCap);

}  // namespace sg

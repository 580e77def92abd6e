#include "sg/cover.hpp"

namespace sg {

int anchor_slot(const SignedGraph& g, int ei) {
    int id0 = g.vertex_id(g.endpoint(ei, 0));
    int id1 = g.vertex_id(g.endpoint(ei, 1));
    return id0 <= id1 ? 0 : 1;
}

int end_level(const SignedGraph& g, int ei, int beta, int slot) {
    return beta * (slot == anchor_slot(g, ei) ? 1 : g.sign(ei));
}

CoverGraph build_cover(const SignedGraph& g) {
    CoverGraph c;
    c.base_vertices = g.vertex_count();
    c.base_edges = g.edge_count();

    std::vector<int> vids;
    vids.reserve(2 * g.vertex_count());
    for (int vi = 0; vi < g.vertex_count(); ++vi) {
        vids.push_back(2 * g.vertex_id(vi));
        vids.push_back(2 * g.vertex_id(vi) + 1);
    }

    std::vector<EdgeRecord> recs;
    recs.reserve(2 * g.edge_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        for (int beta : {+1, -1}) {
            EdgeRecord r;
            r.id = 2 * g.edge_id(ei) + (beta < 0 ? 1 : 0);
            int lvl0 = end_level(g, ei, beta, 0);
            int lvl1 = end_level(g, ei, beta, 1);
            r.u = 2 * g.vertex_id(g.endpoint(ei, 0)) + (lvl0 < 0 ? 1 : 0);
            r.v = 2 * g.vertex_id(g.endpoint(ei, 1)) + (lvl1 < 0 ? 1 : 0);
            r.sign = +1;
            recs.push_back(r);
        }
    }
    c.graph = SignedGraph::build(recs, vids);

    check_internal(c.graph.vertex_count() == 2 * g.vertex_count() &&
                       c.graph.edge_count() == 2 * g.edge_count(),
                   "cover must double vertices and edges");
    for (int cei = 0; cei < c.graph.edge_count(); ++cei) {
        int pe = c.partner_edge(cei);
        check_internal(c.graph.endpoint(pe, 0) == c.partner_vertex(c.graph.endpoint(cei, 0)) &&
                           c.graph.endpoint(pe, 1) == c.partner_vertex(c.graph.endpoint(cei, 1)),
                       "involution must preserve adjacency");
    }
    return c;
}

Orientation lift_orientation(const SignedGraph& g, const CoverGraph& cover, const Orientation& o) {
    Orientation lo;
    lo.end.assign(cover.graph.edge_count(), {0, 0});
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        if (!o.defined(ei)) continue;
        for (int beta : {+1, -1}) {
            int cei = cover.lifted_edge(ei, beta);
            for (int slot = 0; slot < 2; ++slot)
                lo.end[cei][slot] = end_level(g, ei, beta, slot) * o.value(ei, slot);
            check_internal(lo.end[cei][0] * lo.end[cei][1] == -1,
                           "cover edges carry an ordinary direction");
        }
    }
    return lo;
}

LiftedWalk lift_walk(const SignedGraph& g, const CoverGraph& cover, const Walk& w, int alpha0) {
    validate_walk(g, w);
    LiftedWalk lw;
    lw.levels.reserve(w.steps.size() + 1);
    lw.levels.push_back(alpha0);
    lw.walk.start = cover.lift_vertex(w.start, alpha0);
    int alpha = alpha0;
    for (const WalkStep& s : w.steps) {
        // use the lift whose entry-slot end sits on the current level
        int beta = alpha * (s.entry_slot == anchor_slot(g, s.edge) ? 1 : g.sign(s.edge));
        lw.walk.steps.push_back({cover.lifted_edge(s.edge, beta), s.entry_slot, s.exit_slot});
        alpha *= g.sign(s.edge);
        lw.levels.push_back(alpha);
    }
    validate_walk(cover.graph, lw.walk);
    return lw;
}

WalkDirection lift_direction(const WalkDirection& d, const LiftedWalk& lw) {
    WalkDirection out;
    out.val.resize(d.val.size());
    for (size_t i = 0; i < d.val.size(); ++i)
        out.val[i] = {lw.levels[i] * d.val[i][0], lw.levels[i + 1] * d.val[i][1]};
    return out;
}

Walk project_walk(const CoverGraph& cover, const Walk& cover_walk) {
    Walk w;
    w.start = cover.base_vertex_of(cover_walk.start);
    w.steps.reserve(cover_walk.steps.size());
    for (const WalkStep& s : cover_walk.steps)
        w.steps.push_back({cover.base_edge_of(s.edge), s.entry_slot, s.exit_slot});
    return w;
}

WalkDirection project_direction(const CoverGraph& cover, const Walk& cover_walk,
                                const WalkDirection& d) {
    WalkDirection out;
    out.val.resize(d.val.size());
    int at = cover_walk.start;
    for (size_t i = 0; i < cover_walk.steps.size(); ++i) {
        const WalkStep& s = cover_walk.steps[i];
        int exit_vertex = cover.graph.endpoint(s.edge, s.exit_slot);
        out.val[i] = {cover.vertex_level(at) * d.val[i][0],
                      cover.vertex_level(exit_vertex) * d.val[i][1]};
        at = exit_vertex;
    }
    return out;
}

EdgeFn project_function(const CoverGraph& cover, const EdgeFn& cover_fn) {
    EdgeFn f(cover.base_edges, 0);
    for (int ei = 0; ei < cover.base_edges; ++ei) f[ei] = cover_fn[2 * ei] + cover_fn[2 * ei + 1];
    return f;
}

}  // namespace sg

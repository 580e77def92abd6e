#include "sg/rand.hpp"

namespace sg {

SignedGraph random_graph(Rng& rng, const InstanceParams& p) {
    int n = rng.range(p.min_vertices, p.max_vertices);
    int m = rng.range(p.min_edges, p.max_edges);
    if (p.connected && n > m + 1) n = m + 1;  // a spanning tree must fit
    std::vector<EdgeRecord> edges;
    std::vector<int> vertices;
    for (int vi = 0; vi < n; ++vi) vertices.push_back(vi);
    for (int ei = 0; ei < m; ++ei) {
        EdgeRecord e;
        e.id = ei;
        if (p.connected && ei < n - 1) {
            // spanning-tree skeleton first
            e.u = ei + 1;
            e.v = static_cast<int>(rng.below(ei + 1));
        } else {
            e.u = static_cast<int>(rng.below(n));
            e.v = static_cast<int>(rng.below(n));
        }
        e.sign = p.all_positive ? +1 : rng.pick_sign();
        edges.push_back(e);
    }
    return SignedGraph::build(edges, vertices);
}

Orientation random_orientation(Rng& rng, const SignedGraph& g) {
    Orientation o;
    o.end.resize(g.edge_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        int a = rng.pick_sign();
        o.end[ei] = {a, -g.sign(ei) * a};
    }
    return o;
}

Walk random_walk(Rng& rng, const SignedGraph& g, int len) {
    std::vector<int> usable;
    for (int vi = 0; vi < g.vertex_count(); ++vi)
        if (g.degree(vi) > 0) usable.push_back(vi);
    if (usable.empty()) throw ValidationError("random walk needs at least one edge");
    Walk w;
    w.start = usable[rng.below(usable.size())];
    int at = w.start;
    for (int i = 0; i < len; ++i) {
        const std::vector<IncidentEnd>& ends = g.ends_at(at);
        IncidentEnd ie = ends[rng.below(ends.size())];
        w.steps.push_back({ie.edge, ie.slot, 1 - ie.slot});
        at = g.endpoint(ie.edge, 1 - ie.slot);
    }
    return w;
}

Walk random_closed_positive_walk(Rng& rng, const SignedGraph& g, int max_len) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        int target = rng.range(1, max_len);
        Walk w;
        std::vector<int> usable;
        for (int vi = 0; vi < g.vertex_count(); ++vi)
            if (g.degree(vi) > 0) usable.push_back(vi);
        if (usable.empty()) throw ValidationError("graph has no edges");
        w.start = usable[rng.below(usable.size())];
        int at = w.start;
        int sign = 1;
        for (int i = 0; i < 4 * max_len; ++i) {
            const std::vector<IncidentEnd>& ends = g.ends_at(at);
            IncidentEnd ie = ends[rng.below(ends.size())];
            w.steps.push_back({ie.edge, ie.slot, 1 - ie.slot});
            at = g.endpoint(ie.edge, 1 - ie.slot);
            sign *= g.sign(ie.edge);
            if (at == w.start && sign == 1 && w.length() >= target) return w;
        }
    }
    // guaranteed fallback: one edge there and back
    int ei = 0;
    Walk w;
    w.start = g.endpoint(ei, 0);
    w.steps.push_back({ei, 0, 1});
    w.steps.push_back({ei, 1, 0});
    return w;
}

EdgeFn random_flow(Rng& rng, const SignedGraph& g, const Orientation& o,
                   const InstanceParams& p) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        EdgeFn f(g.edge_count(), 0);
        int walks = rng.range(p.min_walks, p.max_walks);
        for (int i = 0; i < walks; ++i) {
            Walk w = random_closed_positive_walk(rng, g, p.max_walk_len);
            WalkDirection d = propagate_direction(g, w, rng.pick_sign());
            check_internal(is_closed_coherent(g, w, d), "closed positive walks are coherent");
            EdgeFn part = flow_from_walk(g, o, w, d);
            for (int ei = 0; ei < g.edge_count(); ++ei) f[ei] += part[ei];
        }
        if (!is_zero(f)) {
            require_flow(g, o, f);
            return f;
        }
    }
    throw ValidationError("could not build a nonzero flow on this graph");
}

Instance random_instance(uint64_t seed, const InstanceParams& p) {
    Rng rng(seed);
    // some draws carry no nonzero flow at all (forests, lone negative
    // circles); redraw until the flow lattice is inhabited
    for (int attempt = 0; attempt < 100; ++attempt) {
        Instance inst;
        inst.graph = random_graph(rng, p);
        inst.orientation = random_orientation(rng, inst.graph);
        try {
            inst.flow = random_flow(rng, inst.graph, inst.orientation, p);
            return inst;
        } catch (const ValidationError&) {
            continue;
        }
    }
    throw ValidationError("could not draw a graph with a nonzero flow");
}

}  // namespace sg

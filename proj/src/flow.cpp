#include "sg/flow.hpp"

#include <algorithm>

namespace sg {

int incidence_value(const SignedGraph& g, const Orientation& o, int vi, int ei) {
    int m = 0;
    for (int slot = 0; slot < 2; ++slot)
        if (g.endpoint(ei, slot) == vi) m += o.value(ei, slot);
    return m;
}

VertexFn boundary(const SignedGraph& g, const Orientation& o, const EdgeFn& f) {
    if (static_cast<int>(f.size()) != g.edge_count())
        throw ValidationError("edge function size mismatch");
    VertexFn b(g.vertex_count(), 0);
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        if (f[ei] == 0) continue;
        b[g.endpoint(ei, 0)] += o.value(ei, 0) * f[ei];
        b[g.endpoint(ei, 1)] += o.value(ei, 1) * f[ei];
    }
    return b;
}

bool is_flow(const SignedGraph& g, const Orientation& o, const EdgeFn& f) {
    VertexFn b = boundary(g, o, f);
    return std::all_of(b.begin(), b.end(), [](long long x) { return x == 0; });
}

void require_flow(const SignedGraph& g, const Orientation& o, const EdgeFn& f) {
    VertexFn b = boundary(g, o, f);
    for (int vi = 0; vi < g.vertex_count(); ++vi)
        if (b[vi] != 0)
            throw ValidationError("not a flow: boundary " + std::to_string(b[vi]) +
                                  " at vertex id " + std::to_string(g.vertex_id(vi)));
}

long long total_weight(const EdgeFn& f) {
    long long s = 0;
    for (long long x : f) s += std::abs(x);
    return s;
}

bool is_zero(const EdgeFn& f) {
    return std::all_of(f.begin(), f.end(), [](long long x) { return x == 0; });
}

EdgeFn flow_from_walk(const SignedGraph& g, const Orientation& o, const Walk& w,
                      const WalkDirection& d) {
    validate_walk(g, w);
    validate_direction(g, w, d);
    EdgeFn f(g.edge_count(), 0);
    for (size_t i = 0; i < w.steps.size(); ++i) {
        const WalkStep& s = w.steps[i];
        if (!o.defined(s.edge)) throw ValidationError("walk leaves the oriented subgraph");
        int c = o.value(s.edge, s.entry_slot) * d.val[i][0];
        check_internal(c == o.value(s.edge, s.exit_slot) * d.val[i][1],
                       "occurrence coupling must not depend on the sampled end");
        f[s.edge] += c;
    }
    return f;
}

Orientation orientation_of_flow(const SignedGraph& g, const Orientation& o, const EdgeFn& f) {
    Orientation r = o;
    for (int ei = 0; ei < g.edge_count(); ++ei)
        if (f[ei] < 0) {
            r.end[ei][0] = -r.end[ei][0];
            r.end[ei][1] = -r.end[ei][1];
        }
    return r;
}

EdgeFn abs_function(const EdgeFn& f) {
    EdgeFn a(f.size());
    for (size_t i = 0; i < f.size(); ++i) a[i] = std::abs(f[i]);
    return a;
}

namespace {

// One greedy closed positive walk eating into residual, started at the
// smallest support vertex. Extensions must be coherent w.r.t. o at the
// terminal vertex; ties go to the smallest edge id, then slot 0.
Walk greedy_tour(const SignedGraph& g, const Orientation& o, EdgeFn& residual) {
    int v0 = -1;
    int first_edge = -1, first_slot = -1;
    for (int vi = 0; vi < g.vertex_count() && v0 < 0; ++vi)
        for (const IncidentEnd& ie : g.ends_at(vi))
            if (residual[ie.edge] > 0) {
                v0 = vi;
                break;
            }
    check_internal(v0 >= 0, "greedy tour needs a nonzero residual");
    for (const IncidentEnd& ie : g.ends_at(v0)) {
        if (residual[ie.edge] <= 0) continue;
        if (first_edge == -1 || ie.edge < first_edge ||
            (ie.edge == first_edge && ie.slot < first_slot)) {
            first_edge = ie.edge;
            first_slot = ie.slot;
        }
    }

    Walk w;
    w.start = v0;
    w.steps.push_back({first_edge, first_slot, 1 - first_slot});
    residual[first_edge] -= 1;
    int at = g.endpoint(first_edge, 1 - first_slot);
    int sign_product = g.sign(first_edge);
    long long guard = 0;

    while (!(at == v0 && sign_product == 1)) {
        check_internal(++guard <= static_cast<long long>(4) * g.edge_count() * 1000000,
                       "greedy tour failed to close");
        const WalkStep& last = w.steps.back();
        int needed = -o.value(last.edge, last.exit_slot);
        int best_edge = -1, best_slot = -1;
        for (const IncidentEnd& ie : g.ends_at(at)) {
            if (residual[ie.edge] <= 0) continue;
            if (o.value(ie.edge, ie.slot) != needed) continue;
            if (best_edge == -1 || ie.edge < best_edge ||
                (ie.edge == best_edge && ie.slot < best_slot)) {
                best_edge = ie.edge;
                best_slot = ie.slot;
            }
        }
        check_internal(best_edge != -1, "flow conservation guarantees an extension");
        w.steps.push_back({best_edge, best_slot, 1 - best_slot});
        residual[best_edge] -= 1;
        at = g.endpoint(best_edge, 1 - best_slot);
        sign_product *= g.sign(best_edge);
    }
    return w;
}

}  // namespace

DirectedWalk splice_closed_walk(const SignedGraph& g, const DirectedWalk& main, int pos,
                                const DirectedWalk& sub) {
    std::vector<int> mv = walk_vertices(g, main.walk);
    check_internal(pos >= 0 && pos < main.walk.length(), "splice position out of range");
    int v = mv[pos];

    std::vector<int> sv = walk_vertices(g, sub.walk);
    int rot = -1;
    for (int i = 0; i < sub.walk.length(); ++i)
        if (sv[i] == v) {
            rot = i;
            break;
        }
    check_internal(rot >= 0, "splice vertex must lie on the sub-walk");

    Walk s = rotate_walk(g, sub.walk, rot);
    WalkDirection sd = rotate_direction(sub.dir, rot);
    int required = (pos == 0) ? main.dir.val[0][0] : -main.dir.val[pos - 1][1];
    if (sd.val[0][0] != required) {
        s = reverse_walk(g, s);
        sd = reverse_direction(sd);
    }
    check_internal(sd.val[0][0] == required, "one sense of the sub-walk must fit coherently");

    DirectedWalk out;
    out.walk.start = main.walk.start;
    out.walk.steps.reserve(main.walk.steps.size() + s.steps.size());
    out.walk.steps.insert(out.walk.steps.end(), main.walk.steps.begin(),
                          main.walk.steps.begin() + pos);
    out.walk.steps.insert(out.walk.steps.end(), s.steps.begin(), s.steps.end());
    out.walk.steps.insert(out.walk.steps.end(), main.walk.steps.begin() + pos,
                          main.walk.steps.end());
    out.dir.val.reserve(out.walk.steps.size());
    out.dir.val.insert(out.dir.val.end(), main.dir.val.begin(), main.dir.val.begin() + pos);
    out.dir.val.insert(out.dir.val.end(), sd.val.begin(), sd.val.end());
    out.dir.val.insert(out.dir.val.end(), main.dir.val.begin() + pos, main.dir.val.end());

    check_internal(is_closed_coherent(g, out.walk, out.dir), "splice must stay coherent");
    return out;
}

DirectedWalk splice_components(const SignedGraph& g, DirectedWalk main,
                               std::vector<DirectedWalk> subs) {
    std::vector<std::vector<int>> sub_vertices;
    for (const DirectedWalk& dw : subs) {
        std::vector<int> vs = walk_vertices(g, dw.walk);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        sub_vertices.push_back(std::move(vs));
    }
    std::vector<char> done(subs.size(), 0);
    size_t remaining = subs.size();
    for (int pos = 0; pos < main.walk.length() && remaining > 0; ++pos) {
        int v = walk_vertices(g, main.walk)[pos];
        while (true) {
            int best = -1;
            for (size_t i = 0; i < subs.size(); ++i) {
                if (done[i]) continue;
                if (!std::binary_search(sub_vertices[i].begin(), sub_vertices[i].end(), v))
                    continue;
                if (best == -1 || sub_vertices[i].front() < sub_vertices[best].front())
                    best = static_cast<int>(i);
            }
            if (best == -1) break;
            main = splice_closed_walk(g, main, pos, subs[best]);
            done[best] = 1;
            --remaining;
        }
    }
    check_internal(remaining == 0, "every sub-walk shares a vertex with the main walk");
    return main;
}

DirectedWalk walk_from_flow(const SignedGraph& g, const Orientation& o, const EdgeFn& f,
                            long long weight_cap) {
    if (static_cast<int>(f.size()) != g.edge_count())
        throw ValidationError("edge function size mismatch");
    for (long long x : f)
        if (x < 0) throw ValidationError("walk_from_flow requires a nonnegative flow");
    if (is_zero(f)) throw ValidationError("walk_from_flow requires a nonzero flow");
    if (total_weight(f) > weight_cap)
        throw ValidationError("total weight exceeds the cap of " + std::to_string(weight_cap));
    require_flow(g, o, f);
    if (support_components(g, f).size() != 1)
        throw ValidationError("walk_from_flow requires a connected support");

    EdgeFn residual = f;
    Walk main_walk = greedy_tour(g, o, residual);
    DirectedWalk main{main_walk, restrict_to_walk(g, o, main_walk)};

    // Residual components get their own tours, then are spliced at their first
    // shared vertex along the evolving tour.
    std::vector<DirectedWalk> pending;
    for (const std::vector<int>& comp : support_components(g, residual)) {
        EdgeFn sub(g.edge_count(), 0);
        for (int ei : comp) sub[ei] = residual[ei];
        pending.push_back(walk_from_flow(g, o, sub, weight_cap));
    }
    main = splice_components(g, std::move(main), std::move(pending));
    check_internal(flow_from_walk(g, o, main.walk, main.dir) == f,
                   "extracted walk must reproduce the flow");
    return main;
}

namespace {

// Shortest connector from any vertex of `from` to any vertex of `to_set`,
// breadth-first with smallest-id tie-breaks.
Walk connector_path(const SignedGraph& g, const std::vector<int>& from,
                    const std::vector<char>& to_set) {
    std::vector<int> prev_vertex(g.vertex_count(), -1);
    std::vector<WalkStep> prev_step(g.vertex_count());
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> queue;
    for (int v : from) {
        if (!seen[v]) {
            seen[v] = 1;
            queue.push_back(v);
        }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int at = queue[qi];
        if (to_set[at]) {
            Walk path;
            std::vector<WalkStep> rev;
            int cur = at;
            while (prev_vertex[cur] != -1) {
                rev.push_back(prev_step[cur]);
                cur = prev_vertex[cur];
            }
            path.start = cur;
            path.steps.assign(rev.rbegin(), rev.rend());
            return path;
        }
        for (const IncidentEnd& ie : g.ends_at(at)) {
            int to = g.endpoint(ie.edge, 1 - ie.slot);
            if (seen[to]) continue;
            seen[to] = 1;
            prev_vertex[to] = at;
            prev_step[to] = {ie.edge, ie.slot, 1 - ie.slot};
            queue.push_back(to);
        }
    }
    throw ValidationError("support components lie in different components of the graph");
}

}  // namespace

std::vector<DirectedWalk> walks_of_flow(const SignedGraph& g, const Orientation& o,
                                        const EdgeFn& f, long long weight_cap) {
    for (long long x : f)
        if (x < 0) throw ValidationError("walks_of_flow requires a nonnegative flow");
    if (is_zero(f)) throw ValidationError("walks_of_flow requires a nonzero flow");
    require_flow(g, o, f);

    std::vector<std::vector<int>> comps = support_components(g, f);
    std::vector<int> ambient = vertex_components(g);
    // group support components by ambient component, keeping order
    std::vector<int> group_of;
    std::vector<int> group_ids;
    for (const std::vector<int>& comp : comps) {
        int a = ambient[g.endpoint(comp.front(), 0)];
        auto it = std::find(group_ids.begin(), group_ids.end(), a);
        if (it == group_ids.end()) {
            group_ids.push_back(a);
            group_of.push_back(static_cast<int>(group_ids.size()) - 1);
        } else {
            group_of.push_back(static_cast<int>(it - group_ids.begin()));
        }
    }

    std::vector<DirectedWalk> out;
    for (size_t gi = 0; gi < group_ids.size(); ++gi) {
        DirectedWalk acc;
        bool have = false;
        for (size_t ci = 0; ci < comps.size(); ++ci) {
            if (group_of[ci] != static_cast<int>(gi)) continue;
            EdgeFn sub(g.edge_count(), 0);
            for (int ei : comps[ci]) sub[ei] = f[ei];
            DirectedWalk dw = walk_from_flow(g, o, sub, weight_cap);
            if (!have) {
                acc = std::move(dw);
                have = true;
                continue;
            }

            std::vector<int> acc_vertices = walk_vertices(g, acc.walk);
            std::vector<char> target(g.vertex_count(), 0);
            for (int v : walk_vertices(g, dw.walk)) target[v] = 1;
            std::vector<int> sources(acc_vertices.begin(), acc_vertices.end() - 1);
            std::sort(sources.begin(), sources.end());
            sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
            Walk path = connector_path(g, sources, target);

            if (path.steps.empty()) {
                // components already touch; plain splice suffices
                int pos = 0;
                while (acc_vertices[pos] != path.start) ++pos;
                acc = splice_closed_walk(g, acc, pos, dw);
                continue;
            }

            int pos = 0;
            while (acc_vertices[pos] != path.start) ++pos;

            // inserted segment: path, sub-tour, path reversed; its direction is
            // propagated, and the sub-tour sense is flipped to agree with it
            Walk rpath = reverse_walk(g, path);
            int attach = walk_vertices(g, path).back();
            std::vector<int> dvs = walk_vertices(g, dw.walk);
            int rot = 0;
            while (dvs[rot] != attach) ++rot;
            Walk sub_rot = rotate_walk(g, dw.walk, rot);
            WalkDirection sub_dir = rotate_direction(dw.dir, rot);

            int required = (pos == 0) ? acc.dir.val[0][0] : -acc.dir.val[pos - 1][1];
            WalkDirection pdir = propagate_direction(g, path, required);
            int q = -pdir.val.back()[1];
            if (sub_dir.val[0][0] != q) {
                sub_rot = reverse_walk(g, sub_rot);
                sub_dir = reverse_direction(sub_dir);
            }
            check_internal(sub_dir.val[0][0] == q, "sub-tour must admit a coherent sense");
            WalkDirection rdir = propagate_direction(g, rpath, -sub_dir.val.back()[1]);

            DirectedWalk seg;
            seg.walk.start = path.start;
            auto append = [&seg](const Walk& w2, const WalkDirection& d2) {
                seg.walk.steps.insert(seg.walk.steps.end(), w2.steps.begin(), w2.steps.end());
                seg.dir.val.insert(seg.dir.val.end(), d2.val.begin(), d2.val.end());
            };
            append(path, pdir);
            append(sub_rot, sub_dir);
            append(rpath, rdir);

            DirectedWalk merged;
            merged.walk.start = acc.walk.start;
            merged.walk.steps.insert(merged.walk.steps.end(), acc.walk.steps.begin(),
                                     acc.walk.steps.begin() + pos);
            merged.walk.steps.insert(merged.walk.steps.end(), seg.walk.steps.begin(),
                                     seg.walk.steps.end());
            merged.walk.steps.insert(merged.walk.steps.end(), acc.walk.steps.begin() + pos,
                                     acc.walk.steps.end());
            merged.dir.val.insert(merged.dir.val.end(), acc.dir.val.begin(),
                                  acc.dir.val.begin() + pos);
            merged.dir.val.insert(merged.dir.val.end(), seg.dir.val.begin(), seg.dir.val.end());
            merged.dir.val.insert(merged.dir.val.end(), acc.dir.val.begin() + pos,
                                  acc.dir.val.end());
            check_internal(is_closed_coherent(g, merged.walk, merged.dir),
                           "connector insertion must stay coherent");
            acc = std::move(merged);
        }
        check_internal(have, "every group contains a support component");
        out.push_back(std::move(acc));
    }

    EdgeFn sum(g.edge_count(), 0);
    for (const DirectedWalk& dw : out) {
        EdgeFn part = flow_from_walk(g, o, dw.walk, dw.dir);
        for (int ei = 0; ei < g.edge_count(); ++ei) sum[ei] += part[ei];
    }
    check_internal(sum == f, "walks must reproduce the flow");
    return out;
}

EdgeFn lift_flow(const SignedGraph& g, const CoverGraph& cover, const Orientation& o,
                 const EdgeFn& f, long long weight_cap) {
    require_flow(g, o, f);
    EdgeFn lifted(cover.graph.edge_count(), 0);
    if (is_zero(f)) return lifted;

    Orientation of = orientation_of_flow(g, o, f);
    Orientation lift_o = lift_orientation(g, cover, o);
    EdgeFn h = abs_function(f);
    for (const std::vector<int>& comp : support_components(g, h)) {
        EdgeFn sub(g.edge_count(), 0);
        for (int ei : comp) sub[ei] = h[ei];
        DirectedWalk dw = walk_from_flow(g, of, sub, weight_cap);
        LiftedWalk lw = lift_walk(g, cover, dw.walk, +1);
        WalkDirection ld = lift_direction(dw.dir, lw);
        EdgeFn part = flow_from_walk(cover.graph, lift_o, lw.walk, ld);
        for (size_t i = 0; i < lifted.size(); ++i) lifted[i] += part[i];
    }
    check_internal(project_function(cover, lifted) == f, "projection must recover the flow");
    return lifted;
}

}  // namespace sg

#include "sg/decompose.hpp"

#include <algorithm>
#include <map>

namespace sg {

namespace {

bool is_simple_circle(const SignedGraph& g, const Walk& w) {
    if (!walk_closed(g, w)) return false;
    std::vector<int> vs = walk_vertices(g, w);
    vs.pop_back();
    std::sort(vs.begin(), vs.end());
    return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

// positions (0..n-1) of each vertex along a closed walk, base counted once
std::vector<std::vector<int>> vertex_positions(const SignedGraph& g, const Walk& w) {
    std::vector<std::vector<int>> pos(g.vertex_count());
    std::vector<int> vs = walk_vertices(g, w);
    for (int i = 0; i < w.length(); ++i) pos[vs[i]].push_back(i);
    return pos;
}

// The rerouting construction: from a walk rotated at a repeated vertex v
// (positions 0 and m) whose halves meet again at positions k < m < h, keep the
// first k steps and come back along the partner lift, i.e. traverse steps
// h-1 .. m backwards. The result is closed, coherent, and strictly lighter.
DirectedWalk reroute_walk(const SignedGraph& g, const Orientation& of, const DirectedWalk& rot,
                          int m, int k, int h) {
    DirectedWalk out;
    out.walk.start = rot.walk.start;
    out.walk.steps.assign(rot.walk.steps.begin(), rot.walk.steps.begin() + k);
    for (int i = h - 1; i >= m; --i) {
        const WalkStep& s = rot.walk.steps[i];
        out.walk.steps.push_back({s.edge, s.exit_slot, s.entry_slot});
    }
    out.dir = restrict_to_walk(g, of, out.walk);
    check_internal(is_closed_coherent(g, out.walk, out.dir),
                   "rerouted walk must be a directed closed walk");
    check_internal(walk_sign(g, out.walk) == 1, "rerouted walk must be positive");

    EdgeFn before = flow_from_walk(g, of, rot.walk, rot.dir);
    EdgeFn after = flow_from_walk(g, of, out.walk, out.dir);
    for (int ei = 0; ei < g.edge_count(); ++ei)
        check_internal(0 <= after[ei] && after[ei] <= before[ei],
                       "rerouted flow must conform below the original");
    check_internal(total_weight(after) < total_weight(before),
                   "rerouting must strictly reduce the weight");
    return out;
}

struct WalkWitness {
    enum Kind { none, split, rerouted } kind = none;
    DirectedWalk first, second;  // split halves
    DirectedWalk replacement;    // rerouted walk
};

// Search a directed closed positive walk (directed by `of` restricted) for a
// coherent self-intersection (split) or an incoherent one at a non-cut vertex
// (reroute). Absence of both certifies indecomposability of f_W.
WalkWitness find_witness(const SignedGraph& g, const Orientation& of, const DirectedWalk& dw) {
    WalkWitness none;
    int n = dw.walk.length();
    std::vector<std::vector<int>> pos = vertex_positions(g, dw.walk);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (pos[v].size() < 2) continue;
        for (size_t a = 0; a + 1 < pos[v].size(); ++a) {
            int p1 = pos[v][a], p2 = pos[v][a + 1];
            Walk wr = rotate_walk(g, dw.walk, p1);
            WalkDirection dr = rotate_direction(dw.dir, p1);
            int m = p2 - p1;
            if (dr.val[0][0] + dr.val[m - 1][1] == 0) {
                WalkWitness wit;
                wit.kind = WalkWitness::split;
                wit.first.walk.start = wr.start;
                wit.first.walk.steps.assign(wr.steps.begin(), wr.steps.begin() + m);
                wit.first.dir.val.assign(dr.val.begin(), dr.val.begin() + m);
                wit.second.walk.start = wr.start;
                wit.second.walk.steps.assign(wr.steps.begin() + m, wr.steps.end());
                wit.second.dir.val.assign(dr.val.begin() + m, dr.val.end());
                return wit;
            }
            // smallest vertex shared by both halves, other than v itself
            std::vector<int> vs = walk_vertices(g, wr);
            std::vector<char> in_first(g.vertex_count(), 0);
            for (int i = 0; i <= m; ++i) in_first[vs[i]] = 1;
            int u = -1, h = -1;
            for (int i = m + 1; i <= n - 1; ++i)
                if (vs[i] != wr.start && in_first[vs[i]] && (u == -1 || vs[i] < u)) u = vs[i];
            if (u == -1) continue;
            for (int i = m + 1; i <= n - 1 && h == -1; ++i)
                if (vs[i] == u) h = i;
            int k = -1;
            for (int i = 1; i <= m - 1 && k == -1; ++i)
                if (vs[i] == u) k = i;
            check_internal(k != -1 && h != -1, "shared vertex occurs in both halves");
            WalkWitness wit;
            wit.kind = WalkWitness::rerouted;
            wit.replacement = reroute_walk(g, of, {wr, dr}, m, k, h);
            return wit;
        }
    }
    return none;
}

// directed-circle peeling on the cover, smallest live edge first
struct PeeledCycle {
    Walk walk;  // cover walk along the flow direction
    long long multiplicity = 1;
};

std::vector<PeeledCycle> peel_cover_cycles(const SignedGraph& cover_graph,
                                           const Orientation& cover_o, EdgeFn flow) {
    std::vector<PeeledCycle> out;
    auto tail_slot = [&](int ei) { return cover_o.value(ei, 0) < 0 ? 0 : 1; };
    while (true) {
        int e0 = -1;
        for (int ei = 0; ei < cover_graph.edge_count() && e0 < 0; ++ei)
            if (flow[ei] > 0) e0 = ei;
        if (e0 < 0) break;
        int tail = cover_graph.endpoint(e0, tail_slot(e0));
        int head = cover_graph.endpoint(e0, 1 - tail_slot(e0));

        // depth-first search for a directed live path head -> tail
        std::vector<int> prev_vertex(cover_graph.vertex_count(), -1);
        std::vector<WalkStep> prev_step(cover_graph.vertex_count());
        std::vector<char> seen(cover_graph.vertex_count(), 0);
        std::vector<int> stack{head};
        seen[head] = 1;
        bool found = head == tail;
        while (!stack.empty() && !found) {
            int at = stack.back();
            stack.pop_back();
            for (const IncidentEnd& ie : cover_graph.ends_at(at)) {
                if (flow[ie.edge] <= 0 || ie.edge == e0) continue;
                if (cover_o.value(ie.edge, ie.slot) != -1) continue;  // must leave `at`
                int to = cover_graph.endpoint(ie.edge, 1 - ie.slot);
                if (seen[to]) continue;
                seen[to] = 1;
                prev_vertex[to] = at;
                prev_step[to] = {ie.edge, ie.slot, 1 - ie.slot};
                if (to == tail) {
                    found = true;
                    break;
                }
                stack.push_back(to);
            }
        }
        check_internal(found, "conservation yields a live return path");

        PeeledCycle cyc;
        cyc.walk.start = tail;
        cyc.walk.steps.push_back({e0, tail_slot(e0), 1 - tail_slot(e0)});
        std::vector<WalkStep> back;
        for (int cur = tail; prev_vertex[cur] != -1; cur = prev_vertex[cur])
            back.push_back(prev_step[cur]);
        cyc.walk.steps.insert(cyc.walk.steps.end(), back.rbegin(), back.rend());

        long long m = flow[e0];
        for (const WalkStep& s : cyc.walk.steps) m = std::min(m, flow[s.edge]);
        for (const WalkStep& s : cyc.walk.steps) flow[s.edge] -= m;
        cyc.multiplicity = m;
        out.push_back(std::move(cyc));
    }
    return out;
}

}  // namespace

IndecomposabilityResult is_indecomposable(const SignedGraph& g, const Orientation& o,
                                          const EdgeFn& f) {
    if (is_zero(f)) throw ValidationError("the zero flow is neither of the two");
    require_flow(g, o, f);
    IndecomposabilityResult res;
    std::vector<int> support;
    for (int ei = 0; ei < g.edge_count(); ++ei)
        if (f[ei] != 0) support.push_back(ei);

    RecognitionResult rec = recognize_circle_tree(g, support);
    if (!rec.ok()) {
        res.failed_condition =
            std::string("circle-tree condition (") + rec.failure->condition + "): " +
            rec.failure->detail;
        return res;
    }
    if (!rec.tree->sesqui_eulerian) {
        res.failed_condition = "circle-tree condition (e): parity violated";
        return res;
    }
    Orientation of = orientation_of_flow(g, o, f);
    Orientation of_restricted = restrict_orientation(g, of, support);
    if (!is_direction(g, *rec.tree, of_restricted)) {
        res.failed_condition = "the flow orientation is not a direction of the tree";
        return res;
    }
    if (abs_function(f) != indicator(g, *rec.tree)) {
        res.failed_condition = "|f| differs from the tree indicator";
        return res;
    }
    res.indecomposable = true;
    res.certificate = std::move(*rec.tree);
    res.direction = std::move(of_restricted);
    return res;
}

ResolveResult resolve(const SignedGraph& g, const CoverGraph& cover, const Orientation& o,
                      const EdgeFn& f, long long weight_cap) {
    if (is_zero(f)) throw ValidationError("cannot resolve the zero flow");
    require_flow(g, o, f);

    Orientation of = orientation_of_flow(g, o, f);
    EdgeFn h = abs_function(f);
    std::vector<DirectedWalk> walks = walks_of_flow(g, of, h, weight_cap);

    if (walks.size() == 1) {
        // a circle lift may still belong to a decomposable flow; rerouting then
        // produces an equally valid resolution walk that is visibly singular
        LiftedWalk lw = lift_walk(g, cover, walks[0].walk, +1);
        if (is_simple_circle(cover.graph, lw.walk)) {
            WalkWitness wit = find_witness(g, of, walks[0]);
            check_internal(wit.kind != WalkWitness::split,
                           "a circle lift admits no coherent split");
            if (wit.kind == WalkWitness::rerouted) {
                EdgeFn used = flow_from_walk(g, of, wit.replacement.walk, wit.replacement.dir);
                EdgeFn rest(h.size());
                for (size_t i = 0; i < h.size(); ++i) rest[i] = h[i] - used[i];
                std::vector<DirectedWalk> subs;
                for (const std::vector<int>& comp : support_components(g, rest)) {
                    EdgeFn sub(g.edge_count(), 0);
                    for (int ei : comp) sub[ei] = rest[ei];
                    subs.push_back(walk_from_flow(g, of, sub, weight_cap));
                }
                walks[0] = splice_components(g, wit.replacement, std::move(subs));
            }
        }
    }

    ResolveResult res;
    Orientation lift_o = lift_orientation(g, cover, o);
    res.cover_flow.assign(cover.graph.edge_count(), 0);
    for (const DirectedWalk& dw : walks) {
        LiftedWalk lw = lift_walk(g, cover, dw.walk, +1);
        WalkDirection ld = lift_direction(dw.dir, lw);
        EdgeFn part = flow_from_walk(cover.graph, lift_o, lw.walk, ld);
        for (size_t i = 0; i < part.size(); ++i) res.cover_flow[i] += part[i];
        res.cover_walks.push_back({lw.walk, std::move(ld)});
        res.base_walks.push_back(dw);
    }
    check_internal(project_function(cover, res.cover_flow) == f,
                   "resolved lift must project to the flow");
    res.is_circle =
        res.cover_walks.size() == 1 && is_simple_circle(cover.graph, res.cover_walks[0].walk);
    return res;
}

EdgeFn Decomposition::sum(int edge_count) const {
    EdgeFn s(edge_count, 0);
    for (const DecompositionPart& p : parts)
        for (int ei = 0; ei < edge_count; ++ei) s[ei] += p.multiplicity * p.values[ei];
    return s;
}

namespace {

struct DecomposeContext {
    const SignedGraph& g;
    const CoverGraph& cover;
    const Orientation& of;       // orientation of the input flow
    const Orientation& lift_of;  // its lift
    const std::vector<int>& sign_map;  // [o, of]
    long long weight_cap;
    std::map<EdgeFn, DecompositionPart> parts;

    void emit(const EdgeFn& nonneg, const IndecomposabilityResult& cert, long long mult) {
        EdgeFn signed_values(nonneg.size());
        for (size_t i = 0; i < nonneg.size(); ++i) signed_values[i] = sign_map[i] * nonneg[i];
        auto it = parts.find(signed_values);
        if (it != parts.end()) {
            it->second.multiplicity += mult;
            return;
        }
        DecompositionPart p;
        p.values = signed_values;
        p.certificate = *cert.certificate;
        p.direction = *cert.direction;
        p.multiplicity = mult;
        parts.emplace(std::move(signed_values), std::move(p));
    }

    void refine(const DirectedWalk& dw, long long mult) {
        EdgeFn p = flow_from_walk(g, of, dw.walk, dw.dir);
        IndecomposabilityResult r = is_indecomposable(g, of, p);
        if (r.indecomposable) {
            emit(p, r, mult);
            return;
        }
        WalkWitness wit = find_witness(g, of, dw);
        check_internal(wit.kind != WalkWitness::none,
                       "a decomposable piece has a split or a reroute");
        if (wit.kind == WalkWitness::split) {
            decompose_nonneg(flow_from_walk(g, of, wit.first.walk, wit.first.dir), mult);
            decompose_nonneg(flow_from_walk(g, of, wit.second.walk, wit.second.dir), mult);
        } else {
            EdgeFn used = flow_from_walk(g, of, wit.replacement.walk, wit.replacement.dir);
            EdgeFn rest(p.size());
            for (size_t i = 0; i < p.size(); ++i) rest[i] = p[i] - used[i];
            decompose_nonneg(used, mult);
            decompose_nonneg(rest, mult);
        }
    }

    void decompose_nonneg(const EdgeFn& h, long long mult) {
        if (is_zero(h)) return;
        for (const std::vector<int>& comp : support_components(g, h)) {
            EdgeFn sub(g.edge_count(), 0);
            for (int ei : comp) sub[ei] = h[ei];
            DirectedWalk dw = walk_from_flow(g, of, sub, weight_cap);
            LiftedWalk lw = lift_walk(g, cover, dw.walk, +1);
            WalkDirection ld = lift_direction(dw.dir, lw);
            EdgeFn cover_flow = flow_from_walk(cover.graph, lift_of, lw.walk, ld);
            for (const PeeledCycle& cyc : peel_cover_cycles(cover.graph, lift_of, cover_flow)) {
                Walk base = project_walk(cover, cyc.walk);
                DirectedWalk piece{base, restrict_to_walk(g, of, base)};
                check_internal(is_closed_coherent(g, piece.walk, piece.dir),
                               "projected circles stay coherent");
                refine(piece, mult * cyc.multiplicity);
            }
        }
    }
};

}  // namespace

Decomposition conformal_decompose(const SignedGraph& g, const Orientation& o, const EdgeFn& f,
                                  long long weight_cap) {
    require_flow(g, o, f);
    Decomposition dec;
    if (is_zero(f)) return dec;

    CoverGraph cover = build_cover(g);
    Orientation of = orientation_of_flow(g, o, f);
    Orientation lift_of = lift_orientation(g, cover, of);
    std::vector<int> sign_map = coupling(g, o, of);
    DecomposeContext ctx{g, cover, of, lift_of, sign_map, weight_cap, {}};
    ctx.decompose_nonneg(abs_function(f), 1);

    for (auto& [key, part] : ctx.parts) dec.parts.push_back(std::move(part));

    // soundness: exact sum, conformity, certified parts
    check_internal(dec.sum(g.edge_count()) == f, "parts must sum to the flow");
    for (const DecompositionPart& p : dec.parts) {
        for (int ei = 0; ei < g.edge_count(); ++ei)
            check_internal(p.values[ei] * f[ei] > 0 || p.values[ei] == 0,
                           "parts must conform to the sign pattern");
        check_internal(p.certificate.sesqui_eulerian, "certificates must satisfy parity");
        check_internal(is_indecomposable(g, o, p.values).indecomposable,
                       "parts must be certified indecomposable");
    }
    return dec;
}

HalfDecomposition half_integer_decompose(const SignedGraph& g, const CircleTree& tree) {
    if (!tree.sesqui_eulerian)
        throw ValidationError("half-integral decomposition needs the parity condition");

    HalfDecomposition out;
    if (auto trivial = classify_circuit(g, tree.edges)) {
        out.trivial = true;
        out.circuits.emplace_back(std::move(*trivial), 2);
        return out;
    }

    TourResult tour = minimal_tour(g, tree);
    int n = tour.walk.length();

    // map edges of end circles to their circle index
    std::vector<int> end_circle_of_edge(g.edge_count(), -1);
    int end_blocks = 0;
    for (int c = 0; c < tree.circle_count(); ++c) {
        if (!tree.is_end_circle(c)) continue;
        ++end_blocks;
        for (int ei : tree.circle_blocks[c]) end_circle_of_edge[ei] = c;
    }
    check_internal(end_blocks >= 2, "a non-circuit tree has at least two end blocks");

    auto label = [&](int i) { return end_circle_of_edge[tour.walk.steps[i % n].edge]; };
    int r = -1;
    for (int i = 0; i < n && r < 0; ++i)
        if (label(i) == -1 && label(i + n - 1) != -1) r = i;
    check_internal(r >= 0, "tour alternates end blocks and connecting paths");

    struct Segment {
        std::vector<int> path;  // edges of P_i in tour order
        int end_circle = -1;
    };
    std::vector<Segment> segs;
    int i = 0;
    while (i < n) {
        Segment s;
        while (i < n && label(r + i) == -1) s.path.push_back(tour.walk.steps[(r + i++) % n].edge);
        check_internal(!s.path.empty(), "every connecting path has positive length");
        check_internal(i < n, "tour ends inside an end block");
        s.end_circle = label(r + i);
        while (i < n && label(r + i) == s.end_circle)
            ++i;
        segs.push_back(std::move(s));
    }
    check_internal(static_cast<int>(segs.size()) == end_blocks,
                   "each end block appears in exactly one run");

    for (size_t si = 0; si < segs.size(); ++si) {
        const Segment& cur = segs[si];
        const Segment& nxt = segs[(si + 1) % segs.size()];
        std::vector<int> edges = tree.circle_blocks[cur.end_circle];
        edges.insert(edges.end(), nxt.path.begin(), nxt.path.end());
        edges.insert(edges.end(), tree.circle_blocks[nxt.end_circle].begin(),
                     tree.circle_blocks[nxt.end_circle].end());
        std::optional<Circuit> c = classify_circuit(g, edges);
        check_internal(c.has_value(), "consecutive end blocks with the connecting path "
                                      "form a circuit");
        out.circuits.emplace_back(std::move(*c), 1);
    }

    // exact identity 2 I_T = sum of circuit indicators
    EdgeFn lhs = indicator(g, tree);
    for (auto& x : lhs) x *= 2;
    EdgeFn rhs(g.edge_count(), 0);
    for (const auto& [c, num] : out.circuits) {
        for (int ei : c.circle_a) rhs[ei] += num;
        for (int ei : c.circle_b) rhs[ei] += num;
        for (int ei : c.path_edges) rhs[ei] += 2 * num;
    }
    check_internal(lhs == rhs, "doubled indicator equals the circuit sum");
    return out;
}

std::vector<CircuitFlowTerm> double_circuit_decompose(const SignedGraph& g, const Orientation& o,
                                                      const EdgeFn& f, long long weight_cap) {
    if (is_zero(f)) throw ValidationError("cannot decompose the zero flow");
    Decomposition dec = conformal_decompose(g, o, f, weight_cap);
    Orientation of = orientation_of_flow(g, o, f);
    std::vector<int> sign_map = coupling(g, o, of);

    std::map<EdgeFn, CircuitFlowTerm> terms;
    for (const DecompositionPart& part : dec.parts) {
        HalfDecomposition half = half_integer_decompose(g, part.certificate);
        for (const auto& [circuit, num] : half.circuits) {
            EdgeFn values(g.edge_count(), 0);
            for (int ei : circuit.circle_a) values[ei] = sign_map[ei];
            for (int ei : circuit.circle_b) values[ei] = sign_map[ei];
            for (int ei : circuit.path_edges) values[ei] = 2 * sign_map[ei];
            require_flow(g, o, values);
            auto it = terms.find(values);
            if (it != terms.end()) {
                it->second.coefficient += part.multiplicity * num;
            } else {
                CircuitFlowTerm term;
                term.circuit = circuit;
                term.values = values;
                term.coefficient = part.multiplicity * num;
                terms.emplace(std::move(values), std::move(term));
            }
        }
    }

    std::vector<CircuitFlowTerm> out;
    EdgeFn sum(g.edge_count(), 0);
    for (auto& [key, term] : terms) {
        check_internal(term.coefficient > 0, "coefficients are positive integers");
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            sum[ei] += term.coefficient * term.values[ei];
            check_internal(term.values[ei] * f[ei] > 0 || term.values[ei] == 0,
                           "circuit flows must conform to the flow");
        }
        out.push_back(std::move(term));
    }
    EdgeFn doubled(f);
    for (auto& x : doubled) x *= 2;
    check_internal(sum == doubled, "terms must sum to twice the flow");
    return out;
}

std::vector<EdgeFn> oracle_minimal_flows(const SignedGraph& g, const Orientation& o,
                                         const EdgeFn& f, const OracleCaps& caps) {
    for (long long x : f)
        if (x < 0) throw ValidationError("the oracle takes a nonnegative function");
    std::vector<int> support;
    for (int ei = 0; ei < g.edge_count(); ++ei)
        if (f[ei] > 0) support.push_back(ei);
    if (static_cast<int>(support.size()) > caps.max_support)
        throw ValidationError("oracle support cap exceeded");
    for (int ei : support)
        if (f[ei] > caps.max_value) throw ValidationError("oracle value cap exceeded");

    // settle vertices as soon as their last support edge is assigned
    int n = g.vertex_count();
    std::vector<int> remaining(n, 0);
    for (int ei : support) {
        remaining[g.endpoint(ei, 0)] += 1;
        if (!g.is_loop(ei)) remaining[g.endpoint(ei, 1)] += 1;
    }

    std::vector<EdgeFn> minimal;
    EdgeFn cur(g.edge_count(), 0);
    VertexFn acc(n, 0);

    auto consider = [&](const EdgeFn& cand) {
        for (const EdgeFn& m : minimal) {
            bool below = true;
            for (int ei : support) below = below && m[ei] <= cand[ei];
            if (below) return;  // dominated by a known minimal flow
        }
        std::vector<EdgeFn> kept;
        for (EdgeFn& m : minimal) {
            bool above = true;
            for (int ei : support) above = above && cand[ei] <= m[ei];
            if (!above) kept.push_back(std::move(m));
        }
        kept.push_back(cand);
        minimal = std::move(kept);
    };

    auto rec = [&](auto&& self, size_t k) -> void {
        if (k == support.size()) {
            if (!is_zero(cur)) consider(cur);
            return;
        }
        int ei = support[k];
        int u = g.endpoint(ei, 0), v = g.endpoint(ei, 1);
        int mu = incidence_value(g, o, u, ei);
        int mv = g.is_loop(ei) ? 0 : incidence_value(g, o, v, ei);
        for (long long val = 0; val <= f[ei]; ++val) {
            cur[ei] = val;
            acc[u] += mu * val;
            acc[v] += mv * val;
            remaining[u] -= 1;
            if (!g.is_loop(ei)) remaining[v] -= 1;
            bool ok = (remaining[u] > 0 || acc[u] == 0) &&
                      (g.is_loop(ei) || remaining[v] > 0 || acc[v] == 0);
            if (ok) self(self, k + 1);
            remaining[u] += 1;
            if (!g.is_loop(ei)) remaining[v] += 1;
            acc[u] -= mu * val;
            acc[v] -= mv * val;
        }
        cur[ei] = 0;
    };
    rec(rec, 0);
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

EdgeFn circuit_flow(const SignedGraph& g, const Orientation& o, const Circuit& c, bool negate) {
    std::vector<int> edges = c.all_edges();
    RecognitionResult rec = recognize_circle_tree(g, edges);
    check_internal(rec.ok() && rec.tree->sesqui_eulerian, "circuits are sesqui-Eulerian trees");
    Orientation dir = direction_of(g, *rec.tree);
    std::vector<int> cpl = coupling(g, o, dir);
    EdgeFn ind = indicator(g, *rec.tree);
    EdgeFn out(g.edge_count(), 0);
    for (int ei : edges) out[ei] = (negate ? -1 : 1) * cpl[ei] * ind[ei];
    require_flow(g, o, out);
    return out;
}

}  // namespace sg

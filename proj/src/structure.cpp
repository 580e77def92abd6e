#include "sg/structure.hpp"

#include <algorithm>
#include <map>

namespace sg {

std::vector<int> Circuit::all_edges() const {
    std::vector<int> e = circle_a;
    e.insert(e.end(), circle_b.begin(), circle_b.end());
    e.insert(e.end(), path_edges.begin(), path_edges.end());
    std::sort(e.begin(), e.end());
    return e;
}

namespace {

struct Subgraph {
    SignedGraph graph;
    std::vector<int> to_parent_edge;    // sub edge index -> parent edge index
    std::vector<int> to_parent_vertex;  // sub vertex index -> parent vertex index
};

Subgraph induced_subgraph(const SignedGraph& g, std::span<const int> edges) {
    std::vector<int> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<EdgeRecord> recs;
    recs.reserve(sorted.size());
    for (int ei : sorted) {
        if (ei < 0 || ei >= g.edge_count()) throw ValidationError("edge index out of range");
        recs.push_back(g.record(ei));
    }
    Subgraph s;
    s.graph = SignedGraph::build(recs);
    s.to_parent_edge = sorted;
    s.to_parent_vertex.resize(s.graph.vertex_count());
    for (int vi = 0; vi < s.graph.vertex_count(); ++vi)
        s.to_parent_vertex[vi] = g.vertex_index(s.graph.vertex_id(vi));
    return s;
}

// Cyclic edge/vertex order of a circle block, starting with its smallest edge
// traversed from slot 0.
void circle_cycle(const SignedGraph& g, const std::vector<int>& block_edges,
                  std::vector<int>& edges_out, std::vector<int>& verts_out) {
    edges_out.clear();
    verts_out.clear();
    int e0 = *std::min_element(block_edges.begin(), block_edges.end());
    if (block_edges.size() == 1) {
        edges_out = {e0};
        verts_out = {g.endpoint(e0, 0)};
        return;
    }
    std::vector<char> in_block(g.edge_count(), 0);
    for (int ei : block_edges) in_block[ei] = 1;
    int cur_edge = e0, cur_slot = 0;
    do {
        edges_out.push_back(cur_edge);
        verts_out.push_back(g.endpoint(cur_edge, cur_slot));
        int exit_vertex = g.endpoint(cur_edge, 1 - cur_slot);
        int next_edge = -1, next_slot = -1;
        for (const IncidentEnd& ie : g.ends_at(exit_vertex)) {
            if (!in_block[ie.edge]) continue;
            if (ie.edge == cur_edge && ie.slot == 1 - cur_slot) continue;  // arrival end
            next_edge = ie.edge;
            next_slot = ie.slot;
            break;
        }
        check_internal(next_edge != -1, "circle traversal must continue");
        cur_edge = next_edge;
        cur_slot = next_slot;
    } while (cur_edge != e0 || cur_slot != 0);
    check_internal(edges_out.size() == block_edges.size(), "circle traversal covers the block");
}

}  // namespace

RecognitionResult recognize_circle_tree(const SignedGraph& g, std::span<const int> edges) {
    RecognitionResult out;
    auto fail = [&out](char cond, std::string detail) {
        out.failure = RecognitionFailure{cond, std::move(detail)};
        return out;
    };

    if (edges.empty()) return fail('a', "empty edge set");
    Subgraph sub = induced_subgraph(g, edges);
    const SignedGraph& t = sub.graph;

    std::vector<int> comp = vertex_components(t);
    if (*std::max_element(comp.begin(), comp.end()) > 0) return fail('a', "subgraph disconnected");

    BlockDecomposition bd = blocks(t);

    // classify blocks: circle (all degrees 2 within the block) or single edge
    std::vector<char> block_is_circle(bd.blocks.size(), 0);
    for (size_t b = 0; b < bd.blocks.size(); ++b) {
        std::map<int, int> deg;
        for (int ei : bd.blocks[b]) {
            deg[t.endpoint(ei, 0)] += 1;
            deg[t.endpoint(ei, 1)] += 1;
        }
        bool circle = true;
        for (auto& [vi, d] : deg) circle = circle && d == 2;
        if (circle)
            block_is_circle[b] = 1;
        else if (bd.blocks[b].size() != 1)
            return fail('b', "block with " + std::to_string(bd.blocks[b].size()) +
                                 " edges is neither a circle nor an edge");
    }

    // block adjacency via shared cut-vertices
    std::vector<std::vector<int>> neighbors(bd.blocks.size());
    for (size_t ci = 0; ci < bd.cut_vertices.size(); ++ci) {
        if (bd.blocks_at_cut[ci].size() != 2)
            return fail('d', "cut-vertex id " +
                                 std::to_string(t.vertex_id(bd.cut_vertices[ci])) + " lies in " +
                                 std::to_string(bd.blocks_at_cut[ci].size()) + " blocks");
        int b1 = bd.blocks_at_cut[ci][0], b2 = bd.blocks_at_cut[ci][1];
        neighbors[b1].push_back(b2);
        neighbors[b2].push_back(b1);
    }
    for (size_t b = 0; b < bd.blocks.size(); ++b)
        if (neighbors[b].size() <= 1 && !block_is_circle[b])
            return fail('c', "end block starting at edge id " +
                                 std::to_string(t.edge_id(bd.blocks[b][0])) + " is an edge");

    CircleTree tree;
    for (int pe : sub.to_parent_edge) tree.edges.push_back(pe);

    std::vector<int> circle_index(bd.blocks.size(), -1);
    for (size_t b = 0; b < bd.blocks.size(); ++b) {
        if (!block_is_circle[b]) continue;
        circle_index[b] = tree.circle_count();
        std::vector<int> ce, cv;
        circle_cycle(t, bd.blocks[b], ce, cv);
        for (int& ei : ce) ei = sub.to_parent_edge[ei];
        for (int& vi : cv) vi = sub.to_parent_vertex[vi];
        tree.circle_blocks.push_back(std::move(ce));
        tree.circle_vertices.push_back(std::move(cv));
    }

    for (int cv : bd.cut_vertices) tree.cut_vertices.push_back(sub.to_parent_vertex[cv]);
    std::sort(tree.cut_vertices.begin(), tree.cut_vertices.end());

    // block paths: chains of edge-blocks between circles, plus shared cut-vertices
    auto other_block_at = [&](int cut_pos, int from_block) {
        const std::vector<int>& bs = bd.blocks_at_cut[cut_pos];
        return bs[0] == from_block ? bs[1] : bs[0];
    };
    auto cut_pos_of = [&](int vi) {
        auto it = std::lower_bound(bd.cut_vertices.begin(), bd.cut_vertices.end(), vi);
        check_internal(it != bd.cut_vertices.end() && *it == vi, "expected a cut-vertex");
        return static_cast<int>(it - bd.cut_vertices.begin());
    };
    std::vector<char> edge_block_done(bd.blocks.size(), 0);
    for (size_t ci = 0; ci < bd.cut_vertices.size(); ++ci) {
        int b1 = bd.blocks_at_cut[ci][0], b2 = bd.blocks_at_cut[ci][1];
        if (block_is_circle[b1] && block_is_circle[b2]) {
            BlockPathInfo p;
            p.cut_a = p.cut_b = sub.to_parent_vertex[bd.cut_vertices[ci]];
            p.circle_a = circle_index[b1];
            p.circle_b = circle_index[b2];
            tree.block_paths.push_back(std::move(p));
        }
    }
    for (size_t b = 0; b < bd.blocks.size(); ++b) {
        if (block_is_circle[b] || edge_block_done[b]) continue;
        // walk from one endpoint until a circle block is reached: the chain head
        int head_cut = -1, head_circle_block = -1;
        {
            int cur_block = static_cast<int>(b);
            int cur_vertex = t.endpoint(bd.blocks[b][0], 0);
            while (true) {
                int nb = other_block_at(cut_pos_of(cur_vertex), cur_block);
                if (block_is_circle[nb]) {
                    head_cut = cur_vertex;
                    head_circle_block = nb;
                    break;
                }
                int ne = bd.blocks[nb][0];
                cur_vertex = t.endpoint(ne, 0) == cur_vertex ? t.endpoint(ne, 1)
                                                             : t.endpoint(ne, 0);
                cur_block = nb;
            }
        }
        // collect the chain from head_cut to the far circle
        BlockPathInfo p;
        p.cut_a = sub.to_parent_vertex[head_cut];
        p.circle_a = circle_index[head_circle_block];
        int cur_vertex = head_cut;
        int cur_block = head_circle_block;
        while (true) {
            int nb = other_block_at(cut_pos_of(cur_vertex), cur_block);
            check_internal(!block_is_circle[nb], "chains alternate cuts and edge-blocks");
            int ne = bd.blocks[nb][0];
            p.edges.push_back(sub.to_parent_edge[ne]);
            edge_block_done[nb] = 1;
            cur_vertex = t.endpoint(ne, 0) == cur_vertex ? t.endpoint(ne, 1) : t.endpoint(ne, 0);
            cur_block = nb;
            int nb2 = other_block_at(cut_pos_of(cur_vertex), cur_block);
            if (block_is_circle[nb2]) {
                p.cut_b = sub.to_parent_vertex[cur_vertex];
                p.circle_b = circle_index[nb2];
                break;
            }
        }
        check_internal(p.circle_a != p.circle_b, "block paths join distinct circles");
        tree.block_paths.push_back(std::move(p));
    }

    // cut counts and parity per circle
    std::vector<char> is_cut_parent(g.vertex_count(), 0);
    for (int cv : tree.cut_vertices) is_cut_parent[cv] = 1;
    for (int c = 0; c < tree.circle_count(); ++c) {
        int p = 0;
        for (int vi : tree.circle_vertices[c]) p += is_cut_parent[vi];
        tree.cuts_on_circle.push_back(p);
        int s = 1;
        for (int ei : tree.circle_blocks[c]) s *= g.sign(ei);
        tree.circle_sign.push_back(s);
    }
    tree.sesqui_eulerian = true;
    for (int c = 0; c < tree.circle_count(); ++c) {
        int want = (tree.cuts_on_circle[c] % 2 == 0) ? 1 : -1;
        if (tree.circle_sign[c] != want) tree.sesqui_eulerian = false;
    }
    tree.tree_length = 0;
    for (const auto& cb : tree.circle_blocks) tree.tree_length += static_cast<long long>(cb.size());
    for (const auto& bp : tree.block_paths)
        tree.tree_length += 2 * static_cast<long long>(bp.edges.size());

    out.tree = std::move(tree);
    return out;
}

std::optional<Circuit> classify_circuit(const SignedGraph& g, std::span<const int> edges) {
    RecognitionResult rec = recognize_circle_tree(g, edges);
    if (!rec.ok() || !rec.tree->sesqui_eulerian) return std::nullopt;
    const CircleTree& t = *rec.tree;
    Circuit c;
    if (t.circle_count() == 1 && t.block_paths.empty()) {
        c.type = CircuitType::I;
        c.circle_a = t.circle_blocks[0];
        std::sort(c.circle_a.begin(), c.circle_a.end());
        return c;
    }
    if (t.circle_count() == 2 && t.block_paths.size() == 1) {
        const BlockPathInfo& p = t.block_paths[0];
        c.circle_a = t.circle_blocks[0];
        c.circle_b = t.circle_blocks[1];
        std::sort(c.circle_a.begin(), c.circle_a.end());
        std::sort(c.circle_b.begin(), c.circle_b.end());
        if (p.edges.empty()) {
            c.type = CircuitType::II;
            c.joint_vertex = p.cut_a;
        } else {
            c.type = CircuitType::III;
            c.path_edges = p.edges;
        }
        return c;
    }
    return std::nullopt;
}

std::vector<Circuit> enumerate_circuits(const SignedGraph& g, int edge_cap) {
    if (g.edge_count() > edge_cap)
        throw ValidationError("circuit enumeration supports at most " + std::to_string(edge_cap) +
                              " edges");
    std::vector<Circuit> out;
    for (unsigned mask = 1; mask < (1u << g.edge_count()); ++mask) {
        std::vector<int> edges;
        for (int ei = 0; ei < g.edge_count(); ++ei)
            if (mask & (1u << ei)) edges.push_back(ei);
        if (auto c = classify_circuit(g, edges)) out.push_back(std::move(*c));
    }
    return out;
}

EdgeFn indicator(const SignedGraph& g, const CircleTree& t) {
    EdgeFn f(g.edge_count(), 0);
    for (const auto& cb : t.circle_blocks)
        for (int ei : cb) f[ei] = 1;
    for (const auto& bp : t.block_paths)
        for (int ei : bp.edges) f[ei] = 2;
    return f;
}

bool is_direction(const SignedGraph& g, const CircleTree& t, const Orientation& o) {
    std::vector<char> in_tree(g.edge_count(), 0);
    for (int ei : t.edges) {
        if (!o.defined(ei)) return false;
        in_tree[ei] = 1;
    }
    // neither sink nor source anywhere on the tree
    std::vector<char> vertex_in_tree(g.vertex_count(), 0);
    for (int ei : t.edges) {
        vertex_in_tree[g.endpoint(ei, 0)] = 1;
        vertex_in_tree[g.endpoint(ei, 1)] = 1;
    }
    for (int vi = 0; vi < g.vertex_count(); ++vi) {
        if (!vertex_in_tree[vi]) continue;
        bool plus = false, minus = false;
        for (const IncidentEnd& ie : g.ends_at(vi)) {
            if (!in_tree[ie.edge] || g.endpoint(ie.edge, ie.slot) != vi) continue;
            (o.value(ie.edge, ie.slot) > 0 ? plus : minus) = true;
        }
        if (!plus || !minus) return false;
    }
    // each circle block: sink or source exactly at the cut-vertices on it
    std::vector<char> is_cut(g.vertex_count(), 0);
    for (int cv : t.cut_vertices) is_cut[cv] = 1;
    for (int c = 0; c < t.circle_count(); ++c) {
        const std::vector<int>& ce = t.circle_blocks[c];
        const std::vector<int>& cv = t.circle_vertices[c];
        int len = static_cast<int>(ce.size());
        for (int j = 0; j < len; ++j) {
            // ends of the circle at vertex cv[j]: exit of edge j-1 and entry of edge j
            int prev = (j + len - 1) % len;
            int enter_val, exit_val;
            // edge j starts at cv[j]; find its slot there consistent with the stored cycle
            // entry slot of edge j at cv[j]: the slot whose endpoint is cv[j] and, if a loop,
            // the traversal convention from circle_cycle (slot 0 first for the least edge).
            // Recover slots by walking: edge j goes cv[j] -> cv[(j+1)%len].
            int ej = ce[j], ep = ce[prev];
            int slot_j;
            if (g.is_loop(ej))
                slot_j = 0;
            else
                slot_j = g.endpoint(ej, 0) == cv[j] ? 0 : 1;
            int slot_p;  // exit slot of prev edge at cv[j]
            if (g.is_loop(ep))
                slot_p = 1;
            else
                slot_p = g.endpoint(ep, 0) == cv[j] ? 0 : 1;
            // for a link traversed cv[prev] -> cv[j], the end at cv[j] is its exit
            enter_val = o.value(ej, slot_j);
            exit_val = o.value(ep, slot_p);
            bool equal = enter_val == exit_val;  // sink or source of the circle at cv[j]
            if (is_cut[cv[j]] != equal) return false;
        }
    }
    return true;
}

namespace {

// slot of edge t.circle_blocks[c][j] at its start vertex in the stored cycle
int cycle_entry_slot(const SignedGraph& g, const CircleTree& t, int c, int j) {
    int ej = t.circle_blocks[c][j];
    if (g.is_loop(ej)) return 0;  // circle_cycle enters loops at slot 0
    return g.endpoint(ej, 0) == t.circle_vertices[c][j] ? 0 : 1;
}

struct TourBuilder {
    const SignedGraph& g;
    const CircleTree& t;
    std::vector<char> is_cut;
    // attachment lookup: (circle, cut vertex) -> block path index
    std::map<std::pair<int, int>, int> attach;

    Walk walk;

    void emit(int edge, int entry_slot) { walk.steps.push_back({edge, entry_slot, 1 - entry_slot}); }

    // positions of cut-vertices along circle c, in cycle order
    std::vector<int> cut_positions(int c) const {
        std::vector<int> pos;
        for (size_t j = 0; j < t.circle_vertices[c].size(); ++j)
            if (is_cut[t.circle_vertices[c][j]]) pos.push_back(static_cast<int>(j));
        return pos;
    }

    // emit one arc of circle c in the given sense, from position a (exclusive
    // vertex, inclusive first edge) until reaching position b
    void emit_arc(int c, int a, int b, int sense) {
        int len = static_cast<int>(t.circle_blocks[c].size());
        int j = a;
        do {
            if (sense > 0) {
                emit(t.circle_blocks[c][j], cycle_entry_slot(g, t, c, j));
                j = (j + 1) % len;
            } else {
                int k = (j + len - 1) % len;
                emit(t.circle_blocks[c][k], 1 - cycle_entry_slot(g, t, c, k));
                j = k;
            }
        } while (j != b);
    }

    void descend(int circle, int cut_vertex) {
        auto it = attach.find({circle, cut_vertex});
        check_internal(it != attach.end(), "attachment must exist at a cut on a circle");
        const BlockPathInfo& p = t.block_paths[it->second];
        bool from_a = p.circle_a == circle && p.cut_a == cut_vertex;
        if (!from_a)
            check_internal(p.circle_b == circle && p.cut_b == cut_vertex,
                           "attachment endpoints must match");
        int far_circle = from_a ? p.circle_b : p.circle_a;
        int far_cut = from_a ? p.cut_b : p.cut_a;

        std::vector<WalkStep> forward;
        int at = cut_vertex;
        const std::vector<int>& pe = p.edges;
        if (!pe.empty()) {
            std::vector<int> order(pe);
            if (!from_a) std::reverse(order.begin(), order.end());
            for (int ei : order) {
                int slot = g.endpoint(ei, 0) == at ? 0 : 1;
                forward.push_back({ei, slot, 1 - slot});
                at = g.endpoint(ei, 1 - slot);
            }
            check_internal(at == far_cut, "block path must end at the far cut");
        }
        for (const WalkStep& s : forward) walk.steps.push_back(s);
        visit_circle(far_circle, far_cut);
        for (auto it2 = forward.rbegin(); it2 != forward.rend(); ++it2)
            walk.steps.push_back({it2->edge, it2->exit_slot, it2->entry_slot});
    }

    // traverse circle c entered at cut vertex `enter`, descending at every
    // other cut, and return to `enter`
    void visit_circle(int c, int enter) {
        std::vector<int> cuts = cut_positions(c);
        int len = static_cast<int>(t.circle_blocks[c].size());
        int entry_pos = -1;
        for (int pos : cuts)
            if (t.circle_vertices[c][pos] == enter) entry_pos = pos;
        check_internal(entry_pos >= 0, "entry vertex must be a cut on the circle");

        // sense choice: the arc whose first edge has the smaller index
        int fwd_first = t.circle_blocks[c][entry_pos];
        int bwd_first = t.circle_blocks[c][(entry_pos + len - 1) % len];
        int sense = fwd_first <= bwd_first ? +1 : -1;

        int p = static_cast<int>(cuts.size());
        int cur = entry_pos;
        for (int k = 1; k <= p; ++k) {
            // next cut position in the chosen sense
            int next = cur;
            do {
                next = sense > 0 ? (next + 1) % len : (next + len - 1) % len;
            } while (!is_cut[t.circle_vertices[c][next]]);
            emit_arc(c, cur, next, sense);
            if (next != entry_pos) descend(c, t.circle_vertices[c][next]);
            cur = next;
        }
        check_internal(cur == entry_pos, "circle traversal must return to the entry");
    }
};

}  // namespace

TourResult minimal_tour(const SignedGraph& g, const CircleTree& t) {
    if (!t.sesqui_eulerian)
        throw ValidationError("tree violates the parity condition; no direction exists");

    TourBuilder tb{g, t, {}, {}, {}};
    tb.is_cut.assign(g.vertex_count(), 0);
    for (int cv : t.cut_vertices) tb.is_cut[cv] = 1;
    for (size_t pi = 0; pi < t.block_paths.size(); ++pi) {
        const BlockPathInfo& p = t.block_paths[pi];
        tb.attach[{p.circle_a, p.cut_a}] = static_cast<int>(pi);
        tb.attach[{p.circle_b, p.cut_b}] = static_cast<int>(pi);
    }

    int root = 0;  // circle blocks inherit the block order, sorted by least edge
    std::vector<int> root_cuts = tb.cut_positions(root);
    if (root_cuts.empty()) {
        check_internal(t.circle_count() == 1, "only a bare circle has no cuts");
        tb.walk.start = t.circle_vertices[root][0];
        tb.emit_arc(root, 0, 0, +1);
    } else {
        int entry_pos = root_cuts[0];
        for (int pos : root_cuts)
            if (t.circle_vertices[root][pos] < t.circle_vertices[root][entry_pos]) entry_pos = pos;
        int enter = t.circle_vertices[root][entry_pos];
        tb.walk.start = enter;
        tb.descend(root, enter);
        // then walk the root circle itself, descending at the other cuts
        std::vector<int> cuts = root_cuts;
        int len = static_cast<int>(t.circle_blocks[root].size());
        int fwd_first = t.circle_blocks[root][entry_pos];
        int bwd_first = t.circle_blocks[root][(entry_pos + len - 1) % len];
        int sense = fwd_first <= bwd_first ? +1 : -1;
        int cur = entry_pos;
        for (size_t k = 1; k <= cuts.size(); ++k) {
            int next = cur;
            do {
                next = sense > 0 ? (next + 1) % len : (next + len - 1) % len;
            } while (!tb.is_cut[t.circle_vertices[root][next]]);
            tb.emit_arc(root, cur, next, sense);
            if (next != entry_pos) tb.descend(root, t.circle_vertices[root][next]);
            cur = next;
        }
    }

    TourResult res;
    res.walk = std::move(tb.walk);
    validate_walk(g, res.walk);
    check_internal(walk_closed(g, res.walk), "minimal tour must be closed");
    check_internal(res.walk.length() == t.tree_length, "tour length must equal the tree length");
    check_internal(walk_sign(g, res.walk) == 1, "minimal tour must be positive");

    res.dir = propagate_direction(g, res.walk, +1);
    check_internal(is_closed_coherent(g, res.walk, res.dir), "minimal tour must be coherent");

    // collect omega_T from the occurrences; repeats must agree
    res.omega_t.end.assign(g.edge_count(), {0, 0});
    for (size_t i = 0; i < res.walk.steps.size(); ++i) {
        const WalkStep& s = res.walk.steps[i];
        std::array<int, 2> v{};
        v[s.entry_slot] = res.dir.val[i][0];
        v[s.exit_slot] = res.dir.val[i][1];
        if (res.omega_t.end[s.edge][0] == 0)
            res.omega_t.end[s.edge] = v;
        else
            check_internal(res.omega_t.end[s.edge] == v,
                           "repeated edges must carry one orientation");
    }
    int least = t.edges.front();
    if (res.omega_t.end[least][0] != -1) {
        for (int ei : t.edges) {
            res.omega_t.end[ei][0] = -res.omega_t.end[ei][0];
            res.omega_t.end[ei][1] = -res.omega_t.end[ei][1];
        }
        for (auto& v : res.dir.val) v = {-v[0], -v[1]};
    }
    check_internal(is_direction(g, t, res.omega_t), "tour orientation must be a direction");
    return res;
}

Orientation direction_of(const SignedGraph& g, const CircleTree& t) {
    return minimal_tour(g, t).omega_t;
}

long long tour_count(const CircleTree& t) {
    return 1LL << t.circle_count();
}

}  // namespace sg

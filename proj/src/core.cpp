#include "sg/core.hpp"

#include <algorithm>
#include <numeric>

namespace sg {

SignedGraph SignedGraph::build(std::span<const EdgeRecord> edges,
                               std::span<const int> declared_vertices,
                               bool strict_endpoints) {
    SignedGraph g;

    std::vector<int> vids(declared_vertices.begin(), declared_vertices.end());
    std::sort(vids.begin(), vids.end());
    if (std::adjacent_find(vids.begin(), vids.end()) != vids.end())
        throw ValidationError("duplicate vertex id");

    for (const EdgeRecord& e : edges) {
        if (e.sign != 1 && e.sign != -1)
            throw ValidationError("edge " + std::to_string(e.id) + ": sign must be +1 or -1");
        if (e.id < 0 || e.u < 0 || e.v < 0)
            throw ValidationError("ids must be nonnegative");
        if (strict_endpoints) {
            if (!std::binary_search(vids.begin(), vids.end(), e.u) ||
                !std::binary_search(vids.begin(), vids.end(), e.v))
                throw ValidationError("edge " + std::to_string(e.id) + ": unknown endpoint vertex");
        } else {
            vids.push_back(e.u);
            vids.push_back(e.v);
        }
    }
    std::sort(vids.begin(), vids.end());
    vids.erase(std::unique(vids.begin(), vids.end()), vids.end());
    g.vertex_ids_ = std::move(vids);

    g.edges_.assign(edges.begin(), edges.end());
    std::sort(g.edges_.begin(), g.edges_.end(),
              [](const EdgeRecord& a, const EdgeRecord& b) { return a.id < b.id; });
    for (size_t i = 1; i < g.edges_.size(); ++i)
        if (g.edges_[i].id == g.edges_[i - 1].id)
            throw ValidationError("duplicate edge id " + std::to_string(g.edges_[i].id));

    g.endpoints_.resize(g.edges_.size());
    g.incidence_.assign(g.vertex_ids_.size(), {});
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        int ui = g.vertex_index(g.edges_[ei].u);
        int vi = g.vertex_index(g.edges_[ei].v);
        g.endpoints_[ei] = {ui, vi};
        g.incidence_[ui].push_back({ei, 0});
        g.incidence_[vi].push_back({ei, 1});
    }
    return g;
}

int SignedGraph::vertex_index(int vertex_id) const {
    auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), vertex_id);
    if (it == vertex_ids_.end() || *it != vertex_id)
        throw ValidationError("unknown vertex id " + std::to_string(vertex_id));
    return static_cast<int>(it - vertex_ids_.begin());
}

int SignedGraph::edge_index(int edge_id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), edge_id,
                               [](const EdgeRecord& e, int id) { return e.id < id; });
    if (it == edges_.end() || it->id != edge_id)
        throw ValidationError("unknown edge id " + std::to_string(edge_id));
    return static_cast<int>(it - edges_.begin());
}

Orientation default_orientation(const SignedGraph& g) {
    Orientation o;
    o.end.resize(g.edge_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) o.end[ei] = {+1, -g.sign(ei)};
    return o;
}

void validate_orientation(const SignedGraph& g, const Orientation& o, bool require_full) {
    if (static_cast<int>(o.end.size()) != g.edge_count())
        throw ValidationError("orientation size does not match edge count");
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        int a = o.end[ei][0], b = o.end[ei][1];
        if (a == 0 && b == 0) {
            if (require_full)
                throw ValidationError("orientation missing for edge id " +
                                      std::to_string(g.edge_id(ei)));
            continue;
        }
        if (std::abs(a) != 1 || std::abs(b) != 1)
            throw ValidationError("orientation values must be +-1");
        if (g.sign(ei) != -a * b)
            throw ValidationError("orientation violates sigma(e) = -w(u,e)w(v,e) on edge id " +
                                  std::to_string(g.edge_id(ei)));
    }
}

Orientation restrict_orientation(const SignedGraph& g, const Orientation& o,
                                 std::span<const int> edges) {
    Orientation r;
    r.end.assign(g.edge_count(), {0, 0});
    for (int ei : edges) r.end[ei] = o.end[ei];
    return r;
}

Orientation reorient(const SignedGraph& g, const Orientation& o, std::span<const int> edges) {
    Orientation r = o;
    for (int ei : edges) {
        if (ei < 0 || ei >= g.edge_count()) throw ValidationError("reorient: unknown edge");
        r.end[ei][0] = -r.end[ei][0];
        r.end[ei][1] = -r.end[ei][1];
    }
    return r;
}

std::vector<int> coupling(const SignedGraph& g, const Orientation& o1, const Orientation& o2) {
    std::vector<int> c(g.edge_count(), 0);
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        if (!o1.defined(ei) || !o2.defined(ei)) continue;
        int c0 = o1.end[ei][0] * o2.end[ei][0];
        check_internal(c0 == o1.end[ei][1] * o2.end[ei][1],
                       "coupling must not depend on the sampled end");
        c[ei] = c0;
    }
    return c;
}

void validate_walk(const SignedGraph& g, const Walk& w) {
    if (w.start < 0 || w.start >= g.vertex_count()) throw ValidationError("walk: bad start vertex");
    if (w.steps.empty()) throw ValidationError("walk must have positive length");
    int at = w.start;
    for (const WalkStep& s : w.steps) {
        if (s.edge < 0 || s.edge >= g.edge_count()) throw ValidationError("walk: bad edge");
        if (s.entry_slot == s.exit_slot || s.entry_slot < 0 || s.entry_slot > 1 ||
            s.exit_slot < 0 || s.exit_slot > 1)
            throw ValidationError("walk: entry and exit slots must be the two distinct ends");
        if (g.endpoint(s.edge, s.entry_slot) != at)
            throw ValidationError("walk: step does not continue from the current vertex");
        at = g.endpoint(s.edge, s.exit_slot);
    }
}

std::vector<int> walk_vertices(const SignedGraph& g, const Walk& w) {
    std::vector<int> vs;
    vs.reserve(w.steps.size() + 1);
    vs.push_back(w.start);
    for (const WalkStep& s : w.steps) vs.push_back(g.endpoint(s.edge, s.exit_slot));
    return vs;
}

bool walk_closed(const SignedGraph& g, const Walk& w) {
    if (w.steps.empty()) return false;
    return walk_vertices(g, w).back() == w.start;
}

int walk_sign(const SignedGraph& g, const Walk& w) {
    int s = 1;
    for (const WalkStep& st : w.steps) s *= g.sign(st.edge);
    return s;
}

Walk reverse_walk(const SignedGraph& g, const Walk& w) {
    Walk r;
    r.steps.reserve(w.steps.size());
    for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it)
        r.steps.push_back({it->edge, it->exit_slot, it->entry_slot});
    r.start = w.steps.empty() ? w.start : g.endpoint(w.steps.back().edge, w.steps.back().exit_slot);
    return r;
}

Walk rotate_walk(const SignedGraph& g, const Walk& w, int pos) {
    if (!walk_closed(g, w)) throw ValidationError("rotate_walk: walk is not closed");
    int n = w.length();
    pos = ((pos % n) + n) % n;
    Walk r;
    r.steps.reserve(n);
    for (int i = 0; i < n; ++i) r.steps.push_back(w.steps[(pos + i) % n]);
    r.start = g.endpoint(r.steps.front().edge, r.steps.front().entry_slot);
    return r;
}

WalkDirection propagate_direction(const SignedGraph& g, const Walk& w, int first_entry_value) {
    WalkDirection d;
    d.val.resize(w.steps.size());
    int entry = first_entry_value;
    for (size_t i = 0; i < w.steps.size(); ++i) {
        int exit = -g.sign(w.steps[i].edge) * entry;
        d.val[i] = {entry, exit};
        entry = -exit;
    }
    return d;
}

WalkDirection restrict_to_walk(const SignedGraph& g, const Orientation& o, const Walk& w) {
    (void)g;
    WalkDirection d;
    d.val.resize(w.steps.size());
    for (size_t i = 0; i < w.steps.size(); ++i) {
        const WalkStep& s = w.steps[i];
        if (!o.defined(s.edge)) throw ValidationError("walk uses an unoriented edge");
        d.val[i] = {o.value(s.edge, s.entry_slot), o.value(s.edge, s.exit_slot)};
    }
    return d;
}

WalkDirection reverse_direction(const WalkDirection& d) {
    WalkDirection r;
    r.val.reserve(d.val.size());
    for (auto it = d.val.rbegin(); it != d.val.rend(); ++it) r.val.push_back({(*it)[1], (*it)[0]});
    return r;
}

WalkDirection rotate_direction(const WalkDirection& d, int pos) {
    int n = static_cast<int>(d.val.size());
    pos = ((pos % n) + n) % n;
    WalkDirection r;
    r.val.reserve(n);
    for (int i = 0; i < n; ++i) r.val.push_back(d.val[(pos + i) % n]);
    return r;
}

void validate_direction(const SignedGraph& g, const Walk& w, const WalkDirection& d) {
    if (d.val.size() != w.steps.size()) throw ValidationError("direction size mismatch");
    for (size_t i = 0; i < w.steps.size(); ++i) {
        int a = d.val[i][0], b = d.val[i][1];
        if (std::abs(a) != 1 || std::abs(b) != 1 || g.sign(w.steps[i].edge) != -a * b)
            throw ValidationError("direction violates the orientation constraint");
    }
}

bool is_coherent_at(const SignedGraph& g, const Walk& w, const WalkDirection& d, int position) {
    int n = w.length();
    if (position == 0) {
        if (!walk_closed(g, w)) throw ValidationError("position 0 only applies to closed walks");
        return d.val[0][0] + d.val[n - 1][1] == 0;
    }
    if (position < 1 || position > n - 1) throw ValidationError("position out of range");
    return d.val[position][0] + d.val[position - 1][1] == 0;
}

bool coherent_internally(const SignedGraph& g, const Walk& w, const WalkDirection& d) {
    (void)g;
    for (size_t i = 1; i < w.steps.size(); ++i)
        if (d.val[i][0] + d.val[i - 1][1] != 0) return false;
    return true;
}

bool is_closed_coherent(const SignedGraph& g, const Walk& w, const WalkDirection& d) {
    return walk_closed(g, w) && coherent_internally(g, w, d) &&
           d.val[0][0] + d.val[w.length() - 1][1] == 0;
}

WalkSignReport check_walk_sign_lemma(const SignedGraph& g, const Walk& w, const WalkDirection& d) {
    validate_walk(g, w);
    validate_direction(g, w, d);
    WalkSignReport r;
    r.sign = walk_sign(g, w);
    r.closed = walk_closed(g, w);
    int n = w.length();
    for (int i = 1; i <= n - 1; ++i)
        if (d.val[i][0] + d.val[i - 1][1] != 0) ++r.incoherent_internal;
    r.incoherent_total = r.incoherent_internal;
    if (r.closed && d.val[0][0] + d.val[n - 1][1] != 0) ++r.incoherent_total;
    int parity_open = (r.incoherent_internal % 2 == 0) ? 1 : -1;
    r.predicted_open = -parity_open * d.val[0][0] * d.val[n - 1][1];
    r.predicted_closed = (r.incoherent_total % 2 == 0) ? 1 : -1;
    r.holds = (r.sign == r.predicted_open) && (!r.closed || r.sign == r.predicted_closed);
    return r;
}

namespace {

// Tree path u..v from BFS parents, plus the conflict edge, forms the witness circle.
std::vector<int> witness_circle(const std::vector<int>& parent_edge,
                                const std::vector<int>& parent_vertex,
                                const std::vector<int>& depth, int u, int v, int conflict_edge) {
    std::vector<int> left, right;
    int a = u, b = v;
    while (depth[a] > depth[b]) {
        left.push_back(parent_edge[a]);
        a = parent_vertex[a];
    }
    while (depth[b] > depth[a]) {
        right.push_back(parent_edge[b]);
        b = parent_vertex[b];
    }
    while (a != b) {
        left.push_back(parent_edge[a]);
        a = parent_vertex[a];
        right.push_back(parent_edge[b]);
        b = parent_vertex[b];
    }
    left.push_back(conflict_edge);
    left.insert(left.end(), right.rbegin(), right.rend());
    std::sort(left.begin(), left.end());
    return left;
}

}  // namespace

BalanceResult is_balanced(const SignedGraph& g) {
    BalanceResult res;
    int n = g.vertex_count();
    res.labels.assign(n, 0);
    std::vector<int> parent_edge(n, -1), parent_vertex(n, -1), depth(n, 0);

    for (int root = 0; root < n; ++root) {
        if (res.labels[root] != 0) continue;
        res.labels[root] = 1;
        std::vector<int> queue{root};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int at = queue[qi];
            for (const IncidentEnd& ie : g.ends_at(at)) {
                int ei = ie.edge;
                if (g.is_loop(ei)) {
                    if (g.sign(ei) < 0) {
                        res.balanced = false;
                        res.negative_circle = {ei};
                        return res;
                    }
                    continue;
                }
                int want = res.labels[at] * g.sign(ei);
                int far = g.endpoint(ei, 1 - ie.slot);
                if (res.labels[far] == 0) {
                    res.labels[far] = want;
                    parent_edge[far] = ei;
                    parent_vertex[far] = at;
                    depth[far] = depth[at] + 1;
                    queue.push_back(far);
                } else if (res.labels[far] != want) {
                    res.balanced = false;
                    res.negative_circle =
                        witness_circle(parent_edge, parent_vertex, depth, at, far, ei);
                    return res;
                }
            }
        }
    }
    res.balanced = true;
    return res;
}

bool BlockDecomposition::is_cut_vertex(int vi) const {
    return std::binary_search(cut_vertices.begin(), cut_vertices.end(), vi);
}

BlockDecomposition blocks(const SignedGraph& g) {
    BlockDecomposition bd;
    int n = g.vertex_count(), m = g.edge_count();
    bd.edge_block.assign(m, -1);

    // Loops are blocks of their own; run Hopcroft-Tarjan on the links.
    std::vector<std::vector<int>> raw_blocks;
    std::vector<char> is_cut(n, 0);

    std::vector<int> num(n, -1), low(n, 0);
    std::vector<int> edge_stack;
    int timer = 0;

    struct Frame {
        int v;
        int parent_edge;
        size_t next;
        int children;
    };

    for (int root = 0; root < n; ++root) {
        if (num[root] != -1) continue;
        std::vector<Frame> stack{{root, -1, 0, 0}};
        num[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < g.ends_at(f.v).size()) {
                const IncidentEnd ie = g.ends_at(f.v)[f.next++];
                int ei = ie.edge;
                if (g.is_loop(ei) || ei == f.parent_edge) continue;
                int to = g.endpoint(ei, 1 - ie.slot);
                if (num[to] == -1) {
                    edge_stack.push_back(ei);
                    num[to] = low[to] = timer++;
                    ++f.children;
                    stack.push_back({to, ei, 0, 0});
                } else if (num[to] < num[f.v]) {
                    edge_stack.push_back(ei);
                    low[f.v] = std::min(low[f.v], num[to]);
                }
            } else {
                Frame done = f;
                stack.pop_back();
                if (stack.empty()) {
                    if (done.children > 1) is_cut[done.v] = 1;
                    continue;
                }
                Frame& p = stack.back();
                low[p.v] = std::min(low[p.v], low[done.v]);
                if (low[done.v] >= num[p.v]) {
                    // pop the block ending with the tree edge into done.v
                    std::vector<int> blk;
                    while (true) {
                        int ei = edge_stack.back();
                        edge_stack.pop_back();
                        blk.push_back(ei);
                        if (ei == done.parent_edge) break;
                    }
                    raw_blocks.push_back(std::move(blk));
                    if (stack.size() > 1) is_cut[p.v] = 1;  // root handled by child count
                }
            }
        }
    }

    for (int ei = 0; ei < m; ++ei)
        if (g.is_loop(ei)) raw_blocks.push_back({ei});

    // A vertex incident with a loop and at least one other edge is a cut-vertex.
    for (int vi = 0; vi < n; ++vi) {
        bool has_loop = false;
        for (const IncidentEnd& ie : g.ends_at(vi))
            if (g.is_loop(ie.edge)) has_loop = true;
        if (has_loop && g.degree(vi) > 2) is_cut[vi] = 1;
    }

    for (auto& blk : raw_blocks) std::sort(blk.begin(), blk.end());
    std::sort(raw_blocks.begin(), raw_blocks.end());
    bd.blocks = std::move(raw_blocks);
    for (size_t b = 0; b < bd.blocks.size(); ++b)
        for (int ei : bd.blocks[b]) bd.edge_block[ei] = static_cast<int>(b);

    for (int vi = 0; vi < n; ++vi)
        if (is_cut[vi]) bd.cut_vertices.push_back(vi);
    bd.blocks_at_cut.resize(bd.cut_vertices.size());
    for (size_t ci = 0; ci < bd.cut_vertices.size(); ++ci) {
        int vi = bd.cut_vertices[ci];
        std::vector<int> bs;
        for (const IncidentEnd& ie : g.ends_at(vi)) bs.push_back(bd.edge_block[ie.edge]);
        std::sort(bs.begin(), bs.end());
        bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
        bd.blocks_at_cut[ci] = std::move(bs);
    }
    return bd;
}

std::vector<int> vertex_components(const SignedGraph& g) {
    std::vector<int> comp(g.vertex_count(), -1);
    int c = 0;
    for (int root = 0; root < g.vertex_count(); ++root) {
        if (comp[root] != -1) continue;
        comp[root] = c;
        std::vector<int> queue{root};
        for (size_t qi = 0; qi < queue.size(); ++qi)
            for (const IncidentEnd& ie : g.ends_at(queue[qi])) {
                int to = g.endpoint(ie.edge, 1 - ie.slot);
                if (comp[to] == -1) {
                    comp[to] = c;
                    queue.push_back(to);
                }
            }
        ++c;
    }
    return comp;
}

std::vector<std::vector<int>> support_components(const SignedGraph& g, const EdgeFn& f) {
    std::vector<std::vector<int>> out;
    std::vector<char> edge_seen(g.edge_count(), 0);
    for (int e0 = 0; e0 < g.edge_count(); ++e0) {
        if (edge_seen[e0] || f[e0] == 0) continue;
        std::vector<int> comp_edges;
        std::vector<int> vqueue{g.endpoint(e0, 0)};
        std::vector<char> vertex_seen(g.vertex_count(), 0);
        vertex_seen[g.endpoint(e0, 0)] = 1;
        for (size_t qi = 0; qi < vqueue.size(); ++qi)
            for (const IncidentEnd& ie : g.ends_at(vqueue[qi])) {
                if (f[ie.edge] == 0) continue;
                if (!edge_seen[ie.edge]) {
                    edge_seen[ie.edge] = 1;
                    comp_edges.push_back(ie.edge);
                }
                int to = g.endpoint(ie.edge, 1 - ie.slot);
                if (!vertex_seen[to]) {
                    vertex_seen[to] = 1;
                    vqueue.push_back(to);
                }
            }
        std::sort(comp_edges.begin(), comp_edges.end());
        out.push_back(std::move(comp_edges));
    }
    return out;
}

}  // namespace sg

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "sg/decompose.hpp"
#include "sg/rand.hpp"
#include "support/fixtures.hpp"

using namespace sg;

namespace {

Orientation d3_orientation() {
    Orientation o;
    o.end = {{+1, +1}, {-1, -1}, {-1, +1}};
    return o;
}

EdgeFn scaled(const EdgeFn& f, long long k) {
    EdgeFn out(f);
    for (auto& x : out) x *= k;
    return out;
}

}  // namespace

TEST_CASE("loop-link-loop circuit flow: indecomposable, resolves to a circle") {
    SignedGraph g = fixtures::loop_link_loop();
    Orientation o = d3_orientation();
    validate_orientation(g, o);
    EdgeFn f{1, 1, 2};
    REQUIRE(is_flow(g, o, f));

    IndecomposabilityResult ind = is_indecomposable(g, o, f);
    CHECK(ind.indecomposable);
    REQUIRE(ind.certificate.has_value());
    CHECK(ind.certificate->circle_count() == 2);

    CoverGraph cover = build_cover(g);
    ResolveResult res = resolve(g, cover, o, f);
    CHECK(res.is_circle);
    REQUIRE(res.cover_walks.size() == 1);
    CHECK(res.cover_walks[0].walk.length() == 4);
    CHECK(total_weight(res.cover_flow) == 4);

    // doubling destroys minimality and the circle
    EdgeFn doubled = scaled(f, 2);
    CHECK_FALSE(is_indecomposable(g, o, doubled).indecomposable);
    CHECK_FALSE(resolve(g, cover, o, doubled).is_circle);
}

TEST_CASE("balanced case: the triangle flow resolves in one level") {
    SignedGraph g = fixtures::positive_triangle();
    Orientation o = orientation_of_flow(g, default_orientation(g), EdgeFn{1, 1, 1});
    EdgeFn ones{1, 1, 1};
    if (!is_flow(g, o, ones)) return;  // orientation sanity
    CoverGraph cover = build_cover(g);
    ResolveResult res = resolve(g, cover, o, ones);
    CHECK(res.is_circle);
    CHECK(res.cover_walks[0].walk.length() == 3);
    // the lift stays on one level
    std::vector<int> vs = walk_vertices(cover.graph, res.cover_walks[0].walk);
    for (int v : vs) CHECK(cover.vertex_level(v) == cover.vertex_level(vs[0]));
}

TEST_CASE("a circle lift alone does not certify indecomposability") {
    // two negative and two positive parallel edges, flow 1 everywhere: the
    // greedy tour lifts to a 4-circle, yet the flow splits into two digons;
    // the rerouting step must surface that
    std::vector<EdgeRecord> e{{0, 0, 1, -1}, {1, 0, 1, +1}, {2, 0, 1, -1}, {3, 0, 1, +1}};
    SignedGraph g = SignedGraph::build(e);
    Orientation o;
    o.end = {{+1, +1}, {-1, +1}, {-1, -1}, {+1, -1}};
    validate_orientation(g, o);
    EdgeFn f{1, 1, 1, 1};
    REQUIRE(is_flow(g, o, f));

    IndecomposabilityResult ind = is_indecomposable(g, o, f);
    CHECK_FALSE(ind.indecomposable);

    CoverGraph cover = build_cover(g);
    ResolveResult res = resolve(g, cover, o, f);
    CHECK_FALSE(res.is_circle);
    CHECK(project_function(cover, res.cover_flow) == f);

    Decomposition dec = conformal_decompose(g, o, f);
    CHECK(dec.parts.size() == 2);
    for (const DecompositionPart& p : dec.parts) {
        CHECK(p.multiplicity == 1);
        CHECK(total_weight(p.values) == 2);
        CHECK(p.certificate.circle_count() == 1);
    }
}

TEST_CASE("conformal decomposition fixtures") {
    SignedGraph d3 = fixtures::loop_link_loop();
    Orientation o = d3_orientation();
    EdgeFn f{1, 1, 2};

    Decomposition twice = conformal_decompose(d3, o, scaled(f, 2));
    REQUIRE(twice.parts.size() == 1);
    CHECK(twice.parts[0].multiplicity == 2);
    CHECK(twice.parts[0].values == f);

    SignedGraph c3 = fixtures::positive_triangle();
    Orientation oc = orientation_of_flow(c3, default_orientation(c3), EdgeFn{1, 1, 1});
    EdgeFn twos{2, 2, 2};
    if (is_flow(c3, oc, twos)) {
        Decomposition dt = conformal_decompose(c3, oc, twos);
        REQUIRE(dt.parts.size() == 1);
        CHECK(dt.parts[0].multiplicity == 2);
        CHECK(dt.parts[0].values == EdgeFn{1, 1, 1});
    }

    SignedGraph y = fixtures::spider();
    RecognitionResult ry = recognize_circle_tree(y, fixtures::all_edges(y));
    Orientation oy = direction_of(y, *ry.tree);
    EdgeFn ind = indicator(y, *ry.tree);
    REQUIRE(is_flow(y, oy, ind));
    CHECK(is_indecomposable(y, oy, ind).indecomposable);
    Decomposition dy = conformal_decompose(y, oy, ind);
    REQUIRE(dy.parts.size() == 1);
    CHECK(dy.parts[0].multiplicity == 1);
    CHECK(dy.parts[0].values == ind);
}

TEST_CASE("negative flows decompose with conforming signs") {
    SignedGraph d3 = fixtures::loop_link_loop();
    Orientation o = d3_orientation();
    EdgeFn f{-1, -1, -2};
    REQUIRE(is_flow(d3, o, f));
    CHECK(is_indecomposable(d3, o, f).indecomposable);
    Decomposition dec = conformal_decompose(d3, o, f);
    REQUIRE(dec.parts.size() == 1);
    CHECK(dec.parts[0].values == f);
}

TEST_CASE("half-integral decomposition: trivial for circuits, three circuits on the spider") {
    SignedGraph d3 = fixtures::loop_link_loop();
    RecognitionResult rd = recognize_circle_tree(d3, fixtures::all_edges(d3));
    HalfDecomposition hd = half_integer_decompose(d3, *rd.tree);
    CHECK(hd.trivial);
    REQUIRE(hd.circuits.size() == 1);
    CHECK(hd.circuits[0].second == 2);
    CHECK(hd.circuits[0].first.type == CircuitType::III);

    SignedGraph y = fixtures::spider();
    RecognitionResult ry = recognize_circle_tree(y, fixtures::all_edges(y));
    HalfDecomposition hy = half_integer_decompose(y, *ry.tree);
    CHECK_FALSE(hy.trivial);
    REQUIRE(hy.circuits.size() == 3);
    for (const auto& [c, num] : hy.circuits) {
        CHECK(num == 1);
        CHECK(c.type == CircuitType::III);
        // circuit paths run leg + triangle arc + leg
        CHECK(c.path_edges.size() == 3);
        CHECK(c.circle_a.size() == 1);
        CHECK(c.circle_b.size() == 1);
    }
    // every loop appears in exactly two of the three circuits
    std::vector<int> loop_uses(9, 0);
    for (const auto& [c, num] : hy.circuits) {
        for (int ei : c.circle_a) loop_uses[ei] += 1;
        for (int ei : c.circle_b) loop_uses[ei] += 1;
    }
    for (int ei : {6, 7, 8}) CHECK(loop_uses[ei] == 2);

    // twice the indicator equals the sum of the circuit indicators
    EdgeFn ind = indicator(y, *ry.tree);
    EdgeFn sum(y.edge_count(), 0);
    for (const auto& [c, num] : hy.circuits) {
        for (int ei : c.circle_a) sum[ei] += num;
        for (int ei : c.circle_b) sum[ei] += num;
        for (int ei : c.path_edges) sum[ei] += 2 * num;
    }
    CHECK(sum == scaled(ind, 2));
}

TEST_CASE("half-integral decomposition with two end blocks around a middle circle") {
    // loop - link - positive digon - link - loop; the two circuits route
    // through different digon arcs
    std::vector<EdgeRecord> e{{0, 0, 0, -1}, {1, 0, 1, +1}, {2, 1, 2, +1},
                              {3, 1, 2, +1}, {4, 2, 3, +1}, {5, 3, 3, -1}};
    SignedGraph g = SignedGraph::build(e);
    RecognitionResult r = recognize_circle_tree(g, fixtures::all_edges(g));
    REQUIRE(r.ok());
    REQUIRE(r.tree->sesqui_eulerian);
    CHECK(r.tree->circle_count() == 3);

    HalfDecomposition hd = half_integer_decompose(g, *r.tree);
    REQUIRE(hd.circuits.size() == 2);
    std::vector<int> arc_uses(g.edge_count(), 0);
    for (const auto& [c, num] : hd.circuits) {
        CHECK(num == 1);
        CHECK(c.type == CircuitType::III);
        CHECK(c.path_edges.size() == 3);  // link, one digon arc, link
        for (int ei : c.path_edges) arc_uses[ei] += 1;
    }
    CHECK(arc_uses[2] == 1);
    CHECK(arc_uses[3] == 1);
    CHECK(arc_uses[1] == 2);
    CHECK(arc_uses[4] == 2);
}

TEST_CASE("doubled flows decompose into conforming circuit flows") {
    SignedGraph d3 = fixtures::loop_link_loop();
    Orientation o = d3_orientation();
    EdgeFn f{1, 1, 2};
    std::vector<CircuitFlowTerm> terms = double_circuit_decompose(d3, o, f);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].coefficient == 2);
    CHECK(terms[0].values == f);

    SignedGraph y = fixtures::spider();
    RecognitionResult ry = recognize_circle_tree(y, fixtures::all_edges(y));
    Orientation oy = direction_of(y, *ry.tree);
    EdgeFn ind = indicator(y, *ry.tree);
    std::vector<CircuitFlowTerm> ty = double_circuit_decompose(y, oy, ind);
    CHECK(ty.size() == 3);
    EdgeFn sum(y.edge_count(), 0);
    for (const CircuitFlowTerm& t : ty) {
        CHECK(t.coefficient == 1);
        CHECK(t.circuit.type == CircuitType::III);
        for (int ei = 0; ei < y.edge_count(); ++ei) sum[ei] += t.coefficient * t.values[ei];
    }
    CHECK(sum == scaled(ind, 2));
}

TEST_CASE("oracle: minimal flows below fixtures") {
    SignedGraph d3 = fixtures::loop_link_loop();
    Orientation o = d3_orientation();
    EdgeFn f{1, 1, 2};
    std::vector<EdgeFn> min1 = oracle_minimal_flows(d3, o, f);
    CHECK(min1 == std::vector<EdgeFn>{f});

    std::vector<EdgeFn> min2 = oracle_minimal_flows(d3, o, scaled(f, 2));
    CHECK(min2 == std::vector<EdgeFn>{f});

    SignedGraph c3 = fixtures::positive_triangle();
    Orientation oc = orientation_of_flow(c3, default_orientation(c3), EdgeFn{1, 1, 1});
    if (is_flow(c3, oc, EdgeFn{1, 1, 1})) {
        std::vector<EdgeFn> min3 = oracle_minimal_flows(c3, oc, EdgeFn{1, 1, 1});
        CHECK(min3 == std::vector<EdgeFn>{EdgeFn{1, 1, 1}});
    }

    OracleCaps tight;
    tight.max_value = 1;
    CHECK_THROWS_AS(oracle_minimal_flows(d3, o, scaled(f, 2), tight), ValidationError);
}

TEST_CASE("flows across two graph components resolve per component") {
    // two disjoint positive triangles, one unit of flow on each
    std::vector<EdgeRecord> e{{0, 0, 1, +1}, {1, 1, 2, +1}, {2, 2, 0, +1},
                              {3, 3, 4, +1}, {4, 4, 5, +1}, {5, 5, 3, +1}};
    SignedGraph g = SignedGraph::build(e);
    EdgeFn ones(6, 1);
    Orientation fixed;  // both triangles circulate 0->1->2 and 3->4->5
    fixed.end = {{-1, +1}, {-1, +1}, {-1, +1}, {-1, +1}, {-1, +1}, {-1, +1}};
    validate_orientation(g, fixed);
    REQUIRE(is_flow(g, fixed, ones));

    CoverGraph cover = build_cover(g);
    ResolveResult res = resolve(g, cover, fixed, ones);
    CHECK(res.cover_walks.size() == 2);
    CHECK_FALSE(res.is_circle);
    CHECK(project_function(cover, res.cover_flow) == ones);
    CHECK_FALSE(is_indecomposable(g, fixed, ones).indecomposable);

    Decomposition dec = conformal_decompose(g, fixed, ones);
    CHECK(dec.parts.size() == 2);
    CHECK(dec.sum(6) == ones);

    // a single triangle within the disconnected ambient graph still resolves
    // to a circle
    EdgeFn left{1, 1, 1, 0, 0, 0};
    CHECK(resolve(g, cover, fixed, left).is_circle);
    CHECK(is_indecomposable(g, fixed, left).indecomposable);
}

TEST_CASE("zero and non-flow inputs") {
    SignedGraph d3 = fixtures::loop_link_loop();
    Orientation o = d3_orientation();
    EdgeFn zero(3, 0);
    CHECK(conformal_decompose(d3, o, zero).parts.empty());
    CHECK_THROWS_AS(is_indecomposable(d3, o, zero), ValidationError);
    CoverGraph cover = build_cover(d3);
    CHECK_THROWS_AS(resolve(d3, cover, o, zero), ValidationError);
    EdgeFn bad{1, 0, 0};
    CHECK_THROWS_AS(conformal_decompose(d3, o, bad), ValidationError);
}

TEST_CASE("random corpus: classification, resolution, oracle all agree") {
    InstanceParams p;
    p.max_edges = 9;
    OracleCaps caps;
    int checked = 0;
    for (int k = 0; k < 150; ++k) {
        Instance inst = random_instance(900000 + k, p);
        const SignedGraph& g = inst.graph;
        long long maxv = 0;
        for (long long x : inst.flow) maxv = std::max(maxv, std::abs(x));
        if (maxv > 2 || total_weight(inst.flow) > 12) continue;
        ++checked;

        IndecomposabilityResult ind = is_indecomposable(g, inst.orientation, inst.flow);
        CoverGraph cover = build_cover(g);
        ResolveResult res = resolve(g, cover, inst.orientation, inst.flow);
        CHECK(ind.indecomposable == res.is_circle);

        Orientation of = orientation_of_flow(g, inst.orientation, inst.flow);
        EdgeFn h = abs_function(inst.flow);
        std::vector<EdgeFn> minimal = oracle_minimal_flows(g, of, h, caps);
        bool h_minimal = std::find(minimal.begin(), minimal.end(), h) != minimal.end();
        CHECK(h_minimal == ind.indecomposable);

        // decomposition parts are oracle-minimal
        Decomposition dec = conformal_decompose(g, inst.orientation, inst.flow);
        CHECK(dec.sum(g.edge_count()) == inst.flow);
        for (const DecompositionPart& part : dec.parts) {
            EdgeFn hp = abs_function(part.values);
            CHECK(std::find(minimal.begin(), minimal.end(), hp) != minimal.end());
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("all-positive graphs decompose into unit circles") {
    InstanceParams p;
    p.all_positive = true;
    p.max_edges = 8;
    for (int k = 0; k < 120; ++k) {
        Instance inst = random_instance(7777000 + k, p);
        Decomposition dec = conformal_decompose(inst.graph, inst.orientation, inst.flow);
        CHECK(dec.sum(inst.graph.edge_count()) == inst.flow);
        for (const DecompositionPart& part : dec.parts) {
            CHECK(part.certificate.circle_count() == 1);
            CHECK(part.certificate.block_paths.empty());
            for (long long x : part.values) CHECK(std::abs(x) <= 1);
        }
    }
}

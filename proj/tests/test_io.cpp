#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "sg/io.hpp"
#include "sg/rand.hpp"

using namespace sg;

namespace {

SignedGraph parse(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

}  // namespace

TEST_CASE("graph parsing: records, comments, isolated vertices") {
    SignedGraph g = parse(
        "# loop-link-loop\n"
        "v 7\n"
        "e 0 0 0 -\n"
        "e 1 1 1 -\n"
        "e 2 0 1 +\n");
    CHECK(g.vertex_count() == 3);  // 0, 1 and the isolated 7
    CHECK(g.edge_count() == 3);
    CHECK(g.sign(0) == -1);
    CHECK(g.sign(2) == +1);
    CHECK(g.vertex_id(2) == 7);
}

TEST_CASE("graph parsing errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse("e 0 0 1 *\n"), doctest::Contains("line 1"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("# ok\nx 1\n"), doctest::Contains("line 2"), ValidationError);
    CHECK_THROWS_AS(parse("e 0 0 1 +\ne 0 1 2 -\n"), ValidationError);  // duplicate id
}

TEST_CASE("emit then parse is the identity on all three formats") {
    Rng rng(321);
    InstanceParams p;
    for (int k = 0; k < 100; ++k) {
        Instance inst = random_instance(rng.next(), p);

        std::string gs = graph_to_string(inst.graph);
        std::istringstream gin(gs);
        SignedGraph g2 = parse_graph(gin);
        CHECK(graph_to_string(g2) == gs);

        std::string os = orientation_to_string(inst.graph, inst.orientation);
        std::istringstream oin(os);
        Orientation o2 = parse_orientation(oin, g2);
        CHECK(orientation_to_string(g2, o2) == os);

        std::string fs = flow_to_string(inst.graph, inst.flow);
        std::istringstream fin(fs);
        EdgeFn f2 = parse_flow(fin, g2);
        CHECK(f2 == inst.flow);
        CHECK(flow_to_string(g2, f2) == fs);
    }
}

TEST_CASE("orientation files are validated against the sign constraint") {
    SignedGraph g = parse("e 0 0 1 +\n");
    std::istringstream bad("o 0 +1 +1\n");  // positive edge needs opposite ends
    CHECK_THROWS_AS(parse_orientation(bad, g), ValidationError);
    std::istringstream good("o 0 +1 -1\n");
    CHECK_NOTHROW(parse_orientation(good, g));
    std::istringstream missing("");
    CHECK_THROWS_AS(parse_orientation(missing, g), ValidationError);
}

TEST_CASE("flow files reject duplicates and unknown edges") {
    SignedGraph g = parse("e 0 0 1 +\ne 1 0 1 +\n");
    std::istringstream dup("f 0 1\nf 0 2\n");
    CHECK_THROWS_AS(parse_flow(dup, g), ValidationError);
    std::istringstream unknown("f 9 1\n");
    CHECK_THROWS_AS(parse_flow(unknown, g), ValidationError);
    std::istringstream sparse("f 1 -3\n");
    CHECK(parse_flow(sparse, g) == EdgeFn{0, -3});
}

TEST_CASE("identical seeds give identical instances") {
    InstanceParams p;
    for (uint64_t seed : {1ull, 42ull, 123456789ull}) {
        Instance a = random_instance(seed, p);
        Instance b = random_instance(seed, p);
        CHECK(graph_to_string(a.graph) == graph_to_string(b.graph));
        CHECK(orientation_to_string(a.graph, a.orientation) ==
              orientation_to_string(b.graph, b.orientation));
        CHECK(flow_to_string(a.graph, a.flow) == flow_to_string(b.graph, b.flow));
    }
}

TEST_CASE("cover ids interleave levels for stable files") {
    SignedGraph g = parse("e 0 0 0 -\ne 1 1 1 -\ne 2 0 1 +\n");
    CoverGraph c = build_cover(g);
    std::ostringstream map;
    emit_cover_mapping(map, g, c);
    CHECK(map.str() ==
          "0 -> 0 +\n"
          "1 -> 0 -\n"
          "2 -> 1 +\n"
          "3 -> 1 -\n"
          "4 -> 2 +\n"
          "5 -> 2 -\n");
    std::ostringstream cg;
    emit_graph(cg, c.graph);
    std::istringstream back(cg.str());
    SignedGraph reparsed = parse_graph(back);
    CHECK(graph_to_string(reparsed) == cg.str());
}

#pragma once

#include "sg/core.hpp"

namespace sg::fixtures {

// single negative loop at vertex 0
inline SignedGraph negative_loop() {
    std::vector<EdgeRecord> e{{0, 0, 0, -1}};
    return SignedGraph::build(e);
}

// digon: edges 0 (+) and 1 (-) between vertices 0 and 1; a negative circle
inline SignedGraph negative_digon() {
    std::vector<EdgeRecord> e{{0, 0, 1, +1}, {1, 0, 1, -1}};
    return SignedGraph::build(e);
}

// positive triangle on vertices 0,1,2
inline SignedGraph positive_triangle() {
    std::vector<EdgeRecord> e{{0, 0, 1, +1}, {1, 1, 2, +1}, {2, 2, 0, +1}};
    return SignedGraph::build(e);
}

// two negative loops at one vertex: the Type II shape
inline SignedGraph two_loops() {
    std::vector<EdgeRecord> e{{0, 0, 0, -1}, {1, 0, 0, -1}};
    return SignedGraph::build(e);
}

// negative loops at vertices 0 and 1 joined by a positive link: Type III
inline SignedGraph loop_link_loop() {
    std::vector<EdgeRecord> e{{0, 0, 0, -1}, {1, 1, 1, -1}, {2, 0, 1, +1}};
    return SignedGraph::build(e);
}

// central negative triangle (edges 0,1,2 with signs +,+,-) on vertices 0,1,2,
// positive links 3,4,5 to vertices 3,4,5, negative loops 6,7,8 there; a
// sesqui-Eulerian circle-tree with four circle blocks that is not a circuit
inline SignedGraph spider() {
    std::vector<EdgeRecord> e{
        {0, 0, 1, +1}, {1, 1, 2, +1}, {2, 2, 0, -1},  // triangle
        {3, 0, 3, +1}, {4, 1, 4, +1}, {5, 2, 5, +1},  // legs
        {6, 3, 3, -1}, {7, 4, 4, -1}, {8, 5, 5, -1},  // loops
    };
    return SignedGraph::build(e);
}

inline std::vector<int> all_edges(const SignedGraph& g) {
    std::vector<int> e(g.edge_count());
    for (int i = 0; i < g.edge_count(); ++i) e[i] = i;
    return e;
}

}  // namespace sg::fixtures

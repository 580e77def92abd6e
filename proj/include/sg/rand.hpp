#pragma once

#include <cstdint>

#include "sg/core.hpp"
#include "sg/flow.hpp"

namespace sg {

// splitmix64; self-contained so outputs are identical across platforms
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    int range(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }
    int pick_sign() { return (next() & 1) ? +1 : -1; }
    bool chance(int num, int den) { return below(den) < static_cast<uint64_t>(num); }
};

struct InstanceParams {
    int min_vertices = 2;
    int max_vertices = 6;
    int min_edges = 1;
    int max_edges = 9;
    int min_walks = 1;   // closed positive walks summed into the flow
    int max_walks = 4;
    int max_walk_len = 8;
    bool all_positive = false;
    bool connected = false;
};

struct Instance {
    SignedGraph graph;
    Orientation orientation;
    EdgeFn flow;
};

SignedGraph random_graph(Rng& rng, const InstanceParams& p);
Orientation random_orientation(Rng& rng, const SignedGraph& g);
// Arbitrary walk of the requested length (at least 1), if the graph has edges.
Walk random_walk(Rng& rng, const SignedGraph& g, int len);
// Closed positive walk; falls back to traversing one edge there and back.
Walk random_closed_positive_walk(Rng& rng, const SignedGraph& g, int max_len);
// Sum of directed closed positive walk flows; nonzero unless retries exhaust.
EdgeFn random_flow(Rng& rng, const SignedGraph& g, const Orientation& o, const InstanceParams& p);

Instance random_instance(uint64_t seed, const InstanceParams& p);

}  // namespace sg

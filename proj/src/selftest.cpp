#include "sg/selftest.hpp"

#include <functional>

#include "sg/rand.hpp"

namespace sg {

namespace {

struct Suite {
    SelftestReport& report;

    void run(const std::string& name, const std::function<void()>& body) {
        try {
            body();
            report.passed += 1;
            report.lines.push_back("[pass] " + name);
        } catch (const std::exception& e) {
            report.failed += 1;
            report.lines.push_back("[FAIL] " + name + ": " + e.what());
        }
    }
};

SignedGraph fixture_d3() {
    std::vector<EdgeRecord> e{{0, 0, 0, -1}, {1, 1, 1, -1}, {2, 0, 1, +1}};
    return SignedGraph::build(e);
}

void expect(bool cond, const char* msg) {
    if (!cond) throw InternalError(msg);
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& opts) {
    SelftestReport report;
    Suite suite{report};

    suite.run("fixture: loop-edge-loop circuit flow and classification", [] {
        SignedGraph g = fixture_d3();
        Orientation o = default_orientation(g);
        std::vector<Circuit> circuits = enumerate_circuits(g);
        expect(circuits.size() == 1 && circuits[0].type == CircuitType::III,
               "expected exactly one Type III circuit");
        EdgeFn f = circuit_flow(g, o, circuits[0]);
        expect(abs_function(f) == EdgeFn({1, 1, 2}), "circuit flow values");
        expect(is_indecomposable(g, o, f).indecomposable, "circuit flows are indecomposable");
        CoverGraph cover = build_cover(g);
        expect(resolve(g, cover, o, f).is_circle, "circuit flows resolve to circles");
    });

    InstanceParams params;
    for (int k = 0; k < opts.instances; ++k) {
        uint64_t seed = opts.seed * 1000003ull + k;
        suite.run("instance " + std::to_string(k), [&] {
            Instance inst = random_instance(seed, params);
            const SignedGraph& g = inst.graph;
            CoverGraph cover = build_cover(g);

            // lemma-level checks on random walks
            Rng rng(seed ^ 0xABCDEF);
            for (int i = 0; i < 5; ++i) {
                Walk w = random_walk(rng, g, rng.range(1, 8));
                WalkDirection d = propagate_direction(g, w, rng.pick_sign());
                expect(check_walk_sign_lemma(g, w, d).holds, "walk sign lemma");
                WalkDirection from_o = restrict_to_walk(g, inst.orientation, w);
                expect(check_walk_sign_lemma(g, w, from_o).holds, "walk sign lemma (orientation)");
            }

            // resolution agrees with the classification
            IndecomposabilityResult ind = is_indecomposable(g, inst.orientation, inst.flow);
            ResolveResult res = resolve(g, cover, inst.orientation, inst.flow);
            expect(ind.indecomposable == res.is_circle, "resolution equals classification");

            // conformal decomposition is sound
            Decomposition dec = conformal_decompose(g, inst.orientation, inst.flow);
            expect(dec.sum(g.edge_count()) == inst.flow, "parts sum to the flow");

            // doubled flow decomposes into circuit flows
            double_circuit_decompose(g, inst.orientation, inst.flow);

            // exhaustive minimality oracle within caps
            if (opts.with_oracle) {
                EdgeFn h = abs_function(inst.flow);
                int support = 0;
                long long maxv = 0;
                for (long long x : h) {
                    support += x != 0;
                    maxv = std::max(maxv, x);
                }
                if (support <= opts.oracle_caps.max_support &&
                    maxv <= opts.oracle_caps.max_value) {
                    Orientation of = orientation_of_flow(g, inst.orientation, inst.flow);
                    std::vector<EdgeFn> minimal = oracle_minimal_flows(g, of, h, opts.oracle_caps);
                    bool oracle_minimal =
                        std::find(minimal.begin(), minimal.end(), h) != minimal.end();
                    expect(oracle_minimal == ind.indecomposable,
                           "oracle minimality equals classification");
                }
            }
        });
    }
    return report;
}

}  // namespace sg

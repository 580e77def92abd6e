#pragma once

#include "sg/cover.hpp"
#include "sg/flow.hpp"
#include "sg/structure.hpp"

namespace sg {

struct ResolveResult {
    // one directed walk per ambient component of the support, together with
    // its lift; indecomposable flows resolve to a single circle
    std::vector<DirectedWalk> base_walks;
    std::vector<DirectedWalk> cover_walks;
    EdgeFn cover_flow;  // lift of f, on the cover
    bool is_circle = false;
};

// Builds a directed closed positive walk (W, w_f) with f = f_(W,w_f) and lifts
// it. The lift of the first walk found can be a circle even for decomposable
// flows; in that case the rerouting construction replaces it by another valid
// resolution walk whose lift is not a circle, so that is_circle holds exactly
// for the conformally indecomposable flows.
ResolveResult resolve(const SignedGraph& g, const CoverGraph& cover, const Orientation& o,
                      const EdgeFn& f, long long weight_cap = kDefaultWeightCap);

struct IndecomposabilityResult {
    bool indecomposable = false;
    std::optional<CircleTree> certificate;
    std::optional<Orientation> direction;  // w_f restricted to the support
    std::string failed_condition;          // set when decomposable
};

// f is conformally indecomposable iff its support is a sesqui-Eulerian
// circle-tree, w_f restricted to it is a direction, and |f| is the indicator.
IndecomposabilityResult is_indecomposable(const SignedGraph& g, const Orientation& o,
                                          const EdgeFn& f);

struct DecompositionPart {
    EdgeFn values;  // signed part, conforming to f
    CircleTree certificate;
    Orientation direction;
    long long multiplicity = 1;
};

struct Decomposition {
    std::vector<DecompositionPart> parts;
    EdgeFn sum(int edge_count) const;
};

// Conformal decomposition into indecomposable parts: pass to |f| on (S, w_f),
// lift per component, peel directed circles in the cover, project, and refine
// projected pieces by splitting at coherent self-intersections or rerouting
// through the partner lift at incoherent non-cut ones.
Decomposition conformal_decompose(const SignedGraph& g, const Orientation& o, const EdgeFn& f,
                                  long long weight_cap = kDefaultWeightCap);

struct HalfDecomposition {
    // 2 I_T = sum of numerator * I_(circuit); numerators are 1 for the n
    // circuits of a proper tree and 2 for the trivial single-circuit case
    std::vector<std::pair<Circuit, int>> circuits;
    bool trivial = false;
};

HalfDecomposition half_integer_decompose(const SignedGraph& g, const CircleTree& tree);

struct CircuitFlowTerm {
    Circuit circuit;
    EdgeFn values;  // circuit flow conforming to f
    long long coefficient = 1;
};

// 2f as a positive integral combination of conforming circuit flows.
std::vector<CircuitFlowTerm> double_circuit_decompose(const SignedGraph& g, const Orientation& o,
                                                      const EdgeFn& f,
                                                      long long weight_cap = kDefaultWeightCap);

struct OracleCaps {
    int max_support = 10;
    long long max_value = 4;
};

// Exhaustive enumeration of the minimal nonzero flows g with 0 <= g <= f.
// f is minimal iff the result is exactly {f}.
std::vector<EdgeFn> oracle_minimal_flows(const SignedGraph& g, const Orientation& o,
                                         const EdgeFn& f, const OracleCaps& caps = {});

// Signed circuit flow: +-1 on the circles, +-2 on the circuit path, relative
// to the circuit's direction (negate = true flips it).
EdgeFn circuit_flow(const SignedGraph& g, const Orientation& o, const Circuit& c,
                    bool negate = false);

}  // namespace sg

#pragma once

#include "msp/matroid.hpp"
#include "msp/rng.hpp"

namespace msp {

// The tight laminar family: r blocks of q elements, E_i = F_1 ∪ ... ∪ F_i with
// cap i, block weights drawn from disjoint unit intervals so every F_i element
// outranks every F_j element for i < j.
MatroidInstance tight_laminar(int q, int r, SplitMix64& rng);

MatroidInstance uniform_instance(int n, int r);
MatroidInstance random_rank2(const std::vector<int>& class_sizes, SplitMix64& rng);
MatroidInstance random_laminar(int n, int depth, int branching, SplitMix64& rng);

// Connected multigraph. With parallel_bias > 0 a fraction of the extra edges
// duplicate optimum-candidate (spanning tree) edges.
MatroidInstance random_graph(int vertices, int edges, bool simple, double parallel_bias,
                             SplitMix64& rng);

}  // namespace msp

#pragma once

#include <vector>

#include "ocfat/bw.hpp"

namespace ocfat {

// Closed gluing of g1's white vertices onto g2's incoming closed leaves, one graph
// per distribution of spokes into corners. Results are generalized: open leaves
// are not yet glued and unlabeled leaves may be bad.
std::vector<bw_graph> compose_closed(const bw_graph& g2, const bw_graph& g1);

// g2 o g1
formal_sum compose(const bw_graph& g2, const bw_graph& g1);
formal_sum compose_chains(const formal_sum& s2, const formal_sum& s1);

// number of corner slots on the boundary cycle of an incoming closed leaf
int corner_count(const bw_graph& g, int leaf_vertex);

}  // namespace ocfat

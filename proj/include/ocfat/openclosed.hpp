#pragma once

#include <vector>

#include "ocfat/fatgraph.hpp"
#include "ocfat/topology.hpp"

namespace ocfat {

// Every leaf carries a label; labels within a (direction, kind) class are 0..n-1.
struct oc_graph {
    fat_graph graph;
    label_map label;

    // JSON-facing orderings: closed labels first, then open, each by index
    std::vector<int> in_leaves() const;
    std::vector<int> out_leaves() const;
    std::vector<int> closed_leaves() const;
    bool operator==(const oc_graph&) const = default;
};

oc_graph make_oc_graph(const fat_graph& g, const std::vector<int>& in_leaves, const std::vector<int>& out_leaves,
                       const std::vector<int>& closed_leaves);

// shared by the labeled graph flavours: checks uniqueness and contiguity of labels
void validate_labels(const fat_graph& g, const label_map& labels, bool every_leaf_labeled);
// component is one vertex with one or two leaves attached
std::vector<char> degenerate_corolla_centers(const fat_graph& g);

void validate_oc(const oc_graph& g);
topological_type topological_type_of(const oc_graph& g);

struct admissible_cycle {
    int index = 0;          // outgoing closed label
    int leaf = -1;          // the admissible leaf vertex
    int leaf_half_edge = -1;  // half edge at the base vertex leading to the leaf
    int base_vertex = -1;
    std::vector<int> circle;  // non-leaf half edges in omega order, starting at sigma(leaf_half_edge)
};

// outgoing-closed boundary cycles, ordered by label; no admissibility check
std::vector<admissible_cycle> admissible_cycles(const oc_graph& g);
bool is_admissible(const oc_graph& g);

struct mixed_degree_report {
    int mixed_degree = 0;
    int bw_degree = 0;
    bool essentially_trivalent = false;
};

bool is_essentially_trivalent(const oc_graph& g);
// with bw_degree filled in through the white-vertex correspondence
mixed_degree_report mixed_degree(const oc_graph& g);
oc_graph make_essentially_trivalent(const oc_graph& g);
int bw_degree(const oc_graph& g);

}  // namespace ocfat

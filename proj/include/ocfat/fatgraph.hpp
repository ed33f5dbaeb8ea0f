#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ocfat/error.hpp"

namespace ocfat {

using perm = std::vector<int>;

// Half edges are 0..H-1. Vertex fibers of `source` are the cycles of `sigma`.
struct fat_graph {
    int vertex_count = 0;
    perm involution;
    perm sigma;
    std::vector<int> source;
    std::vector<char> leaf;  // per vertex

    int half_edge_count() const { return static_cast<int>(involution.size()); }
    int edge_count() const { return half_edge_count() / 2; }
    std::vector<int> valences() const;
    // half edges at each vertex in cyclic order, starting from the smallest index
    std::vector<std::vector<int>> fibers() const;
    int omega(int h) const { return sigma[involution[h]]; }

    bool operator==(const fat_graph&) const = default;
};

inline int edge_id(const fat_graph& g, int h) { return std::min(h, g.involution[h]); }

struct boundary_cycle {
    std::vector<int> half_edges;         // consecutive elements are related by omega
    std::map<int, int> edge_multiplicity;  // edge id -> 1 or 2
};

struct surface_info {
    int euler_characteristic = 0;
    int boundary_count = 0;
    int genus = 0;
    int components = 0;
};

void validate(const fat_graph& g);

std::vector<boundary_cycle> boundary_cycles(const fat_graph& g);
// cycle index of every half edge, numbered in order of the smallest member
std::vector<int> boundary_cycle_index(const fat_graph& g);

// connected component id per vertex, numbered by smallest vertex
std::vector<int> vertex_components(const fat_graph& g, int* count = nullptr);

surface_info surface_invariants(const fat_graph& g);
// per-component invariants, indexed like vertex_components
std::vector<surface_info> component_invariants(const fat_graph& g);

// Collapse every tree of the forest given by edge ids.
fat_graph collapse_forest(const fat_graph& g, const std::vector<int>& forest_edges);

// Relabel: vertex v -> vmap[v], half edge h -> hmap[h] (both bijections).
fat_graph relabel(const fat_graph& g, const perm& vmap, const perm& hmap);

struct canonical_result {
    std::string key;
    perm vertex_map;     // old vertex -> canonical vertex
    perm half_edge_map;  // old half edge -> canonical half edge
    bool rigid = true;   // no nontrivial color-preserving automorphism
};

// Colors default to the leaf flag. Two colored graphs get equal keys iff they are
// isomorphic by a color-preserving fat-graph isomorphism.
canonical_result canonical_form(const fat_graph& g,
                                std::span<const std::int64_t> vertex_colors = {},
                                std::span<const std::int64_t> half_edge_colors = {});

struct automorphism {
    perm vertices;
    perm half_edges;
};

std::vector<automorphism> automorphisms(const fat_graph& g,
                                        std::span<const std::int64_t> vertex_colors = {},
                                        std::span<const std::int64_t> half_edge_colors = {});

// Parity (+1/-1) of a permutation given as an arrangement of 0..n-1.
int permutation_sign(const perm& p);

// Build from a rotation system: rotation[v] lists the half edges at v in cyclic order.
fat_graph from_rotation(const std::vector<std::vector<int>>& rotation, const perm& involution,
                        const std::vector<int>& leaves = {});

}  // namespace ocfat

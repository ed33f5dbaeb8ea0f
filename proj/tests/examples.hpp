#pragma once

#include <algorithm>
#include <numeric>
#include <random>

#include "ocfat/fatgraph.hpp"
#include "ocfat/openclosed.hpp"

namespace ocfat::examples {

// half edges 1,2,3 at u are 0,1,2; their partners 1',2',3' at v are 3,4,5
inline fat_graph planar_theta() { return from_rotation({{0, 1, 2}, {3, 5, 4}}, {3, 4, 5, 0, 1, 2}); }
inline fat_graph nonplanar_theta() { return from_rotation({{0, 1, 2}, {3, 4, 5}}, {3, 4, 5, 0, 1, 2}); }

// loops a = (0,1), b = (2,3); sigma (a b a' b') or (a a' b b')
inline fat_graph figure_eight_interleaved() { return from_rotation({{0, 2, 1, 3}}, {1, 0, 3, 2}); }
inline fat_graph figure_eight_nested() { return from_rotation({{0, 1, 2, 3}}, {1, 0, 3, 2}); }

inline fat_graph one_leaf_corolla() { return from_rotation({{0}, {1}}, {1, 0}, {1}); }

// leaf edge from the incoming closed leaf 0 to a loop carrying the admissible leaf 2
inline oc_graph minimal_annulus_oc() {
    auto g = from_rotation({{0}, {1, 2, 4, 3}, {5}}, {1, 0, 3, 2, 5, 4}, {0, 2});
    return make_oc_graph(g, {0}, {2}, {0, 2});
}

// Admissible circle of n edges through v_0..v_{n-1}, the admissible leaf at v_0.
// Incoming open leaves hang off v_k for k in leaf_at; with_first puts one at v_0 too.
inline oc_graph admissible_circle(int n, bool with_first) {
    std::vector<std::vector<int>> rot(n);
    perm inv(2 * n);
    for (int i = 0; i < n; ++i) {
        inv[2 * i] = 2 * ((i + 1) % n) + 1;
        inv[2 * ((i + 1) % n) + 1] = 2 * i;
    }
    int next_vertex = n;
    auto hang = [&](int v) {
        int h = static_cast<int>(inv.size());
        inv.push_back(h + 1);
        inv.push_back(h);
        rot.push_back({h + 1});
        return std::pair{h, next_vertex++};
    };
    std::vector<int> leaves, in_leaves;
    int admissible = -1;
    for (int i = 0; i < n; ++i) {
        rot[i].push_back(2 * i);
        if (i > 0 || with_first) {
            auto [h, v] = hang(i);
            rot[i].push_back(h);
            leaves.push_back(v);
            in_leaves.push_back(v);
        }
        rot[i].push_back(2 * i + 1);
        if (i == 0) {
            auto [h, v] = hang(i);
            rot[i].push_back(h);
            leaves.push_back(v);
            admissible = v;
        }
    }
    auto g = from_rotation(rot, inv, leaves);
    return make_oc_graph(g, in_leaves, {admissible}, {admissible});
}

// the graphs called l_n and l~_n
inline oc_graph l_graph(int n) { return admissible_circle(n, true); }
inline oc_graph l_tilde_graph(int n) { return admissible_circle(n, false); }

inline fat_graph random_relabel(const fat_graph& g, std::mt19937& rng, perm* vmap_out = nullptr,
                                perm* hmap_out = nullptr) {
    perm vmap(g.vertex_count), hmap(g.half_edge_count());
    std::iota(vmap.begin(), vmap.end(), 0);
    std::iota(hmap.begin(), hmap.end(), 0);
    std::shuffle(vmap.begin(), vmap.end(), rng);
    std::shuffle(hmap.begin(), hmap.end(), rng);
    if (vmap_out) *vmap_out = vmap;
    if (hmap_out) *hmap_out = hmap;
    return relabel(g, vmap, hmap);
}

}  // namespace ocfat::examples

#pragma once

#include <vector>

#include "ocfat/fatgraph.hpp"

namespace ocfat {

// Mutable workspace for graph surgery. Ids of the input graph stay valid; new
// vertices and half edges get ids past the old range. finish() compacts.
class graph_editor {
public:
    explicit graph_editor(const fat_graph& g);

    int add_vertex(bool is_leaf = false);
    // new half edge at v; inserted right after `after` in the cyclic order, or as
    // the only half edge when after < 0
    int add_half_edge(int v, int after = -1);
    void pair(int a, int b);
    // unlink h from its vertex (it keeps its id and partner)
    void detach(int h);
    void attach(int h, int v, int after = -1);
    void remove_half_edge(int h);
    void remove_vertex(int v);
    void set_rotation(int v, const std::vector<int>& order);
    void set_leaf(int v, bool is_leaf) { leaf_[v] = is_leaf; }

    int sigma(int h) const { return sigma_[h]; }
    int sigma_inv(int h) const { return sigma_inv_[h]; }
    int partner(int h) const { return partner_[h]; }
    int source(int h) const { return source_[h]; }
    bool is_leaf(int v) const { return leaf_[v]; }
    bool vertex_alive(int v) const { return vertex_alive_[v]; }
    bool half_edge_alive(int h) const { return half_edge_alive_[h]; }
    int vertex_slots() const { return static_cast<int>(vertex_alive_.size()); }
    int half_edge_slots() const { return static_cast<int>(partner_.size()); }
    std::vector<int> rotation(int v) const;
    int valence(int v) const { return static_cast<int>(rotation(v).size()); }

    struct result {
        fat_graph graph;
        std::vector<int> vertex_map;     // slot -> new id or -1
        std::vector<int> half_edge_map;  // slot -> new id or -1
    };
    result finish() const;

private:
    std::vector<int> sigma_, sigma_inv_, partner_, source_;
    std::vector<char> half_edge_alive_;
    std::vector<char> vertex_alive_, leaf_;
};

// Contract the non-loop edge {h, i(h)}; the vertex of h survives.
void contract_edge(graph_editor& ed, int h);

}  // namespace ocfat

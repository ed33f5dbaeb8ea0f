#include "ocfat/editor.hpp"

namespace ocfat {

graph_editor::graph_editor(const fat_graph& g)
    : sigma_(g.sigma),
      partner_(g.involution),
      source_(g.source),
      half_edge_alive_(g.half_edge_count(), 1),
      vertex_alive_(g.vertex_count, 1),
      leaf_(g.leaf) {
    sigma_inv_.assign(sigma_.size(), 0);
    for (int h = 0; h < static_cast<int>(sigma_.size()); ++h) sigma_inv_[sigma_[h]] = h;
}

int graph_editor::add_vertex(bool is_leaf) {
    vertex_alive_.push_back(1);
    leaf_.push_back(is_leaf);
    return static_cast<int>(vertex_alive_.size()) - 1;
}

int graph_editor::add_half_edge(int v, int after) {
    int h = static_cast<int>(partner_.size());
    sigma_.push_back(h);
    sigma_inv_.push_back(h);
    partner_.push_back(-1);
    source_.push_back(-1);
    half_edge_alive_.push_back(1);
    attach(h, v, after);
    return h;
}

void graph_editor::pair(int a, int b) {
    partner_[a] = b;
    partner_[b] = a;
}

void graph_editor::detach(int h) {
    int p = sigma_inv_[h], n = sigma_[h];
    sigma_[p] = n;
    sigma_inv_[n] = p;
    sigma_[h] = h;
    sigma_inv_[h] = h;
    source_[h] = -1;
}

void graph_editor::attach(int h, int v, int after) {
    source_[h] = v;
    if (after < 0) {
        sigma_[h] = h;
        sigma_inv_[h] = h;
        return;
    }
    int n = sigma_[after];
    sigma_[after] = h;
    sigma_inv_[h] = after;
    sigma_[h] = n;
    sigma_inv_[n] = h;
}

void graph_editor::remove_half_edge(int h) {
    if (source_[h] >= 0) detach(h);
    half_edge_alive_[h] = 0;
    int p = partner_[h];
    if (p >= 0 && partner_[p] == h) partner_[p] = -1;
    partner_[h] = -1;
}

void graph_editor::remove_vertex(int v) {
    for (int h : rotation(v)) remove_half_edge(h);
    vertex_alive_[v] = 0;
}

void graph_editor::set_rotation(int v, const std::vector<int>& order) {
    int n = static_cast<int>(order.size());
    for (int k = 0; k < n; ++k) {
        int h = order[k], nx = order[(k + 1) % n];
        source_[h] = v;
        sigma_[h] = nx;
        sigma_inv_[nx] = h;
    }
}

std::vector<int> graph_editor::rotation(int v) const {
    std::vector<int> out;
    for (int h = 0; h < static_cast<int>(source_.size()); ++h) {
        if (half_edge_alive_[h] && source_[h] == v) {
            int x = h;
            do {
                out.push_back(x);
                x = sigma_[x];
            } while (x != h);
            break;
        }
    }
    return out;
}

graph_editor::result graph_editor::finish() const {
    result r;
    r.vertex_map.assign(vertex_alive_.size(), -1);
    r.half_edge_map.assign(partner_.size(), -1);
    int nv = 0, nh = 0;
    for (std::size_t v = 0; v < vertex_alive_.size(); ++v)
        if (vertex_alive_[v]) r.vertex_map[v] = nv++;
    for (std::size_t h = 0; h < partner_.size(); ++h)
        if (half_edge_alive_[h]) r.half_edge_map[h] = nh++;
    fat_graph& g = r.graph;
    g.vertex_count = nv;
    g.involution.assign(nh, -1);
    g.sigma.assign(nh, -1);
    g.source.assign(nh, -1);
    g.leaf.assign(nv, 0);
    for (std::size_t v = 0; v < vertex_alive_.size(); ++v)
        if (vertex_alive_[v]) g.leaf[r.vertex_map[v]] = leaf_[v];
    for (std::size_t h = 0; h < partner_.size(); ++h) {
        if (!half_edge_alive_[h]) continue;
        int k = r.half_edge_map[h];
        if (partner_[h] < 0 || !half_edge_alive_[partner_[h]] || source_[h] < 0 ||
            !vertex_alive_[source_[h]])
            throw std::logic_error("graph_editor: dangling half edge after surgery");
        g.involution[k] = r.half_edge_map[partner_[h]];
        g.sigma[k] = r.half_edge_map[sigma_[h]];
        g.source[k] = r.vertex_map[source_[h]];
    }
    return r;
}

void contract_edge(graph_editor& ed, int h) {
    int b = ed.partner(h);
    int u = ed.source(h), v = ed.source(b);
    if (u == v) throw std::logic_error("contract_edge: loop");
    std::vector<int> merged;
    for (int x = ed.sigma(h); x != h; x = ed.sigma(x)) merged.push_back(x);
    for (int x = ed.sigma(b); x != b; x = ed.sigma(x)) merged.push_back(x);
    ed.remove_half_edge(h);
    ed.remove_half_edge(b);
    if (!merged.empty()) ed.set_rotation(u, merged);
    ed.remove_vertex(v);
}

}  // namespace ocfat

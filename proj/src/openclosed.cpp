#include "ocfat/openclosed.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ocfat/editor.hpp"

namespace ocfat {

namespace {

std::vector<int> ordered_leaves(const label_map& label, direction dir) {
    std::vector<std::pair<leaf_label, int>> items;
    for (int v = 0; v < static_cast<int>(label.size()); ++v)
        if (label[v] && label[v]->dir == dir) items.push_back({*label[v], v});
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.first.kind != b.first.kind) return a.first.kind == boundary_kind::closed;
        return a.first.index < b.first.index;
    });
    std::vector<int> out;
    for (auto& [l, v] : items) out.push_back(v);
    return out;
}

bool is_leaf_edge(const fat_graph& g, int h) {
    return g.leaf[g.source[h]] || g.leaf[g.source[g.involution[h]]];
}

}  // namespace

std::vector<int> oc_graph::in_leaves() const { return ordered_leaves(label, direction::in); }
std::vector<int> oc_graph::out_leaves() const { return ordered_leaves(label, direction::out); }
std::vector<int> oc_graph::closed_leaves() const {
    std::vector<int> out;
    for (int v : in_leaves())
        if (label[v]->kind == boundary_kind::closed) out.push_back(v);
    for (int v : out_leaves())
        if (label[v]->kind == boundary_kind::closed) out.push_back(v);
    return out;
}

oc_graph make_oc_graph(const fat_graph& g, const std::vector<int>& in_leaves, const std::vector<int>& out_leaves,
                       const std::vector<int>& closed_leaves) {
    oc_graph o{g, label_map(g.vertex_count)};
    std::set<int> closed(closed_leaves.begin(), closed_leaves.end());
    for (int v : closed)
        if (v < 0 || v >= g.vertex_count) fail(error_code::label_overlap, "closed leaf out of range");
    auto assign = [&](const std::vector<int>& leaves, direction dir) {
        int counts[2] = {0, 0};
        for (int v : leaves) {
            if (v < 0 || v >= g.vertex_count) fail(error_code::label_overlap, "leaf id out of range");
            if (o.label[v]) fail(error_code::label_overlap, "vertex " + std::to_string(v) + " labeled twice");
            auto kind = closed.count(v) ? boundary_kind::closed : boundary_kind::open;
            o.label[v] = leaf_label{dir, kind, counts[static_cast<int>(kind)]++};
        }
    };
    assign(in_leaves, direction::in);
    assign(out_leaves, direction::out);
    for (int v : closed)
        if (!o.label[v]) fail(error_code::label_overlap, "closed vertex " + std::to_string(v) + " is not in/out");
    return o;
}

void validate_labels(const fat_graph& g, const label_map& labels, bool every_leaf_labeled) {
    if (static_cast<int>(labels.size()) != g.vertex_count) fail(error_code::label_overlap, "label table size");
    std::map<std::pair<int, int>, std::set<int>> classes;
    for (int v = 0; v < g.vertex_count; ++v) {
        if (labels[v]) {
            if (!g.leaf[v]) fail(error_code::label_overlap, "label on non-leaf vertex " + std::to_string(v));
            auto key = std::make_pair(static_cast<int>(labels[v]->dir), static_cast<int>(labels[v]->kind));
            if (!classes[key].insert(labels[v]->index).second)
                fail(error_code::label_overlap, "duplicate label " + to_string(*labels[v]));
        } else if (every_leaf_labeled && g.leaf[v]) {
            fail(error_code::label_overlap, "leaf " + std::to_string(v) + " is neither incoming nor outgoing");
        }
    }
    for (const auto& [key, idx] : classes)
        if (*idx.begin() != 0 || *idx.rbegin() != static_cast<int>(idx.size()) - 1)
            fail(error_code::label_overlap, "label indices not contiguous");
}

std::vector<char> degenerate_corolla_centers(const fat_graph& g) {
    std::vector<char> center(g.vertex_count, 0);
    auto val = g.valences();
    for (int v = 0; v < g.vertex_count; ++v) {
        if (g.leaf[v] || val[v] < 1 || val[v] > 2) continue;
        bool ok = true;
        for (int h = 0; h < g.half_edge_count() && ok; ++h)
            if (g.source[h] == v) ok = g.leaf[g.source[g.involution[h]]];
        center[v] = ok;
    }
    return center;
}

void validate_oc(const oc_graph& o) {
    const auto& g = o.graph;
    validate(g);
    validate_labels(g, o.label, true);
    auto val = g.valences();
    auto center = degenerate_corolla_centers(g);
    for (int v = 0; v < g.vertex_count; ++v)
        if (!g.leaf[v] && val[v] < 3 && !center[v])
            fail(error_code::inner_vertex_too_small, "vertex " + std::to_string(v));
    for (const auto& cyc : boundary_cycles(g)) {
        int labeled = 0, closed = 0;
        for (int h : cyc.half_edges) {
            const auto& l = o.label[g.source[h]];
            if (!l) continue;
            ++labeled;
            closed += l->kind == boundary_kind::closed;
        }
        if (closed > 0 && labeled > 1) fail(error_code::closed_leaf_shares_cycle);
    }
}

topological_type topological_type_of(const oc_graph& g) { return type_of_labeled(g.graph, g.label); }

std::vector<admissible_cycle> admissible_cycles(const oc_graph& o) {
    const auto& g = o.graph;
    std::vector<admissible_cycle> out;
    for (int v = 0; v < g.vertex_count; ++v) {
        const auto& l = o.label[v];
        if (!l || l->dir != direction::out || l->kind != boundary_kind::closed) continue;
        admissible_cycle c;
        c.index = l->index;
        c.leaf = v;
        int lam = -1;
        for (int h = 0; h < g.half_edge_count(); ++h)
            if (g.source[h] == v) lam = h;
        c.leaf_half_edge = g.involution[lam];
        c.base_vertex = g.source[c.leaf_half_edge];
        for (int h = g.omega(lam); h != lam; h = g.omega(h))
            if (!is_leaf_edge(g, h)) c.circle.push_back(h);
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    return out;
}

bool is_admissible(const oc_graph& o) {
    const auto& g = o.graph;
    auto center = degenerate_corolla_centers(g);
    std::set<int> used_vertices, used_edges;
    for (const auto& c : admissible_cycles(o)) {
        if (c.circle.empty() && !center[c.base_vertex]) return false;
        std::set<int> verts, edges;
        for (int h : c.circle) {
            if (!edges.insert(edge_id(g, h)).second) return false;
            if (!verts.insert(g.source[h]).second) return false;
        }
        if (c.circle.empty()) verts.insert(c.base_vertex);
        for (int v : verts)
            if (!used_vertices.insert(v).second) return false;
        for (int e : edges)
            if (!used_edges.insert(e).second) return false;
    }
    return true;
}

namespace {

// for each admissible-cycle vertex: its half edges that are neither on the circle nor the admissible leaf
struct cycle_vertex {
    int vertex;
    int out_half_edge;  // circle half edge leaving the vertex in omega order
    bool carries_leaf;
    std::vector<int> extras;
};

std::vector<cycle_vertex> cycle_vertices(const oc_graph& o, const admissible_cycle& c) {
    const auto& g = o.graph;
    std::vector<cycle_vertex> out;
    int n = static_cast<int>(c.circle.size());
    for (int k = 0; k < n; ++k) {
        int h = c.circle[k];
        int prev_in = g.involution[c.circle[(k + n - 1) % n]];
        cycle_vertex cv{g.source[h], h, g.source[h] == c.base_vertex, {}};
        for (int x = g.sigma[h]; x != prev_in; x = g.sigma[x]) cv.extras.push_back(x);
        out.push_back(std::move(cv));
    }
    return out;
}

}  // namespace

bool is_essentially_trivalent(const oc_graph& o) {
    for (const auto& c : admissible_cycles(o))
        for (const auto& cv : cycle_vertices(o, c))
            if (cv.extras.size() > 1) return false;
    return true;
}

mixed_degree_report mixed_degree(const oc_graph& o) {
    if (!is_admissible(o)) fail(error_code::not_admissible);
    const auto& g = o.graph;
    auto val = g.valences();
    auto center = degenerate_corolla_centers(g);
    std::set<int> on_cycle, at_leaf;
    int circle_edges = 0, k = 0;
    for (const auto& c : admissible_cycles(o)) {
        ++k;
        circle_edges += static_cast<int>(c.circle.size());
        for (int h : c.circle) on_cycle.insert(g.source[h]);
        at_leaf.insert(c.base_vertex);
    }
    int deg = circle_edges - k;
    for (int v = 0; v < g.vertex_count; ++v) {
        if (g.leaf[v] || center[v]) continue;
        if (at_leaf.count(v))
            deg += std::max(0, val[v] - 4);
        else
            deg += val[v] - 3;
    }
    mixed_degree_report r;
    r.mixed_degree = deg;
    r.essentially_trivalent = is_essentially_trivalent(o);
    r.bw_degree = bw_degree(o);
    return r;
}

oc_graph make_essentially_trivalent(const oc_graph& o) {
    if (!is_admissible(o)) fail(error_code::not_admissible);
    graph_editor ed(o.graph);
    for (const auto& c : admissible_cycles(o)) {
        for (const auto& cv : cycle_vertices(o, c)) {
            if (cv.extras.size() <= 1) continue;
            for (int x : cv.extras) ed.detach(x);
            int nv = ed.add_half_edge(cv.vertex, cv.out_half_edge);
            int hub = ed.add_vertex(false);
            auto order = cv.extras;
            int nh = ed.add_half_edge(hub);
            order.push_back(nh);
            ed.set_rotation(hub, order);
            ed.pair(nv, nh);
        }
    }
    auto r = ed.finish();
    oc_graph out{r.graph, label_map(r.graph.vertex_count)};
    for (int v = 0; v < o.graph.vertex_count; ++v)
        if (r.vertex_map[v] >= 0) out.label[r.vertex_map[v]] = o.label[v];
    return out;
}

}  // namespace ocfat

#include "ocfat/metric.hpp"

#include <algorithm>
#include <set>

#include "ocfat/editor.hpp"
#include "ocfat/error.hpp"

namespace ocfat {

namespace {

bool leaf_edge(const fat_graph& g, int h) { return g.leaf[g.source[h]] || g.leaf[g.source[g.involution[h]]]; }

int leaf_half_edge(const fat_graph& g, int v) {
    for (int h = 0; h < g.half_edge_count(); ++h)
        if (g.source[h] == v) return h;
    throw std::logic_error("leaf without half edge");
}

int leaf_with(const oc_graph& o, direction dir, boundary_kind kind, int index) {
    for (int v = 0; v < o.graph.vertex_count; ++v) {
        const auto& l = o.label[v];
        if (l && l->dir == dir && l->kind == kind && l->index == index) return v;
    }
    fail(error_code::count_mismatch, "missing leaf " + to_string(leaf_label{dir, kind, index}));
}

int count_labels(const oc_graph& o, direction dir, boundary_kind kind) {
    int n = 0;
    for (const auto& l : o.label)
        if (l && l->dir == dir && l->kind == kind) ++n;
    return n;
}

// graph_editor with a length per half edge (both halves of an edge agree)
struct metric_editor {
    graph_editor ed;
    std::vector<mpq_class> len;
    label_map label;

    explicit metric_editor(const metric_graph& m) : ed(m.graph.graph), label(m.graph.label) {
        const auto& g = m.graph.graph;
        len.resize(g.half_edge_count());
        for (int h = 0; h < g.half_edge_count(); ++h) len[h] = m.length(h);
    }
    int add_vertex() {
        label.push_back(std::nullopt);
        return ed.add_vertex(false);
    }
    int add_half_edge(int v, int after) {
        int h = ed.add_half_edge(v, after);
        len.push_back(0);
        return h;
    }
    void join(int a, int b, const mpq_class& l) {
        ed.pair(a, b);
        len[a] = l;
        len[b] = l;
    }
    // remove a bivalent vertex, fusing its edges
    void fuse(int v, bool sum) {
        auto r = ed.rotation(v);
        int a = ed.partner(r[0]), b = ed.partner(r[1]);
        if (a == r[1]) throw std::logic_error("fuse: isolated loop");
        bool leafy = ed.is_leaf(ed.source(a)) || ed.is_leaf(ed.source(b));
        mpq_class l = (leafy || !sum) ? mpq_class(1) : len[r[0]] + len[r[1]];
        ed.remove_vertex(v);
        join(a, b, l);
    }
    metric_graph finish() const {
        auto r = ed.finish();
        metric_graph m;
        m.graph.graph = r.graph;
        m.graph.label.assign(r.graph.vertex_count, std::nullopt);
        for (std::size_t v = 0; v < r.vertex_map.size(); ++v)
            if (r.vertex_map[v] >= 0) m.graph.label[r.vertex_map[v]] = label[v];
        for (std::size_t h = 0; h < r.half_edge_map.size(); ++h) {
            int k = r.half_edge_map[h];
            if (k >= 0) m.lengths[edge_id(r.graph, k)] = len[h];
        }
        return m;
    }
};

void check_lengths_present(const metric_graph& m) {
    const auto& g = m.graph.graph;
    for (int h = 0; h < g.half_edge_count(); ++h) {
        auto it = m.lengths.find(edge_id(g, h));
        if (it == m.lengths.end()) fail(error_code::length_out_of_range, "edge " + std::to_string(edge_id(g, h)) + " has no length");
        if (it->second < 0) fail(error_code::length_out_of_range, "edge " + std::to_string(it->first) + " is negative");
    }
    for (const auto& [e, l] : m.lengths)
        if (e < 0 || e >= g.half_edge_count() || edge_id(g, e) != e)
            fail(error_code::length_out_of_range, "length for unknown edge " + std::to_string(e));
}

std::vector<int> zero_edges(const metric_graph& m) {
    std::vector<int> out;
    for (const auto& [e, l] : m.lengths)
        if (l == 0) out.push_back(e);
    return out;
}

}  // namespace

const mpq_class& metric_graph::length(int h) const {
    auto it = lengths.find(edge_id(graph.graph, h));
    if (it == lengths.end()) fail(error_code::length_out_of_range, "edge " + std::to_string(edge_id(graph.graph, h)) + " has no length");
    return it->second;
}

void validate_metric(const metric_graph& m) {
    validate_oc(m.graph);
    if (!is_admissible(m.graph)) fail(error_code::not_admissible);
    check_lengths_present(m);
    const auto& g = m.graph.graph;
    for (int h = 0; h < g.half_edge_count(); ++h)
        if (leaf_edge(g, h) && m.length(h) != 1)
            fail(error_code::leaf_not_unit, "edge " + std::to_string(edge_id(g, h)) + " has length " + m.length(h).get_str());
    auto zeros = zero_edges(m);
    if (!zeros.empty()) {
        fat_graph collapsed;
        try {
            collapsed = collapse_forest(g, zeros);
        } catch (const graph_error& e) {
            fail(error_code::zero_set_not_forest, e.what());
        }
        auto n = normalize(m);
        if (!is_admissible(n.graph)) fail(error_code::zero_set_not_forest, "collapse is not admissible");
    }
    for (const auto& c : admissible_cycles(m.graph)) {
        mpq_class total = 0;
        for (int h : c.circle) {
            const auto& l = m.length(h);
            if (l > 1) fail(error_code::length_out_of_range, "circle edge " + std::to_string(edge_id(g, h)));
            total += l;
        }
        if (total != 1)
            fail(error_code::cycle_length_not_one, "cycle " + std::to_string(c.index) + " has length " + total.get_str());
    }
}

metric_graph normalize(const metric_graph& m) {
    metric_editor e(m);
    for (int z : zero_edges(m)) {
        if (!e.ed.half_edge_alive(z)) continue;
        int h = z;
        // keep the leaf side alive if there is one
        if (e.ed.is_leaf(e.ed.source(e.ed.partner(h)))) h = e.ed.partner(h);
        if (e.ed.source(h) == e.ed.source(e.ed.partner(h))) fail(error_code::zero_set_not_forest, "zero loop");
        contract_edge(e.ed, h);
    }
    return e.finish();
}

mpq_class incoming_cycle_length(const metric_graph& m, int v) {
    const auto& g = m.graph.graph;
    const auto& l = m.graph.label.at(v);
    if (!l || l->dir != direction::in || l->kind != boundary_kind::closed)
        fail(error_code::leaf_not_closed_incoming, "vertex " + std::to_string(v));
    int tip = leaf_half_edge(g, v);
    mpq_class total = 0;
    int inner = 0;
    for (int h = g.omega(tip); h != tip; h = g.omega(h)) {
        if (leaf_edge(g, h)) continue;
        total += m.length(h);
        ++inner;
    }
    if (inner == 0) fail(error_code::leaf_not_closed_incoming, "vertex " + std::to_string(v) + " caps a disk");
    return total;
}

namespace {


metric_graph disjoint(const metric_graph& a, const metric_graph& b, int& v_off, int& h_off) {
    metric_graph u;
    const auto& ga = a.graph.graph;
    const auto& gb = b.graph.graph;
    v_off = ga.vertex_count;
    h_off = ga.half_edge_count();
    fat_graph& g = u.graph.graph;
    g.vertex_count = ga.vertex_count + gb.vertex_count;
    g.involution = ga.involution;
    g.sigma = ga.sigma;
    g.source = ga.source;
    g.leaf = ga.leaf;
    for (int h = 0; h < gb.half_edge_count(); ++h) {
        g.involution.push_back(h_off + gb.involution[h]);
        g.sigma.push_back(h_off + gb.sigma[h]);
        g.source.push_back(v_off + gb.source[h]);
    }
    g.leaf.insert(g.leaf.end(), gb.leaf.begin(), gb.leaf.end());
    u.graph.label = a.graph.label;
    u.graph.label.insert(u.graph.label.end(), b.graph.label.begin(), b.graph.label.end());
    u.lengths = a.lengths;
    for (const auto& [e, l] : b.lengths) u.lengths[h_off + e] = l;
    return u;
}

}  // namespace

namespace {

struct cut {
    mpq_class coord;  // from the source of the edge's smaller half edge
    bool forward;     // the pass runs from that source
    std::vector<int> spokes;
};

void glue_closed_phase(const metric_graph& m2, const metric_graph& m1, metric_editor& e, int v_off, int h_off,
                       std::vector<int>& maybe_bivalent) {
    auto& ed = e.ed;
    const auto& g1 = m1.graph.graph;
    const auto& g2 = m2.graph.graph;
    auto centers2 = degenerate_corolla_centers(g2);
    std::map<int, std::vector<cut>> cuts;
    std::vector<int> dead_vertices, dead_half_edges;

    for (const auto& c : admissible_cycles(m1.graph)) {
        int i = c.index;
        if (c.circle.empty()) fail(error_code::degenerate_cap, "outgoing closed leaf " + std::to_string(i) + " has no circle");
        int x = leaf_with(m2.graph, direction::in, boundary_kind::closed, i);
        int hx = g2.involution[leaf_half_edge(g2, x)];
        int base = g2.source[hx];
        if (centers2[base]) fail(error_code::degenerate_cap, "incoming closed leaf " + std::to_string(i) + " caps a disk");
        mpq_class total = incoming_cycle_length(m2, x);

        // m1's circle vertices c_k at arc length t_k, rescaled to total length B
        int n = static_cast<int>(c.circle.size());
        std::vector<mpq_class> t(n);
        std::vector<std::vector<int>> spokes(n);
        mpq_class acc = 0;
        for (int k = 0; k < n; ++k) {
            int h = c.circle[k];
            t[k] = acc;
            acc += m1.length(h) * total;
            int prev_in = g1.involution[c.circle[(k + n - 1) % n]];
            for (int y = g1.sigma[h]; y != prev_in; y = g1.sigma[y]) spokes[k].push_back(h_off + y);
            dead_vertices.push_back(v_off + g1.source[h]);
            dead_half_edges.push_back(h_off + h);
        }
        if (acc != total) fail(error_code::cycle_length_not_one, "cycle " + std::to_string(i));
        dead_half_edges.push_back(h_off + c.leaf_half_edge);
        dead_vertices.push_back(v_off + c.leaf);

        // m2's traversal d_0 .. d_{r-1} from sigma(hx), the leaf edge excluded
        std::vector<int> d;
        std::vector<mpq_class> u_pos;
        mpq_class pos = 0;
        for (int h = g2.sigma[hx]; h != hx; h = g2.omega(h)) {
            d.push_back(h);
            u_pos.push_back(pos);
            pos += m2.length(h);
        }

        for (int k = 0; k < n; ++k)
            for (int sp : spokes[k]) ed.detach(sp);

        // c_0 meets the base point: its spokes replace hx
        int after = ed.sigma_inv(hx);
        ed.remove_half_edge(hx);
        ed.remove_vertex(x);
        for (int sp : spokes[0]) {
            ed.attach(sp, base, after);
            after = sp;
        }
        maybe_bivalent.push_back(base);

        // c_k for k >= 1 lands at B - t_k
        for (int k = 1; k < n; ++k) {
            mpq_class u = total - t[k];
            int j = static_cast<int>(std::upper_bound(u_pos.begin(), u_pos.end(), u) - u_pos.begin()) - 1;
            int h = d[j];
            if (u_pos[j] == u) {
                for (int sp : spokes[k]) ed.attach(sp, ed.source(h), ed.sigma_inv(h));
                continue;
            }
            int eid = std::min(h, g2.involution[h]);
            bool forward = h == eid;
            mpq_class off = u - u_pos[j];
            cuts[eid].push_back({forward ? off : m2.length(h) - off, forward, spokes[k]});
        }
    }

    for (auto& [eid, list] : cuts) {
        std::stable_sort(list.begin(), list.end(), [](const cut& a, const cut& b) { return a.coord < b.coord; });
        int far = ed.partner(eid);
        mpq_class full = e.len[eid];
        int near = eid;
        mpq_class prev = 0;
        for (std::size_t q = 0; q < list.size();) {
            mpq_class coord = list[q].coord;
            int z = e.add_vertex();
            int p = e.add_half_edge(z, -1);
            int qh = e.add_half_edge(z, p);
            e.join(near, p, coord - prev);
            std::vector<int> fwd, bwd;
            for (; q < list.size() && list[q].coord == coord; ++q) {
                auto& dst = list[q].forward ? fwd : bwd;
                dst.insert(dst.end(), list[q].spokes.begin(), list[q].spokes.end());
            }
            int a = p;
            for (int sp : fwd) {
                ed.attach(sp, z, a);
                a = sp;
            }
            a = qh;
            for (int sp : bwd) {
                ed.attach(sp, z, a);
                a = sp;
            }
            near = qh;
            prev = coord;
        }
        e.join(near, far, full - prev);
    }
    for (int h : dead_half_edges) {
        int o = ed.partner(h);
        ed.remove_half_edge(h);
        if (o >= 0) ed.remove_half_edge(o);
    }
    for (int v : dead_vertices)
        if (ed.vertex_alive(v)) ed.remove_vertex(v);
}

void glue_open_phase(const metric_graph& m2, const metric_graph& m1, metric_editor& e, int v_off, int h_off) {
    auto& ed = e.ed;
    auto c2 = degenerate_corolla_centers(m2.graph.graph);
    auto c1 = degenerate_corolla_centers(m1.graph.graph);
    int n = count_labels(m1.graph, direction::out, boundary_kind::open);
    std::vector<int> centers;
    auto note = [&](int v) {
        bool is_center = v < v_off ? c2[v] : c1[v - v_off];
        if (is_center && std::find(centers.begin(), centers.end(), v) == centers.end()) centers.push_back(v);
    };
    for (int j = 0; j < n; ++j) {
        int y1 = leaf_with(m1.graph, direction::out, boundary_kind::open, j);
        int y2 = leaf_with(m2.graph, direction::in, boundary_kind::open, j);
        int a1 = ed.partner(h_off + leaf_half_edge(m1.graph.graph, y1));
        int a2 = ed.partner(leaf_half_edge(m2.graph.graph, y2));
        ed.remove_vertex(v_off + y1);
        ed.remove_vertex(y2);
        e.join(a1, a2, 1);
        note(ed.source(a1));
        note(ed.source(a2));
    }
    auto univalent = [&](int v) { return ed.valence(v) == 1; };
    for (int v : centers) {
        if (!ed.vertex_alive(v) || ed.valence(v) != 2) continue;
        auto r = ed.rotation(v);
        if (univalent(ed.source(ed.partner(r[0]))) && univalent(ed.source(ed.partner(r[1])))) continue;
        e.fuse(v, false);
    }
    std::vector<int> caps;
    for (int v : centers)
        if (ed.vertex_alive(v) && ed.valence(v) == 1) caps.push_back(v);
    for (int v : caps) {
        int b = ed.partner(ed.rotation(v)[0]);
        int w = ed.source(b);
        ed.remove_vertex(v);
        ed.remove_half_edge(b);
        if (!ed.is_leaf(w) && ed.valence(w) == 2) e.fuse(w, true);
    }
}

metric_graph glue(const metric_graph& m2, const metric_graph& m1, bool open) {
    int q1 = count_labels(m1.graph, direction::out, boundary_kind::closed);
    int p2 = count_labels(m2.graph, direction::in, boundary_kind::closed);
    if (q1 != p2)
        fail(error_code::count_mismatch, std::to_string(q1) + " outgoing closed against " + std::to_string(p2) + " incoming closed");
    int v_off = 0, h_off = 0;
    metric_editor e(disjoint(m2, m1, v_off, h_off));
    std::vector<int> maybe_bivalent;
    glue_closed_phase(m2, m1, e, v_off, h_off, maybe_bivalent);
    for (int v : maybe_bivalent)
        if (e.ed.vertex_alive(v) && e.ed.valence(v) == 2) e.fuse(v, true);
    if (open) glue_open_phase(m2, m1, e, v_off, h_off);
    return e.finish();
}

}  // namespace

metric_graph glue_closed(const metric_graph& m2, const metric_graph& m1) { return glue(m2, m1, false); }

metric_graph compose(const metric_graph& m2, const metric_graph& m1) {
    int o1 = count_labels(m1.graph, direction::out, boundary_kind::open);
    int i2 = count_labels(m2.graph, direction::in, boundary_kind::open);
    if (o1 != i2)
        fail(error_code::count_mismatch, std::to_string(o1) + " outgoing open against " + std::to_string(i2) + " incoming open");
    auto want = compose_types(topological_type_of(m2.graph), topological_type_of(m1.graph));
    if (!satisfies_positivity(want)) fail(error_code::unsupported_type, "composite " + to_string(want));
    return glue(m2, m1, true);
}

metric_graph random_metric(const oc_graph& o, std::mt19937_64& rng) {
    metric_graph m;
    m.graph = o;
    const auto& g = o.graph;
    std::uniform_int_distribution<int> pick(1, 12);
    for (int h = 0; h < g.half_edge_count(); ++h) {
        int e = edge_id(g, h);
        if (m.lengths.count(e)) continue;
        if (leaf_edge(g, h)) {
            m.lengths[e] = 1;
        } else {
            mpq_class l(pick(rng), 12);
            l.canonicalize();
            m.lengths[e] = l;
        }
    }
    for (const auto& c : admissible_cycles(o)) {
        std::vector<int> w;
        int sum = 0;
        for (std::size_t k = 0; k < c.circle.size(); ++k) {
            w.push_back(pick(rng));
            sum += w.back();
        }
        for (std::size_t k = 0; k < c.circle.size(); ++k) {
            mpq_class l(w[k], sum);
            l.canonicalize();
            m.lengths[edge_id(g, c.circle[k])] = l;
        }
    }
    return m;
}

}  // namespace ocfat

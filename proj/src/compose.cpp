#include "ocfat/compose.hpp"

#include <algorithm>
#include <set>

#include "ocfat/error.hpp"

namespace ocfat {

namespace {

int leaf_with(const bw_graph& g, direction dir, boundary_kind kind, int index) {
    for (int v = 0; v < g.graph.vertex_count; ++v) {
        const auto& l = g.label[v];
        if (l && l->dir == dir && l->kind == kind && l->index == index) return v;
    }
    fail(error_code::count_mismatch, "missing leaf " + to_string(leaf_label{dir, kind, index}));
}

int leaf_half_edge(const fat_graph& g, int v) {
    for (int h = 0; h < g.half_edge_count(); ++h)
        if (g.source[h] == v) return h;
    throw std::logic_error("leaf without half edge");
}

int count_labels(const bw_graph& g, direction dir, boundary_kind kind) {
    int n = 0;
    for (const auto& l : g.label)
        if (l && l->dir == dir && l->kind == kind) ++n;
    return n;
}

// corners of the boundary cycle through the leaf tip l, as the half edge following each corner
std::vector<int> corners(const fat_graph& g, int l) {
    std::vector<int> out;
    int hx = g.involution[l];
    for (int h = g.sigma[hx];; h = g.sigma[g.involution[h]]) {
        if (!g.leaf[g.source[h]]) out.push_back(h);
        if (h == hx) break;
    }
    return out;
}

struct closed_site {
    int white = -1;     // combined id
    int start = -1;
    int leaf_vertex = -1;
    int leaf_half_edge = -1;
    std::vector<int> spokes;
    std::vector<int> corners;
};

struct composite {
    bw_graph graph;  // disjoint union, g2 first; orientation unused
    int v2 = 0, h2 = 0;
    std::vector<char> from_g1_vertex;
    std::vector<closed_site> sites;
    std::vector<char> center;  // degenerate corolla centers of either factor
    std::vector<generator> word2, word1;
    int sign = 1;
};

composite combine(const bw_graph& g2, const bw_graph& g1) {
    composite c;
    const auto& a = g2.graph;
    const auto& b = g1.graph;
    c.v2 = a.vertex_count;
    c.h2 = a.half_edge_count();
    int nv = a.vertex_count + b.vertex_count;
    int nh = a.half_edge_count() + b.half_edge_count();
    fat_graph& g = c.graph.graph;
    g.vertex_count = nv;
    g.involution.resize(nh);
    g.sigma.resize(nh);
    g.source.resize(nh);
    g.leaf.resize(nv);
    for (int h = 0; h < a.half_edge_count(); ++h) {
        g.involution[h] = a.involution[h];
        g.sigma[h] = a.sigma[h];
        g.source[h] = a.source[h];
    }
    for (int h = 0; h < b.half_edge_count(); ++h) {
        g.involution[c.h2 + h] = c.h2 + b.involution[h];
        g.sigma[c.h2 + h] = c.h2 + b.sigma[h];
        g.source[c.h2 + h] = c.v2 + b.source[h];
    }
    c.graph.white_index.assign(nv, -1);
    c.graph.start.assign(nv, -1);
    c.graph.label.assign(nv, std::nullopt);
    c.from_g1_vertex.assign(nv, 0);
    auto ca = degenerate_corolla_centers(a);
    auto cb = degenerate_corolla_centers(b);
    c.center.assign(nv, 0);
    for (int v = 0; v < a.vertex_count; ++v) {
        g.leaf[v] = a.leaf[v];
        c.graph.white_index[v] = g2.white_index[v];
        c.graph.start[v] = g2.start[v];
        c.graph.label[v] = g2.label[v];
        c.center[v] = ca[v] && !g2.is_white(v);
    }
    for (int v = 0; v < b.vertex_count; ++v) {
        int u = c.v2 + v;
        g.leaf[u] = b.leaf[v];
        c.graph.label[u] = g1.label[v];
        c.from_g1_vertex[u] = 1;
        c.center[u] = cb[v] && !g1.is_white(v);
    }
    for (int v = 0; v < a.vertex_count; ++v) c.word2.push_back(vgen(v));
    for (int h = 0; h < a.half_edge_count(); ++h) c.word2.push_back(hgen(h));
    for (int v = 0; v < b.vertex_count; ++v) c.word1.push_back(vgen(c.v2 + v));
    for (int h = 0; h < b.half_edge_count(); ++h) c.word1.push_back(hgen(c.h2 + h));
    // a factor -1 per open gluing makes the strip a unit
    c.sign = g2.orientation * g1.orientation * (count_labels(g1, direction::out, boundary_kind::open) % 2 ? -1 : 1);

    for (int i = 0; i < g1.white_count(); ++i) {
        closed_site s;
        int w = -1;
        for (int v = 0; v < b.vertex_count; ++v)
            if (g1.white_index[v] == i) w = v;
        s.white = c.v2 + w;
        s.start = c.h2 + g1.start[w];
        for (int x = b.sigma[g1.start[w]]; x != g1.start[w]; x = b.sigma[x]) s.spokes.push_back(c.h2 + x);
        int lv = leaf_with(g2, direction::in, boundary_kind::closed, i);
        s.leaf_vertex = lv;
        s.leaf_half_edge = leaf_half_edge(a, lv);
        int base = a.source[a.involution[s.leaf_half_edge]];
        if (c.center[base]) fail(error_code::degenerate_cap, "incoming closed leaf " + std::to_string(i) + " caps a disk");
        s.corners = corners(a, s.leaf_half_edge);
        c.sites.push_back(std::move(s));
    }
    return c;
}

void check_counts(const bw_graph& g2, const bw_graph& g1) {
    int q1 = g1.white_count();
    int p2 = count_labels(g2, direction::in, boundary_kind::closed);
    if (q1 != p2)
        fail(error_code::count_mismatch,
             std::to_string(q1) + " outgoing closed against " + std::to_string(p2) + " incoming closed");
    int o1 = count_labels(g1, direction::out, boundary_kind::open);
    int i2 = count_labels(g2, direction::in, boundary_kind::open);
    if (o1 != i2)
        fail(error_code::count_mismatch,
             std::to_string(o1) + " outgoing open against " + std::to_string(i2) + " incoming open");
}

// nondecreasing maps from spokes to corner slots
void distributions(int spokes, int slots, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == spokes) {
        out.push_back(cur);
        return;
    }
    int lo = cur.empty() ? 0 : cur.back();
    for (int k = lo; k < slots; ++k) {
        cur.push_back(k);
        distributions(spokes, slots, cur, out);
        cur.pop_back();
    }
}

struct term_state {
    bw_editor e;
    wedge_word w2, w1;
    wedge_word& word_of(bool g1_side) { return g1_side ? w1 : w2; }
    term_state(const composite& c)
        : e(c.graph), w2(c.word2, c.sign), w1(c.word1, 1) {}
};

void glue_closed(const composite& c, term_state& t, const std::vector<std::vector<int>>& choice) {
    auto& ed = t.e.ed;
    for (std::size_t i = 0; i < c.sites.size(); ++i) {
        const auto& s = c.sites[i];
        int sp = ed.partner(s.start);
        int hx = ed.partner(s.leaf_half_edge);
        t.w2.extract({vgen(s.leaf_vertex), hgen(s.leaf_half_edge)});
        t.w1.extract({hgen(s.start), vgen(s.white)});
        for (int x : s.spokes) ed.detach(x);
        ed.remove_vertex(s.white);
        ed.remove_vertex(s.leaf_vertex);
        ed.pair(sp, hx);
        for (std::size_t k = 0; k < s.spokes.size(); ++k) {
            int h = s.corners[choice[i][k]];
            ed.attach(s.spokes[k], ed.source(h), ed.sigma_inv(h));
        }
    }
}

void glue_open(const composite& c, term_state& t, const bw_graph& g2, const bw_graph& g1) {
    auto& ed = t.e.ed;
    int n = count_labels(g1, direction::out, boundary_kind::open);
    std::vector<int> touched;
    for (int j = 0; j < n; ++j) {
        int y1 = c.v2 + leaf_with(g1, direction::out, boundary_kind::open, j);
        int y2 = leaf_with(g2, direction::in, boundary_kind::open, j);
        int l1 = c.h2 + leaf_half_edge(g1.graph, y1 - c.v2);
        int l2 = leaf_half_edge(g2.graph, y2);
        int a1 = ed.partner(l1), a2 = ed.partner(l2);
        t.w1.extract({vgen(y1), hgen(l1)});
        t.w2.extract({vgen(y2), hgen(l2)});
        ed.remove_vertex(y1);
        ed.remove_vertex(y2);
        ed.pair(a1, a2);
        touched.push_back(ed.source(a1));
        touched.push_back(ed.source(a2));
    }
    std::vector<int> centers;
    for (int v : touched)
        if (c.center[v] && std::find(centers.begin(), centers.end(), v) == centers.end()) centers.push_back(v);
    auto univalent = [&](int v) { return ed.valence(v) == 1; };
    for (int v : centers) {
        if (!ed.vertex_alive(v) || ed.valence(v) != 2) continue;
        auto r = ed.rotation(v);
        std::sort(r.begin(), r.end());
        int fp = ed.partner(r[0]), fq = ed.partner(r[1]);
        if (univalent(ed.source(fp)) && univalent(ed.source(fq))) continue;
        t.word_of(c.from_g1_vertex[v]).extract({vgen(v), hgen(r[0]), hgen(r[1])});
        ed.remove_vertex(v);
        ed.pair(fp, fq);
    }
    std::vector<int> caps;
    for (int v : centers)
        if (ed.vertex_alive(v) && ed.valence(v) == 1) caps.push_back(v);
    for (int v : caps) {
        int a = ed.rotation(v)[0];
        int b = ed.partner(a);
        int n2 = ed.source(b);
        if (!ed.is_leaf(n2) && ed.valence(n2) == 2 && t.e.white_index[n2] < 0) {
            // a cap closing one end of a strip leaves a one-leaf corolla
            t.word_of(c.from_g1_vertex[v]).extract({vgen(v), hgen(a)});
            t.word_of(c.from_g1_vertex[n2]).extract({hgen(b)});
            ed.remove_vertex(v);
            ed.remove_half_edge(b);
            continue;
        }
        ed.set_leaf(v, true);
    }
}

bw_graph finish_term(term_state& t) {
    wedge_word w = t.w2;
    w.append(t.w1);
    t.e.word = w;
    return t.e.finish();
}

std::vector<std::vector<std::vector<int>>> choices(const composite& c) {
    std::vector<std::vector<std::vector<int>>> out{{}};
    for (const auto& s : c.sites) {
        std::vector<std::vector<int>> ds;
        std::vector<int> cur;
        distributions(static_cast<int>(s.spokes.size()), static_cast<int>(s.corners.size()), cur, ds);
        std::vector<std::vector<std::vector<int>>> next;
        for (const auto& prefix : out)
            for (const auto& d : ds) {
                auto p = prefix;
                p.push_back(d);
                next.push_back(std::move(p));
            }
        out = std::move(next);
    }
    return out;
}

void check_result_type(const bw_graph& g2, const bw_graph& g1) {
    auto t = compose_types(topological_type_of(g2), topological_type_of(g1));
    if (!satisfies_positivity(t)) fail(error_code::unsupported_type, "composite " + to_string(t));
}

}  // namespace

int corner_count(const bw_graph& g, int leaf_vertex) {
    return static_cast<int>(corners(g.graph, leaf_half_edge(g.graph, leaf_vertex)).size());
}

std::vector<bw_graph> compose_closed(const bw_graph& g2, const bw_graph& g1) {
    check_counts(g2, g1);
    auto c = combine(g2, g1);
    std::vector<bw_graph> out;
    for (const auto& choice : choices(c)) {
        term_state t(c);
        glue_closed(c, t, choice);
        out.push_back(finish_term(t));
    }
    return out;
}

formal_sum compose(const bw_graph& g2, const bw_graph& g1) {
    check_counts(g2, g1);
    check_result_type(g2, g1);
    auto c = combine(g2, g1);
    formal_sum sum;
    for (const auto& choice : choices(c)) {
        term_state t(c);
        glue_closed(c, t, choice);
        glue_open(c, t, g2, g1);
        auto u = underlying(finish_term(t));
        if (u) sum.add(*u);
    }
    return sum;
}

formal_sum compose_chains(const formal_sum& s2, const formal_sum& s1) {
    formal_sum out;
    for (const auto& [k2, t2] : s2.terms())
        for (const auto& [k1, t1] : s1.terms()) out.add(compose(t2.graph, t1.graph), t2.coefficient * t1.coefficient);
    return out;
}

}  // namespace ocfat

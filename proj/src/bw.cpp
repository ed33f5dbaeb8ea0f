#include "ocfat/bw.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ocfat {

int bw_graph::white_count() const {
    int n = 0;
    for (int w : white_index) n += w >= 0;
    return n;
}

std::vector<int> bw_graph::white_order() const {
    std::vector<int> out(white_count(), -1);
    for (int v = 0; v < graph.vertex_count; ++v)
        if (white_index[v] >= 0 && white_index[v] < static_cast<int>(out.size())) out[white_index[v]] = v;
    return out;
}

bw_graph make_bw_graph(const fat_graph& g, const std::vector<int>& white_order, const std::vector<int>& starts,
                       const std::vector<int>& in_leaves, const std::vector<int>& out_leaves,
                       const std::vector<int>& closed_leaves, int orientation) {
    if (white_order.size() != starts.size()) fail(error_code::bad_start, "one start per white vertex");
    bw_graph b;
    b.graph = g;
    b.white_index.assign(g.vertex_count, -1);
    b.start.assign(g.vertex_count, -1);
    for (std::size_t k = 0; k < white_order.size(); ++k) {
        int w = white_order[k];
        if (w < 0 || w >= g.vertex_count || b.white_index[w] >= 0)
            fail(error_code::bad_white_order, "white vertex " + std::to_string(w));
        b.white_index[w] = static_cast<int>(k);
        b.start[w] = starts[k];
    }
    auto labels = make_oc_graph(g, in_leaves, out_leaves, closed_leaves).label;
    b.label = labels;
    b.orientation = orientation;
    return b;
}

void validate_bw(const bw_graph& b, bool generalized) {
    const auto& g = b.graph;
    validate(g);
    if (static_cast<int>(b.white_index.size()) != g.vertex_count ||
        static_cast<int>(b.start.size()) != g.vertex_count)
        fail(error_code::bad_white_order, "decoration tables do not match vertex count");
    validate_labels(g, b.label, false);
    if (b.orientation != 1 && b.orientation != -1) fail(error_code::parse_error, "orientation sign");
    std::set<int> indices;
    for (int v = 0; v < g.vertex_count; ++v) {
        if (b.white_index[v] < 0) {
            if (b.start[v] != -1) fail(error_code::bad_start, "black vertex " + std::to_string(v) + " has a start");
            continue;
        }
        if (!indices.insert(b.white_index[v]).second) fail(error_code::bad_white_order, "repeated white index");
        if (g.leaf[v] || b.label[v]) fail(error_code::white_vertex_labeled, "vertex " + std::to_string(v));
    }
    if (!indices.empty() && (*indices.begin() != 0 || *indices.rbegin() != static_cast<int>(indices.size()) - 1))
        fail(error_code::bad_white_order, "white indices not contiguous");
    auto val = g.valences();
    auto center = degenerate_corolla_centers(g);
    for (int v = 0; v < g.vertex_count; ++v) {
        if (b.is_white(v)) {
            if (val[v] < 1) fail(error_code::white_vertex_empty, "vertex " + std::to_string(v));
            int s = b.start[v];
            if (s < 0 || s >= g.half_edge_count() || g.source[s] != v)
                fail(error_code::bad_start, "vertex " + std::to_string(v));
        } else if (!g.leaf[v] && val[v] < 3 && !center[v]) {
            fail(error_code::black_vertex_too_small, "vertex " + std::to_string(v));
        }
        if (b.label[v] && b.label[v]->dir == direction::out && b.label[v]->kind == boundary_kind::closed)
            fail(error_code::outgoing_closed_leaf, "vertex " + std::to_string(v));
    }
    for (const auto& cyc : boundary_cycles(g)) {
        int labeled = 0, closed = 0;
        for (int h : cyc.half_edges) {
            const auto& l = b.label[g.source[h]];
            if (!l) continue;
            ++labeled;
            closed += l->kind == boundary_kind::closed;
        }
        if (closed > 0 && labeled > 1) fail(error_code::closed_leaf_shares_cycle);
    }
    if (!generalized && !bad_leaves(b).empty())
        fail(error_code::unlabeled_leaf_not_at_start, "vertex " + std::to_string(bad_leaves(b).front()));
}

int degree(const bw_graph& b) {
    const auto& g = b.graph;
    auto val = g.valences();
    auto center = degenerate_corolla_centers(g);
    int d = 0;
    for (int v = 0; v < g.vertex_count; ++v) {
        if (b.is_white(v))
            d += val[v] - 1;
        else if (!g.leaf[v] && !center[v])
            d += val[v] - 3;
    }
    return d;
}

topological_type topological_type_of(const bw_graph& b) { return type_of_labeled(b.graph, b.label, b.white_index); }

std::vector<int> bad_leaves(const bw_graph& b) {
    const auto& g = b.graph;
    std::vector<int> out;
    for (int h = 0; h < g.half_edge_count(); ++h) {
        int v = g.source[h];
        if (!b.is_unlabeled_leaf(v)) continue;
        int base = g.involution[h];
        int w = g.source[base];
        if (!(b.is_white(w) && b.start[w] == base)) out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------

wedge_word::wedge_word(int vertex_count, int half_edge_count, int sign) : sign_(sign) {
    for (int v = 0; v < vertex_count; ++v) gens_.push_back(vgen(v));
    for (int h = 0; h < half_edge_count; ++h) gens_.push_back(hgen(h));
}

void wedge_word::extract(const std::vector<generator>& block) {
    std::vector<int> arrangement;
    std::vector<char> taken(gens_.size(), 0);
    for (const auto& x : block) {
        auto it = std::find(gens_.begin(), gens_.end(), x);
        if (it == gens_.end()) throw std::logic_error("wedge_word: generator not present");
        int pos = static_cast<int>(it - gens_.begin());
        arrangement.push_back(pos);
        taken[pos] = 1;
    }
    std::vector<generator> rest;
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        if (taken[k]) continue;
        arrangement.push_back(static_cast<int>(k));
        rest.push_back(gens_[k]);
    }
    sign_ *= permutation_sign(arrangement);
    gens_ = std::move(rest);
}

void wedge_word::prepend(const std::vector<generator>& block) {
    gens_.insert(gens_.begin(), block.begin(), block.end());
}

void wedge_word::append(const wedge_word& other) {
    gens_.insert(gens_.end(), other.gens_.begin(), other.gens_.end());
    sign_ *= other.sign_;
}

int wedge_word::resolve(const graph_editor::result& r) const {
    int nv = r.graph.vertex_count;
    int total = nv + r.graph.half_edge_count();
    if (static_cast<int>(gens_.size()) != total) throw std::logic_error("wedge_word: generator count mismatch");
    perm arrangement;
    arrangement.reserve(total);
    std::vector<char> seen(total, 0);
    for (const auto& x : gens_) {
        int id = x.half_edge ? r.half_edge_map.at(x.id) : r.vertex_map.at(x.id);
        if (id < 0) throw std::logic_error("wedge_word: dead generator in word");
        if (x.half_edge) id += nv;
        if (seen[id]) throw std::logic_error("wedge_word: repeated generator");
        seen[id] = 1;
        arrangement.push_back(id);
    }
    return sign_ * permutation_sign(arrangement);
}

bw_editor::bw_editor(const bw_graph& g)
    : ed(g.graph),
      white_index(g.white_index),
      start(g.start),
      label(g.label),
      word(g.graph.vertex_count, g.graph.half_edge_count(), g.orientation) {}

int bw_editor::add_vertex(bool is_leaf) {
    int v = ed.add_vertex(is_leaf);
    white_index.push_back(-1);
    start.push_back(-1);
    label.push_back(std::nullopt);
    return v;
}

bw_graph bw_editor::finish() const {
    auto r = ed.finish();
    bw_graph b;
    b.graph = r.graph;
    int nv = r.graph.vertex_count;
    b.white_index.assign(nv, -1);
    b.start.assign(nv, -1);
    b.label.assign(nv, std::nullopt);
    for (int v = 0; v < static_cast<int>(r.vertex_map.size()); ++v) {
        int nvid = r.vertex_map[v];
        if (nvid < 0) continue;
        b.white_index[nvid] = white_index[v];
        b.label[nvid] = label[v];
        if (start[v] >= 0) {
            b.start[nvid] = r.half_edge_map.at(start[v]);
            if (b.start[nvid] < 0) throw std::logic_error("bw_editor: start half edge deleted");
        }
    }
    b.orientation = word.resolve(r);
    return b;
}

// ---------------------------------------------------------------------------

std::vector<std::int64_t> bw_vertex_colors(const bw_graph& b) {
    std::vector<std::int64_t> c(b.graph.vertex_count);
    for (int v = 0; v < b.graph.vertex_count; ++v) {
        if (b.is_white(v))
            c[v] = 1000000 + b.white_index[v];
        else if (b.label[v])
            c[v] = 1000 + 400 * static_cast<int>(b.label[v]->dir) + 200 * static_cast<int>(b.label[v]->kind) +
                   b.label[v]->index;
        else
            c[v] = b.graph.leaf[v] ? 2 : 1;
    }
    return c;
}

std::vector<std::int64_t> bw_half_edge_colors(const bw_graph& b) {
    std::vector<std::int64_t> c(b.graph.half_edge_count(), 0);
    for (int v = 0; v < b.graph.vertex_count; ++v)
        if (b.start[v] >= 0) c[b.start[v]] = 1;
    return c;
}

canonical_generator canonicalize(const bw_graph& b) {
    auto vc = bw_vertex_colors(b);
    auto hc = bw_half_edge_colors(b);
    auto cf = canonical_form(b.graph, vc, hc);
    canonical_generator out;
    out.key = cf.key;
    out.graph.graph = relabel(b.graph, cf.vertex_map, cf.half_edge_map);
    int nv = b.graph.vertex_count;
    out.graph.white_index.assign(nv, -1);
    out.graph.start.assign(nv, -1);
    out.graph.label.assign(nv, std::nullopt);
    for (int v = 0; v < nv; ++v) {
        int w = cf.vertex_map[v];
        out.graph.white_index[w] = b.white_index[v];
        out.graph.label[w] = b.label[v];
        if (b.start[v] >= 0) out.graph.start[w] = cf.half_edge_map[b.start[v]];
    }
    out.graph.orientation = 1;
    out.sign = b.orientation * permutation_sign(cf.vertex_map) * permutation_sign(cf.half_edge_map);
    if (!cf.rigid) {
        for (const auto& a : automorphisms(b.graph, vc, hc)) {
            if (permutation_sign(a.vertices) * permutation_sign(a.half_edges) < 0) {
                out.zero = true;
                break;
            }
        }
    }
    return out;
}

std::string canonical_key(const bw_graph& b) {
    return canonical_form(b.graph, bw_vertex_colors(b), bw_half_edge_colors(b)).key;
}

void formal_sum::add(const bw_graph& g, long long coefficient) {
    if (coefficient == 0) return;
    auto cg = canonicalize(g);
    if (cg.zero) return;
    add_canonical(cg.key, cg.graph, coefficient * cg.sign);
}

void formal_sum::add_canonical(const std::string& key, const bw_graph& g, long long coefficient) {
    if (coefficient == 0) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, term{g, coefficient});
        return;
    }
    it->second.coefficient += coefficient;
    if (it->second.coefficient == 0) terms_.erase(it);
}

void formal_sum::add(const formal_sum& other, long long factor) {
    for (const auto& [k, t] : other.terms_) add_canonical(k, t.graph, t.coefficient * factor);
}

bool formal_sum::operator==(const formal_sum& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b)
        if (a->first != b->first || a->second.coefficient != b->second.coefficient) return false;
    return true;
}

std::string formal_sum::to_string() const {
    std::ostringstream os;
    for (const auto& [k, t] : terms_) os << (t.coefficient > 0 ? "+" : "") << t.coefficient << " · " << k << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------

std::vector<bw_graph> collapse_edge(const bw_graph& b, int h) {
    const auto& g = b.graph;
    int o = g.involution[h];
    int u = g.source[h], v = g.source[o];
    if (u == v) fail(error_code::loop_collapse, "half edge " + std::to_string(h));
    if (b.is_white(u) && b.is_white(v)) fail(error_code::white_white_collapse, "half edge " + std::to_string(h));
    if (g.leaf[u] || g.leaf[v]) fail(error_code::leaf_collapse, "half edge " + std::to_string(h));
    if (b.is_white(v)) {
        std::swap(h, o);
        std::swap(u, v);
    }
    // u survives; if one endpoint is white it is u
    std::vector<int> placements{-1};
    if (b.is_white(u) && b.start[u] == h) {
        placements.clear();
        for (int x = g.sigma[o]; x != o; x = g.sigma[x]) placements.push_back(x);
    }
    std::vector<bw_graph> out;
    for (int p : placements) {
        bw_editor e(b);
        e.word.extract({vgen(u), vgen(v), hgen(h), hgen(o)});
        contract_edge(e.ed, h);
        e.word.prepend({vgen(u)});
        if (p >= 0) e.start[u] = p;
        out.push_back(e.finish());
    }
    return out;
}

namespace {

std::vector<int> rotation_from(const fat_graph& g, int h) {
    std::vector<int> r;
    int x = h;
    do {
        r.push_back(x);
        x = g.sigma[x];
    } while (x != h);
    return r;
}

// split vertex v: `moved` goes to a new vertex (moved..., h2); v keeps (kept..., h1)
blow_up split_vertex(const bw_graph& b, int v, const std::vector<int>& kept, const std::vector<int>& moved,
                     bool new_white_start) {
    bw_editor e(b);
    for (int x : moved) e.ed.detach(x);
    int nv = e.add_vertex(false);
    int h1 = e.ed.add_half_edge(v);
    int h2 = e.ed.add_half_edge(nv);
    e.ed.pair(h1, h2);
    auto kr = kept;
    kr.push_back(h1);
    e.ed.set_rotation(v, kr);
    auto mr = moved;
    mr.push_back(h2);
    e.ed.set_rotation(nv, mr);
    if (new_white_start) e.start[v] = h1;
    e.word.extract({vgen(v)});
    e.word.prepend({vgen(v), vgen(nv), hgen(h1), hgen(h2)});
    auto r = e.ed.finish();
    blow_up bu;
    bu.graph = e.finish();
    bu.new_edge = r.half_edge_map[h1];
    return bu;
}

std::string pair_key(const blow_up& bu) {
    auto hc = bw_half_edge_colors(bu.graph);
    hc[bu.new_edge] += 2;
    hc[bu.graph.graph.involution[bu.new_edge]] += 2;
    return canonical_form(bu.graph.graph, bw_vertex_colors(bu.graph), hc).key;
}

}  // namespace

std::vector<blow_up> blow_ups(const bw_graph& b) {
    const auto& g = b.graph;
    auto center = degenerate_corolla_centers(g);
    auto val = g.valences();
    std::vector<blow_up> out;
    std::set<std::string> seen;
    auto push = [&](blow_up bu) {
        if (seen.insert(pair_key(bu)).second) out.push_back(std::move(bu));
    };
    auto fib = g.fibers();
    for (int v = 0; v < g.vertex_count; ++v) {
        if (g.leaf[v] || (center[v] && !b.is_white(v))) continue;
        int n = val[v];
        if (b.is_white(v)) {
            if (n < 2) continue;
            auto r = rotation_from(g, b.start[v]);
            for (int j = 0; j < n; ++j) {
                for (int m = 2; m <= n; ++m) {
                    std::vector<int> moved, kept;
                    for (int t = 0; t < m; ++t) moved.push_back(r[(j + t) % n]);
                    for (int t = m; t < n; ++t) kept.push_back(r[(j + t) % n]);
                    bool start_moves = std::find(moved.begin(), moved.end(), b.start[v]) != moved.end();
                    push(split_vertex(b, v, kept, moved, start_moves));
                }
            }
        } else {
            if (n < 4) continue;
            const auto& r = fib[v];
            // arcs containing position 0 go to the new vertex
            for (int m = 2; m <= n - 2; ++m) {
                for (int t = 0; t < m; ++t) {
                    int j = (n - t) % n;
                    std::vector<int> moved, kept;
                    for (int s = 0; s < m; ++s) moved.push_back(r[(j + s) % n]);
                    for (int s = m; s < n; ++s) kept.push_back(r[(j + s) % n]);
                    push(split_vertex(b, v, kept, moved, false));
                }
            }
        }
    }
    return out;
}

std::optional<bw_graph> remove_bad_leaf(const bw_graph& b, int l) {
    const auto& g = b.graph;
    int lam = -1;
    for (int h = 0; h < g.half_edge_count(); ++h)
        if (g.source[h] == l) lam = h;
    int hl = g.involution[lam];
    int vl = g.source[hl];
    if (b.is_white(vl)) return std::nullopt;
    if (rotation_from(g, hl).size() != 3) return std::nullopt;
    int h1 = g.sigma[hl], h2 = g.sigma[h1];
    if (g.involution[h1] == h2) throw std::logic_error("remove_bad_leaf: loop at the leaf's vertex");
    bw_editor e(b);
    e.word.extract({vgen(vl), hgen(h1), hgen(h2), hgen(hl), hgen(lam), vgen(l)});
    int a = g.involution[h1], c = g.involution[h2];
    e.ed.remove_vertex(vl);
    e.ed.remove_vertex(l);
    e.ed.pair(a, c);
    return e.finish();
}

std::optional<bw_graph> underlying(const bw_graph& b) {
    bw_graph cur = b;
    while (true) {
        auto bad = bad_leaves(cur);
        if (bad.empty()) return cur;
        auto next = remove_bad_leaf(cur, bad.front());
        if (!next) return std::nullopt;
        cur = std::move(*next);
    }
}

formal_sum differential(const bw_graph& b) {
    formal_sum s;
    for (const auto& bu : blow_ups(b)) {
        auto u = underlying(bu.graph);
        if (u) s.add(*u);
    }
    return s;
}

formal_sum differential(const formal_sum& s) {
    formal_sum out;
    for (const auto& [k, t] : s.terms()) {
        auto d = differential(t.graph);
        out.add(d, t.coefficient);
    }
    return out;
}

bw_graph suspend(const bw_graph& b, int w) {
    bw_editor e(b);
    int s = b.start[w];
    int x = e.ed.add_half_edge(w, e.ed.sigma_inv(s));
    int u = e.add_vertex(true);
    int lam = e.ed.add_half_edge(u);
    e.ed.pair(x, lam);
    e.start[w] = x;
    e.word.prepend({vgen(u), hgen(x), hgen(lam)});
    return e.finish();
}

// ---------------------------------------------------------------------------

oc_graph expand_white(const bw_graph& b) {
    const auto& g = b.graph;
    graph_editor ed(g);
    label_map labels = b.label;
    labels.resize(g.vertex_count);
    auto add_vertex = [&](bool leaf) {
        labels.push_back(std::nullopt);
        return ed.add_vertex(leaf);
    };
    for (int w = 0; w < g.vertex_count; ++w) {
        if (!b.is_white(w)) continue;
        auto spokes = rotation_from(g, b.start[w]);
        int n = static_cast<int>(spokes.size());
        int t0 = spokes[0];
        bool suspended = b.is_unlabeled_leaf(g.source[g.involution[t0]]);
        for (int t : spokes) ed.detach(t);
        std::vector<int> pv(n), fwd(n), bwd(n);
        for (int j = 0; j < n; ++j) {
            pv[j] = add_vertex(false);
            bwd[j] = ed.add_half_edge(pv[j]);
            fwd[j] = ed.add_half_edge(pv[j], bwd[j]);
        }
        for (int j = 0; j < n; ++j) ed.pair(fwd[j], bwd[(j + n - 1) % n]);
        int leaf = add_vertex(true);
        labels[leaf] = leaf_label{direction::out, boundary_kind::closed, b.white_index[w]};
        int lam = ed.add_half_edge(leaf);
        int big_l = ed.add_half_edge(pv[0], bwd[0]);  // bwd, L, fwd
        ed.pair(lam, big_l);
        for (int j = 0; j < n; ++j) {
            if (j == 0 && suspended) continue;
            ed.attach(spokes[j], pv[j], fwd[j]);
        }
        if (suspended) {
            int u = g.source[g.involution[t0]];
            ed.remove_half_edge(t0);
            ed.remove_vertex(u);
        }
        ed.remove_vertex(w);
    }
    auto r = ed.finish();
    oc_graph out{r.graph, label_map(r.graph.vertex_count)};
    for (int v = 0; v < static_cast<int>(r.vertex_map.size()); ++v)
        if (r.vertex_map[v] >= 0) out.label[r.vertex_map[v]] = labels[v];
    return out;
}

bw_graph collapse_white(const oc_graph& o) {
    if (!is_admissible(o)) fail(error_code::not_admissible);
    if (!is_essentially_trivalent(o)) fail(error_code::not_essentially_trivalent);
    const auto& g = o.graph;
    graph_editor ed(g);
    std::vector<int> white_index(g.vertex_count, -1), start(g.vertex_count, -1);
    label_map labels = o.label;
    auto add_vertex = [&](bool leaf) {
        white_index.push_back(-1);
        start.push_back(-1);
        labels.push_back(std::nullopt);
        return ed.add_vertex(leaf);
    };
    for (const auto& c : admissible_cycles(o)) {
        int n = static_cast<int>(c.circle.size());
        if (n == 0) fail(error_code::not_admissible, "empty admissible circle");
        // spoke of circle vertex k: the half edge strictly between the outgoing circle half edge
        // and the incoming one, if any
        std::vector<int> spoke(n, -1);
        for (int k = 0; k < n; ++k) {
            int h = c.circle[k];
            int prev_in = g.involution[c.circle[(k + n - 1) % n]];
            int x = g.sigma[h];
            if (x != prev_in) spoke[k] = x;
        }
        for (int k = 1; k < n; ++k)
            if (spoke[k] < 0) fail(error_code::not_essentially_trivalent, "bare circle vertex");
        int w = add_vertex(false);
        white_index[w] = c.index;
        std::vector<int> order;
        if (spoke[0] >= 0) {
            ed.detach(spoke[0]);
            order.push_back(spoke[0]);
        }
        for (int k = n - 1; k >= 1; --k) {
            ed.detach(spoke[k]);
            order.push_back(spoke[k]);
        }
        if (spoke[0] < 0) {
            int u = add_vertex(true);
            int lam = ed.add_half_edge(u);
            int x = ed.add_half_edge(w);
            ed.pair(x, lam);
            order.insert(order.begin(), x);
        }
        for (int h : c.circle) {
            int v = g.source[h];
            if (ed.vertex_alive(v)) ed.remove_vertex(v);
        }
        ed.remove_vertex(c.leaf);
        labels[c.leaf] = std::nullopt;
        ed.set_rotation(w, order);
        start[w] = order.front();
    }
    auto r = ed.finish();
    bw_graph b;
    b.graph = r.graph;
    int nv = r.graph.vertex_count;
    b.white_index.assign(nv, -1);
    b.start.assign(nv, -1);
    b.label.assign(nv, std::nullopt);
    for (int v = 0; v < static_cast<int>(r.vertex_map.size()); ++v) {
        int k = r.vertex_map[v];
        if (k < 0) continue;
        b.white_index[k] = white_index[v];
        b.label[k] = labels[v];
        if (start[v] >= 0) b.start[k] = r.half_edge_map[start[v]];
    }
    b.orientation = 1;
    return b;
}

}  // namespace ocfat

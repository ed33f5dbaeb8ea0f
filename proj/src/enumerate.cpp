#include <algorithm>
#include <future>
#include <set>

#include "ocfat/complex.hpp"

namespace ocfat {

bw_graph disjoint_union(const bw_graph& a, const bw_graph& b) {
    bw_graph u;
    int va = a.graph.vertex_count, ha = a.graph.half_edge_count();
    int vb = b.graph.vertex_count, hb = b.graph.half_edge_count();
    auto& g = u.graph;
    g.vertex_count = va + vb;
    for (int h = 0; h < ha; ++h) {
        g.involution.push_back(a.graph.involution[h]);
        g.sigma.push_back(a.graph.sigma[h]);
        g.source.push_back(a.graph.source[h]);
    }
    for (int h = 0; h < hb; ++h) {
        g.involution.push_back(b.graph.involution[h] + ha);
        g.sigma.push_back(b.graph.sigma[h] + ha);
        g.source.push_back(b.graph.source[h] + va);
    }
    g.leaf = a.graph.leaf;
    g.leaf.insert(g.leaf.end(), b.graph.leaf.begin(), b.graph.leaf.end());
    u.white_index = a.white_index;
    u.white_index.insert(u.white_index.end(), b.white_index.begin(), b.white_index.end());
    u.start = a.start;
    for (int s : b.start) u.start.push_back(s < 0 ? -1 : s + ha);
    u.label = a.label;
    u.label.insert(u.label.end(), b.label.begin(), b.label.end());
    // a.word ^ b.word against the reference V_a V_b H_a H_b
    u.orientation = a.orientation * b.orientation * (((vb * ha) % 2) ? -1 : 1);
    return u;
}

namespace {

struct univalent_item {
    bool white = false;
    leaf_label label;
    int white_index = -1;
};

struct seed_search {
    std::vector<univalent_item> items;
    int black_target = 0;
    topological_type target;

    std::vector<int> partner, owner;        // per half edge
    std::vector<int> vertex_item;           // per vertex: item index or -1 for black
    std::vector<std::vector<int>> rotation;  // per vertex
    std::vector<char> item_used;
    int blacks = 0;
    std::set<std::string> seen;
    std::vector<bw_graph> found;
    long limit = -1;

    int new_vertex(int item, int valence) {
        int v = static_cast<int>(rotation.size());
        vertex_item.push_back(item);
        rotation.emplace_back();
        for (int k = 0; k < valence; ++k) {
            int h = static_cast<int>(partner.size());
            partner.push_back(-1);
            owner.push_back(v);
            rotation.back().push_back(h);
        }
        return v;
    }

    void drop_vertex() {
        int v = static_cast<int>(rotation.size()) - 1;
        for (std::size_t k = 0; k < rotation[v].size(); ++k) {
            partner.pop_back();
            owner.pop_back();
        }
        rotation.pop_back();
        vertex_item.pop_back();
    }

    void emit() {
        fat_graph g = from_rotation(rotation, partner);
        bw_graph b;
        int nv = g.vertex_count;
        b.white_index.assign(nv, -1);
        b.start.assign(nv, -1);
        b.label.assign(nv, std::nullopt);
        for (int v = 0; v < nv; ++v) {
            int it = vertex_item[v];
            if (it < 0) continue;
            if (items[it].white) {
                b.white_index[v] = items[it].white_index;
                b.start[v] = rotation[v][0];
            } else {
                g.leaf[v] = 1;
                b.label[v] = items[it].label;
            }
        }
        b.graph = std::move(g);
        try {
            validate_bw(b);
        } catch (const graph_error&) {
            return;
        }
        if (!(topological_type_of(b) == target)) return;
        auto cg = canonicalize(b);
        if (seen.insert(cg.key).second) found.push_back(cg.graph);
        if (limit > 0 && static_cast<long>(found.size()) > limit)
            fail(error_code::generator_budget, "more than " + std::to_string(limit) + " generators");
    }

    void search(int next_open) {
        int n = static_cast<int>(partner.size());
        while (next_open < n && partner[next_open] >= 0) ++next_open;
        if (next_open == n) {
            if (blacks == black_target &&
                std::all_of(item_used.begin(), item_used.end(), [](char c) { return c != 0; }))
                emit();
            return;
        }
        int h = next_open;
        for (int x = h + 1; x < n; ++x) {
            if (partner[x] >= 0) continue;
            partner[h] = x;
            partner[x] = h;
            search(h + 1);
            partner[h] = -1;
            partner[x] = -1;
        }
        if (blacks < black_target) {
            ++blacks;
            new_vertex(-1, 3);
            partner[h] = n;
            partner[n] = h;
            search(h + 1);
            partner[h] = -1;
            drop_vertex();
            --blacks;
        }
        for (std::size_t it = 0; it < items.size(); ++it) {
            if (item_used[it]) continue;
            item_used[it] = 1;
            new_vertex(static_cast<int>(it), 1);
            partner[h] = n;
            partner[n] = h;
            search(h + 1);
            partner[h] = -1;
            drop_vertex();
            item_used[it] = 0;
        }
    }
};

std::vector<bw_graph> component_seeds(const component_type& c, long limit) {
    std::vector<univalent_item> items;
    for (int i : c.in_closed) items.push_back({false, {direction::in, boundary_kind::closed, i}, -1});
    for (const auto& circle : c.open_circles)
        for (const auto& t : circle) items.push_back({false, {t.dir, boundary_kind::open, t.index}, -1});
    for (int i : c.out_closed) items.push_back({true, {}, i});
    int leaves = static_cast<int>(items.size()) - static_cast<int>(c.out_closed.size());
    int whites = static_cast<int>(c.out_closed.size());
    int nb = static_cast<int>(c.in_closed.size() + c.open_circles.size()) + c.free_count;
    topological_type target;
    target.components.push_back(c);
    target.normalize();

    if (c.genus == 0 && c.boundary_count() == 1 && whites == 0 && leaves <= 2) {
        // degenerate corolla
        int n = leaves;
        std::vector<std::vector<int>> rot(1);
        perm inv(2 * n);
        for (int k = 0; k < n; ++k) {
            rot[0].push_back(k);
            rot.push_back({n + k});
            inv[k] = n + k;
            inv[n + k] = k;
        }
        bw_graph b;
        b.graph = from_rotation(rot, inv);
        b.white_index.assign(n + 1, -1);
        b.start.assign(n + 1, -1);
        b.label.assign(n + 1, std::nullopt);
        for (int k = 0; k < n; ++k) {
            b.graph.leaf[k + 1] = 1;
            b.label[k + 1] = items[k].label;
        }
        validate_bw(b);
        return {canonicalize(b).graph};
    }
    int black = leaves + whites - 4 + 4 * c.genus + 2 * nb;
    if (black < 0 || items.empty()) return {};

    seed_search s;
    s.items = items;
    s.black_target = black;
    s.target = target;
    s.limit = limit;
    s.item_used.assign(items.size(), 0);
    s.item_used[0] = 1;
    s.new_vertex(0, 1);
    s.search(0);
    std::sort(s.found.begin(), s.found.end(),
              [](const bw_graph& a, const bw_graph& b) { return canonical_key(a) < canonical_key(b); });
    return s.found;
}

}  // namespace

std::vector<bw_graph> degree_zero_generators(const topological_type& t, long max_generators) {
    if (!satisfies_positivity(t)) fail(error_code::unsupported_type, to_string(t));
    std::vector<bw_graph> acc;
    bool first = true;
    for (const auto& c : t.components) {
        auto seeds = component_seeds(c, max_generators);
        if (first) {
            acc = seeds;
            first = false;
            continue;
        }
        std::vector<bw_graph> next;
        for (const auto& a : acc)
            for (const auto& s : seeds) next.push_back(disjoint_union(a, s));
        acc = std::move(next);
    }
    std::vector<bw_graph> out;
    std::set<std::string> seen;
    for (const auto& g : acc) {
        auto cg = canonicalize(g);
        if (seen.insert(cg.key).second) out.push_back(cg.graph);
        if (max_generators > 0 && static_cast<long>(out.size()) > max_generators)
            fail(error_code::generator_budget, "more than " + std::to_string(max_generators) + " generators");
    }
    return out;
}

namespace {

// every graph one degree up reachable by an edge collapse or a suspension
std::vector<canonical_generator> upward_neighbors(const bw_graph& g) {
    std::vector<canonical_generator> out;
    const auto& fg = g.graph;
    for (int h = 0; h < fg.half_edge_count(); ++h) {
        int o = fg.involution[h];
        if (h > o) continue;
        int u = fg.source[h], v = fg.source[o];
        if (u == v || fg.leaf[u] || fg.leaf[v] || (g.is_white(u) && g.is_white(v))) continue;
        for (const auto& r : collapse_edge(g, h)) out.push_back(canonicalize(r));
    }
    for (int w = 0; w < fg.vertex_count; ++w) {
        if (!g.is_white(w)) continue;
        if (g.is_unlabeled_leaf(fg.source[fg.involution[g.start[w]]])) continue;
        out.push_back(canonicalize(suspend(g, w)));
    }
    return out;
}

}  // namespace

generator_table enumerate_generators(const topological_type& t, int max_degree, int jobs, long max_generators) {
    generator_table table;
    auto seeds = degree_zero_generators(t, max_generators);
    std::map<std::string, bw_graph> level;
    std::map<std::string, bool> level_zero;
    for (const auto& s : seeds) {
        auto cg = canonicalize(s);
        level.emplace(cg.key, cg.graph);
        level_zero[cg.key] = cg.zero;
    }
    jobs = std::max(1, jobs);
    int deg = 0;
    long total = static_cast<long>(level.size());
    while (!level.empty()) {
        std::vector<std::string> keys;
        std::vector<bw_graph> graphs;
        int zeros = 0;
        for (const auto& [k, g] : level) {
            if (level_zero[k]) {
                ++zeros;
                continue;
            }
            keys.push_back(k);
            graphs.push_back(g);
        }
        table.keys.push_back(keys);
        table.graphs.push_back(graphs);
        table.zero_classes.push_back(zeros);
        if (max_degree >= 0 && deg >= max_degree) break;

        std::vector<const bw_graph*> all;
        for (const auto& [k, g] : level) all.push_back(&g);
        std::vector<std::vector<canonical_generator>> found(all.size());
        auto work = [&](int shard) {
            for (std::size_t i = shard; i < all.size(); i += jobs) found[i] = upward_neighbors(*all[i]);
        };
        if (jobs == 1) {
            work(0);
        } else {
            std::vector<std::future<void>> fs;
            for (int s = 0; s < jobs; ++s) fs.push_back(std::async(std::launch::async, work, s));
            for (auto& f : fs) f.get();
        }
        std::map<std::string, bw_graph> next;
        std::map<std::string, bool> next_zero;
        for (auto& list : found) {
            for (auto& cg : list) {
                if (next.count(cg.key)) continue;
                next_zero[cg.key] = cg.zero;
                next.emplace(cg.key, std::move(cg.graph));
                if (max_generators > 0 && total + static_cast<long>(next.size()) > max_generators)
                    fail(error_code::generator_budget, "more than " + std::to_string(max_generators) + " generators");
            }
        }
        level = std::move(next);
        level_zero = std::move(next_zero);
        ++deg;
        total += static_cast<long>(level.size());
        if (max_generators > 0 && total > max_generators)
            fail(error_code::generator_budget, "more than " + std::to_string(max_generators) + " generators");
    }
    return table;
}

}  // namespace ocfat

namespace ocfat {

int degree_zero_half_edges(const topological_type& t) {
    int total = 0;
    for (const auto& c : t.components) {
        int leaves = static_cast<int>(c.in_closed.size()) + c.in_open_count() + c.out_open_count();
        int whites = static_cast<int>(c.out_closed.size());
        int nb = static_cast<int>(c.in_closed.size() + c.open_circles.size()) + c.free_count;
        if (c.genus == 0 && c.boundary_count() == 1 && whites == 0 && leaves <= 2) {
            total += 2 * leaves;
            continue;
        }
        int black = leaves + whites - 4 + 4 * c.genus + 2 * nb;
        if (black < 0) return -1;
        total += 3 * black + leaves + whites;
    }
    return total;
}

namespace {

// binary necklaces of length n as minimal rotations, 'i' < 'o'
std::vector<std::string> necklaces(int n) {
    std::set<std::string> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::string s;
        for (int k = 0; k < n; ++k) s += (mask >> k & 1) ? 'o' : 'i';
        std::string best = s;
        for (int r = 1; r < n; ++r) best = std::min(best, s.substr(r) + s.substr(0, r));
        out.insert(best);
    }
    return {out.begin(), out.end()};
}

// budget counts half edges: a circle with n tokens costs 4n + 6
void circle_lists(int budget, const std::string& floor, std::vector<std::string>& cur,
                  std::vector<std::vector<std::string>>& out) {
    out.push_back(cur);
    for (int n = 1; 4 * n + 6 <= budget; ++n)
        for (const auto& w : necklaces(n)) {
            if (std::make_pair(w.size(), w) < std::make_pair(floor.size(), floor)) continue;
            cur.push_back(w);
            circle_lists(budget - 4 * n - 6, w, cur, out);
            cur.pop_back();
        }
}

}  // namespace

std::vector<topological_type> small_types(int max_half_edges, bool incoming_open_only) {
    std::vector<topological_type> out;
    std::set<std::string> seen;
    int bound = max_half_edges;
    // half edges of degree 0 are 12g + 10 per incoming closed + 4 per outgoing closed
    // + 6 per free + (4n + 6) per open circle - 12
    int budget = bound + 12;
    std::vector<std::vector<std::string>> circle_sets;
    std::vector<std::string> cur;
    circle_lists(budget, "", cur, circle_sets);
    for (int g = 0; 12 * g <= budget; ++g)
        for (int ic = 0; 12 * g + 10 * ic <= budget; ++ic)
            for (int oc = 0; 12 * g + 10 * ic + 4 * oc <= budget; ++oc)
                for (int fr = 0; 12 * g + 10 * ic + 4 * oc + 6 * fr <= budget; ++fr)
                    for (const auto& circles : circle_sets) {
                        if (incoming_open_only &&
                            std::any_of(circles.begin(), circles.end(),
                                        [](const std::string& w) { return w.find('o') != std::string::npos; }))
                            continue;
                        component_type c;
                        c.genus = g;
                        c.free_count = fr;
                        for (int k = 0; k < ic; ++k) c.in_closed.push_back(k);
                        for (int k = 0; k < oc; ++k) c.out_closed.push_back(k);
                        int ni = 0, no = 0;
                        for (const auto& w : circles) {
                            std::vector<open_token> circle;
                            for (char ch : w) {
                                if (ch == 'i') circle.push_back({direction::in, ni++});
                                else circle.push_back({direction::out, no++});
                            }
                            c.open_circles.push_back(circle);
                        }
                        topological_type t;
                        t.components.push_back(c);
                        t.normalize();
                        if (!satisfies_positivity(t)) continue;
                        int h = degree_zero_half_edges(t);
                        if (h < 0 || h > bound) continue;
                        if (seen.insert(to_string(t)).second) out.push_back(t);
                    }
    return out;
}

}  // namespace ocfat

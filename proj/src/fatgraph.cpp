#include "ocfat/fatgraph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "ocfat/editor.hpp"

namespace ocfat {

namespace {

struct union_find {
    std::vector<int> parent;
    explicit union_find(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

bool is_permutation_of_range(const perm& p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

}  // namespace

std::vector<int> fat_graph::valences() const {
    std::vector<int> val(vertex_count, 0);
    for (int v : source) ++val[v];
    return val;
}

std::vector<std::vector<int>> fat_graph::fibers() const {
    std::vector<std::vector<int>> out(vertex_count);
    std::vector<char> seen(half_edge_count(), 0);
    for (int h = 0; h < half_edge_count(); ++h) {
        if (seen[h]) continue;
        auto& f = out[source[h]];
        for (int x = h; !seen[x]; x = sigma[x]) {
            seen[x] = 1;
            f.push_back(x);
        }
    }
    return out;
}

void validate(const fat_graph& g) {
    int n = g.half_edge_count();
    if (static_cast<int>(g.sigma.size()) != n || static_cast<int>(g.source.size()) != n)
        fail(error_code::invalid_permutation, "array lengths differ");
    if (static_cast<int>(g.leaf.size()) != g.vertex_count)
        fail(error_code::invalid_permutation, "leaf flags do not match vertex count");
    if (!is_permutation_of_range(g.involution))
        fail(error_code::invalid_permutation, "involution is not a permutation");
    if (!is_permutation_of_range(g.sigma))
        fail(error_code::invalid_permutation, "sigma is not a permutation");
    for (int h = 0; h < n; ++h) {
        if (g.involution[h] == h)
            fail(error_code::fixed_point_involution, "half edge " + std::to_string(h));
        if (g.involution[g.involution[h]] != h)
            fail(error_code::invalid_involution, "half edge " + std::to_string(h));
        if (g.source[h] < 0 || g.source[h] >= g.vertex_count)
            fail(error_code::mismatched_source, "source out of range at " + std::to_string(h));
    }
    for (int h = 0; h < n; ++h)
        if (g.source[g.sigma[h]] != g.source[h])
            fail(error_code::mismatched_source, "sigma leaves vertex at " + std::to_string(h));
    // each vertex fiber must be a single sigma cycle
    std::vector<int> cycles_at(g.vertex_count, 0);
    std::vector<char> seen(n, 0);
    for (int h = 0; h < n; ++h) {
        if (seen[h]) continue;
        ++cycles_at[g.source[h]];
        for (int x = h; !seen[x]; x = g.sigma[x]) seen[x] = 1;
    }
    for (int v = 0; v < g.vertex_count; ++v)
        if (cycles_at[v] > 1)
            fail(error_code::mismatched_source, "vertex " + std::to_string(v) + " has several sigma cycles");
    auto val = g.valences();
    for (int v = 0; v < g.vertex_count; ++v)
        if (g.leaf[v] && val[v] != 1)
            fail(error_code::bad_leaf_valence, "vertex " + std::to_string(v));
}

std::vector<int> boundary_cycle_index(const fat_graph& g) {
    int n = g.half_edge_count();
    std::vector<int> idx(n, -1);
    int c = 0;
    for (int h = 0; h < n; ++h) {
        if (idx[h] >= 0) continue;
        for (int x = h; idx[x] < 0; x = g.omega(x)) idx[x] = c;
        ++c;
    }
    return idx;
}

std::vector<boundary_cycle> boundary_cycles(const fat_graph& g) {
    std::vector<boundary_cycle> out;
    std::vector<char> seen(g.half_edge_count(), 0);
    for (int h = 0; h < g.half_edge_count(); ++h) {
        if (seen[h]) continue;
        boundary_cycle c;
        for (int x = h; !seen[x]; x = g.omega(x)) {
            seen[x] = 1;
            c.half_edges.push_back(x);
            ++c.edge_multiplicity[edge_id(g, x)];
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<int> vertex_components(const fat_graph& g, int* count) {
    union_find uf(g.vertex_count);
    for (int h = 0; h < g.half_edge_count(); ++h) uf.unite(g.source[h], g.source[g.involution[h]]);
    std::vector<int> comp(g.vertex_count, -1), root_id(g.vertex_count, -1);
    int c = 0;
    for (int v = 0; v < g.vertex_count; ++v) {
        int r = uf.find(v);
        if (root_id[r] < 0) root_id[r] = c++;
        comp[v] = root_id[r];
    }
    if (count) *count = c;
    return comp;
}

std::vector<surface_info> component_invariants(const fat_graph& g) {
    int nc = 0;
    auto comp = vertex_components(g, &nc);
    std::vector<surface_info> out(nc);
    std::vector<int> half_edges(nc, 0), vertices(nc, 0);
    for (int v = 0; v < g.vertex_count; ++v) ++vertices[comp[v]];
    for (int h = 0; h < g.half_edge_count(); ++h) ++half_edges[comp[g.source[h]]];
    for (const auto& c : boundary_cycles(g)) ++out[comp[g.source[c.half_edges.front()]]].boundary_count;
    for (int k = 0; k < nc; ++k) {
        auto& s = out[k];
        s.components = 1;
        s.euler_characteristic = vertices[k] - half_edges[k] / 2;
        // a lone vertex fattens to a disk
        if (half_edges[k] == 0) s.boundary_count = 1;
        int twice_genus = 2 - s.euler_characteristic - s.boundary_count;
        if (twice_genus < 0 || twice_genus % 2 != 0) fail(error_code::non_integer_genus);
        s.genus = twice_genus / 2;
    }
    return out;
}

surface_info surface_invariants(const fat_graph& g) {
    surface_info total;
    for (const auto& s : component_invariants(g)) {
        total.euler_characteristic += s.euler_characteristic;
        total.boundary_count += s.boundary_count;
        total.genus += s.genus;
        total.components += 1;
    }
    return total;
}

fat_graph collapse_forest(const fat_graph& g, const std::vector<int>& forest_edges) {
    union_find uf(g.vertex_count);
    std::set<int> edges;
    for (int e : forest_edges) {
        if (e < 0 || e >= g.half_edge_count()) fail(error_code::forest_has_cycle, "bad edge id");
        int a = e, b = g.involution[e];
        if (!edges.insert(std::min(a, b)).second) continue;
        if (g.leaf[g.source[a]] || g.leaf[g.source[b]])
            fail(error_code::forest_contains_leaf, "edge " + std::to_string(std::min(a, b)));
        if (!uf.unite(g.source[a], g.source[b]))
            fail(error_code::forest_has_cycle, "edge " + std::to_string(std::min(a, b)));
    }
    graph_editor ed(g);
    for (int e : edges) contract_edge(ed, e);
    return ed.finish().graph;
}

fat_graph relabel(const fat_graph& g, const perm& vmap, const perm& hmap) {
    fat_graph r;
    r.vertex_count = g.vertex_count;
    int n = g.half_edge_count();
    r.involution.assign(n, 0);
    r.sigma.assign(n, 0);
    r.source.assign(n, 0);
    r.leaf.assign(g.vertex_count, 0);
    for (int v = 0; v < g.vertex_count; ++v) r.leaf[vmap[v]] = g.leaf[v];
    for (int h = 0; h < n; ++h) {
        r.involution[hmap[h]] = hmap[g.involution[h]];
        r.sigma[hmap[h]] = hmap[g.sigma[h]];
        r.source[hmap[h]] = vmap[g.source[h]];
    }
    return r;
}

int permutation_sign(const perm& p) {
    std::vector<char> seen(p.size(), 0);
    int sign = 1;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (seen[k]) continue;
        int len = 0;
        for (int x = static_cast<int>(k); !seen[x]; x = p[x]) {
            seen[x] = 1;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

fat_graph from_rotation(const std::vector<std::vector<int>>& rotation, const perm& involution,
                        const std::vector<int>& leaves) {
    fat_graph g;
    g.vertex_count = static_cast<int>(rotation.size());
    g.involution = involution;
    int n = static_cast<int>(involution.size());
    g.sigma.assign(n, -1);
    g.source.assign(n, -1);
    g.leaf.assign(g.vertex_count, 0);
    for (int v = 0; v < g.vertex_count; ++v) {
        const auto& r = rotation[v];
        for (std::size_t k = 0; k < r.size(); ++k) {
            g.source[r[k]] = v;
            g.sigma[r[k]] = r[(k + 1) % r.size()];
        }
    }
    for (int v : leaves) g.leaf[v] = 1;
    return g;
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

struct colored_view {
    const fat_graph& g;
    std::vector<std::int64_t> vcol, hcol;
    std::vector<int> val;
};

using code_t = std::vector<std::int64_t>;

struct component_form {
    code_t code;
    std::vector<int> best_order;               // half edges in canonical order
    std::vector<std::vector<int>> tie_orders;  // all orders achieving the minimum
    int lone_vertex = -1;
};

std::vector<component_form> component_forms(const colored_view& cv, bool want_ties) {
    const fat_graph& g = cv.g;
    int nc = 0;
    auto comp = vertex_components(g, &nc);
    std::vector<std::vector<int>> members(nc);
    for (int h = 0; h < g.half_edge_count(); ++h) members[comp[g.source[h]]].push_back(h);
    std::vector<component_form> forms(nc);
    std::vector<int> num(g.half_edge_count(), -1), order;
    for (int c = 0; c < nc; ++c) {
        auto& f = forms[c];
        if (members[c].empty()) {
            for (int v = 0; v < g.vertex_count; ++v)
                if (comp[v] == c) f.lone_vertex = v;
            f.code = {cv.vcol[f.lone_vertex]};
            continue;
        }
        auto invariant = [&](int h) {
            return std::make_tuple(cv.vcol[g.source[h]], cv.hcol[h], cv.val[g.source[h]]);
        };
        auto best_inv = invariant(members[c].front());
        for (int h : members[c]) best_inv = std::min(best_inv, invariant(h));
        bool have = false;
        code_t code;
        for (int h : members[c]) {
            if (invariant(h) != best_inv) continue;
            for (int x : members[c]) num[x] = -1;
            // number and encode together, abandoning the root once it loses to the best code
            order.clear();
            order.push_back(h);
            num[h] = 0;
            code.clear();
            int cmp = have ? 0 : -1;
            for (std::size_t k = 0; k < order.size(); ++k) {
                int x = order[k];
                for (int y : {g.sigma[x], g.involution[x]}) {
                    if (num[y] < 0) {
                        num[y] = static_cast<int>(order.size());
                        order.push_back(y);
                    }
                }
                std::int64_t item[4] = {cv.vcol[g.source[x]], cv.hcol[x], num[g.sigma[x]], num[g.involution[x]]};
                for (auto z : item) {
                    if (cmp == 0) {
                        auto b = f.code[code.size()];
                        if (z < b) cmp = -1;
                        else if (z > b) cmp = 1;
                    }
                    code.push_back(z);
                }
                if (cmp > 0) break;
            }
            if (cmp > 0) continue;
            if (cmp < 0) {
                have = true;
                f.code = code;
                f.best_order = order;
                f.tie_orders.clear();
                if (want_ties) f.tie_orders.push_back(order);
            } else if (want_ties) {
                f.tie_orders.push_back(order);
            }
        }
    }
    return forms;
}

colored_view make_view(const fat_graph& g, std::span<const std::int64_t> vertex_colors,
                       std::span<const std::int64_t> half_edge_colors) {
    colored_view cv{g, {}, {}, g.valences()};
    if (vertex_colors.empty()) {
        cv.vcol.assign(g.vertex_count, 0);
        for (int v = 0; v < g.vertex_count; ++v) cv.vcol[v] = g.leaf[v] ? 1 : 0;
    } else {
        cv.vcol.assign(vertex_colors.begin(), vertex_colors.end());
    }
    if (half_edge_colors.empty())
        cv.hcol.assign(g.half_edge_count(), 0);
    else
        cv.hcol.assign(half_edge_colors.begin(), half_edge_colors.end());
    return cv;
}

// Sort components by code; returns the permutation of component indices.
std::vector<int> sorted_components(const std::vector<component_form>& forms) {
    std::vector<int> idx(forms.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (forms[a].code.size() != forms[b].code.size()) return forms[a].code.size() > forms[b].code.size();
        return forms[a].code < forms[b].code;
    });
    return idx;
}

// Lay out the chosen order for each component; returns (vertex_map, half_edge_map).
void assemble_maps(const fat_graph& g, const std::vector<component_form>& forms, const std::vector<int>& comp_order,
                   const std::vector<const std::vector<int>*>& orders, perm& vmap, perm& hmap) {
    vmap.assign(g.vertex_count, -1);
    hmap.assign(g.half_edge_count(), -1);
    int nv = 0, nh = 0;
    for (std::size_t k = 0; k < comp_order.size(); ++k) {
        int c = comp_order[k];
        if (forms[c].lone_vertex >= 0) {
            vmap[forms[c].lone_vertex] = nv++;
            continue;
        }
        for (int h : *orders[k]) {
            hmap[h] = nh++;
            int v = g.source[h];
            if (vmap[v] < 0) vmap[v] = nv++;
        }
    }
}

}  // namespace

canonical_result canonical_form(const fat_graph& g, std::span<const std::int64_t> vertex_colors,
                                std::span<const std::int64_t> half_edge_colors) {
    colored_view cv = make_view(g, vertex_colors, half_edge_colors);
    auto forms = component_forms(cv, true);
    auto comp_order = sorted_components(forms);
    std::vector<const std::vector<int>*> orders;
    for (int c : comp_order) orders.push_back(&forms[c].best_order);
    canonical_result r;
    for (std::size_t k = 0; k < comp_order.size(); ++k) {
        if (forms[comp_order[k]].tie_orders.size() > 1) r.rigid = false;
        if (k + 1 < comp_order.size() && forms[comp_order[k]].code == forms[comp_order[k + 1]].code)
            r.rigid = false;
    }
    assemble_maps(g, forms, comp_order, orders, r.vertex_map, r.half_edge_map);
    std::string& key = r.key;
    key.reserve(16 + 8 * g.half_edge_count() * 4);
    key += std::to_string(g.vertex_count) + ':' + std::to_string(g.half_edge_count());
    char buf[24];
    for (int c : comp_order) {
        key += '|';
        for (std::size_t k = 0; k < forms[c].code.size(); ++k) {
            if (k) key += ',';
            auto res = std::to_chars(buf, buf + sizeof buf, forms[c].code[k]);
            key.append(buf, res.ptr);
        }
    }
    return r;
}

std::vector<automorphism> automorphisms(const fat_graph& g, std::span<const std::int64_t> vertex_colors,
                                        std::span<const std::int64_t> half_edge_colors) {
    colored_view cv = make_view(g, vertex_colors, half_edge_colors);
    auto forms = component_forms(cv, true);
    auto comp_order = sorted_components(forms);
    std::vector<const std::vector<int>*> base;
    for (int c : comp_order) base.push_back(&forms[c].best_order);
    perm v0, h0;
    assemble_maps(g, forms, comp_order, base, v0, h0);

    // map "canonical position" -> original element, for the base layout
    auto to_auto = [&](const std::vector<const std::vector<int>*>& orders, const std::vector<int>& cord) {
        perm v1, h1;
        assemble_maps(g, forms, cord, orders, v1, h1);
        // automorphism = (layout1)^-1 o layout0
        perm hinv(h1.size()), vinv(v1.size());
        for (std::size_t h = 0; h < h1.size(); ++h) hinv[h1[h]] = static_cast<int>(h);
        for (std::size_t v = 0; v < v1.size(); ++v) vinv[v1[v]] = static_cast<int>(v);
        automorphism a;
        a.half_edges.resize(h0.size());
        a.vertices.resize(v0.size());
        for (std::size_t h = 0; h < h0.size(); ++h) a.half_edges[h] = hinv[h0[h]];
        for (std::size_t v = 0; v < v0.size(); ++v) a.vertices[v] = vinv[v0[v]];
        return a;
    };

    std::vector<automorphism> gens;
    for (std::size_t k = 0; k < comp_order.size(); ++k) {
        for (const auto& alt : forms[comp_order[k]].tie_orders) {
            auto orders = base;
            orders[k] = &alt;
            gens.push_back(to_auto(orders, comp_order));
        }
        // swap with the next component when isomorphic
        if (k + 1 < comp_order.size() && forms[comp_order[k]].code == forms[comp_order[k + 1]].code) {
            auto cord = comp_order;
            std::swap(cord[k], cord[k + 1]);
            auto orders = base;
            std::swap(orders[k], orders[k + 1]);
            gens.push_back(to_auto(orders, cord));
        }
    }
    // close under composition
    std::set<std::pair<perm, perm>> seen;
    std::vector<automorphism> group;
    automorphism id;
    id.vertices.resize(g.vertex_count);
    id.half_edges.resize(g.half_edge_count());
    std::iota(id.vertices.begin(), id.vertices.end(), 0);
    std::iota(id.half_edges.begin(), id.half_edges.end(), 0);
    seen.insert({id.vertices, id.half_edges});
    group.push_back(id);
    for (std::size_t k = 0; k < group.size(); ++k) {
        for (const auto& s : gens) {
            automorphism c;
            c.vertices.resize(g.vertex_count);
            c.half_edges.resize(g.half_edge_count());
            for (int v = 0; v < g.vertex_count; ++v) c.vertices[v] = s.vertices[group[k].vertices[v]];
            for (int h = 0; h < g.half_edge_count(); ++h) c.half_edges[h] = s.half_edges[group[k].half_edges[h]];
            if (seen.insert({c.vertices, c.half_edges}).second) group.push_back(std::move(c));
        }
    }
    return group;
}

}  // namespace ocfat

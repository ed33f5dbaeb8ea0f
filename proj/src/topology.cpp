#include "ocfat/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace ocfat {

std::string to_string(const leaf_label& l) {
    std::string s = l.dir == direction::in ? "in_" : "out_";
    s += l.kind == boundary_kind::open ? "open" : "closed";
    return s + "[" + std::to_string(l.index) + "]";
}

int component_type::in_open_count() const {
    int n = 0;
    for (const auto& c : open_circles)
        for (const auto& t : c) n += t.dir == direction::in;
    return n;
}

int component_type::out_open_count() const {
    int n = 0;
    for (const auto& c : open_circles)
        for (const auto& t : c) n += t.dir == direction::out;
    return n;
}

int component_type::boundary_count() const {
    return static_cast<int>(in_closed.size() + out_closed.size() + open_circles.size()) + free_count;
}

void topological_type::normalize() {
    for (auto& c : components) {
        std::sort(c.in_closed.begin(), c.in_closed.end());
        std::sort(c.out_closed.begin(), c.out_closed.end());
        for (auto& circle : c.open_circles) {
            if (circle.empty()) continue;
            std::rotate(circle.begin(), std::min_element(circle.begin(), circle.end()), circle.end());
        }
        std::sort(c.open_circles.begin(), c.open_circles.end());
    }
    std::sort(components.begin(), components.end());
}

int topological_type::in_closed_count() const {
    int n = 0;
    for (const auto& c : components) n += static_cast<int>(c.in_closed.size());
    return n;
}
int topological_type::out_closed_count() const {
    int n = 0;
    for (const auto& c : components) n += static_cast<int>(c.out_closed.size());
    return n;
}
int topological_type::in_open_count() const {
    int n = 0;
    for (const auto& c : components) n += c.in_open_count();
    return n;
}
int topological_type::out_open_count() const {
    int n = 0;
    for (const auto& c : components) n += c.out_open_count();
    return n;
}
int topological_type::euler_characteristic() const {
    int n = 0;
    for (const auto& c : components) n += c.euler_characteristic();
    return n;
}

std::string to_string(const topological_type& t) {
    std::ostringstream os;
    bool first_comp = true;
    for (const auto& c : t.components) {
        if (!first_comp) os << " + ";
        first_comp = false;
        os << "{g=" << c.genus << " in_closed=[";
        for (std::size_t k = 0; k < c.in_closed.size(); ++k) os << (k ? "," : "") << c.in_closed[k];
        os << "] out_closed=[";
        for (std::size_t k = 0; k < c.out_closed.size(); ++k) os << (k ? "," : "") << c.out_closed[k];
        os << "] open=[";
        for (std::size_t k = 0; k < c.open_circles.size(); ++k) {
            os << (k ? " " : "") << "(";
            for (std::size_t j = 0; j < c.open_circles[k].size(); ++j) {
                const auto& tok = c.open_circles[k][j];
                os << (j ? " " : "") << (tok.dir == direction::in ? "i" : "o") << tok.index;
            }
            os << ")";
        }
        os << "] free=" << c.free_count << "}";
    }
    return os.str();
}

topological_type type_of_labeled(const fat_graph& g, const label_map& labels, const std::vector<int>& white_index) {
    int nc = 0;
    auto comp = vertex_components(g, &nc);
    auto inv = component_invariants(g);
    topological_type t;
    t.components.resize(nc);
    for (int c = 0; c < nc; ++c) t.components[c].genus = inv[c].genus;
    for (const auto& cyc : boundary_cycles(g)) {
        auto& ct = t.components[comp[g.source[cyc.half_edges.front()]]];
        std::vector<open_token> tokens;
        bool closed = false;
        for (int h : cyc.half_edges) {
            const auto& l = labels[g.source[h]];
            if (!l) continue;
            if (l->kind == boundary_kind::closed) {
                closed = true;
                (l->dir == direction::in ? ct.in_closed : ct.out_closed).push_back(l->index);
            } else {
                tokens.push_back({l->dir, l->index});
            }
        }
        if (closed) continue;
        if (tokens.empty())
            ++ct.free_count;
        else
            ct.open_circles.push_back(std::move(tokens));
    }
    for (int v = 0; v < static_cast<int>(white_index.size()); ++v)
        if (white_index[v] >= 0) t.components[comp[v]].out_closed.push_back(white_index[v]);
    // lone vertices contribute a boundary cycle that omega does not see
    for (int v = 0; v < g.vertex_count; ++v) {
        bool lone = true;
        for (int h = 0; h < g.half_edge_count() && lone; ++h) lone = g.source[h] != v;
        if (lone && (white_index.empty() || white_index[v] < 0)) ++t.components[comp[v]].free_count;
    }
    t.normalize();
    return t;
}

namespace {

struct tagged_token {
    int side;  // 1 or 2
    direction dir;
    int index;
    bool operator==(const tagged_token&) const = default;
};

struct tagged_circle {
    std::vector<tagged_token> tokens;
    int comp;
};

int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

}  // namespace

topological_type compose_types(const topological_type& s2, const topological_type& s1) {
    if (s1.out_closed_count() != s2.in_closed_count())
        fail(error_code::count_mismatch, "outgoing closed " + std::to_string(s1.out_closed_count()) +
                                             " vs incoming closed " + std::to_string(s2.in_closed_count()));
    if (s1.out_open_count() != s2.in_open_count())
        fail(error_code::count_mismatch, "outgoing open " + std::to_string(s1.out_open_count()) +
                                             " vs incoming open " + std::to_string(s2.in_open_count()));
    int n1 = static_cast<int>(s1.components.size());
    int n2 = static_cast<int>(s2.components.size());
    std::vector<int> parent(n1 + n2);
    std::iota(parent.begin(), parent.end(), 0);
    auto unite = [&](int a, int b) {
        a = find_root(parent, a);
        b = find_root(parent, b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    std::map<int, int> out_closed_comp, in_closed_comp;
    for (int c = 0; c < n1; ++c)
        for (int i : s1.components[c].out_closed) out_closed_comp[i] = c;
    for (int c = 0; c < n2; ++c)
        for (int i : s2.components[c].in_closed) in_closed_comp[i] = n1 + c;
    for (auto [i, c] : out_closed_comp) {
        auto it = in_closed_comp.find(i);
        if (it == in_closed_comp.end()) fail(error_code::count_mismatch, "closed label " + std::to_string(i));
        unite(c, it->second);
    }

    std::vector<tagged_circle> circles;
    std::vector<int> free_count(n1 + n2, 0);
    for (int c = 0; c < n1; ++c) {
        free_count[c] = s1.components[c].free_count;
        for (const auto& circ : s1.components[c].open_circles) {
            tagged_circle tc{{}, c};
            for (const auto& t : circ) tc.tokens.push_back({1, t.dir, t.index});
            circles.push_back(std::move(tc));
        }
    }
    for (int c = 0; c < n2; ++c) {
        free_count[n1 + c] = s2.components[c].free_count;
        for (const auto& circ : s2.components[c].open_circles) {
            tagged_circle tc{{}, n1 + c};
            for (const auto& t : circ) tc.tokens.push_back({2, t.dir, t.index});
            circles.push_back(std::move(tc));
        }
    }
    std::vector<int> open_glues(n1 + n2, 0);
    auto locate = [&](const tagged_token& tok) -> std::pair<int, int> {
        for (int c = 0; c < static_cast<int>(circles.size()); ++c)
            for (int k = 0; k < static_cast<int>(circles[c].tokens.size()); ++k)
                if (circles[c].tokens[k] == tok) return {c, k};
        fail(error_code::count_mismatch, "open label " + std::to_string(tok.index));
    };
    for (int j = 0; j < s1.out_open_count(); ++j) {
        tagged_token a{1, direction::out, j}, b{2, direction::in, j};
        auto [ca, ka] = locate(a);
        auto [cb, kb] = locate(b);
        unite(circles[ca].comp, circles[cb].comp);
        ++open_glues[circles[ca].comp];
        if (ca != cb) {
            auto& ta = circles[ca].tokens;
            auto& tb = circles[cb].tokens;
            std::rotate(ta.begin(), ta.begin() + ka, ta.end());
            std::rotate(tb.begin(), tb.begin() + kb, tb.end());
            tagged_circle merged{{}, circles[ca].comp};
            merged.tokens.assign(ta.begin() + 1, ta.end());
            merged.tokens.insert(merged.tokens.end(), tb.begin() + 1, tb.end());
            int hi = std::max(ca, cb), lo = std::min(ca, cb);
            circles.erase(circles.begin() + hi);
            circles.erase(circles.begin() + lo);
            circles.push_back(std::move(merged));
        } else {
            auto& t = circles[ca].tokens;
            std::rotate(t.begin(), t.begin() + ka, t.end());
            int pos = static_cast<int>(std::find(t.begin(), t.end(), b) - t.begin());
            tagged_circle x{{t.begin() + 1, t.begin() + pos}, circles[ca].comp};
            tagged_circle y{{t.begin() + pos + 1, t.end()}, circles[ca].comp};
            circles.erase(circles.begin() + ca);
            circles.push_back(std::move(x));
            circles.push_back(std::move(y));
        }
    }

    std::map<int, component_type> merged;
    std::map<int, int> chi;
    for (int c = 0; c < n1 + n2; ++c) {
        int r = find_root(parent, c);
        const auto& src = c < n1 ? s1.components[c] : s2.components[c - n1];
        chi[r] += src.euler_characteristic() - open_glues[c];
        auto& m = merged[r];
        m.free_count += free_count[c];
        if (c < n1)
            m.in_closed.insert(m.in_closed.end(), src.in_closed.begin(), src.in_closed.end());
        else
            m.out_closed.insert(m.out_closed.end(), src.out_closed.begin(), src.out_closed.end());
    }
    for (auto& circ : circles) {
        auto& m = merged[find_root(parent, circ.comp)];
        if (circ.tokens.empty()) {
            ++m.free_count;
            continue;
        }
        std::vector<open_token> toks;
        for (const auto& t : circ.tokens) toks.push_back({t.dir, t.index});
        m.open_circles.push_back(std::move(toks));
    }
    topological_type out;
    for (auto& [r, m] : merged) {
        int twice_genus = 2 - chi[r] - m.boundary_count();
        if (twice_genus < 0 || twice_genus % 2) fail(error_code::non_integer_genus, "composite type");
        m.genus = twice_genus / 2;
        out.components.push_back(std::move(m));
    }
    out.normalize();
    return out;
}

topological_type parse_type_spec(const std::string& spec) {
    topological_type t;
    int in_closed = 0, out_closed = 0, in_open = 0, out_open = 0;
    std::stringstream whole(spec);
    std::string part;
    while (std::getline(whole, part, '+')) {
        std::map<std::string, int> kv{{"g", 0}, {"in_closed", 0}, {"out_closed", 0},
                                      {"in_open", 0}, {"out_open", 0}, {"free", 0}};
        std::stringstream items(part);
        std::string item;
        while (std::getline(items, item, ',')) {
            item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
            if (item.empty()) continue;
            auto eq = item.find('=');
            if (eq == std::string::npos) fail(error_code::parse_error, "type item '" + item + "'");
            std::string key = item.substr(0, eq);
            if (key == "genus") key = "g";
            if (!kv.count(key)) fail(error_code::parse_error, "unknown type key '" + key + "'");
            try {
                std::size_t used = 0;
                int value = std::stoi(item.substr(eq + 1), &used);
                if (used != item.size() - eq - 1 || value < 0) throw std::invalid_argument("bad");
                kv[key] = value;
            } catch (const std::exception&) {
                fail(error_code::parse_error, "type value '" + item + "'");
            }
        }
        component_type c;
        c.genus = kv["g"];
        c.free_count = kv["free"];
        for (int k = 0; k < kv["in_closed"]; ++k) c.in_closed.push_back(in_closed++);
        for (int k = 0; k < kv["out_closed"]; ++k) c.out_closed.push_back(out_closed++);
        std::vector<open_token> circle;
        for (int k = 0; k < kv["in_open"]; ++k) circle.push_back({direction::in, in_open++});
        for (int k = 0; k < kv["out_open"]; ++k) circle.push_back({direction::out, out_open++});
        if (!circle.empty()) c.open_circles.push_back(std::move(circle));
        t.components.push_back(std::move(c));
    }
    if (t.components.empty()) fail(error_code::parse_error, "empty type");
    t.normalize();
    return t;
}

std::string type_spec_string(const topological_type& t) {
    std::ostringstream os;
    for (std::size_t k = 0; k < t.components.size(); ++k) {
        const auto& c = t.components[k];
        os << (k ? "+" : "") << "g=" << c.genus << ",in_closed=" << c.in_closed.size()
           << ",out_closed=" << c.out_closed.size() << ",in_open=" << c.in_open_count()
           << ",out_open=" << c.out_open_count() << ",free=" << c.free_count;
    }
    return os.str();
}

bool satisfies_positivity(const topological_type& t) {
    for (const auto& c : t.components)
        if (c.in_closed.empty() && c.open_circles.empty()) return false;
    return !t.components.empty();
}

}  // namespace ocfat

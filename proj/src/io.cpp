#include "ocfat/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ocfat/error.hpp"

namespace ocfat {

namespace {

template <class T>
T field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) fail(error_code::parse_error, std::string("missing field \"") + name + "\"");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception& e) {
        fail(error_code::parse_error, std::string("field \"") + name + "\": " + e.what());
    }
}

std::vector<int> optional_list(const json& j, const char* name) {
    if (!j.contains(name)) return {};
    return field<std::vector<int>>(j, name);
}

json label_fields(json j, const fat_graph& g, const label_map& label) {
    oc_graph o{g, label};
    j["in_leaves"] = o.in_leaves();
    j["out_leaves"] = o.out_leaves();
    j["closed_leaves"] = o.closed_leaves();
    return j;
}

}  // namespace

const char* kind_name(graph_kind k) {
    switch (k) {
        case graph_kind::fat: return "fat";
        case graph_kind::open_closed: return "open_closed";
        case graph_kind::black_white: return "black_white";
        case graph_kind::metric: return "metric";
    }
    return "?";
}

graph_kind detect_kind(const json& j) {
    if (!j.is_object()) fail(error_code::parse_error, "top level must be an object");
    if (j.contains("lengths")) return graph_kind::metric;
    if (j.contains("white_order")) return graph_kind::black_white;
    if (j.contains("in_leaves") || j.contains("out_leaves")) return graph_kind::open_closed;
    return graph_kind::fat;
}

json to_json(const fat_graph& g) {
    json j;
    j["half_edges"] = g.half_edge_count();
    j["involution"] = g.involution;
    j["sigma"] = g.sigma;
    j["source"] = g.source;
    std::vector<int> leaves;
    for (int v = 0; v < g.vertex_count; ++v)
        if (g.leaf[v]) leaves.push_back(v);
    j["leaves"] = leaves;
    j["vertices"] = g.vertex_count;
    return j;
}

json to_json(const oc_graph& o) { return label_fields(to_json(o.graph), o.graph, o.label); }

json to_json(const bw_graph& b) {
    json j = label_fields(to_json(b.graph), b.graph, b.label);
    std::vector<int> black;
    for (int v = 0; v < b.graph.vertex_count; ++v)
        if (!b.graph.leaf[v] && !b.is_white(v)) black.push_back(v);
    j["black"] = black;
    auto whites = b.white_order();
    std::vector<int> starts;
    for (int w : whites) starts.push_back(b.start[w]);
    j["white_order"] = whites;
    j["starts"] = starts;
    j["orientation_sign"] = b.orientation;
    return j;
}

json to_json(const metric_graph& m) {
    json j = to_json(m.graph);
    json lengths = json::object();
    for (const auto& [e, l] : m.lengths) lengths[std::to_string(e)] = l.get_str();
    j["lengths"] = lengths;
    return j;
}

fat_graph fat_graph_from_json(const json& j) {
    fat_graph g;
    int n = field<int>(j, "half_edges");
    g.involution = field<std::vector<int>>(j, "involution");
    g.sigma = field<std::vector<int>>(j, "sigma");
    g.source = field<std::vector<int>>(j, "source");
    if (n < 0 || static_cast<int>(g.involution.size()) != n || static_cast<int>(g.sigma.size()) != n ||
        static_cast<int>(g.source.size()) != n)
        fail(error_code::parse_error, "arrays must have \"half_edges\" entries");
    int nv = 0;
    for (int s : g.source) {
        if (s < 0) fail(error_code::parse_error, "negative vertex id");
        nv = std::max(nv, s + 1);
    }
    auto leaves = field<std::vector<int>>(j, "leaves");
    for (int v : leaves) {
        if (v < 0) fail(error_code::parse_error, "negative leaf id");
        nv = std::max(nv, v + 1);
    }
    if (j.contains("vertices")) {
        int declared = field<int>(j, "vertices");
        if (declared < nv) fail(error_code::parse_error, "\"vertices\" smaller than the ids in use");
        nv = declared;
    }
    g.vertex_count = nv;
    g.leaf.assign(nv, 0);
    for (int v : leaves) g.leaf[v] = 1;
    return g;
}

oc_graph oc_graph_from_json(const json& j) {
    auto g = fat_graph_from_json(j);
    return make_oc_graph(g, optional_list(j, "in_leaves"), optional_list(j, "out_leaves"),
                         optional_list(j, "closed_leaves"));
}

bw_graph bw_graph_from_json(const json& j) {
    auto g = fat_graph_from_json(j);
    auto whites = field<std::vector<int>>(j, "white_order");
    auto starts = field<std::vector<int>>(j, "starts");
    int sign = j.contains("orientation_sign") ? field<int>(j, "orientation_sign") : 1;
    if (sign != 1 && sign != -1) fail(error_code::parse_error, "\"orientation_sign\" must be 1 or -1");
    auto b = make_bw_graph(g, whites, starts, optional_list(j, "in_leaves"), optional_list(j, "out_leaves"),
                           optional_list(j, "closed_leaves"), sign);
    if (j.contains("black")) {
        std::set<int> black;
        for (int v : field<std::vector<int>>(j, "black")) black.insert(v);
        for (int v = 0; v < g.vertex_count; ++v) {
            bool expect = !g.leaf[v] && !b.is_white(v);
            if (expect != static_cast<bool>(black.count(v)))
                fail(error_code::parse_error, "\"black\" disagrees with leaves and white_order at vertex " + std::to_string(v));
        }
    }
    return b;
}

metric_graph metric_graph_from_json(const json& j) {
    metric_graph m;
    m.graph = oc_graph_from_json(j);
    const auto& lengths = j.at("lengths");
    if (!lengths.is_object()) fail(error_code::parse_error, "\"lengths\" must be an object");
    for (const auto& [k, v] : lengths.items()) {
        int e;
        try {
            std::size_t used = 0;
            e = std::stoi(k, &used);
            if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            fail(error_code::parse_error, "edge id \"" + k + "\"");
        }
        if (!v.is_string()) fail(error_code::parse_error, "length of edge " + k + " must be a \"num/den\" string");
        m.lengths[e] = parse_rational(v.get<std::string>());
    }
    return m;
}

mpq_class parse_rational(const std::string& s) {
    auto ok = !s.empty() && s.find_first_not_of("-0123456789/") == std::string::npos;
    mpq_class q;
    if (ok) {
        try {
            q = mpq_class(s, 10);
        } catch (const std::exception&) {
            ok = false;
        }
    }
    if (!ok || q.get_den() == 0) fail(error_code::parse_error, "rational \"" + s + "\"");
    q.canonicalize();
    return q;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(error_code::parse_error, e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(error_code::parse_error, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

std::string to_dot(const fat_graph& g, const label_map& labels, const std::vector<int>& white_index,
                   const std::vector<int>& starts) {
    std::ostringstream out;
    out << "graph fatgraph {\n";
    for (int v = 0; v < g.vertex_count; ++v) {
        bool white = !white_index.empty() && white_index[v] >= 0;
        out << "  v" << v << " [";
        if (white) {
            out << "shape=doublecircle, label=\"w" << white_index[v] << "\"";
        } else if (g.leaf[v]) {
            std::string text = (!labels.empty() && labels[v]) ? to_string(*labels[v]) : "";
            out << "shape=plaintext, label=\"" << text << "\"";
        } else {
            out << "shape=circle, style=filled, fillcolor=black, width=0.15, label=\"\"";
        }
        out << "];\n";
    }
    std::set<int> bold(starts.begin(), starts.end());
    for (int h = 0; h < g.half_edge_count(); ++h) {
        int o = g.involution[h];
        if (h > o) continue;
        out << "  v" << g.source[h] << " -- v" << g.source[o] << " [label=\"" << h << "/" << o << "\"";
        if (bold.count(h) || bold.count(o)) out << ", style=bold";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const oc_graph& g) { return to_dot(g.graph, g.label); }

std::string to_dot(const bw_graph& b) {
    std::vector<int> starts;
    for (int v = 0; v < b.graph.vertex_count; ++v)
        if (b.start[v] >= 0) starts.push_back(b.start[v]);
    return to_dot(b.graph, b.label, b.white_index, starts);
}

std::string to_dot(const metric_graph& m) {
    auto text = to_dot(m.graph);
    // lengths as edge labels
    std::ostringstream out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find("[label=\"");
        auto dash = line.find(" -- ");
        if (pos != std::string::npos && dash != std::string::npos) {
            auto slash = line.find('/', pos);
            int h = std::stoi(line.substr(pos + 8, slash - pos - 8));
            line.insert(line.find('"', pos + 8), " (" + m.length(h).get_str() + ")");
        }
        out << line << "\n";
    }
    return out.str();
}

}  // namespace ocfat

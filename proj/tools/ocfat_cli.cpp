#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ocfat/complex.hpp"
#include "ocfat/compose.hpp"
#include "ocfat/io.hpp"

using namespace ocfat;

namespace {

struct options {
    std::string format = "table";
    int jobs = 1;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) fail(error_code::parse_error, "cannot write " + path);
    out << text;
}

topological_type read_type(const std::string& spec) {
    auto t = parse_type_spec(spec);
    if (!satisfies_positivity(t)) fail(error_code::unsupported_type, "every component needs an incoming or open boundary");
    return t;
}

std::string oc_key(const oc_graph& o) {
    std::vector<std::int64_t> colors(o.graph.vertex_count);
    for (int v = 0; v < o.graph.vertex_count; ++v) {
        const auto& l = o.label[v];
        colors[v] = l ? 2 + 1000 * (2 * static_cast<int>(l->dir) + static_cast<int>(l->kind)) + l->index : o.graph.leaf[v];
    }
    return canonical_form(o.graph, colors).key;
}

json surface_json(const fat_graph& g) {
    auto s = surface_invariants(g);
    return {{"vertices", g.vertex_count}, {"half_edges", g.half_edge_count()}, {"edges", g.edge_count()},
            {"boundary_cycles", s.boundary_count}, {"genus", s.genus}, {"euler_characteristic", s.euler_characteristic},
            {"components", s.components}};
}

json validate_file(const json& j) {
    auto kind = detect_kind(j);
    switch (kind) {
        case graph_kind::fat: validate(fat_graph_from_json(j)); break;
        case graph_kind::open_closed: validate_oc(oc_graph_from_json(j)); break;
        case graph_kind::black_white: validate_bw(bw_graph_from_json(j)); break;
        case graph_kind::metric: validate_metric(metric_graph_from_json(j)); break;
    }
    return {{"kind", kind_name(kind)}, {"valid", true}};
}

json info_file(const json& j) {
    auto kind = detect_kind(j);
    json out;
    out["kind"] = kind_name(kind);
    if (kind == graph_kind::fat) {
        auto g = fat_graph_from_json(j);
        validate(g);
        out.update(surface_json(g));
        out["canonical_key"] = canonical_form(g).key;
    } else if (kind == graph_kind::black_white) {
        auto b = bw_graph_from_json(j);
        validate_bw(b);
        out.update(surface_json(b.graph));
        out["type"] = type_spec_string(topological_type_of(b));
        out["type_detail"] = to_string(topological_type_of(b));
        out["degree"] = degree(b);
        auto c = canonicalize(b);
        out["canonical_key"] = c.key;
        out["canonical_sign"] = c.zero ? 0 : c.sign;
    } else {
        auto m = kind == graph_kind::metric ? metric_graph_from_json(j) : metric_graph{oc_graph_from_json(j), {}};
        if (kind == graph_kind::metric)
            validate_metric(m);
        else
            validate_oc(m.graph);
        const auto& o = m.graph;
        out.update(surface_json(o.graph));
        out["type"] = type_spec_string(topological_type_of(o));
        out["type_detail"] = to_string(topological_type_of(o));
        out["admissible"] = is_admissible(o);
        auto r = mixed_degree(o);
        out["mixed_degree"] = r.mixed_degree;
        out["bw_degree"] = r.bw_degree;
        out["essentially_trivalent"] = r.essentially_trivalent;
        out["canonical_key"] = oc_key(o);
        if (kind == graph_kind::metric) {
            json cyc = json::object();
            for (int v : o.in_leaves())
                if (o.label[v]->kind == boundary_kind::closed) cyc[to_string(*o.label[v])] = incoming_cycle_length(m, v).get_str();
            out["incoming_cycle_lengths"] = cyc;
        }
    }
    return out;
}

void print_table(const json& j) {
    for (const auto& [k, v] : j.items()) {
        std::cout << k << ": ";
        if (v.is_string())
            std::cout << v.get<std::string>();
        else if (v.is_object() && !v.empty()) {
            bool first = true;
            for (const auto& [a, b] : v.items()) {
                std::cout << (first ? "" : ", ") << a << "=" << (b.is_string() ? b.get<std::string>() : b.dump());
                first = false;
            }
        } else
            std::cout << v.dump();
        std::cout << "\n";
    }
}

std::string dense_matrix(const sparse_matrix& m) {
    std::vector<std::vector<long long>> rows(m.rows, std::vector<long long>(m.cols, 0));
    for (int c = 0; c < m.cols; ++c)
        for (auto [r, v] : m.columns[c]) rows[r][c] = v;
    std::ostringstream os;
    for (const auto& row : rows) {
        for (int c = 0; c < m.cols; ++c) os << (c ? " " : "") << row[c];
        os << "\n";
    }
    return os.str();
}

json homology_json(const std::vector<homology_group>& hs) {
    json out = json::array();
    for (const auto& h : hs) {
        json tors = json::array();
        for (const auto& t : h.torsion) tors.push_back(t.get_str());
        out.push_back({{"degree", h.degree}, {"generators", h.generators}, {"betti", h.betti}, {"torsion", tors}});
    }
    return out;
}

std::string dot_of(const json& j) {
    switch (detect_kind(j)) {
        case graph_kind::fat: return to_dot(fat_graph_from_json(j));
        case graph_kind::open_closed: return to_dot(oc_graph_from_json(j));
        case graph_kind::black_white: return to_dot(bw_graph_from_json(j));
        case graph_kind::metric: return to_dot(metric_graph_from_json(j));
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open-closed fat graphs: validation, enumeration, homology and gluing"};
    app.require_subcommand(1);
    options opt;
    auto add_format = [&](CLI::App* c) {
        c->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    };
    auto add_jobs = [&](CLI::App* c) {
        c->add_option("--jobs", opt.jobs, "Enumeration worker threads")->check(CLI::PositiveNumber);
    };

    std::string file, file2, out_path, type_spec, matrix_dir;
    int max_degree = -1;
    bool with_dot = false;

    auto* validate_cmd = app.add_subcommand("validate", "Check the invariants of a graph file");
    validate_cmd->add_option("file", file)->required();
    add_format(validate_cmd);

    auto* info_cmd = app.add_subcommand("info", "Print invariants, type and degrees of a graph file");
    info_cmd->add_option("file", file)->required();
    add_format(info_cmd);

    auto* enum_cmd = app.add_subcommand("enumerate", "List the generators of the complex for a type");
    enum_cmd->add_option("--type", type_spec, "Type spec")->required();
    enum_cmd->add_option("--max-degree", max_degree, "Highest degree to list");
    add_format(enum_cmd);
    add_jobs(enum_cmd);

    auto* hom_cmd = app.add_subcommand("homology", "Integral homology of the complex for a type");
    hom_cmd->add_option("--type", type_spec, "Type spec")->required();
    hom_cmd->add_option("--emit-matrices", matrix_dir, "Directory for boundary matrices");
    add_format(hom_cmd);
    add_jobs(hom_cmd);

    auto* compose_cmd = app.add_subcommand("compose", "Chain-level composition of two black and white graphs");
    compose_cmd->add_option("g2", file, "Outer graph")->required();
    compose_cmd->add_option("g1", file2, "Inner graph")->required();
    compose_cmd->add_flag("--dot", with_dot, "Append a DOT graph per term");
    add_format(compose_cmd);

    auto* glue_cmd = app.add_subcommand("glue-metric", "Glue two metric admissible graphs");
    glue_cmd->add_option("m2", file, "Outer graph")->required();
    glue_cmd->add_option("m1", file2, "Inner graph")->required();
    glue_cmd->add_option("-o,--output", out_path, "Output file");

    auto* dot_cmd = app.add_subcommand("export-dot", "Write a graph file as DOT");
    dot_cmd->add_option("file", file)->required();
    dot_cmd->add_option("-o,--output", out_path, "Output file");

    auto* dsq_cmd = app.add_subcommand("dsq-check", "Verify that the differential squares to zero");
    dsq_cmd->add_option("--type", type_spec, "Type spec")->required();
    add_jobs(dsq_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    bool as_json = opt.format == "json";
    try {
        if (validate_cmd->parsed()) {
            auto r = validate_file(read_json_file(file));
            if (as_json)
                std::cout << r.dump(2) << "\n";
            else
                std::cout << "OK " << r["kind"].get<std::string>() << "\n";
        } else if (info_cmd->parsed()) {
            auto r = info_file(read_json_file(file));
            if (as_json)
                std::cout << r.dump(2) << "\n";
            else
                print_table(r);
        } else if (enum_cmd->parsed()) {
            auto t = read_type(type_spec);
            auto gens = enumerate_generators(t, max_degree, opt.jobs);
            if (as_json) {
                json out = {{"type", type_spec_string(t)}, {"degrees", json::array()}};
                for (std::size_t d = 0; d < gens.keys.size(); ++d) {
                    json graphs = json::array();
                    for (const auto& g : gens.graphs[d]) graphs.push_back(to_json(g));
                    out["degrees"].push_back({{"degree", d}, {"count", gens.keys[d].size()}, {"graphs", graphs}});
                }
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "type " << to_string(t) << "\n";
                for (std::size_t d = 0; d < gens.keys.size(); ++d) {
                    std::cout << "degree " << d << ": " << gens.keys[d].size() << "\n";
                    for (const auto& k : gens.keys[d]) std::cout << "  " << k << "\n";
                }
            }
        } else if (hom_cmd->parsed()) {
            auto t = read_type(type_spec);
            auto c = build_complex(t, opt.jobs);
            auto hs = homology(c);
            if (!matrix_dir.empty()) {
                std::filesystem::create_directories(matrix_dir);
                for (std::size_t n = 1; n < c.boundary.size(); ++n)
                    write_text((std::filesystem::path(matrix_dir) / ("d" + std::to_string(n) + ".txt")).string(),
                               dense_matrix(c.boundary[n]));
            }
            if (as_json)
                std::cout << json{{"type", type_spec_string(t)}, {"homology", homology_json(hs)}}.dump(2) << "\n";
            else
                std::cout << format_homology_table(hs);
        } else if (compose_cmd->parsed()) {
            auto g2 = bw_graph_from_json(read_json_file(file));
            auto g1 = bw_graph_from_json(read_json_file(file2));
            validate_bw(g2);
            validate_bw(g1);
            auto s = compose(g2, g1);
            if (as_json) {
                json terms = json::array();
                for (const auto& [k, t] : s.terms())
                    terms.push_back({{"coefficient", t.coefficient}, {"key", k}, {"graph", to_json(t.graph)}});
                std::cout << json{{"terms", terms}}.dump(2) << "\n";
            } else {
                std::cout << s.to_string();
            }
            if (with_dot)
                for (const auto& [k, t] : s.terms()) std::cout << "// " << k << "\n" << to_dot(t.graph);
        } else if (glue_cmd->parsed()) {
            auto m2 = metric_graph_from_json(read_json_file(file));
            auto m1 = metric_graph_from_json(read_json_file(file2));
            validate_metric(m2);
            validate_metric(m1);
            auto m = compose(m2, m1);
            write_text(out_path, to_json(m).dump(2) + "\n");
        } else if (dot_cmd->parsed()) {
            write_text(out_path, dot_of(read_json_file(file)));
        } else if (dsq_cmd->parsed()) {
            auto c = build_complex(read_type(type_spec), opt.jobs);
            int bad = check_d_squared(c);
            if (bad >= 0) {
                std::cout << "FAIL degree " << bad << "\n";
                return 1;
            }
            std::cout << "OK\n";
        }
    } catch (const graph_error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

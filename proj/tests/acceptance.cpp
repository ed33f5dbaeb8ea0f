#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "examples.hpp"
#include "ocfat/complex.hpp"
#include "ocfat/compose.hpp"
#include "ocfat/metric.hpp"

using namespace ocfat;
using namespace ocfat::examples;

namespace {

struct outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, double limit_seconds, const std::function<outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    outcome r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = limit_seconds <= 0 || s <= limit_seconds;
    bool ok = r.pass && in_time;
    failures += !ok;
    std::ostringstream line;
    line << "criterion " << std::setw(2) << id << ": " << (ok ? "PASS" : "FAIL") << "  " << name << "  [" << std::fixed
         << std::setprecision(2) << s << " s";
    if (limit_seconds > 0) line << " / " << limit_seconds << " s";
    line << "]";
    if (!r.detail.empty()) line << "  " << r.detail;
    if (r.pass && !in_time) line << "  over time";
    std::cout << line.str() << std::endl;
}

std::vector<bw_graph> pool(const std::string& spec) {
    std::vector<bw_graph> out;
    for (const auto& level : enumerate_generators(parse_type_spec(spec)).graphs)
        out.insert(out.end(), level.begin(), level.end());
    return out;
}

formal_sum single(const bw_graph& g) {
    formal_sum s;
    s.add(g);
    return s;
}

std::string betti_torsion(const std::vector<homology_group>& h) {
    std::ostringstream os;
    for (const auto& x : h) {
        os << "H" << x.degree << "=";
        if (x.betti == 0 && x.torsion.empty()) os << "0";
        for (int k = 0; k < x.betti; ++k) os << (k ? "+" : "") << "Z";
        for (std::size_t k = 0; k < x.torsion.size(); ++k)
            os << ((x.betti || k) ? "+" : "") << "Z/" << x.torsion[k].get_str();
        os << " ";
    }
    auto s = os.str();
    if (!s.empty()) s.pop_back();
    return s;
}

// exact expected groups; degrees past the list must vanish
bool homology_is(const std::vector<homology_group>& h, const std::vector<std::pair<int, std::vector<long>>>& want) {
    for (std::size_t n = 0; n < h.size(); ++n) {
        std::pair<int, std::vector<long>> w{0, {}};
        if (n < want.size()) w = want[n];
        if (h[n].betti != w.first || h[n].torsion.size() != w.second.size()) return false;
        for (std::size_t k = 0; k < w.second.size(); ++k)
            if (h[n].torsion[k] != w.second[k]) return false;
    }
    return h.size() >= want.size();
}

std::vector<std::int64_t> label_colors(const oc_graph& o) {
    std::vector<std::int64_t> c(o.graph.vertex_count);
    for (int v = 0; v < o.graph.vertex_count; ++v) {
        const auto& l = o.label[v];
        c[v] = l ? 2 + 1000 * (2 * static_cast<int>(l->dir) + static_cast<int>(l->kind)) + l->index : o.graph.leaf[v];
    }
    return c;
}

struct sweep_result {
    int types = 0, checked = 0, over_budget = 0, dsq_failures = 0;
    long generators = 0, round_trip_failures = 0;
    double correspondence_seconds = 0;
};

constexpr int sweep_bound = 24;
constexpr long sweep_budget = 20000;

sweep_result sweep() {
    sweep_result r;
    auto types = small_types(sweep_bound, true);
    r.types = static_cast<int>(types.size());
    for (const auto& t : types) {
        chain_complex c;
        try {
            c = build_complex(enumerate_generators(t, -1, 1, sweep_budget), t);
        } catch (const graph_error& e) {
            if (e.code() != error_code::generator_budget) throw;
            ++r.over_budget;
            continue;
        }
        ++r.checked;
        r.dsq_failures += check_d_squared(c) != -1;
        auto t0 = std::chrono::steady_clock::now();
        for (const auto& level : c.generators.graphs)
            for (const auto& g : level) {
                ++r.generators;
                auto o = expand_white(g);
                bool ok = canonical_key(collapse_white(o)) == canonical_key(g) && bw_degree(o) == degree(g);
                r.round_trip_failures += !ok;
            }
        r.correspondence_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return r;
}

}  // namespace

int main() {
    run(1, "boundary cycles of theta and figure eight graphs", 1, [] {
        auto count = [](const fat_graph& g) { return static_cast<int>(boundary_cycles(g).size()); };
        auto genus = [](const fat_graph& g) { return surface_invariants(g).genus; };
        bool ok = count(planar_theta()) == 3 && genus(planar_theta()) == 0 && count(nonplanar_theta()) == 1 &&
                  genus(nonplanar_theta()) == 1 && count(figure_eight_interleaved()) == 1 &&
                  genus(figure_eight_interleaved()) == 1 && count(figure_eight_nested()) == 3 &&
                  genus(figure_eight_nested()) == 0;
        std::ostringstream os;
        os << "cycles " << count(planar_theta()) << "," << count(nonplanar_theta()) << ","
           << count(figure_eight_interleaved()) << "," << count(figure_eight_nested());
        return outcome{ok, os.str()};
    });

    sweep_result sw;
    run(2, "d^2 = 0 on every type with at most 24 half edges", 300, [&] {
        sw = sweep();
        std::ostringstream os;
        os << sw.checked << " of " << sw.types << " types checked (" << sw.generators << " generators), "
           << sw.over_budget << " over the " << sweep_budget << "-generator budget, " << sw.dsq_failures
           << " failures";
        return outcome{sw.dsq_failures == 0 && sw.checked > 0, os.str()};
    });

    run(3, "annulus homology", 10, [] {
        auto h = homology(build_complex(parse_type_spec("g=0,in_closed=1,out_closed=1")));
        return outcome{homology_is(h, {{1, {}}, {1, {}}}), betti_torsion(h)};
    });

    run(4, "disk with one incoming open boundary", 1, [] {
        auto h = homology(build_complex(parse_type_spec("g=0,in_open=1")));
        return outcome{homology_is(h, {{1, {}}}), betti_torsion(h)};
    });

    run(5, "genus one with one incoming closed boundary", 120, [] {
        auto h = homology(build_complex(parse_type_spec("g=1,in_closed=1")));
        return outcome{homology_is(h, {{1, {}}, {1, {}}, {0, {}}}), betti_torsion(h)};
    });

    run(6, "mixed degree of l_n and l~_n is n - 1 for n = 2..6", 0, [] {
        std::ostringstream os;
        bool ok = true;
        for (int n = 2; n <= 6; ++n) {
            int a = mixed_degree(l_graph(n)).mixed_degree, b = mixed_degree(l_tilde_graph(n)).mixed_degree;
            ok = ok && a == n - 1 && b == n - 1;
            os << (n > 2 ? " " : "") << n << ":" << a << "/" << b;
        }
        return outcome{ok, os.str()};
    });

    run(7, "collapse_white o expand_white = id and bw degree = degree", 0, [&] {
        std::ostringstream os;
        os << sw.generators << " generators, " << sw.round_trip_failures << " failures, " << std::fixed
           << std::setprecision(2) << sw.correspondence_seconds << " s";
        return outcome{sw.generators > 0 && sw.round_trip_failures == 0, os.str()};
    });

    auto annulus = pool("g=0,in_closed=1,out_closed=1");
    auto pants = pool("g=0,in_closed=1,out_closed=2");
    auto copants = pool("g=0,in_closed=2,out_closed=1");
    auto open_y = pool("g=0,in_open=1,out_open=2");
    auto open_co = pool("g=0,in_open=2,out_open=1");
    auto strip = pool("g=0,in_open=1,out_open=1");
    auto mixed = pool("g=0,in_open=1,out_open=1,out_closed=1");
    auto mixed_in = pool("g=0,in_closed=1,in_open=1");

    run(8, "composition is a chain map", 300, [&] {
        long pairs = 0, bad = 0;
        auto check = [&](const std::vector<bw_graph>& p2, const std::vector<bw_graph>& p1) {
            for (const auto& a : p2)
                for (const auto& b : p1) {
                    ++pairs;
                    auto lhs = differential(compose(a, b));
                    auto rhs = compose_chains(differential(a), single(b));
                    rhs.add(compose_chains(single(a), differential(b)), degree(a) % 2 ? -1 : 1);
                    bad += !(lhs == rhs);
                }
        };
        check(annulus, annulus);
        check(pants, annulus);
        check(annulus, copants);
        check(pants, copants);
        check(copants, pants);
        check(open_co, open_y);
        check(open_y, open_co);
        check(mixed, strip);
        check(mixed_in, mixed);
        std::ostringstream os;
        os << pairs << " pairs, " << bad << " failures";
        return outcome{bad == 0, os.str()};
    });

    run(9, "composition is associative", 0, [&] {
        long triples = 0, bad = 0;
        auto check = [&](const std::vector<bw_graph>& p3, const std::vector<bw_graph>& p2,
                         const std::vector<bw_graph>& p1) {
            for (const auto& c : p3)
                for (const auto& b : p2)
                    for (const auto& a : p1) {
                        ++triples;
                        bad += !(compose_chains(compose(c, b), single(a)) == compose_chains(single(c), compose(b, a)));
                    }
        };
        check(annulus, annulus, annulus);
        check(pants, annulus, annulus);
        check(annulus, copants, pants);
        check(copants, pants, annulus);
        check(open_co, open_y, strip);
        check(strip, open_co, open_y);
        check(mixed, strip, strip);
        check(mixed_in, mixed, strip);
        std::ostringstream os;
        os << triples << " triples, " << bad << " failures";
        return outcome{bad == 0, os.str()};
    });

    run(10, "metric gluing of random rational metrics", 30, [&] {
        std::mt19937_64 rng(2024);
        struct pair_spec {
            const std::vector<bw_graph>* outer;
            const std::vector<bw_graph>* inner;
        };
        std::vector<pair_spec> pairs{{&annulus, &annulus}, {&pants, &annulus}, {&copants, &pants},
                                     {&pants, &copants}, {&open_co, &open_y}, {&mixed, &strip},
                                     {&mixed_in, &mixed}};
        long cases = 0, bad = 0;
        for (const auto& p : pairs) {
            const auto& g2 = p.outer->front();
            const auto& g1 = p.inner->back();
            auto o2 = expand_white(g2), o1 = expand_white(g1);
            for (int k = 0; k < 20; ++k) {
                ++cases;
                auto m2 = random_metric(o2, rng), m1 = random_metric(o1, rng);
                validate_metric(m2);
                validate_metric(m1);
                auto r = compose(m2, m1);
                bool ok = true;
                try {
                    validate_metric(r);
                } catch (const graph_error&) {
                    ok = false;
                }
                for (const auto& c : admissible_cycles(r.graph)) {
                    mpq_class sum = 0;
                    for (int h : c.circle) sum += r.length(h);
                    ok = ok && sum == 1;
                }
                auto t2 = topological_type_of(o2), t1 = topological_type_of(o1);
                ok = ok && topological_type_of(r.graph) == compose_types(t2, t1);
                int chi = surface_invariants(r.graph.graph).euler_characteristic;
                int expect = surface_invariants(o2.graph).euler_characteristic +
                             surface_invariants(o1.graph).euler_characteristic - t1.out_open_count();
                ok = ok && chi == expect;
                bad += !ok;
            }
        }
        std::ostringstream os;
        os << cases << " metrics over " << pairs.size() << " pairs, " << bad << " failures";
        return outcome{bad == 0, os.str()};
    });

    run(11, "annulus idempotent", 0, [&] {
        const auto& a = annulus.front();
        auto s = compose(a, a);
        bool ok = s.size() == 1 && s.terms().begin()->first == canonical_key(a) &&
                  s.terms().begin()->second.coefficient == 1;
        return outcome{ok, "A o A = " + s.to_string().substr(0, s.to_string().size() - 1)};
    });

    run(12, "canonical form under random relabeling", 60, [&] {
        struct sample {
            fat_graph graph;
            std::vector<std::int64_t> colors;
            std::string invariant;
        };
        std::vector<sample> samples;
        auto add_fat = [&](const fat_graph& g) {
            auto s = surface_invariants(g);
            samples.push_back({g, {}, std::to_string(s.boundary_count) + "/" + std::to_string(s.genus)});
        };
        auto add_oc = [&](const oc_graph& o) {
            auto s = surface_invariants(o.graph);
            auto c = label_colors(o);
            std::multiset<std::int64_t> labels(c.begin(), c.end());
            std::string inv = std::to_string(s.boundary_count) + "/" + std::to_string(s.genus) + "/";
            for (auto x : labels) inv += std::to_string(x) + ",";
            samples.push_back({o.graph, c, inv});
        };
        add_fat(planar_theta());
        add_fat(nonplanar_theta());
        add_fat(figure_eight_interleaved());
        add_fat(figure_eight_nested());
        add_fat(one_leaf_corolla());
        add_oc(l_graph(3));
        add_oc(l_tilde_graph(4));
        add_oc(minimal_annulus_oc());
        add_oc(expand_white(pants.back()));
        add_oc(expand_white(pool("g=1,in_closed=1").back()));

        std::mt19937 rng(99);
        long relabelings = 0, unstable = 0;
        std::vector<std::string> keys;
        for (const auto& s : samples) {
            auto key = canonical_form(s.graph, s.colors).key;
            keys.push_back(key);
            for (int k = 0; k < 10000; ++k) {
                perm vmap, hmap;
                auto r = random_relabel(s.graph, rng, &vmap, &hmap);
                std::vector<std::int64_t> rc;
                if (!s.colors.empty()) {
                    rc.assign(s.colors.size(), 0);
                    for (std::size_t v = 0; v < s.colors.size(); ++v) rc[vmap[v]] = s.colors[v];
                }
                ++relabelings;
                unstable += canonical_form(r, rc).key != key;
            }
        }
        int collisions = 0, distinct_pairs = 0;
        for (std::size_t i = 0; i < samples.size(); ++i)
            for (std::size_t j = i + 1; j < samples.size(); ++j) {
                if (samples[i].invariant == samples[j].invariant) continue;
                ++distinct_pairs;
                collisions += keys[i] == keys[j];
            }
        std::ostringstream os;
        os << relabelings << " relabelings, " << unstable << " unstable keys, " << distinct_pairs
           << " distinct-invariant pairs, " << collisions << " collisions";
        return outcome{unstable == 0 && collisions == 0, os.str()};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}

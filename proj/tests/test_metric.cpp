#include "doctest.h"
#include "examples.hpp"
#include "ocfat/complex.hpp"
#include "ocfat/metric.hpp"

using namespace ocfat;
using namespace ocfat::examples;

namespace {

error_code code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const graph_error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return error_code::parse_error;
}

metric_graph with_lengths(const oc_graph& o, const std::map<int, mpq_class>& inner) {
    metric_graph m{o, {}};
    for (int h = 0; h < o.graph.half_edge_count(); ++h) {
        int e = edge_id(o.graph, h);
        auto it = inner.find(e);
        m.lengths[e] = it == inner.end() ? mpq_class(1) : it->second;
    }
    return m;
}

metric_graph unit_annulus() { return with_lengths(minimal_annulus_oc(), {}); }

// l_n with circle edge ids 0, 2, ... carrying the given lengths
metric_graph circle_metric(int n, const std::vector<mpq_class>& lengths) {
    auto o = l_graph(n);
    std::map<int, mpq_class> inner;
    for (int i = 0; i < n; ++i) inner[edge_id(o.graph, 2 * i)] = lengths[i];
    return with_lengths(o, inner);
}

}  // namespace

TEST_CASE("validate_metric") {
    CHECK_NOTHROW(validate_metric(unit_annulus()));
    CHECK_NOTHROW(validate_metric(circle_metric(3, {mpq_class(1, 2), mpq_class(1, 4), mpq_class(1, 4)})));
    CHECK(code_of([] { validate_metric(circle_metric(3, {mpq_class(1, 2), mpq_class(1, 2), mpq_class(1, 2)})); }) ==
          error_code::cycle_length_not_one);

    auto m = unit_annulus();
    m.lengths[0] = mpq_class(1, 2);
    CHECK(code_of([&] { validate_metric(m); }) == error_code::leaf_not_unit);

    auto n = circle_metric(3, {mpq_class(1, 2), mpq_class(1, 4), mpq_class(1, 4)});
    n.lengths[0] = -1;
    CHECK(code_of([&] { validate_metric(n); }) == error_code::length_out_of_range);

    // the whole circle at length zero is not a forest
    auto z = circle_metric(2, {0, 0});
    CHECK(code_of([&] { validate_metric(z); }) == error_code::zero_set_not_forest);
}

TEST_CASE("normalize collapses zero edges only") {
    auto m = circle_metric(3, {mpq_class(1, 2), mpq_class(1, 2), 0});
    REQUIRE_NOTHROW(validate_metric(m));
    auto n = normalize(m);
    CHECK(n.graph.graph.vertex_count == m.graph.graph.vertex_count - 1);
    std::vector<mpq_class> before, after;
    for (const auto& [e, l] : m.lengths)
        if (l != 0) before.push_back(l);
    for (const auto& [e, l] : n.lengths) after.push_back(l);
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    CHECK(before == after);

    auto p = circle_metric(3, {mpq_class(1, 2), mpq_class(1, 4), mpq_class(1, 4)});
    CHECK(normalize(p) == p);

    auto q = circle_metric(4, {1, 0, 0, 0});
    auto nq = normalize(q);
    CHECK(nq.graph.graph.vertex_count == q.graph.graph.vertex_count - 3);
}

TEST_CASE("incoming cycle length") {
    // triangle with the closed incoming leaf inside
    auto t = l_tilde_graph(3);
    int adm = t.out_leaves()[0];
    oc_graph tri = make_oc_graph(t.graph, {adm}, {}, {adm});
    std::map<int, mpq_class> third;
    for (int i = 0; i < 3; ++i) third[edge_id(tri.graph, 2 * i)] = mpq_class(1, 3);
    CHECK(incoming_cycle_length(with_lengths(tri, third), adm) == 1);

    // loop A and bridge B at v, loop C at w; the leaf's cycle runs A once, B twice, C once
    auto g = from_rotation({{0, 2, 3, 4}, {1}, {5, 6, 7}}, {1, 0, 3, 2, 5, 4, 7, 6}, {1});
    auto o = make_oc_graph(g, {1}, {}, {1});
    auto m = with_lengths(o, {{2, mpq_class(1, 4)}, {4, mpq_class(1, 2)}, {6, mpq_class(1, 8)}});
    CHECK(incoming_cycle_length(m, 1) == mpq_class(11, 8));

    CHECK(code_of([] { incoming_cycle_length(unit_annulus(), 2); }) == error_code::leaf_not_closed_incoming);
}

TEST_CASE("gluing annuli") {
    auto a = unit_annulus();
    auto r = compose(a, a);
    REQUIRE_NOTHROW(validate_metric(r));
    CHECK(topological_type_of(r.graph) == parse_type_spec("g=0,in_closed=1,out_closed=1"));
    auto cycles = admissible_cycles(r.graph);
    REQUIRE(cycles.size() == 1);
    REQUIRE(cycles[0].circle.size() == 1);
    CHECK(r.length(cycles[0].circle[0]) == 1);
    CHECK(incoming_cycle_length(r, r.graph.in_leaves()[0]) == 1);
}

TEST_CASE("a two edge circle wraps once onto a one edge cycle") {
    auto m1 = circle_metric(2, {mpq_class(1, 2), mpq_class(1, 2)});
    REQUIRE_NOTHROW(validate_metric(m1));
    auto r = compose(unit_annulus(), m1);
    REQUIRE_NOTHROW(validate_metric(r));
    auto cycles = admissible_cycles(r.graph);
    REQUIRE(cycles.size() == 1);
    REQUIRE(cycles[0].circle.size() == 2);
    for (int h : cycles[0].circle) CHECK(r.length(h) == mpq_class(1, 2));
    CHECK(topological_type_of(r.graph) == topological_type_of(m1.graph));
}

TEST_CASE("count mismatch and open gluing") {
    auto strip = degree_zero_generators(parse_type_spec("g=0,in_open=1,out_open=1"));
    REQUIRE(strip.size() == 1);
    std::mt19937_64 rng(1);
    auto s = random_metric(expand_white(strip[0]), rng);
    CHECK(code_of([&] { compose(s, unit_annulus()); }) == error_code::count_mismatch);
    auto ss = compose(s, s);
    REQUIRE_NOTHROW(validate_metric(ss));
    CHECK(topological_type_of(ss.graph) == parse_type_spec("g=0,in_open=1,out_open=1"));
}

TEST_CASE("random metrics glue to the composite type") {
    std::mt19937_64 rng(42);
    auto pool = [](const char* spec) {
        std::vector<oc_graph> out;
        for (const auto& level : enumerate_generators(parse_type_spec(spec)).graphs)
            for (const auto& g : level) out.push_back(expand_white(g));
        return out;
    };
    auto p1 = pool("g=0,in_closed=1,out_closed=2");
    auto p2 = pool("g=0,in_closed=2,out_closed=1");
    for (int k = 0; k < 40; ++k) {
        auto m1 = random_metric(p1[k % p1.size()], rng);
        auto m2 = random_metric(p2[(k * 7) % p2.size()], rng);
        REQUIRE_NOTHROW(validate_metric(m1));
        REQUIRE_NOTHROW(validate_metric(m2));
        auto r = compose(m2, m1);
        CHECK_NOTHROW(validate_metric(r));
        auto want = compose_types(topological_type_of(m2.graph), topological_type_of(m1.graph));
        CHECK(topological_type_of(r.graph) == want);
        CHECK(surface_invariants(r.graph.graph).euler_characteristic ==
              surface_invariants(m1.graph.graph).euler_characteristic +
                  surface_invariants(m2.graph.graph).euler_characteristic);
    }
}

#include "doctest.h"
#include "examples.hpp"
#include "ocfat/complex.hpp"
#include "ocfat/io.hpp"

using namespace ocfat;
using namespace ocfat::examples;

TEST_CASE("fat graph json round trip") {
    auto g = nonplanar_theta();
    auto j = to_json(g);
    CHECK(detect_kind(j) == graph_kind::fat);
    CHECK(fat_graph_from_json(parse_json(j.dump())) == g);
    CHECK(j.begin().key() == "half_edges");
}

TEST_CASE("labeled graph round trips keep the canonical form") {
    for (const auto& level : enumerate_generators(parse_type_spec("g=0,in_closed=1,out_closed=2")).graphs)
        for (const auto& b : level) {
            auto j = parse_json(to_json(b).dump());
            CHECK(detect_kind(j) == graph_kind::black_white);
            auto back = bw_graph_from_json(j);
            CHECK(back == b);
            CHECK(canonicalize(back).key == canonicalize(b).key);

            auto o = expand_white(b);
            auto oj = parse_json(to_json(o).dump());
            CHECK(detect_kind(oj) == graph_kind::open_closed);
            CHECK(oc_graph_from_json(oj) == o);

            std::mt19937_64 rng(3);
            auto m = random_metric(o, rng);
            auto mj = parse_json(to_json(m).dump());
            CHECK(detect_kind(mj) == graph_kind::metric);
            CHECK(metric_graph_from_json(mj) == m);
        }
}

TEST_CASE("parse errors") {
    auto expect_parse_error = [](const std::function<void()>& f) {
        try {
            f();
            FAIL("expected ParseError");
        } catch (const graph_error& e) {
            CHECK(e.code() == error_code::parse_error);
        }
    };
    expect_parse_error([] { parse_json("{\"half_edges\": "); });
    expect_parse_error([] { fat_graph_from_json(parse_json("{\"half_edges\": 2, \"involution\": [1, 0]}")); });
    expect_parse_error(
        [] { fat_graph_from_json(parse_json(R"({"half_edges": 3, "involution": [1, 0], "sigma": [0, 1], "source": [0, 1], "leaves": []})")); });
    expect_parse_error([] { parse_rational("1/0"); });
    expect_parse_error([] { parse_rational("x"); });
    CHECK(parse_rational("2/4") == mpq_class(1, 2));
    CHECK(parse_rational("-3") == -3);
}

TEST_CASE("dot export marks whites, starts and labels") {
    auto b = enumerate_generators(parse_type_spec("g=0,in_closed=1,out_closed=1")).graphs[0][0];
    auto dot = to_dot(b);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("style=bold") != std::string::npos);
    CHECK(dot.find("in_closed[0]") != std::string::npos);
}

#include "doctest.h"
#include "ocfat/complex.hpp"
#include "ocfat/compose.hpp"

using namespace ocfat;

namespace {

std::vector<bw_graph> pool(const char* spec) {
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

// d(g2 o g1) - d(g2) o g1 - (-1)^deg(g2) g2 o d(g1), counted over pairs where it is nonzero
int chain_map_failures(const std::vector<bw_graph>& p2, const std::vector<bw_graph>& p1) {
    int bad = 0;
    for (const auto& a : p2)
        for (const auto& b : p1) {
            auto lhs = differential(compose(a, b));
            auto rhs = compose_chains(differential(a), single(b));
            rhs.add(compose_chains(single(a), differential(b)), degree(a) % 2 ? -1 : 1);
            bad += !(lhs == rhs);
        }
    return bad;
}

bw_graph find_by_degree(const std::vector<bw_graph>& p, int d) {
    for (const auto& g : p)
        if (degree(g) == d) return g;
    FAIL("no generator of degree " << d);
    return {};
}

}  // namespace

TEST_CASE("annulus composed with itself") {
    auto a = pool("g=0,in_closed=1,out_closed=1");
    auto annulus = find_by_degree(a, 0);
    auto s = compose(annulus, annulus);
    REQUIRE(s.size() == 1);
    CHECK(s.terms().begin()->first == canonical_key(annulus));
    CHECK(s.terms().begin()->second.coefficient == 1);
}

TEST_CASE("a valence two white vertex distributes its spoke over every corner") {
    auto suspended = find_by_degree(pool("g=0,in_closed=1,out_closed=1"), 1);
    for (const auto& g2 : pool("g=0,in_closed=1,out_closed=2")) {
        int leaf = -1;
        for (int v = 0; v < g2.graph.vertex_count; ++v)
            if (g2.label[v] && g2.label[v]->kind == boundary_kind::closed) leaf = v;
        REQUIRE(leaf >= 0);
        CHECK(static_cast<int>(compose_closed(g2, suspended).size()) == corner_count(g2, leaf));
    }
}

TEST_CASE("graphs without white vertices compose by the open phase alone") {
    auto strip = pool("g=0,in_open=1,out_open=1");
    REQUIRE(strip.size() == 1);
    auto s = compose(strip[0], strip[0]);
    REQUIRE(s.size() == 1);
    CHECK(s.terms().begin()->first == canonical_key(strip[0]));
    CHECK(s.terms().begin()->second.coefficient == 1);
}

TEST_CASE("terms have additive degree and the composite type") {
    auto p1 = pool("g=0,in_closed=1,out_closed=2");
    auto p2 = pool("g=0,in_closed=2,out_closed=1");
    for (std::size_t i = 0; i < p2.size(); i += 3)
        for (std::size_t j = 0; j < p1.size(); j += 3) {
            auto want = compose_types(topological_type_of(p2[i]), topological_type_of(p1[j]));
            auto sum = compose(p2[i], p1[j]);
            for (const auto& [k, t] : sum.terms()) {
                CHECK(degree(t.graph) == degree(p2[i]) + degree(p1[j]));
                CHECK(topological_type_of(t.graph) == want);
            }
        }
}

TEST_CASE("mismatched counts are rejected") {
    auto strip = pool("g=0,in_open=1,out_open=1");
    auto annulus = pool("g=0,in_closed=1,out_closed=1");
    try {
        compose(strip[0], annulus[0]);
        FAIL("expected CountMismatch");
    } catch (const graph_error& e) {
        CHECK(e.code() == error_code::count_mismatch);
    }
}

TEST_CASE("composition is a chain map") {
    auto a = pool("g=0,in_closed=1,out_closed=1");
    auto p = pool("g=0,in_closed=1,out_closed=2");
    auto open = pool("g=0,in_open=1,out_open=2");
    auto open2 = pool("g=0,in_open=2,out_open=1");
    CHECK(chain_map_failures(a, a) == 0);
    CHECK(chain_map_failures(p, a) == 0);
    CHECK(chain_map_failures(open2, open) == 0);
    CHECK(chain_map_failures(open, open2) == 0);
}

TEST_CASE("composition is associative") {
    auto a = pool("g=0,in_closed=1,out_closed=1");
    auto p = pool("g=0,in_closed=1,out_closed=2");
    auto s = pool("g=0,in_open=1,out_open=1");
    int bad = 0;
    for (const auto& x : p)
        for (const auto& y : a)
            for (const auto& z : a)
                bad += !(compose_chains(compose(x, y), single(z)) == compose_chains(single(x), compose(y, z)));
    bad += !(compose_chains(compose(s[0], s[0]), single(s[0])) == compose_chains(single(s[0]), compose(s[0], s[0])));
    CHECK(bad == 0);
}

TEST_CASE("the annulus and the strip are units") {
    auto annulus = pool("g=0,in_closed=1,out_closed=1")[0];
    auto strip = pool("g=0,in_open=1,out_open=1")[0];
    for (const auto& g : pool("g=1,in_closed=1,out_closed=1")) {
        CHECK(compose(annulus, g) == single(g));
        CHECK(compose(g, annulus) == single(g));
    }
    for (const auto& g : pool("g=0,in_open=1,out_open=2")) CHECK(compose(g, strip) == single(g));
    for (const auto& g : pool("g=0,in_open=2,out_open=1")) CHECK(compose(strip, g) == single(g));
}

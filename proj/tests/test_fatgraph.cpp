#include <algorithm>
#include <set>

#include "doctest.h"
#include "examples.hpp"
#include "ocfat/fatgraph.hpp"

using namespace ocfat;
using namespace ocfat::examples;

namespace {

std::set<std::set<int>> cycle_sets(const fat_graph& g) {
    std::set<std::set<int>> out;
    for (const auto& c : boundary_cycles(g)) out.insert(std::set<int>(c.half_edges.begin(), c.half_edges.end()));
    return out;
}

// every permutation of H commuting with sigma and i and preserving leaf flags
std::size_t brute_force_automorphism_count(const fat_graph& g) {
    perm p(g.half_edge_count());
    std::iota(p.begin(), p.end(), 0);
    std::size_t count = 0;
    do {
        bool ok = true;
        for (int h = 0; h < g.half_edge_count() && ok; ++h) {
            ok = p[g.sigma[h]] == g.sigma[p[h]] && p[g.involution[h]] == g.involution[p[h]] &&
                 g.leaf[g.source[h]] == g.leaf[g.source[p[h]]];
        }
        if (ok) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

}  // namespace

TEST_CASE("validate accepts well formed graphs and names violations") {
    CHECK_NOTHROW(validate(planar_theta()));
    CHECK_NOTHROW(validate(one_leaf_corolla()));

    auto g = planar_theta();
    g.involution = {0, 4, 5, 3, 1, 2};
    try {
        validate(g);
        FAIL("expected FixedPointInvolution");
    } catch (const graph_error& e) {
        CHECK(e.code() == error_code::fixed_point_involution);
    }

    g = planar_theta();
    g.sigma = {1, 3, 0, 2, 5, 4};  // sigma(1) lands at the other vertex
    try {
        validate(g);
        FAIL("expected MismatchedSource");
    } catch (const graph_error& e) {
        CHECK(e.code() == error_code::mismatched_source);
    }

    g = planar_theta();
    g.leaf[0] = 1;
    try {
        validate(g);
        FAIL("expected BadLeafValence");
    } catch (const graph_error& e) {
        CHECK(e.code() == error_code::bad_leaf_valence);
    }
}

TEST_CASE("boundary cycles of theta and figure eight graphs") {
    CHECK(cycle_sets(planar_theta()) == std::set<std::set<int>>{{0, 5}, {1, 3}, {2, 4}});
    auto np = boundary_cycles(nonplanar_theta());
    REQUIRE(np.size() == 1);
    CHECK(np[0].half_edges.size() == 6);
    CHECK(boundary_cycles(figure_eight_interleaved()).size() == 1);
    CHECK(boundary_cycles(figure_eight_nested()).size() == 3);

    // omega steps along each cycle
    for (const auto& g : {planar_theta(), nonplanar_theta(), figure_eight_interleaved()}) {
        for (const auto& c : boundary_cycles(g)) {
            int total = 0;
            for (auto [e, m] : c.edge_multiplicity) total += m;
            CHECK(total == static_cast<int>(c.half_edges.size()));
            for (std::size_t k = 0; k < c.half_edges.size(); ++k)
                CHECK(g.omega(c.half_edges[k]) == c.half_edges[(k + 1) % c.half_edges.size()]);
        }
    }
}

TEST_CASE("surface invariants") {
    auto s = surface_invariants(planar_theta());
    CHECK(s.euler_characteristic == -1);
    CHECK(s.boundary_count == 3);
    CHECK(s.genus == 0);
    s = surface_invariants(nonplanar_theta());
    CHECK(s.boundary_count == 1);
    CHECK(s.genus == 1);
    s = surface_invariants(one_leaf_corolla());
    CHECK(s.euler_characteristic == 1);
    CHECK(s.boundary_count == 1);
    CHECK(s.genus == 0);
    CHECK(surface_invariants(figure_eight_interleaved()).genus == 1);
    CHECK(surface_invariants(figure_eight_nested()).genus == 0);
}

TEST_CASE("collapse_forest merges cyclic orders and keeps boundary count") {
    auto g = planar_theta();
    auto c = collapse_forest(g, {0});
    CHECK_NOTHROW(validate(c));
    CHECK(c.vertex_count == 1);
    CHECK(c.half_edge_count() == 4);
    CHECK(boundary_cycles(c).size() == 3);
    CHECK(surface_invariants(c).genus == 0);

    // hand merge: after 1 at u come 2,3; after 1' at v come 3',2'
    // so the merged rotation is (2 3 3' 2') with loops {2,2'} and {3,3'}
    auto fib = c.fibers();
    REQUIRE(fib[0].size() == 4);
    CHECK(c.involution[fib[0][0]] == fib[0][3]);
    CHECK(c.involution[fib[0][1]] == fib[0][2]);

    CHECK(collapse_forest(g, {}) == g);

    auto nc = collapse_forest(nonplanar_theta(), {1});
    CHECK(boundary_cycles(nc).size() == 1);
    CHECK(surface_invariants(nc).genus == 1);

    try {
        collapse_forest(one_leaf_corolla(), {0});
        FAIL("expected ForestContainsLeaf");
    } catch (const graph_error& e) {
        CHECK(e.code() == error_code::forest_contains_leaf);
    }
    try {
        collapse_forest(g, {0, 1});
        FAIL("expected ForestHasCycle");
    } catch (const graph_error& e) {
        CHECK(e.code() == error_code::forest_has_cycle);
    }
}

TEST_CASE("canonical form is invariant under relabeling and separates theta graphs") {
    std::mt19937 rng(7);
    for (const auto& g : {planar_theta(), nonplanar_theta(), figure_eight_interleaved(), one_leaf_corolla()}) {
        auto k = canonical_form(g).key;
        for (int t = 0; t < 50; ++t) {
            perm vmap, hmap;
            auto r = random_relabel(g, rng, &vmap, &hmap);
            auto cr = canonical_form(r);
            CHECK(cr.key == k);
            // the returned relabeling realizes the canonical graph
            CHECK(relabel(r, cr.vertex_map, cr.half_edge_map) ==
                  relabel(g, canonical_form(g).vertex_map, canonical_form(g).half_edge_map));
        }
    }
    CHECK(canonical_form(planar_theta()).key != canonical_form(nonplanar_theta()).key);
    CHECK(canonical_form(figure_eight_interleaved()).key != canonical_form(figure_eight_nested()).key);
}

TEST_CASE("automorphism groups agree with brute force") {
    for (const auto& g : {planar_theta(), nonplanar_theta(), figure_eight_interleaved(), figure_eight_nested(),
                          one_leaf_corolla()}) {
        auto autos = automorphisms(g);
        CHECK(autos.size() == brute_force_automorphism_count(g));
        std::set<perm> as;
        for (const auto& a : autos) as.insert(a.half_edges);
        for (const auto& a : autos) {
            CHECK(relabel(g, a.vertices, a.half_edges) == g);
            for (const auto& b : autos) {
                perm c(g.half_edge_count());
                for (int h = 0; h < g.half_edge_count(); ++h) c[h] = a.half_edges[b.half_edges[h]];
                CHECK(as.count(c) == 1);
            }
        }
    }
    CHECK(automorphisms(planar_theta()).size() == 6);
    fat_graph empty;
    CHECK(automorphisms(empty).size() == 1);

    // a labeled leaf kills every symmetry of the theta graph with a pendant edge
    auto g = from_rotation({{0, 1, 2, 6}, {3, 5, 4}, {7}}, {3, 4, 5, 0, 1, 2, 7, 6}, {2});
    std::vector<std::int64_t> colors{0, 0, 5};
    CHECK(automorphisms(g, colors).size() == 1);
}

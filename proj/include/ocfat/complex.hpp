#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "ocfat/bw.hpp"
#include "ocfat/topology.hpp"

namespace ocfat {

bw_graph disjoint_union(const bw_graph& a, const bw_graph& b);

// degree-0 generators of a positive type
std::vector<bw_graph> degree_zero_generators(const topological_type& t, long max_generators = -1);

// half-edge count of the degree-0 generators, or -1 when the type has none
int degree_zero_half_edges(const topological_type& t);

// Connected positive types up to relabeling whose degree-0 graphs have at most this many
// half edges. Swapping the direction of open labels gives isomorphic complexes, so the
// incoming-only option keeps one type per direction pattern.
std::vector<topological_type> small_types(int max_half_edges, bool incoming_open_only = false);

struct generator_table {
    std::vector<std::vector<std::string>> keys;    // per degree, sorted
    std::vector<std::vector<bw_graph>> graphs;     // canonical, orientation +1
    std::vector<int> zero_classes;                 // per degree: classes with an orientation-reversing automorphism
};

// max_degree < 0 means no bound; past max_generators (when positive) GeneratorBudget is thrown
generator_table enumerate_generators(const topological_type& t, int max_degree = -1, int jobs = 1,
                                     long max_generators = -1);

struct sparse_matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, long long>>> columns;  // sorted by row

    long long at(int r, int c) const;
};

struct chain_complex {
    topological_type type;
    generator_table generators;
    std::vector<sparse_matrix> boundary;  // boundary[n]: C_n -> C_{n-1}; boundary[0] has 0 rows
    int top_degree() const { return static_cast<int>(generators.keys.size()) - 1; }
};

chain_complex build_complex(const topological_type& t, int jobs = 1);
chain_complex build_complex(const generator_table& gens, const topological_type& t, int jobs = 1);

// first degree n with boundary[n-1]*boundary[n] != 0, or -1
int check_d_squared(const chain_complex& c);

using int_matrix = std::vector<std::vector<mpz_class>>;

struct smith_result {
    std::vector<mpz_class> diagonal;  // nonzero invariant factors d1 | d2 | ...
    int rank = 0;
    int_matrix left, right;  // unimodular, left * M * right = D (when requested)
};

smith_result smith_normal_form(const int_matrix& m, bool with_transforms = false);
// invariant factors of a sparse matrix; unit pivots first, dense remainder after
std::vector<mpz_class> invariant_factors(const sparse_matrix& m);

struct homology_group {
    int degree = 0;
    int generators = 0;
    int betti = 0;
    std::vector<mpz_class> torsion;
};

std::vector<homology_group> homology(const chain_complex& c);
std::string format_homology_table(const std::vector<homology_group>& h);

}  // namespace ocfat

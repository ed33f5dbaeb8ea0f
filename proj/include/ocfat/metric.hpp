#pragma once

#include <gmpxx.h>

#include <map>
#include <random>

#include "ocfat/openclosed.hpp"

namespace ocfat {

struct metric_graph {
    oc_graph graph;
    std::map<int, mpq_class> lengths;  // edge id (smaller half edge) -> length

    const mpq_class& length(int half_edge) const;
    bool operator==(const metric_graph&) const = default;
};

void validate_metric(const metric_graph& m);
// collapse the zero-length forest
metric_graph normalize(const metric_graph& m);
// total length of the boundary cycle of an incoming closed leaf, edges counted with multiplicity
mpq_class incoming_cycle_length(const metric_graph& m, int leaf_vertex);

metric_graph glue_closed(const metric_graph& m2, const metric_graph& m1);
// open leaves of m1 glued to those of m2 after closed gluing
metric_graph compose(const metric_graph& m2, const metric_graph& m1);

// positive lengths; each admissible circle sums to 1, other inner edges lie in (0, 1]
metric_graph random_metric(const oc_graph& g, std::mt19937_64& rng);

}  // namespace ocfat

#pragma once

#include <stdexcept>
#include <string>

namespace ocfat {

enum class error_code {
    invalid_permutation,
    fixed_point_involution,
    invalid_involution,
    mismatched_source,
    bad_leaf_valence,
    non_integer_genus,
    forest_contains_leaf,
    forest_has_cycle,
    inner_vertex_too_small,
    closed_leaf_shares_cycle,
    label_overlap,
    not_admissible,
    not_essentially_trivalent,
    leaf_not_unit,
    zero_set_not_forest,
    cycle_length_not_one,
    length_out_of_range,
    leaf_not_closed_incoming,
    count_mismatch,
    degenerate_cap,
    black_vertex_too_small,
    white_vertex_empty,
    outgoing_closed_leaf,
    white_vertex_labeled,
    unlabeled_leaf_not_at_start,
    bad_white_order,
    bad_start,
    loop_collapse,
    white_white_collapse,
    leaf_collapse,
    unsupported_type,
    basis_miss,
    generator_budget,
    parse_error,
};

// CamelCase name printed by the CLI and used in messages
const char* error_name(error_code c);

class graph_error : public std::runtime_error {
public:
    graph_error(error_code c, const std::string& detail)
        : std::runtime_error(std::string(error_name(c)) + (detail.empty() ? "" : ": " + detail)),
          code_(c) {}
    error_code code() const { return code_; }

private:
    error_code code_;
};

[[noreturn]] inline void fail(error_code c, const std::string& detail = {}) {
    throw graph_error(c, detail);
}

}  // namespace ocfat

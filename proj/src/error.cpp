#include "ocfat/error.hpp"

namespace ocfat {

const char* error_name(error_code c) {
    switch (c) {
        case error_code::invalid_permutation: return "InvalidPermutation";
        case error_code::fixed_point_involution: return "FixedPointInvolution";
        case error_code::invalid_involution: return "InvalidInvolution";
        case error_code::mismatched_source: return "MismatchedSource";
        case error_code::bad_leaf_valence: return "BadLeafValence";
        case error_code::non_integer_genus: return "NonIntegerGenus";
        case error_code::forest_contains_leaf: return "ForestContainsLeaf";
        case error_code::forest_has_cycle: return "ForestHasCycle";
        case error_code::inner_vertex_too_small: return "InnerVertexTooSmall";
        case error_code::closed_leaf_shares_cycle: return "ClosedLeafSharesCycle";
        case error_code::label_overlap: return "LabelOverlap";
        case error_code::not_admissible: return "NotAdmissible";
        case error_code::not_essentially_trivalent: return "NotEssentiallyTrivalent";
        case error_code::leaf_not_unit: return "LeafNotUnit";
        case error_code::zero_set_not_forest: return "ZeroSetNotForest";
        case error_code::cycle_length_not_one: return "CycleLengthNotOne";
        case error_code::length_out_of_range: return "LengthOutOfRange";
        case error_code::leaf_not_closed_incoming: return "LeafNotClosedIncoming";
        case error_code::count_mismatch: return "CountMismatch";
        case error_code::degenerate_cap: return "DegenerateCap";
        case error_code::black_vertex_too_small: return "BlackVertexTooSmall";
        case error_code::white_vertex_empty: return "WhiteVertexEmpty";
        case error_code::outgoing_closed_leaf: return "OutgoingClosedLeaf";
        case error_code::white_vertex_labeled: return "WhiteVertexLabeled";
        case error_code::unlabeled_leaf_not_at_start: return "UnlabeledLeafNotAtStart";
        case error_code::bad_white_order: return "BadWhiteOrder";
        case error_code::bad_start: return "BadStart";
        case error_code::loop_collapse: return "LoopCollapse";
        case error_code::white_white_collapse: return "WhiteWhiteCollapse";
        case error_code::leaf_collapse: return "LeafCollapse";
        case error_code::unsupported_type: return "UnsupportedType";
        case error_code::basis_miss: return "BasisMiss";
        case error_code::generator_budget: return "GeneratorBudget";
        case error_code::parse_error: return "ParseError";
    }
    return "UnknownError";
}

}  // namespace ocfat

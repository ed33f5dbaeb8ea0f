#include "ocfat/bw.hpp"
#include "ocfat/openclosed.hpp"

namespace ocfat {

int bw_degree(const oc_graph& g) {
    if (!is_admissible(g)) fail(error_code::not_admissible);
    return degree(collapse_white(make_essentially_trivalent(g)));
}

}  // namespace ocfat

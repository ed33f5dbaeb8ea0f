#pragma once

#include <json.hpp>

#include <string>

#include "ocfat/bw.hpp"
#include "ocfat/metric.hpp"
#include "ocfat/openclosed.hpp"

namespace ocfat {

using json = nlohmann::ordered_json;

enum class graph_kind { fat, open_closed, black_white, metric };

const char* kind_name(graph_kind k);
// decided by the most specific field present
graph_kind detect_kind(const json& j);

json to_json(const fat_graph& g);
json to_json(const oc_graph& g);
json to_json(const bw_graph& g);
json to_json(const metric_graph& m);

// structural parsing only; call the validators for the invariants
fat_graph fat_graph_from_json(const json& j);
oc_graph oc_graph_from_json(const json& j);
bw_graph bw_graph_from_json(const json& j);
metric_graph metric_graph_from_json(const json& j);

json read_json_file(const std::string& path);
json parse_json(const std::string& text);

mpq_class parse_rational(const std::string& s);

std::string to_dot(const fat_graph& g, const label_map& labels = {}, const std::vector<int>& white_index = {},
                   const std::vector<int>& starts = {});
std::string to_dot(const oc_graph& g);
std::string to_dot(const bw_graph& g);
std::string to_dot(const metric_graph& m);

}  // namespace ocfat

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "ocfat/fatgraph.hpp"

namespace ocfat {

enum class direction { in = 0, out = 1 };
enum class boundary_kind { open = 0, closed = 1 };

// index counts within its (direction, kind) class, from 0
struct leaf_label {
    direction dir = direction::in;
    boundary_kind kind = boundary_kind::open;
    int index = 0;
    auto operator<=>(const leaf_label&) const = default;
};

std::string to_string(const leaf_label& l);

using label_map = std::vector<std::optional<leaf_label>>;  // per vertex

struct open_token {
    direction dir = direction::in;
    int index = 0;
    auto operator<=>(const open_token&) const = default;
};

struct component_type {
    int genus = 0;
    std::vector<int> in_closed;
    std::vector<int> out_closed;
    std::vector<std::vector<open_token>> open_circles;  // cyclic, in boundary-traversal order
    int free_count = 0;

    int in_open_count() const;
    int out_open_count() const;
    int boundary_count() const;
    int euler_characteristic() const { return 2 - 2 * genus - boundary_count(); }
    auto operator<=>(const component_type&) const = default;
};

struct topological_type {
    std::vector<component_type> components;

    // rotate circles to their least token, sort everything
    void normalize();
    int in_closed_count() const;
    int out_closed_count() const;
    int in_open_count() const;
    int out_open_count() const;
    int euler_characteristic() const;
    bool operator==(const topological_type&) const = default;
};

std::string to_string(const topological_type& t);

// Type of a labeled fat graph. white_index[v] >= 0 marks a vertex standing for the
// outgoing-closed boundary with that index; pass an empty vector when there is none.
topological_type type_of_labeled(const fat_graph& g, const label_map& labels,
                                 const std::vector<int>& white_index = {});

// S2 o S1: outgoing boundaries of s1 glued to incoming boundaries of s2.
topological_type compose_types(const topological_type& s2, const topological_type& s1);

// "g=1,in_closed=1,out_closed=0,in_open=0,out_open=0,free=0" components joined by '+'.
// Open boundaries of a component sit on one circle: incoming first, then outgoing.
topological_type parse_type_spec(const std::string& spec);
std::string type_spec_string(const topological_type& t);

// every component needs an incoming boundary or an open one
bool satisfies_positivity(const topological_type& t);

}  // namespace ocfat

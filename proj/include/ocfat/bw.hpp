#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocfat/editor.hpp"
#include "ocfat/fatgraph.hpp"
#include "ocfat/openclosed.hpp"
#include "ocfat/topology.hpp"

namespace ocfat {

// Orientation is a sign against the reference word: vertices 0..V-1, then half edges 0..H-1.
struct bw_graph {
    fat_graph graph;
    std::vector<int> white_index;  // per vertex: -1 for black, else position in the white order
    std::vector<int> start;        // per vertex: start half edge of a white vertex, else -1
    label_map label;               // per vertex
    int orientation = 1;

    bool is_white(int v) const { return white_index[v] >= 0; }
    bool is_unlabeled_leaf(int v) const { return graph.leaf[v] && !label[v]; }
    int white_count() const;
    std::vector<int> white_order() const;  // white vertices sorted by index
    bool operator==(const bw_graph&) const = default;
};

bw_graph make_bw_graph(const fat_graph& g, const std::vector<int>& white_order, const std::vector<int>& starts,
                       const std::vector<int>& in_leaves, const std::vector<int>& out_leaves,
                       const std::vector<int>& closed_leaves, int orientation = 1);

// generalized graphs may carry unlabeled leaves anywhere
void validate_bw(const bw_graph& g, bool generalized = false);
int degree(const bw_graph& g);
topological_type topological_type_of(const bw_graph& g);

// ---------------------------------------------------------------------------
// wedge words over generators of an editor's slot space

struct generator {
    bool half_edge = false;
    int id = 0;
    bool operator==(const generator&) const = default;
};

class wedge_word {
public:
    wedge_word() = default;
    wedge_word(int vertex_count, int half_edge_count, int sign);
    wedge_word(std::vector<generator> gens, int sign) : gens_(std::move(gens)), sign_(sign) {}
    // move `block` to the front in the given order and drop it
    void extract(const std::vector<generator>& block);
    void prepend(const std::vector<generator>& block);
    // sign against the reference word of the compacted graph
    int resolve(const graph_editor::result& r) const;
    int sign() const { return sign_; }
    const std::vector<generator>& generators() const { return gens_; }
    void append(const wedge_word& other);

private:
    std::vector<generator> gens_;
    int sign_ = 1;
};

inline generator vgen(int v) { return {false, v}; }
inline generator hgen(int h) { return {true, h}; }

// editor carrying the BW decorations and an orientation word
struct bw_editor {
    graph_editor ed;
    std::vector<int> white_index;
    std::vector<int> start;
    label_map label;
    wedge_word word;

    explicit bw_editor(const bw_graph& g);
    int add_vertex(bool is_leaf);
    bw_graph finish() const;
};

// ---------------------------------------------------------------------------
// canonical generators and formal sums

struct canonical_generator {
    std::string key;
    bw_graph graph;  // canonically numbered, orientation +1
    int sign = 1;    // input = sign * graph
    bool zero = false;  // an automorphism reverses the orientation
};

std::vector<std::int64_t> bw_vertex_colors(const bw_graph& g);
std::vector<std::int64_t> bw_half_edge_colors(const bw_graph& g);
canonical_generator canonicalize(const bw_graph& g);
std::string canonical_key(const bw_graph& g);

class formal_sum {
public:
    struct term {
        bw_graph graph;
        long long coefficient = 0;
    };

    void add(const bw_graph& g, long long coefficient = 1);  // canonicalizes
    void add_canonical(const std::string& key, const bw_graph& g, long long coefficient);
    void add(const formal_sum& other, long long factor = 1);
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<std::string, term>& terms() const { return terms_; }
    bool operator==(const formal_sum& o) const;
    std::string to_string() const;

private:
    std::map<std::string, term> terms_;
};

// ---------------------------------------------------------------------------
// moves

std::vector<bw_graph> collapse_edge(const bw_graph& g, int half_edge);

struct blow_up {
    bw_graph graph;    // generalized graph, oriented
    int new_edge = -1;  // half edge of the new edge at the first split vertex
};
std::vector<blow_up> blow_ups(const bw_graph& g);

// Remove one bad unlabeled leaf; nullopt means the graph is zero.
std::optional<bw_graph> remove_bad_leaf(const bw_graph& g, int leaf_vertex);
// All bad unlabeled leaves removed; nullopt means zero.
std::optional<bw_graph> underlying(const bw_graph& g);
// unlabeled leaves not sitting at a white start
std::vector<int> bad_leaves(const bw_graph& g);

formal_sum differential(const bw_graph& g);
formal_sum differential(const formal_sum& s);

// add an unlabeled leaf just before the start of white vertex w and make it the start
bw_graph suspend(const bw_graph& g, int white_vertex);

oc_graph expand_white(const bw_graph& g);
bw_graph collapse_white(const oc_graph& g);

}  // namespace ocfat

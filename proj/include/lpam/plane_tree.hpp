#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpam {

using Vertex = int32_t;

// Complexity-guard violation (bounded enumeration sizes and the like).
// The CLI maps this to its own exit code.
class GuardError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    size_t position() const { return position_; }

private:
    size_t position_;
};

// A corner of a plane tree: the angular sector that follows half-edge
// `slot` in the cyclic order around `vertex`. Half-edges around a vertex
// are ordered [parent-or-plant, child 0, child 1, ...]; the non-planted
// root has no leading half-edge. Valid slots are 0..degree(vertex)-1.
struct Corner {
    Vertex vertex = 0;
    int32_t slot = 0;
    bool operator==(const Corner&) const = default;
};

// Rooted ordered tree, optionally planted (an extra half-edge at the root,
// always occupying the first position in the root's cyclic order). Vertex
// ids are dense integers assigned in creation order and never reused.
class PlaneTree {
public:
    PlaneTree() = default;

    static PlaneTree single_vertex(bool planted);
    static PlaneTree path(int n);  // path on n vertices, rooted at one end
    static PlaneTree star(int n);  // star on n vertices, rooted at the center

    int size() const { return static_cast<int>(children_.size()); }
    int edge_count() const { return size() - 1; }
    Vertex root() const { return root_; }
    bool planted() const { return planted_; }
    Vertex parent(Vertex v) const { return parent_[v]; }
    const std::vector<Vertex>& children(Vertex v) const { return children_[v]; }

    int degree(Vertex v) const {
        int d = static_cast<int>(children_[v].size());
        if (v != root_) ++d;
        else if (planted_) ++d;
        return d;
    }

    // Total corner count: 2n-2 for non-planted (n >= 2), 2n-1 for planted.
    int corner_count() const { return 2 * size() - 2 + (planted_ ? 1 : 0); }

    bool valid_corner(const Corner& c) const {
        return c.vertex >= 0 && c.vertex < size() && c.slot >= 0 && c.slot < degree(c.vertex);
    }

    // Grafts a new leaf into corner c; returns the new vertex id.
    // The corner count grows by exactly 2.
    Vertex graft_in_place(const Corner& c);

    std::vector<Corner> all_corners() const;

    // Depth-first listing used by exact enumerations: appends a new leaf as
    // the last child of v (an arbitrary plane choice; callers that care about
    // plane structure use graft_in_place with an explicit corner).
    Vertex attach_leaf(Vertex v);

    // New leaf inserted at the given position in v's child list.
    Vertex attach_leaf_at(Vertex v, int position);

    // For a planted tree: the half-edge completed into an edge leading to a
    // new leaf (which takes the half-edge's place as the root's first
    // child); the result is not planted.
    PlaneTree complete_plant() const;

    std::vector<int> degrees() const;

    bool operator==(const PlaneTree&) const = default;

private:
    std::vector<std::vector<Vertex>> children_;
    std::vector<Vertex> parent_;
    Vertex root_ = 0;
    bool planted_ = false;

    friend PlaneTree parse_tree(const std::string&, bool);
    friend PlaneTree tree_from_parent_list(const std::vector<Vertex>&, bool);
};

// Pure counterpart of graft_in_place.
PlaneTree graft(const PlaneTree& t, const Corner& c);

// Balanced-parenthesis form, one "(" + children + ")" per vertex,
// vertex ids assigned in depth-first order.
PlaneTree parse_tree(const std::string& text, bool planted);
std::string serialize_tree(const PlaneTree& t);

// Builds a tree from parent pointers (parent[root] == -1), children in
// listed order.
PlaneTree tree_from_parent_list(const std::vector<Vertex>& parent, bool planted);

// JSON round-trip: {"planted": bool, "children": nested arrays}.
std::string tree_to_json(const PlaneTree& t);
PlaneTree tree_from_json(const std::string& json_text);

// Minimal subtree containing `vs` (union of pairwise geodesics).
// Returns the sorted vertex set of that subtree.
std::vector<Vertex> span(const PlaneTree& t, const std::vector<Vertex>& vs);

// Named seeds accepted by the CLI: "pathK", "starK", "planted", or a
// parenthesis word.
PlaneTree seed_from_name(const std::string& name);

}  // namespace lpam

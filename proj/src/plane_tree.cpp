#include "lpam/plane_tree.hpp"

#include <json.hpp>

#include <fstream>

#include <algorithm>

namespace lpam {

PlaneTree PlaneTree::single_vertex(bool planted) {
    PlaneTree t;
    t.children_.resize(1);
    t.parent_.assign(1, -1);
    t.root_ = 0;
    t.planted_ = planted;
    return t;
}

PlaneTree PlaneTree::path(int n) {
    if (n < 1) throw std::invalid_argument("path: need n >= 1");
    PlaneTree t = single_vertex(false);
    for (Vertex v = 1; v < n; ++v) t.attach_leaf(v - 1);
    return t;
}

PlaneTree PlaneTree::star(int n) {
    if (n < 1) throw std::invalid_argument("star: need n >= 1");
    PlaneTree t = single_vertex(false);
    for (Vertex v = 1; v < n; ++v) t.attach_leaf(0);
    return t;
}

Vertex PlaneTree::attach_leaf(Vertex v) {
    const Vertex u = static_cast<Vertex>(children_.size());
    children_.emplace_back();
    parent_.push_back(v);
    children_[v].push_back(u);
    return u;
}

Vertex PlaneTree::attach_leaf_at(Vertex v, int position) {
    if (position < 0 || position > static_cast<int>(children_[v].size()))
        throw std::invalid_argument("attach_leaf_at: bad position");
    const Vertex u = static_cast<Vertex>(children_.size());
    children_.emplace_back();
    parent_.push_back(v);
    children_[v].insert(children_[v].begin() + position, u);
    return u;
}

Vertex PlaneTree::graft_in_place(const Corner& c) {
    if (!valid_corner(c)) throw std::invalid_argument("graft: invalid corner");
    const Vertex v = c.vertex;
    // The new child goes right after half-edge `slot`. For the non-planted
    // root half-edge k is child k, so the insertion lands at position
    // slot+1; everywhere else half-edge 0 is the parent/plant and half-edge
    // k (k>=1) is child k-1, so the insertion position equals the slot.
    int pos = c.slot;
    if (v == root_ && !planted_) pos = c.slot + 1;
    const Vertex u = static_cast<Vertex>(children_.size());
    children_.emplace_back();
    parent_.push_back(v);
    children_[v].insert(children_[v].begin() + pos, u);
    return u;
}

PlaneTree PlaneTree::complete_plant() const {
    if (!planted_) throw std::invalid_argument("complete_plant: tree is not planted");
    PlaneTree out = *this;
    out.planted_ = false;
    out.attach_leaf_at(root_, 0);
    return out;
}

std::vector<Corner> PlaneTree::all_corners() const {
    std::vector<Corner> out;
    out.reserve(corner_count());
    for (Vertex v = 0; v < size(); ++v) {
        const int d = degree(v);
        for (int s = 0; s < d; ++s) out.push_back(Corner{v, s});
    }
    return out;
}

std::vector<int> PlaneTree::degrees() const {
    std::vector<int> d(size());
    for (Vertex v = 0; v < size(); ++v) d[v] = degree(v);
    return d;
}

PlaneTree graft(const PlaneTree& t, const Corner& c) {
    PlaneTree out = t;
    out.graft_in_place(c);
    return out;
}

PlaneTree parse_tree(const std::string& text, bool planted) {
    if (text.empty()) throw ParseError("empty input", 0);
    PlaneTree t;
    t.planted_ = planted;
    std::vector<Vertex> stack;
    size_t i = 0;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == ' ' || ch == '\t' || ch == '\n') continue;
        if (ch == '(') {
            const Vertex v = static_cast<Vertex>(t.children_.size());
            t.children_.emplace_back();
            if (stack.empty()) {
                if (v != 0) throw ParseError("multiple roots", i);
                t.parent_.push_back(-1);
            } else {
                t.parent_.push_back(stack.back());
                t.children_[stack.back()].push_back(v);
            }
            stack.push_back(v);
        } else if (ch == ')') {
            if (stack.empty()) throw ParseError("unbalanced ')'", i);
            stack.pop_back();
            if (stack.empty()) {
                // The root closed: only trailing whitespace may follow.
                for (size_t j = i + 1; j < text.size(); ++j) {
                    if (text[j] != ' ' && text[j] != '\t' && text[j] != '\n')
                        throw ParseError("trailing input after root", j);
                }
                break;
            }
        } else {
            throw ParseError(std::string("unexpected character '") + ch + "'", i);
        }
    }
    if (t.children_.empty()) throw ParseError("empty input", 0);
    if (!stack.empty()) throw ParseError("unbalanced '('", text.size());
    t.root_ = 0;
    return t;
}

std::string serialize_tree(const PlaneTree& t) {
    std::string out;
    out.reserve(2 * t.size());
    // Iterative preorder with explicit close markers.
    std::vector<std::pair<Vertex, bool>> stack;  // (vertex, closing?)
    stack.push_back({t.root(), false});
    while (!stack.empty()) {
        auto [v, closing] = stack.back();
        stack.pop_back();
        if (closing) {
            out.push_back(')');
            continue;
        }
        out.push_back('(');
        stack.push_back({v, true});
        const auto& cs = t.children(v);
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) stack.push_back({*it, false});
    }
    return out;
}

PlaneTree tree_from_parent_list(const std::vector<Vertex>& parent, bool planted) {
    PlaneTree t;
    t.planted_ = planted;
    t.children_.resize(parent.size());
    t.parent_ = parent;
    t.root_ = -1;
    for (Vertex v = 0; v < static_cast<Vertex>(parent.size()); ++v) {
        if (parent[v] < 0) {
            if (t.root_ >= 0) throw std::invalid_argument("tree_from_parent_list: multiple roots");
            t.root_ = v;
        } else {
            t.children_[parent[v]].push_back(v);
        }
    }
    if (t.root_ < 0) throw std::invalid_argument("tree_from_parent_list: no root");
    return t;
}

namespace {
nlohmann::json children_to_json(const PlaneTree& t, Vertex v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Vertex c : t.children(v)) arr.push_back(children_to_json(t, c));
    return arr;
}

void children_from_json(const nlohmann::json& arr, PlaneTree& t, Vertex v) {
    for (const auto& sub : arr) {
        const Vertex c = t.attach_leaf(v);
        children_from_json(sub, t, c);
    }
}
}  // namespace

std::string tree_to_json(const PlaneTree& t) {
    nlohmann::json j;
    j["planted"] = t.planted();
    j["children"] = children_to_json(t, t.root());
    return j.dump();
}

PlaneTree tree_from_json(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    PlaneTree t = PlaneTree::single_vertex(j.at("planted").get<bool>());
    children_from_json(j.at("children"), t, 0);
    return t;
}

std::vector<Vertex> span(const PlaneTree& t, const std::vector<Vertex>& vs) {
    if (vs.empty()) throw std::invalid_argument("span: empty vertex list");
    std::vector<char> marked(t.size(), 0);
    for (Vertex v : vs) {
        if (v < 0 || v >= t.size()) throw std::invalid_argument("span: unknown vertex id");
        marked[v] = 1;
    }
    int total = 0;
    for (char m : marked) total += m;

    // cnt[v] = marked vertices in the subtree of v; postorder via stack.
    std::vector<int> cnt(t.size(), 0);
    std::vector<std::pair<Vertex, bool>> stack{{t.root(), false}};
    while (!stack.empty()) {
        auto [v, done] = stack.back();
        stack.pop_back();
        if (done) {
            cnt[v] = marked[v];
            for (Vertex c : t.children(v)) cnt[v] += cnt[c];
            continue;
        }
        stack.push_back({v, true});
        for (Vertex c : t.children(v)) stack.push_back({c, false});
    }

    // v lies on a geodesic between marked vertices iff it is marked or at
    // least two components of T minus v contain marked vertices.
    std::vector<Vertex> out;
    for (Vertex v = 0; v < t.size(); ++v) {
        if (marked[v]) {
            out.push_back(v);
            continue;
        }
        int comps = (total - cnt[v] > 0) ? 1 : 0;
        for (Vertex c : t.children(v)) {
            if (cnt[c] > 0) ++comps;
            if (comps >= 2) break;
        }
        if (comps >= 2) out.push_back(v);
    }
    return out;
}

PlaneTree seed_from_name(const std::string& name) {
    if (name == "planted") return PlaneTree::single_vertex(true);
    if (!name.empty() && name[0] == '@') {
        // @path: file holding either a parenthesis word or the JSON form.
        std::ifstream in(name.substr(1));
        if (!in) throw std::invalid_argument("seed file not found: " + name.substr(1));
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
        if (!text.empty() && text[0] == '{') return tree_from_json(text);
        return parse_tree(text, false);
    }
    auto parse_sized = [&](const std::string& prefix) -> int {
        if (name.rfind(prefix, 0) != 0) return -1;
        const std::string digits = name.substr(prefix.size());
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return -1;
        return std::stoi(digits);
    };
    if (const int k = parse_sized("path"); k >= 1) return PlaneTree::path(k);
    if (const int k = parse_sized("star"); k >= 1) return PlaneTree::star(k);
    return parse_tree(name, false);
}

}  // namespace lpam

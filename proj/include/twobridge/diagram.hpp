#pragma once

// The quadrilateral chain from 1/0 to p/q and the complexes D0, D1 and Dt
// built over it, with minimal edge path enumeration.
//
// Each quad is g(Q) for Q = {1/0, 0/1, 1/2, 1/1}; its vertex slots are
//   V0 = g(1/0), V1 = g(0/1), V2 = g(1/2), V3 = g(1/1)
// and side j joins V_j to V_{j+1}. In Dt every Farey side carries one corner
// vertex (shared by the two quads on that side). Corner slot j lies on side j.
// As t -> 1 a corner slides to the odd-denominator end of its side, as
// t -> 0 to the even-denominator end.
//
// Representative edges, all with g = identity:
//   A0 = 1/0 -> c0      B0 = 0/1 -> c0
//   C0 = c3 -> c0       D0 = c1 -> c0
// The quad rotation r (1/0 <-> 1/2, 0/1 <-> 1/1) carries these to the second
// C and D edges of each rectangle, c1 -> c2 and c3 -> c2, with matrix g*r.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "arith.hpp"

namespace twobridge {

enum class DiagramKind { d0, d1, dt };
enum class EdgeType { A, B, C, D };

inline const char* to_string(DiagramKind k) {
    switch (k) {
        case DiagramKind::d0: return "D0";
        case DiagramKind::d1: return "D1";
        case DiagramKind::dt: return "Dt";
    }
    return "?";
}

inline char to_char(EdgeType t) { return static_cast<char>('A' + static_cast<int>(t)); }

struct Quad {
    GMat g;
    std::array<Fraction, 4> vertices;

    explicit Quad(const GMat& m)
        : g(m),
          vertices{m.apply(Fraction::infinity()), m.apply(Fraction(0)), m.apply(Fraction(1, 2)),
                   m.apply(Fraction(1))} {}

    std::pair<Fraction, Fraction> side(int j) const { return {vertices[j], vertices[(j + 1) % 4]}; }

    bool has_vertex(const Fraction& f) const {
        for (const auto& v : vertices) {
            if (v == f) return true;
        }
        return false;
    }
};

/// Corner of the rectangle expanded from a quad: the quad (lowest chain index
/// containing the side) and the side slot 0..3 within it.
struct Corner {
    std::size_t quad = 0;
    int slot = 0;
    friend auto operator<=>(const Corner&, const Corner&) = default;
};

using DiagramVertex = std::variant<Fraction, Corner>;

inline bool is_rational(const DiagramVertex& v) { return std::holds_alternative<Fraction>(v); }

/// An edge as traversed: sign is +1 when (tail, head) agrees with the
/// orientation inherited from the representative edge, -1 otherwise.
struct TypedEdge {
    DiagramVertex tail;
    DiagramVertex head;
    EdgeType etype = EdgeType::A;
    GMat g;
    int sign = 1;
    std::size_t index = 0;  // position in Complex::edges()
};

struct TypedPath {
    DiagramKind kind = DiagramKind::dt;
    std::vector<TypedEdge> edges;

    Fraction from() const { return std::get<Fraction>(edges.front().tail); }
    Fraction to() const { return std::get<Fraction>(edges.back().head); }

    std::vector<DiagramVertex> vertices() const {
        std::vector<DiagramVertex> out;
        out.reserve(edges.size() + 1);
        out.push_back(edges.front().tail);
        for (const auto& e : edges) out.push_back(e.head);
        return out;
    }

    std::size_t count(EdgeType t) const {
        std::size_t n = 0;
        for (const auto& e : edges) n += e.etype == t;
        return n;
    }
};

enum class CellKind { triangle, rectangle };

/// A 2-cell. Vertices are listed counterclockwise. In Dt, region 0..3 is the
/// triangle at V_region and region 4 the rectangle; in D1 region 0 is the
/// triangle S0 (at the even-denominator vertex next to the even-numerator
/// end of the C diagonal) and region 1 is S1; in D0 the two triangles at V1
/// and V3 are regions 0 and 1.
struct Cell {
    CellKind kind = CellKind::triangle;
    std::size_t quad = 0;
    int region = 0;
    std::vector<std::size_t> vertices;
};

/// A finite complex over a quad chain. Immutable after construction.
class Complex {
public:
    DiagramKind kind() const { return kind_; }
    const std::vector<Quad>& chain() const { return chain_; }
    const std::vector<DiagramVertex>& vertices() const { return vertices_; }
    const std::vector<TypedEdge>& edges() const { return edges_; }
    const std::vector<Cell>& cells() const { return cells_; }

    std::optional<std::size_t> find_vertex(const DiagramVertex& v) const {
        const auto it = vertex_index_.find(v);
        if (it == vertex_index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<std::size_t> find_edge(std::size_t u, std::size_t v) const {
        const auto it = edge_index_.find(std::minmax(u, v));
        if (it == edge_index_.end()) return std::nullopt;
        return it->second;
    }

    /// The Farey side a corner lies on, even-denominator end first.
    std::pair<Fraction, Fraction> corner_side(const Corner& c) const {
        const auto [u, v] = chain_.at(c.quad).side(c.slot);
        return even_denominator(u) ? std::pair{u, v} : std::pair{v, u};
    }

    /// Incident (edge, neighbour) pairs ordered by edge type, then neighbour.
    const std::vector<std::pair<std::size_t, std::size_t>>& neighbours(std::size_t v) const {
        return adjacency_[v];
    }
    const std::vector<std::size_t>& cells_of_edge(std::size_t e) const { return edge_cells_[e]; }

    std::size_t vertex_id(const DiagramVertex& v) const {
        const auto id = find_vertex(v);
        if (!id) throw std::out_of_range("vertex not in complex: " + label(v));
        return *id;
    }

    /// The edge between two vertices, oriented as traversed from u to v.
    TypedEdge traverse(std::size_t u, std::size_t v) const {
        const auto e = find_edge(u, v);
        if (!e) throw std::out_of_range("no edge " + label(vertices_[u]) + " -- " + label(vertices_[v]));
        TypedEdge out = edges_[*e];
        if (out.tail != vertices_[u]) {
            std::swap(out.tail, out.head);
            out.sign = -1;
        }
        return out;
    }

    /// Human-readable vertex label: "p/q" or "[u|v]" for the corner on side {u, v}.
    std::string label(const DiagramVertex& v) const {
        if (const auto* f = std::get_if<Fraction>(&v)) return f->to_string();
        const auto [u, w] = corner_side(std::get<Corner>(v));
        return "[" + u.to_string() + "|" + w.to_string() + "]";
    }

private:
    friend Complex build_diagram(const std::vector<Quad>& chain, DiagramKind which);

    std::size_t add_vertex(const DiagramVertex& v) {
        const auto [it, inserted] = vertex_index_.try_emplace(v, vertices_.size());
        if (inserted) vertices_.push_back(v);
        return it->second;
    }

    std::size_t add_edge(std::size_t tail, std::size_t head, EdgeType t, const GMat& g) {
        const auto key = std::minmax(tail, head);
        if (const auto it = edge_index_.find(key); it != edge_index_.end()) return it->second;
        const std::size_t id = edges_.size();
        edges_.push_back({vertices_[tail], vertices_[head], t, g, 1, id});
        edge_index_.emplace(key, id);
        return id;
    }

    void add_cell(CellKind kind, std::size_t quad, int region, std::vector<std::size_t> ccw) {
        cells_.push_back({kind, quad, region, std::move(ccw)});
    }

    void finalize();

    DiagramKind kind_ = DiagramKind::dt;
    std::vector<Quad> chain_;
    std::vector<DiagramVertex> vertices_;
    std::map<DiagramVertex, std::size_t> vertex_index_;
    std::vector<TypedEdge> edges_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index_;
    std::vector<Cell> cells_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
    std::vector<std::vector<std::size_t>> edge_cells_;
};

inline void Complex::finalize() {
    adjacency_.assign(vertices_.size(), {});
    for (const auto& e : edges_) {
        const std::size_t u = vertex_id(e.tail);
        const std::size_t v = vertex_id(e.head);
        adjacency_[u].emplace_back(e.index, v);
        adjacency_[v].emplace_back(e.index, u);
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end(), [this](const auto& x, const auto& y) {
            const EdgeType tx = edges_[x.first].etype;
            const EdgeType ty = edges_[y.first].etype;
            if (tx != ty) return tx < ty;
            return vertices_[x.second] < vertices_[y.second];
        });
    }
    edge_cells_.assign(edges_.size(), {});
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        const auto& vs = cells_[c].vertices;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (const auto e = find_edge(vs[i], vs[(i + 1) % vs.size()])) edge_cells_[*e].push_back(c);
        }
    }
}

/// The unique minimal chain of G-translates of Q from the quad at 1/0 to a
/// quad having p/q as a vertex, found by walking along the geodesic 1/0 -> p/q.
inline std::vector<Quad> quad_chain(const TwoBridgeLink& link) {
    const Fraction target = link.fraction();
    const GMat r = GMat::quad_rotation();
    const GMat right = GMat::translate(1);
    const GMat left = GMat::translate(-1);

    std::vector<Quad> chain{Quad(GMat{})};
    int entry_side = -1;
    while (!chain.back().has_vertex(target)) {
        const Quad& cur = chain.back();
        // Neighbour across side j, and the side index through which we enter it.
        const std::array<GMat, 4> across{cur.g * left, cur.g * r * right, cur.g * r * left, cur.g * right};
        int next = -1;
        for (int j = 0; j < 4; ++j) {
            if (j == entry_side) continue;
            const auto [u, v] = cur.side(j);
            if (u.is_infinite() || v.is_infinite()) continue;
            const auto [lo, hi] = std::minmax(u, v);
            if (lo < target && target < hi) next = j;
        }
        if (next < 0) throw std::logic_error("quad chain walk lost the geodesic to " + link.to_string());
        Quad q(across[next]);
        // Record which side of the new quad is the one we crossed.
        const auto crossed = cur.side(next);
        entry_side = -1;
        for (int j = 0; j < 4; ++j) {
            const auto s = q.side(j);
            if ((s.first == crossed.first && s.second == crossed.second) ||
                (s.first == crossed.second && s.second == crossed.first)) {
                entry_side = j;
            }
        }
        chain.push_back(std::move(q));
    }
    return chain;
}

/// Builds D0, D1 or Dt over a quad chain.
inline Complex build_diagram(const std::vector<Quad>& chain, DiagramKind which) {
    Complex cx;
    cx.kind_ = which;
    cx.chain_ = chain;
    const GMat r = GMat::quad_rotation();

    // Corner on each Farey side: first quad (in chain order) that has the side.
    std::map<std::pair<Fraction, Fraction>, Corner> corner_of_side;
    for (std::size_t qi = 0; qi < chain.size(); ++qi) {
        for (int j = 0; j < 4; ++j) {
            const auto [u, v] = chain[qi].side(j);
            corner_of_side.try_emplace(std::minmax(u, v), Corner{qi, j});
        }
    }
    const auto corner = [&](std::size_t qi, int j) {
        const auto [u, v] = chain[qi].side(j);
        return corner_of_side.at(std::minmax(u, v));
    };

    for (std::size_t qi = 0; qi < chain.size(); ++qi) {
        const Quad& quad = chain[qi];
        std::array<std::size_t, 4> vid{};
        for (int j = 0; j < 4; ++j) vid[j] = cx.add_vertex(quad.vertices[j]);

        // Sides, as matrices sending 1/0 to the even end and 0/1 to the odd end.
        std::array<GMat, 4> side_g{};
        std::array<int, 4> even_end{};
        for (int j = 0; j < 4; ++j) {
            const auto [u, v] = quad.side(j);
            even_end[j] = even_denominator(u) ? j : (j + 1) % 4;
            const Fraction& ev = quad.vertices[even_end[j]];
            const Fraction& od = quad.vertices[even_end[j] == j ? (j + 1) % 4 : j];
            side_g[j] = GMat(SL2::from_columns(ev, od));
        }

        switch (which) {
            case DiagramKind::dt: {
                std::array<std::size_t, 4> cid{};
                for (int j = 0; j < 4; ++j) cid[j] = cx.add_vertex(corner(qi, j));
                for (int j = 0; j < 4; ++j) {
                    const int ev = even_end[j];
                    const int od = ev == j ? (j + 1) % 4 : j;
                    cx.add_edge(vid[ev], cid[j], EdgeType::A, side_g[j]);
                    cx.add_edge(vid[od], cid[j], EdgeType::B, side_g[j]);
                }
                cx.add_edge(cid[3], cid[0], EdgeType::C, quad.g);
                cx.add_edge(cid[1], cid[2], EdgeType::C, quad.g * r);
                cx.add_edge(cid[1], cid[0], EdgeType::D, quad.g);
                cx.add_edge(cid[3], cid[2], EdgeType::D, quad.g * r);
                for (int j = 0; j < 4; ++j) {
                    cx.add_cell(CellKind::triangle, qi, j, {vid[j], cid[j], cid[(j + 3) % 4]});
                }
                cx.add_cell(CellKind::rectangle, qi, 4, {cid[0], cid[1], cid[2], cid[3]});
                break;
            }
            case DiagramKind::d1: {
                for (int j = 0; j < 4; ++j) {
                    const int ev = even_end[j];
                    const int od = ev == j ? (j + 1) % 4 : j;
                    cx.add_edge(vid[ev], vid[od], EdgeType::A, side_g[j]);
                }
                // Relabel so that V1 has an even numerator; then S0 is the
                // triangle at V0 and the C diagonal points V1 <- V3.
                const bool flip = quad.g.b() % 2 != 0;
                const GMat g = flip ? quad.g * r : quad.g;
                const auto at = [&](int j) { return vid[flip ? (j + 2) % 4 : j]; };
                cx.add_edge(at(3), at(1), EdgeType::C, g);
                cx.add_cell(CellKind::triangle, qi, 0, {at(0), at(1), at(3)});
                cx.add_cell(CellKind::triangle, qi, 1, {at(2), at(3), at(1)});
                break;
            }
            case DiagramKind::d0: {
                for (int j = 0; j < 4; ++j) {
                    const int ev = even_end[j];
                    const int od = ev == j ? (j + 1) % 4 : j;
                    cx.add_edge(vid[od], vid[ev], EdgeType::B, side_g[j]);
                }
                cx.add_edge(vid[2], vid[0], EdgeType::D, quad.g);
                cx.add_cell(CellKind::triangle, qi, 0, {vid[1], vid[2], vid[0]});
                cx.add_cell(CellKind::triangle, qi, 1, {vid[3], vid[0], vid[2]});
                break;
            }
        }
    }
    cx.finalize();
    return cx;
}

/// Chain plus all three complexes for one link.
struct Diagrams {
    TwoBridgeLink link;
    std::vector<Quad> chain;
    Complex d0, d1, dt;

    const Complex& get(DiagramKind k) const {
        switch (k) {
            case DiagramKind::d0: return d0;
            case DiagramKind::d1: return d1;
            case DiagramKind::dt: return dt;
        }
        throw std::invalid_argument("unknown diagram");
    }
};

inline Diagrams build_diagrams(const TwoBridgeLink& link) {
    auto chain = quad_chain(link);
    Complex d0 = build_diagram(chain, DiagramKind::d0);
    Complex d1 = build_diagram(chain, DiagramKind::d1);
    Complex dt = build_diagram(chain, DiagramKind::dt);
    return {link, std::move(chain), std::move(d0), std::move(d1), std::move(dt)};
}

/// Whether two consecutive edges lie in a common triangle or rectangle.
inline bool share_cell(const Complex& cx, std::size_t e1, std::size_t e2) {
    for (const std::size_t c1 : cx.cells_of_edge(e1)) {
        for (const std::size_t c2 : cx.cells_of_edge(e2)) {
            if (c1 == c2) return true;
        }
    }
    return false;
}

inline bool is_minimal(const Complex& cx, const TypedPath& path) {
    for (std::size_t i = 0; i + 1 < path.edges.size(); ++i) {
        if (share_cell(cx, path.edges[i].index, path.edges[i + 1].index)) return false;
    }
    return true;
}

/// All minimal simple edge paths between two rational vertices, in the
/// deterministic order given by the sorted adjacency lists.
inline std::vector<TypedPath> minimal_paths(const Complex& cx, const Fraction& from, const Fraction& to) {
    const std::size_t src = cx.vertex_id(from);
    const std::size_t dst = cx.vertex_id(to);
    std::vector<TypedPath> out;
    std::vector<bool> on_path(cx.vertices().size(), false);
    std::vector<std::size_t> vstack{src};
    std::vector<std::size_t> estack;
    on_path[src] = true;

    auto dfs = [&](auto&& self) -> void {
        const std::size_t u = vstack.back();
        if (u == dst) {
            TypedPath p{cx.kind(), {}};
            for (std::size_t i = 0; i < estack.size(); ++i) p.edges.push_back(cx.traverse(vstack[i], vstack[i + 1]));
            out.push_back(std::move(p));
            return;
        }
        for (const auto& [e, w] : cx.neighbours(u)) {
            if (on_path[w]) continue;
            if (!estack.empty() && share_cell(cx, estack.back(), e)) continue;
            on_path[w] = true;
            vstack.push_back(w);
            estack.push_back(e);
            self(self);
            estack.pop_back();
            vstack.pop_back();
            on_path[w] = false;
        }
    };
    dfs(dfs);
    return out;
}

/// Limit of a Dt path as t -> 1 (target D1) or t -> 0 (target D0): corners
/// slide to one end of their side and collapsed edges disappear.
inline TypedPath collapse(const Complex& dt, const TypedPath& path, const Complex& target) {
    if (path.kind != DiagramKind::dt) throw std::invalid_argument("collapse expects a Dt path");
    const bool to_d1 = target.kind() == DiagramKind::d1;
    if (!to_d1 && target.kind() != DiagramKind::d0) throw std::invalid_argument("collapse target must be D0 or D1");

    std::vector<Fraction> seq;
    for (const auto& v : path.vertices()) {
        Fraction f;
        if (const auto* rat = std::get_if<Fraction>(&v)) {
            f = *rat;
        } else {
            const auto [even, odd] = dt.corner_side(std::get<Corner>(v));
            f = to_d1 ? odd : even;
        }
        if (seq.empty() || seq.back() != f) seq.push_back(f);
    }
    TypedPath out{target.kind(), {}};
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        out.edges.push_back(target.traverse(target.vertex_id(seq[i]), target.vertex_id(seq[i + 1])));
    }
    return out;
}

/// Rational vertices of a path in order (corners skipped).
inline std::vector<Fraction> rational_vertices(const TypedPath& path) {
    std::vector<Fraction> out;
    for (const auto& v : path.vertices()) {
        if (const auto* f = std::get_if<Fraction>(&v)) out.push_back(*f);
    }
    return out;
}

}  // namespace twobridge

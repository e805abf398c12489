#pragma once

// Intersection data M(gamma) for minimal edge paths and the boundary slope
// families they produce.
//
// For a Dt path, M = (x alpha + y beta, y alpha + z beta) is computed two ways:
// the improved algorithm (push every C/D edge into its vertex triangle, then
// sum delta over the rational vertices) and the per-edge contribution table,
// which serves as an oracle. D1 paths with C edges give the t = 1 families,
// M = ((x + y s) beta, (x - y s) beta).

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "diagram.hpp"

namespace twobridge {

/// The linear form alpha_coef * alpha + beta_coef * beta.
struct AlphaBeta {
    Int alpha = 0;
    Int beta = 0;

    AlphaBeta& operator+=(const AlphaBeta& o) {
        alpha += o.alpha;
        beta += o.beta;
        return *this;
    }
    friend AlphaBeta operator*(Int k, const AlphaBeta& v) { return {k * v.alpha, k * v.beta}; }
    friend bool operator==(const AlphaBeta&, const AlphaBeta&) = default;
};

/// Pair (M1, M2) of linear forms in alpha and beta.
struct AlphaBetaPair {
    AlphaBeta m1, m2;

    AlphaBetaPair& operator+=(const AlphaBetaPair& o) {
        m1 += o.m1;
        m2 += o.m2;
        return *this;
    }
    friend AlphaBetaPair operator*(Int k, const AlphaBetaPair& v) { return {k * v.m1, k * v.m2}; }
    friend bool operator==(const AlphaBetaPair&, const AlphaBetaPair&) = default;
};

/// beta_coef * beta + sum_i n[i] * n_i, one free weight n_i per C edge.
struct LinearForm {
    Int beta = 0;
    std::vector<Int> n;

    explicit LinearForm(std::size_t weights = 0) : n(weights, 0) {}

    LinearForm& operator+=(const LinearForm& o) {
        beta += o.beta;
        for (std::size_t i = 0; i < n.size(); ++i) n[i] += o.n[i];
        return *this;
    }
    friend bool operator==(const LinearForm&, const LinearForm&) = default;

    /// Range of the form over the box 0 <= n_i <= beta, as beta coefficients.
    std::pair<Int, Int> bounds() const {
        Int lo = beta, hi = beta;
        for (const Int c : n) {
            lo += std::min<Int>(c, 0);
            hi += std::max<Int>(c, 0);
        }
        return {lo, hi};
    }
};

struct SymbolicM {
    LinearForm m1, m2;
    friend bool operator==(const SymbolicM&, const SymbolicM&) = default;
};

/// M = (x alpha + y beta, y alpha + z beta).
struct MForm {
    Int x = 0, y = 0, z = 0;
    friend auto operator<=>(const MForm&, const MForm&) = default;
};

/// M = ((x + y s) beta, (x - y s) beta) with -1 <= s <= 1.
struct SForm {
    Int x = 0, y = 0;
    friend auto operator<=>(const SForm&, const SForm&) = default;
};

/// Signed counts of region pushes: n0 for R0/R2, n1 for R1/R3, n4 for R4.
struct PushLedger {
    Int n0_plus = 0, n0_minus = 0;
    Int n1_plus = 0, n1_minus = 0;
    Int n4_plus = 0, n4_minus = 0;

    Int n0() const { return n0_plus - n0_minus; }
    Int n1() const { return n1_plus - n1_minus; }
    Int n4() const { return n4_plus - n4_minus; }

    void record(int region, int sign) {
        Int* slot = nullptr;
        switch (region) {
            case 0:
            case 2: slot = sign > 0 ? &n0_plus : &n0_minus; break;
            case 1:
            case 3: slot = sign > 0 ? &n1_plus : &n1_minus; break;
            case 4: slot = sign > 0 ? &n4_plus : &n4_minus; break;
            default: throw std::logic_error("bad region");
        }
        ++*slot;
    }
};

/// delta(u, v) = p_u q_v - p_v q_u, and 0 when either point is 1/0.
inline Int delta(const Fraction& u, const Fraction& v) {
    if (u.is_infinite() || v.is_infinite()) return 0;
    return u.num() * v.den() - v.num() * u.den();
}

inline Int delta_sum(std::span<const Fraction> vertices) {
    Int k = 0;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) k += delta(vertices[i], vertices[i + 1]);
    return k;
}

/// delta sum over the rational vertices of a path; the path must use only
/// A/B edges (Dt) or be a D1 path read as its vertex sequence.
inline Int delta_sum(const TypedPath& path) {
    const auto rv = rational_vertices(path);
    return delta_sum(std::span<const Fraction>(rv));
}

/// Region value of a Dt cell boundary traversed counterclockwise.
inline AlphaBetaPair region_value(int region) {
    switch (region) {
        case 0:
        case 2: return {{0, 0}, {0, -2}};
        case 1:
        case 3: return {{-1, 1}, {1, -1}};
        case 4: return {{0, -2}, {-2, 4}};
    }
    throw std::invalid_argument("region must be 0..4");
}

/// How D edges are pushed off the rectangle.
enum class Routing {
    triangles,        // every C/D edge crosses its vertex triangle
    through_rectangle // D edges first go round the other three rectangle sides
};

struct ImprovedTrace {
    MForm form;
    PushLedger ledger;
    Int k = 0;
    std::vector<Fraction> pushed;  // rational vertices of the A/B-only path
};

namespace detail {

inline int ccw_sign(const Cell& cell, std::size_t u, std::size_t v) {
    const auto& vs = cell.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] == u && vs[(i + 1) % vs.size()] == v) return 1;
        if (vs[i] == v && vs[(i + 1) % vs.size()] == u) return -1;
    }
    throw std::logic_error("edge not on cell boundary");
}

inline const Cell& cell_of_kind(const Complex& cx, std::size_t edge, CellKind kind) {
    for (const std::size_t c : cx.cells_of_edge(edge)) {
        if (cx.cells()[c].kind == kind) return cx.cells()[c];
    }
    throw std::logic_error("edge has no cell of the requested kind");
}

// Replaces the rectangle edge u -> v by u -> w -> v through its vertex triangle.
inline void push_triangle(const Complex& dt, std::size_t u, std::size_t v, ImprovedTrace& tr) {
    const std::size_t e = *dt.find_edge(u, v);
    const Cell& tri = cell_of_kind(dt, e, CellKind::triangle);
    tr.ledger.record(tri.region, ccw_sign(tri, u, v));
    tr.pushed.push_back(std::get<Fraction>(dt.vertices()[tri.vertices[0]]));
}

inline void check_parity(const MForm& m, Int q) {
    const auto even = [](Int v) { return v % 2 == 0; };
    if (!even(m.x - m.z) || !even(m.x + m.y - 1 - q)) {
        throw std::logic_error("parity violated by M = (" + std::to_string(m.x) + ", " + std::to_string(m.y) + ", " +
                               std::to_string(m.z) + ")");
    }
}

}  // namespace detail

/// Improved algorithm on a minimal Dt path from 1/0 to p/q.
inline ImprovedTrace m_form_trace(const Complex& dt, const TypedPath& path, Routing routing = Routing::triangles) {
    if (dt.kind() != DiagramKind::dt || path.kind != DiagramKind::dt) {
        throw std::invalid_argument("improved algorithm needs a Dt path");
    }
    ImprovedTrace tr;
    for (const auto& e : path.edges) {
        const std::size_t u = dt.vertex_id(e.tail);
        const std::size_t v = dt.vertex_id(e.head);
        if (const auto* f = std::get_if<Fraction>(&e.tail)) tr.pushed.push_back(*f);
        if (e.etype == EdgeType::A || e.etype == EdgeType::B) continue;
        if (routing == Routing::through_rectangle && e.etype == EdgeType::D) {
            const Cell& rect = detail::cell_of_kind(dt, e.index, CellKind::rectangle);
            const int s = detail::ccw_sign(rect, u, v);
            tr.ledger.record(4, s);
            // Walk the long way round: against the direction u -> v.
            const auto& vs = rect.vertices;
            const auto pos = static_cast<std::size_t>(std::find(vs.begin(), vs.end(), u) - vs.begin());
            const std::size_t step = s > 0 ? vs.size() - 1 : 1;
            std::size_t cur = pos;
            for (int i = 0; i < 3; ++i) {
                const std::size_t nxt = (cur + step) % vs.size();
                detail::push_triangle(dt, vs[cur], vs[nxt], tr);
                cur = nxt;
            }
            continue;
        }
        detail::push_triangle(dt, u, v, tr);
    }
    tr.pushed.push_back(path.to());
    tr.k = delta_sum(std::span<const Fraction>(tr.pushed));
    const PushLedger& n = tr.ledger;
    tr.form = {tr.k - n.n1(), n.n1() - 2 * n.n4(), tr.k - n.n1() - 2 * n.n0() + 4 * n.n4()};
    detail::check_parity(tr.form, path.to().den());
    return tr;
}

inline MForm m_form_improved(const Complex& dt, const TypedPath& path, Routing routing = Routing::triangles) {
    return m_form_trace(dt, path, routing).form;
}

/// Per-edge contribution to (M1, M2) for a Dt edge traversed forward.
inline AlphaBetaPair edge_contribution(EdgeType type, const GMat& g) {
    const bool inf = g.c() == 0;
    const Fraction x = inf ? Fraction::infinity() : g.pullback_slope();
    if (!inf && x == Fraction(0)) throw std::logic_error("-d/c = 0 on an edge of G");
    const Fraction half(1, 2);
    switch (type) {
        case EdgeType::A:
            if (inf) return {};
            return x < Fraction(0) ? AlphaBetaPair{{0, 1}, {0, 1}} : AlphaBetaPair{{0, -1}, {0, -1}};
        case EdgeType::B:
            if (inf) return {};
            return x < Fraction(0) ? AlphaBetaPair{{-1, 1}, {}} : AlphaBetaPair{{1, -1}, {}};
        case EdgeType::C:
            if (!inf && Fraction(0) < x && x < Fraction(1)) return {{0, -2}, {}};
            return {{}, {0, 2}};
        case EdgeType::D: {
            AlphaBeta m1;
            if (!inf && x < half) m1 = {-1, 1};
            if (!inf && half < x) m1 = {1, -1};
            return {m1, {1, -1}};
        }
    }
    throw std::logic_error("unknown edge type");
}

/// Table lookup for a Dt path, summed with orientation signs.
inline AlphaBetaPair m_table_pair(const TypedPath& path) {
    if (path.kind != DiagramKind::dt) throw std::invalid_argument("expected a Dt path");
    AlphaBetaPair m;
    for (const auto& e : path.edges) m += e.sign * edge_contribution(e.etype, e.g);
    return m;
}

inline MForm m_lash_oracle(const TypedPath& path) {
    const AlphaBetaPair m = m_table_pair(path);
    if (m.m1.beta != m.m2.alpha) throw std::logic_error("oracle M is not of the form (x a + y b, y a + z b)");
    return {m.m1.alpha, m.m1.beta, m.m2.beta};
}

namespace detail {

// Matrix for the "A for C" row: columns are the odd-numerator and the
// even-numerator endpoints of the C edge.
inline SL2 a_for_c_matrix(const TypedEdge& e) {
    const auto& tail = std::get<Fraction>(e.sign > 0 ? e.tail : e.head);
    const auto& head = std::get<Fraction>(e.sign > 0 ? e.head : e.tail);
    return SL2::from_columns(tail, head);
}

inline bool a_for_c_negative(const TypedEdge& e) {
    const SL2 h = a_for_c_matrix(e);
    return h.pullback_slope() < Fraction(0);
}

}  // namespace detail

/// Table lookup for a D1 path. A sides use the A and B rows at alpha = beta
/// (the side seen as even end -> corner -> odd end); C edges use "A for C"
/// with one free weight n_i per C edge, numbered along the path.
inline SymbolicM m_table_symbolic(const TypedPath& path) {
    if (path.kind != DiagramKind::d1) throw std::invalid_argument("expected a D1 path");
    const std::size_t weights = path.count(EdgeType::C);
    SymbolicM m{LinearForm(weights), LinearForm(weights)};
    std::size_t i = 0;
    for (const auto& e : path.edges) {
        if (e.etype == EdgeType::A) {
            // Forward is even -> odd: A forward, then B backward.
            AlphaBetaPair ab = edge_contribution(EdgeType::A, e.g);
            ab += -1 * edge_contribution(EdgeType::B, e.g);
            ab = e.sign * ab;
            m.m1.beta += ab.m1.alpha + ab.m1.beta;
            m.m2.beta += ab.m2.alpha + ab.m2.beta;
            continue;
        }
        LinearForm c1(weights), c2(weights);
        if (detail::a_for_c_negative(e)) {
            c1.beta = 2, c1.n[i] = -2;
            c2.n[i] = 2;
        } else {
            c1.n[i] = -2;
            c2.beta = -2, c2.n[i] = 2;
        }
        for (LinearForm* f : {&c1, &c2}) {
            f->beta *= e.sign;
            for (Int& c : f->n) c *= e.sign;
        }
        m.m1 += c1;
        m.m2 += c2;
        ++i;
    }
    return m;
}

struct SFormTrace {
    SForm form;
    SymbolicM m;
    Int k = 0;
    Int pushes_plus = 0, pushes_minus = 0;
    std::pair<Int, Int> s_bounds;  // range of y s as beta coefficients
};

/// t = 1 form of a D1 path: each C edge is pushed across its S0 triangle,
/// picking up +-(-2 beta + 2 n_i, -2 n_i).
inline SFormTrace s_form_trace(const Complex& d1, const TypedPath& path) {
    if (d1.kind() != DiagramKind::d1 || path.kind != DiagramKind::d1) throw std::invalid_argument("expected a D1 path");
    const std::size_t weights = path.count(EdgeType::C);
    SFormTrace tr;
    tr.m = {LinearForm(weights), LinearForm(weights)};
    std::vector<Fraction> pushed;
    std::size_t i = 0;
    for (const auto& e : path.edges) {
        pushed.push_back(std::get<Fraction>(e.tail));
        if (e.etype != EdgeType::C) continue;
        const std::size_t u = d1.vertex_id(e.tail);
        const std::size_t v = d1.vertex_id(e.head);
        const Cell* s0 = nullptr;
        for (const std::size_t c : d1.cells_of_edge(e.index)) {
            if (d1.cells()[c].region == 0) s0 = &d1.cells()[c];
        }
        if (s0 == nullptr) throw std::logic_error("C edge without an S0 triangle");
        pushed.push_back(std::get<Fraction>(d1.vertices()[s0->vertices[0]]));
        const int eps = detail::ccw_sign(*s0, u, v);
        (eps > 0 ? tr.pushes_plus : tr.pushes_minus) += 1;
        // eps * (-2 beta + 2 n_i, -2 n_i)
        LinearForm c1(weights), c2(weights);
        c1.beta = -2, c1.n[i] = 2;
        c2.n[i] = -2;
        for (LinearForm* f : {&c1, &c2}) {
            f->beta *= eps;
            for (Int& c : f->n) c *= eps;
        }
        tr.m.m1 += c1;
        tr.m.m2 += c2;
        ++i;
    }
    pushed.push_back(path.to());
    tr.k = delta_sum(std::span<const Fraction>(pushed));
    tr.m.m1.beta += tr.k;
    tr.m.m2.beta += tr.k;
    tr.form = {tr.k - tr.pushes_plus + tr.pushes_minus, tr.pushes_plus + tr.pushes_minus};

    LinearForm diff(weights);  // (M1 - M2) / 2 = y s beta
    diff.beta = tr.m.m1.beta - tr.m.m2.beta;
    for (std::size_t j = 0; j < weights; ++j) diff.n[j] = tr.m.m1.n[j] - tr.m.m2.n[j];
    const auto [lo, hi] = diff.bounds();
    tr.s_bounds = {lo / 2, hi / 2};
    if (tr.s_bounds.first < -tr.form.y || tr.s_bounds.second > tr.form.y) {
        throw std::logic_error("s leaves [-1, 1] on a D1 path");
    }
    const Int q = path.to().den();
    if ((tr.form.x + tr.form.y - 1 - q) % 2 != 0) throw std::logic_error("parity violated by an s-form");
    return tr;
}

inline SForm s_form(const Complex& d1, const TypedPath& path) { return s_form_trace(d1, path).form; }

inline MForm to_preferred(const MForm& m, Int l) { return {m.x + l, m.y, m.z + l}; }
inline SForm to_preferred(const SForm& s, Int l) { return {s.x + l, s.y}; }

// ---------------------------------------------------------------------------
// Slope families

enum class Branch { t_full, t_upper, t_lower, s, endpoint };
enum class Phi { none, first, second };

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::t_full: return "t_full";
        case Branch::t_upper: return "t_upper";
        case Branch::t_lower: return "t_lower";
        case Branch::s: return "s";
        case Branch::endpoint: return "endpoint";
    }
    return "?";
}

inline const char* to_string(Phi p) {
    switch (p) {
        case Phi::none: return "none";
        case Phi::first: return "first";
        case Phi::second: return "second";
    }
    return "?";
}

using SlopePair = std::pair<std::optional<Fraction>, std::optional<Fraction>>;

/// One family of boundary slope pairs in the preferred basis.
///  T branches: (x + y/t, y t + z) on the domain in t.
///  S branch:   (x + y s, x - y s) on -1 <= s <= 1 (z unused).
///  Endpoint:   (x, phi) at t = 1/0 or (phi, x) at t = 0.
struct SlopeFamily {
    Branch branch = Branch::t_upper;
    Int x = 0, y = 0, z = 0;
    Phi phi = Phi::none;
    Fraction lo, hi;

    static SlopeFamily t_family(Branch b, Int x, Int y, Int z) {
        switch (b) {
            case Branch::t_full: return {b, x, y, z, Phi::none, Fraction(0), Fraction::infinity()};
            case Branch::t_upper: return {b, x, y, z, Phi::none, Fraction(1), Fraction::infinity()};
            case Branch::t_lower: return {b, x, y, z, Phi::none, Fraction(0), Fraction(1)};
            default: throw std::invalid_argument("not a t branch");
        }
    }
    static SlopeFamily s_family(Int x, Int y) { return {Branch::s, x, y, 0, Phi::none, Fraction(-1), Fraction(1)}; }
    static SlopeFamily endpoint(Int x, Phi phi) {
        const Fraction at = phi == Phi::second ? Fraction::infinity() : Fraction(0);
        return {Branch::endpoint, x, 0, 0, phi, at, at};
    }

    bool is_t() const { return branch == Branch::t_full || branch == Branch::t_upper || branch == Branch::t_lower; }

    /// Slope pair at a parameter inside the domain; nullopt marks phi.
    SlopePair evaluate(const Fraction& param) const {
        if (param < lo || hi < param) throw std::out_of_range("parameter outside family domain");
        if (branch == Branch::endpoint) {
            return phi == Phi::second ? SlopePair{Fraction(x), std::nullopt} : SlopePair{std::nullopt, Fraction(x)};
        }
        if (branch == Branch::s) return {Fraction(x) + Fraction(y) * param, Fraction(x) - Fraction(y) * param};
        if (param.is_infinite() || param == Fraction(0)) {
            if (y != 0) throw std::domain_error("slope diverges at this end of the t range");
            return {Fraction(x), Fraction(z)};
        }
        return {Fraction(x) + Fraction(y) / param, Fraction(y) * param + Fraction(z)};
    }

    friend bool operator==(const SlopeFamily& a, const SlopeFamily& b) { return a.key() == b.key(); }
    friend auto operator<=>(const SlopeFamily& a, const SlopeFamily& b) { return a.key() <=> b.key(); }

private:
    std::tuple<Branch, Int, Int, Int, Phi> key() const { return {branch, x, y, z, phi}; }
};

struct SlopeResult {
    TwoBridgeLink link;
    Int linking_number = 0;
    std::vector<MForm> mforms;   // preferred basis, deduplicated and sorted
    std::vector<SForm> sforms;   // preferred basis, deduplicated and sorted
    std::vector<SlopeFamily> families;  // canonical order
    std::vector<std::string> diagnostics;
};

/// Families from preferred triples and s-forms, deduplicated, canonical order.
inline std::vector<SlopeFamily> families_from_forms(std::span<const MForm> mforms, std::span<const SForm> sforms,
                                                    std::vector<std::string>* diagnostics = nullptr) {
    std::set<SlopeFamily> out;
    for (const MForm& m : mforms) {
        if (m.x == m.z) {
            out.insert(SlopeFamily::t_family(Branch::t_full, m.x, m.y, m.z));
        } else {
            out.insert(SlopeFamily::t_family(Branch::t_upper, m.x, m.y, m.z));
            out.insert(SlopeFamily::t_family(Branch::t_lower, m.z, m.y, m.x));
        }
        if (m.y == 0) {
            out.insert(SlopeFamily::endpoint(m.x, Phi::second));
            out.insert(SlopeFamily::endpoint(m.x, Phi::first));
        } else if (diagnostics != nullptr) {
            diagnostics->push_back("divergent limit at t = 0 and t = 1/0 for (x, y, z) = (" + std::to_string(m.x) +
                                   ", " + std::to_string(m.y) + ", " + std::to_string(m.z) + ")");
        }
    }
    for (const SForm& s : sforms) out.insert(SlopeFamily::s_family(s.x, s.y));
    return {out.begin(), out.end()};
}

/// The tables' view: 1 < t < 1/0 families (merged ones included) and s-families.
inline std::vector<SlopeFamily> presentation(std::span<const SlopeFamily> families) {
    std::set<SlopeFamily> out;
    for (SlopeFamily f : families) {
        if (f.branch == Branch::t_full) f = SlopeFamily::t_family(Branch::t_upper, f.x, f.y, f.z);
        if (f.branch == Branch::t_upper || f.branch == Branch::s) out.insert(f);
    }
    return {out.begin(), out.end()};
}

/// Full pipeline for one link.
inline SlopeResult compute_slopes(const TwoBridgeLink& link) {
    const Diagrams dg = build_diagrams(link);
    const Fraction from = Fraction::infinity();
    const Fraction to = link.fraction();
    SlopeResult res{link, linking_number(link), {}, {}, {}, {}};

    std::set<MForm> mforms;
    std::set<std::vector<Fraction>> limits;
    for (const TypedPath& p : minimal_paths(dg.dt, from, to)) {
        mforms.insert(to_preferred(m_form_improved(dg.dt, p), res.linking_number));
        limits.insert(rational_vertices(collapse(dg.dt, p, dg.d1)));
    }
    std::set<SForm> sforms;
    for (const TypedPath& p : minimal_paths(dg.d1, from, to)) {
        if (p.count(EdgeType::C) == 0) continue;
        sforms.insert(to_preferred(s_form(dg.d1, p), res.linking_number));
        if (!limits.contains(rational_vertices(p))) {
            std::string path;
            for (const Fraction& f : rational_vertices(p)) path += (path.empty() ? "" : " ") + f.to_string();
            res.diagnostics.push_back("D1 path " + path + " is not the limit of a minimal Dt path");
        }
    }
    res.mforms.assign(mforms.begin(), mforms.end());
    res.sforms.assign(sforms.begin(), sforms.end());
    res.families = families_from_forms(res.mforms, res.sforms, &res.diagnostics);
    return res;
}

inline std::vector<SlopeFamily> slope_families(const TwoBridgeLink& link) { return compute_slopes(link).families; }

/// Table-style text for a family: "(-2t^-1, -2-2t)", "(-3+s, -3-s)", "(0, phi)".
inline std::string format_family(const SlopeFamily& f) {
    const auto term = [](Int c, Int coef, const char* var) {
        std::string out;
        if (c != 0) out = std::to_string(c);
        if (coef != 0) {
            if (coef < 0) out += "-";
            else if (c != 0) out += "+";
            if (coef != 1 && coef != -1) out += std::to_string(coef < 0 ? -coef : coef);
            out += var;
        }
        return out.empty() ? std::string("0") : out;
    };
    switch (f.branch) {
        case Branch::s: return "(" + term(f.x, f.y, "s") + ", " + term(f.x, -f.y, "s") + ")";
        case Branch::endpoint:
            return f.phi == Phi::second ? "(" + std::to_string(f.x) + ", phi)" : "(phi, " + std::to_string(f.x) + ")";
        default: return "(" + term(f.x, f.y, "t^-1") + ", " + term(f.z, f.y, "t") + ")";
    }
}

}  // namespace twobridge

#pragma once

// Exact arithmetic for 2-bridge links: reduced fractions (with the ideal
// point 1/0), determinant-one integer matrices and the level-2 subgroup G,
// continued fractions, link normalization, linking numbers and enumeration.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace twobridge {

using Int = std::int64_t;

/// Reduced fraction num/den with den >= 0. The ideal point is stored as 1/0.
template <std::signed_integral I>
class BasicFraction {
public:
    constexpr BasicFraction() = default;
    constexpr BasicFraction(I n) : num_(n), den_(1) {}
    constexpr BasicFraction(I n, I d) : num_(n), den_(d) { normalize(); }

    static constexpr BasicFraction infinity() { return BasicFraction(1, 0); }

    constexpr I num() const { return num_; }
    constexpr I den() const { return den_; }
    constexpr bool is_infinite() const { return den_ == 0; }

    friend constexpr bool operator==(const BasicFraction&, const BasicFraction&) = default;

    // Total order: finite values by magnitude, 1/0 above everything.
    friend constexpr std::strong_ordering operator<=>(const BasicFraction& x, const BasicFraction& y) {
        if (x.is_infinite() || y.is_infinite()) {
            return x.is_infinite() <=> y.is_infinite();
        }
        return x.num_ * y.den_ <=> y.num_ * x.den_;
    }

    friend constexpr BasicFraction operator+(const BasicFraction& x, const BasicFraction& y) {
        require_finite(x, y);
        return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
    }
    friend constexpr BasicFraction operator-(const BasicFraction& x, const BasicFraction& y) {
        require_finite(x, y);
        return {x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_};
    }
    friend constexpr BasicFraction operator*(const BasicFraction& x, const BasicFraction& y) {
        require_finite(x, y);
        return {x.num_ * y.num_, x.den_ * y.den_};
    }
    friend constexpr BasicFraction operator/(const BasicFraction& x, const BasicFraction& y) {
        require_finite(x, y);
        if (y.num_ == 0) throw std::domain_error("division by zero");
        return {x.num_ * y.den_, x.den_ * y.num_};
    }
    constexpr BasicFraction operator-() const {
        if (is_infinite()) return *this;
        return {-num_, den_};
    }

    /// "p/q", "n" for integers, "1/0" for the ideal point.
    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p/q" or "n". Throws std::invalid_argument on malformed input.
    static BasicFraction parse(std::string_view text) {
        auto parse_int = [](std::string_view s) {
            if (s.empty()) throw std::invalid_argument("empty integer");
            std::size_t i = 0;
            bool neg = false;
            if (s[0] == '-' || s[0] == '+') {
                neg = s[0] == '-';
                i = 1;
            }
            if (i == s.size()) throw std::invalid_argument("malformed integer");
            I value = 0;
            for (; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9') {
                    throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
                }
                value = value * 10 + (s[i] - '0');
            }
            return neg ? -value : value;
        };
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) return BasicFraction(parse_int(text));
        return BasicFraction(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    friend std::ostream& operator<<(std::ostream& os, const BasicFraction& f) {
        return os << f.to_string();
    }

private:
    constexpr void normalize() {
        if (den_ == 0) {
            if (num_ == 0) throw std::domain_error("0/0 is not a fraction");
            num_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const I g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    static constexpr void require_finite(const BasicFraction& x, const BasicFraction& y) {
        if (x.is_infinite() || y.is_infinite()) {
            throw std::domain_error("arithmetic on the ideal point 1/0");
        }
    }

    I num_ = 0;
    I den_ = 1;
};

using Fraction = BasicFraction<Int>;

/// Integer 2x2 matrix [[a, b], [c, d]] with determinant one, acting on
/// slopes by z -> (az + b)/(cz + d). Matrices are taken up to sign.
template <std::signed_integral I>
struct BasicSL2 {
    I a = 1, b = 0, c = 0, d = 1;

    constexpr BasicSL2() = default;
    constexpr BasicSL2(I a_, I b_, I c_, I d_) : a(a_), b(b_), c(c_), d(d_) {
        if (a * d - b * c != 1) throw std::invalid_argument("matrix determinant must be 1");
    }

    /// Matrix whose columns are the two fractions, sign-adjusted so det = 1.
    /// Requires the fractions to be Farey neighbours (|det| = 1).
    static constexpr BasicSL2 from_columns(const BasicFraction<I>& first, const BasicFraction<I>& second) {
        const I det = first.num() * second.den() - second.num() * first.den();
        if (det == 1) return {first.num(), second.num(), first.den(), second.den()};
        if (det == -1) return {first.num(), -second.num(), first.den(), -second.den()};
        throw std::invalid_argument("fractions " + first.to_string() + " and " + second.to_string() +
                                    " are not Farey neighbours");
    }

    friend constexpr BasicSL2 operator*(const BasicSL2& x, const BasicSL2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }

    constexpr BasicFraction<I> apply(const BasicFraction<I>& z) const {
        return {a * z.num() + b * z.den(), c * z.num() + d * z.den()};
    }

    /// The slope -d/c that the vertical longitude pulls back to; 1/0 when c = 0.
    constexpr BasicFraction<I> pullback_slope() const { return {-d, c}; }

    /// g^ = [[d, c], [b, a]], the linear action on the level spheres.
    constexpr BasicSL2 hat() const { return {d, c, b, a}; }

    // Equality in PSL(2,Z).
    friend constexpr bool operator==(const BasicSL2& x, const BasicSL2& y) {
        return (x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d) ||
               (x.a == -y.a && x.b == -y.b && x.c == -y.c && x.d == -y.d);
    }
};

using SL2 = BasicSL2<Int>;

/// Element of G: determinant one with even lower-left entry.
template <std::signed_integral I>
class BasicGMat {
public:
    constexpr BasicGMat() = default;
    constexpr BasicGMat(I a, I b, I c, I d) : m_(a, b, c, d) { check(); }
    constexpr explicit BasicGMat(const BasicSL2<I>& m) : m_(m) { check(); }

    constexpr const BasicSL2<I>& matrix() const { return m_; }
    constexpr I a() const { return m_.a; }
    constexpr I b() const { return m_.b; }
    constexpr I c() const { return m_.c; }
    constexpr I d() const { return m_.d; }

    constexpr BasicFraction<I> apply(const BasicFraction<I>& z) const { return m_.apply(z); }
    constexpr BasicFraction<I> pullback_slope() const { return m_.pullback_slope(); }

    friend constexpr BasicGMat operator*(const BasicGMat& x, const BasicGMat& y) {
        return BasicGMat(x.m_ * y.m_);
    }
    friend constexpr bool operator==(const BasicGMat&, const BasicGMat&) = default;

    // Generators used to walk the tessellation by G-images of Q.
    static constexpr BasicGMat translate(I n) { return {1, n, 0, 1}; }
    /// The order-two element of G exchanging 1/0 <-> 1/2 and 0/1 <-> 1/1.
    static constexpr BasicGMat quad_rotation() { return {1, -1, 2, -1}; }

private:
    constexpr void check() const {
        if (m_.c % 2 != 0) throw std::invalid_argument("G requires an even lower-left entry");
    }

    BasicSL2<I> m_;
};

using GMat = BasicGMat<Int>;

/// Whether the denominator is even (the G-orbit of 1/0).
inline constexpr bool even_denominator(const Fraction& f) { return f.den() % 2 == 0; }

/// The 2-bridge link L_{p/q}: 0 < p < q, gcd(p, q) = 1, p odd, q even.
class TwoBridgeLink {
public:
    Int p() const { return p_; }
    Int q() const { return q_; }
    Fraction fraction() const { return {p_, q_}; }
    std::string to_string() const { return std::to_string(p_) + "/" + std::to_string(q_); }

    friend bool operator==(const TwoBridgeLink&, const TwoBridgeLink&) = default;

private:
    friend TwoBridgeLink make_link(Int p, Int q);
    TwoBridgeLink(Int p, Int q) : p_(p), q_(q) {}
    Int p_;
    Int q_;
};

/// Reduces p/q, moves p into (0, q) and validates the link conditions.
inline TwoBridgeLink make_link(Int p, Int q) {
    if (q == 0) throw std::invalid_argument("q must be nonzero");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    const Int g = std::gcd(p, q);
    p /= g;
    q /= g;
    p %= q;
    if (p < 0) p += q;
    if (q % 2 != 0) throw std::invalid_argument("q must be even (p/q with odd q is a knot)");
    if (p % 2 == 0) throw std::invalid_argument("p must be odd");
    return TwoBridgeLink(p, q);
}

inline TwoBridgeLink parse_link(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) throw std::invalid_argument("expected a fraction p/q");
    const Fraction num = Fraction::parse(text.substr(0, slash));
    const Fraction den = Fraction::parse(text.substr(slash + 1));
    return make_link(num.num(), den.num());
}

/// Inverse of x modulo m, for gcd(x, m) = 1.
inline Int inverse_mod(Int x, Int m) {
    Int r0 = m, r1 = ((x % m) + m) % m;
    Int s0 = 0, s1 = 1;
    while (r1 != 0) {
        const Int quot = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - quot * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - quot * s1};
    }
    if (r0 != 1) throw std::domain_error("no inverse modulo " + std::to_string(m));
    return ((s0 % m) + m) % m;
}

/// Minimum numerator over the fractions denoting the same link type
/// (p and p^-1 mod q), optionally also over mirror images (q - p).
inline TwoBridgeLink canonical_rep(const TwoBridgeLink& link, bool identify_mirrors) {
    const Int q = link.q();
    Int best = std::min(link.p(), inverse_mod(link.p(), q));
    if (identify_mirrors) {
        const Int mirror = q - link.p();
        // The orbit is closed under x -> q - x, so the minimum is below q/2.
        best = std::min({best, mirror, inverse_mod(mirror, q)});
    }
    return make_link(best, q);
}

/// Continued fraction [0, a2, ..., an] read as 1/(a2 + 1/(a3 + ...)).
struct ContFrac {
    std::vector<Int> terms;

    Fraction evaluate() const {
        if (terms.size() < 2) throw std::invalid_argument("continued fraction needs a positive term");
        Fraction x(terms.back());
        for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) {
            if (x.num() == 0) throw std::domain_error("continued fraction hits 1/0");
            x = Fraction(*it) + Fraction(1) / x;
        }
        return x;
    }

    friend bool operator==(const ContFrac&, const ContFrac&) = default;
};

/// Unique all-positive expansion of p/q with last term >= 2.
inline ContFrac cf_positive(const TwoBridgeLink& link) {
    ContFrac cf{{0}};
    Int num = link.q();
    Int den = link.p();
    while (den != 0) {
        cf.terms.push_back(num / den);
        std::tie(num, den) = std::pair{den, num % den};
    }
    return cf;
}

inline Int crossing_number(const TwoBridgeLink& link) {
    const ContFrac cf = cf_positive(link);
    return std::accumulate(cf.terms.begin(), cf.terms.end(), Int{0});
}

/// lk(K_i, lambda_i) = -sum_{j=1}^{(q-2)/2} (-1)^{floor(2jp/q)}; the framing
/// correction between the diagram longitude and the preferred one.
inline Int linking_number(const TwoBridgeLink& link) {
    Int sum = 0;
    for (Int j = 1; j <= (link.q() - 2) / 2; ++j) {
        sum += ((2 * j * link.p()) / link.q()) % 2 == 0 ? 1 : -1;
    }
    return -sum;
}

/// One canonical representative per link type with crossing number at most
/// max_crossings, sorted by (crossing number, q, p).
inline std::vector<TwoBridgeLink> enumerate_links(Int max_crossings, bool identify_mirrors) {
    if (max_crossings < 2) throw std::invalid_argument("max_crossings must be at least 2");
    struct Entry {
        Int crossings, q, p;
        auto operator<=>(const Entry&) const = default;
    };
    std::vector<Entry> found;
    std::vector<Int> terms;
    // Depth-first over compositions a2 + ... + an <= max_crossings.
    auto visit = [&](auto&& self, Int budget) -> void {
        for (Int a = 1; a <= budget; ++a) {
            terms.push_back(a);
            if (a >= 2) {
                ContFrac cf{{0}};
                cf.terms.insert(cf.terms.end(), terms.begin(), terms.end());
                const Fraction f = cf.evaluate();
                if (f.den() % 2 == 0) {
                    const TwoBridgeLink rep = canonical_rep(make_link(f.num(), f.den()), identify_mirrors);
                    found.push_back({max_crossings - budget + a, rep.q(), rep.p()});
                }
            }
            self(self, budget - a);
            terms.pop_back();
        }
    };
    visit(visit, max_crossings);
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    std::vector<TwoBridgeLink> links;
    links.reserve(found.size());
    for (const Entry& e : found) links.push_back(make_link(e.p, e.q));
    return links;
}

namespace detail {

struct RolfsenEntry {
    Int p, q;
    std::string_view name;
};

// Two-component 2-bridge links through nine crossings, in Rolfsen's numbering.
inline constexpr RolfsenEntry rolfsen_table[] = {
    {1, 2, "2^2_1"},    {1, 4, "4^2_1"},    {3, 8, "5^2_1"},    {1, 6, "6^2_1"},    {3, 10, "6^2_2"},
    {5, 12, "6^2_3"},   {3, 14, "7^2_1"},   {7, 16, "7^2_3"},   {5, 18, "7^2_2"},   {1, 8, "8^2_1"},
    {3, 16, "8^2_2"},   {9, 20, "8^2_6"},   {5, 22, "8^2_3"},   {7, 24, "8^2_4"},   {7, 26, "8^2_5"},
    {11, 30, "8^2_7"},  {13, 34, "8^2_8"},  {3, 20, "9^2_1"},   {5, 24, "9^2_4"},   {11, 24, "9^2_10"},
    {5, 28, "9^2_2"},   {7, 30, "9^2_3"},   {7, 32, "9^2_5"},   {9, 34, "9^2_8"},   {11, 36, "9^2_6"},
    {11, 40, "9^2_9"},  {13, 44, "9^2_7"},  {17, 46, "9^2_11"}, {19, 50, "9^2_12"},
};

}  // namespace detail

/// Rolfsen index ("5^2_1") for links through nine crossings, mirrors identified.
inline std::optional<std::string> rolfsen_name(const TwoBridgeLink& link) {
    const TwoBridgeLink rep = canonical_rep(link, true);
    for (const auto& e : detail::rolfsen_table) {
        if (e.p == rep.p() && e.q == rep.q()) return std::string(e.name);
    }
    return std::nullopt;
}

}  // namespace twobridge

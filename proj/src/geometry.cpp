#include "a2bill/geometry.hpp"

#include <sstream>

namespace a2bill {

namespace {

std::int64_t floor_div(std::int64_t x, std::int64_t d)
{
    std::int64_t q = x / d;
    if ((x % d != 0) && ((x < 0) != (d < 0))) --q;
    return q;
}

std::int64_t mod(std::int64_t x, std::int64_t m)
{
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

// Alcoves are handled through three times their barycentre, which is an
// integer point: (3m+1, 3n+1) for the lower and (3m+2, 3n+2) for the upper
// alcove of box (m, n).
struct Centroid3 {
    std::int64_t a;
    std::int64_t b;
};

Centroid3 centroid3(const Alcove& c)
{
    const std::int64_t off = c.half == Half::lower ? 1 : 2;
    return {3 * c.box.a + off, 3 * c.box.b + off};
}

Alcove alcove_of(Centroid3 p)
{
    const std::int64_t ra = mod(p.a, 3);
    const std::int64_t rb = mod(p.b, 3);
    if (ra != rb || ra == 0) {
        throw GeometryError("point is not an alcove barycentre");
    }
    return {{floor_div(p.a, 3), floor_div(p.b, 3)}, ra == 1 ? Half::lower : Half::upper};
}

struct AffineMap {
    AffineElement::Matrix m;
    Weight t;
};

AffineMap reflection_map(Reflection s)
{
    switch (s) {
    case Reflection::s0: return {{{{0, -1}, {-1, 0}}}, {1, 1}};
    case Reflection::s1: return {{{{-1, 0}, {1, 1}}}, {0, 0}};
    case Reflection::s2: return {{{{1, 1}, {0, -1}}}, {0, 0}};
    }
    return {};
}

Centroid3 apply3(const AffineElement::Matrix& m, Weight t, Centroid3 p)
{
    return {m[0][0] * p.a + m[0][1] * p.b + 3 * t.a, m[1][0] * p.a + m[1][1] * p.b + 3 * t.b};
}

// Index of the strip containing a barycentre, for each hyperplane family
// a = c, b = c, a + b = c.
std::array<std::int64_t, 3> strip_indices(Centroid3 p)
{
    return {floor_div(p.a, 3), floor_div(p.b, 3), floor_div(p.a + p.b, 3)};
}

} // namespace

std::string to_string(Weight w)
{
    std::ostringstream os;
    os << '(' << w.a << ',' << w.b << ')';
    return os.str();
}

std::string to_string(Direction d)
{
    switch (d) {
    case Direction::D1: return "D1";
    case Direction::D2: return "D2";
    case Direction::D3: return "D3";
    }
    return "?";
}

void require_ell(std::int64_t ell)
{
    if (ell < 3) {
        throw DomainError("ell must be at least 3, got " + std::to_string(ell));
    }
}

bool is_corner(Weight w, std::int64_t ell)
{
    require_ell(ell);
    if (!is_dominant(w)) {
        throw DomainError("is_corner: weight " + to_string(w) + " is not dominant");
    }
    return mod(w.a, ell) == 0 && mod(w.b, ell) == 0;
}

bool is_almost_corner(Weight w, std::int64_t ell)
{
    require_ell(ell);
    if (!is_dominant(w)) return false;
    for (Direction d : kDirections) {
        const Weight src = w - step(d);
        if (is_dominant(src) && is_corner(src, ell)) return true;
    }
    return false;
}

bool in_wall_graph(Weight w, std::int64_t ell)
{
    require_ell(ell);
    if (!is_dominant(w)) return false;
    const bool on_ell_wall = mod(w.a, ell) == 0 || mod(w.b, ell) == 0 || mod(w.a + w.b, ell) == 0;
    if (!on_ell_wall) return false;
    if (w.a == 0 && w.b == 0) return false;
    if (w.a == 0) return mod(w.b, ell) == 0;
    if (w.b == 0) return mod(w.a, ell) == 0;
    return true;
}

std::vector<Direction> wall_out_edges(Weight w, std::int64_t ell)
{
    if (!in_wall_graph(w, ell)) {
        throw DomainError("wall_out_edges: " + to_string(w) + " is not a wall-graph vertex for ell=" +
                          std::to_string(ell));
    }
    std::vector<Direction> out;
    for (Direction d : kDirections) {
        if (mod(pairing(w, preserved_coroot(d)), ell) != 0) continue;
        if (in_wall_graph(w + step(d), ell)) out.push_back(d);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string to_string(const Alcove& c)
{
    std::ostringstream os;
    os << "box " << c.box.a << ' ' << c.box.b << ' ' << (c.half == Half::lower ? 'L' : 'U');
    return os.str();
}

Alcove parse_alcove(const std::string& text)
{
    std::istringstream is(text);
    std::string kw, half, rest;
    Alcove c;
    if (!(is >> kw >> c.box.a >> c.box.b >> half) || kw != "box" || (half != "L" && half != "U") ||
        (is >> rest)) {
        throw DomainError("malformed alcove address '" + text + "'");
    }
    c.half = half == "L" ? Half::lower : Half::upper;
    return c;
}

bool is_dominant(const Alcove& c) { return is_dominant(c.box); }

std::string to_string(Reflection s)
{
    switch (s) {
    case Reflection::s0: return "s0";
    case Reflection::s1: return "s1";
    case Reflection::s2: return "s2";
    }
    return "?";
}

std::vector<Reflection> ReflectionSet::elements() const
{
    std::vector<Reflection> out;
    for (Reflection s : kReflections) {
        if (contains(s)) out.push_back(s);
    }
    return out;
}

std::size_t alcove_length(const Alcove& c)
{
    std::size_t len = 0;
    for (std::int64_t idx : strip_indices(centroid3(c))) {
        len += static_cast<std::size_t>(idx < 0 ? -idx : idx);
    }
    return len;
}

Alcove reflect(const Alcove& c, Reflection s)
{
    const AffineMap r = reflection_map(s);
    return alcove_of(apply3(r.m, r.t, centroid3(c)));
}

AffineElement::AffineElement() = default;

void AffineElement::compose_right(Reflection s)
{
    // (x o s)(l) = M_x (M_s l + t_s) + t_x
    const AffineMap r = reflection_map(s);
    Matrix m{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m[i][j] = linear_[i][0] * r.m[0][j] + linear_[i][1] * r.m[1][j];
        }
    }
    translation_ = apply(r.t);
    linear_ = m;
}

AffineElement AffineElement::times(Reflection s) const
{
    AffineElement out = *this;
    out.compose_right(s);
    out.word_.push_back(s);
    if (alcove_length(out.alcove()) != out.word_.size()) {
        throw GeometryError("word " + out.word_string() + " is not reduced");
    }
    return out;
}

AffineElement AffineElement::from_word(const std::vector<Reflection>& word)
{
    AffineElement x;
    for (Reflection s : word) x = x.times(s);
    return x;
}

AffineElement AffineElement::from_alcove(const Alcove& target)
{
    // Peel off left descents: a wall of A0 separating A0 from c is a left
    // descent of the element, and reflecting c through it shortens it by one.
    std::vector<Reflection> word;
    Alcove c = target;
    while (c != kFundamentalAlcove) {
        const Centroid3 p = centroid3(c);
        Reflection s;
        if (p.a + p.b > 3) {
            s = Reflection::s0;
        } else if (p.a < 0) {
            s = Reflection::s1;
        } else if (p.b < 0) {
            s = Reflection::s2;
        } else {
            throw GeometryError("no separating wall found for " + to_string(c));
        }
        word.push_back(s);
        c = reflect(c, s);
    }
    AffineElement x = from_word(word);
    if (x.alcove() != target) {
        throw GeometryError("alcove reconstruction mismatch for " + to_string(target));
    }
    return x;
}

Alcove AffineElement::alcove() const
{
    return alcove_of(apply3(linear_, translation_, centroid3(kFundamentalAlcove)));
}

Weight AffineElement::apply(Weight w) const
{
    return {linear_[0][0] * w.a + linear_[0][1] * w.b + translation_.a,
            linear_[1][0] * w.a + linear_[1][1] * w.b + translation_.b};
}

std::string AffineElement::word_string() const
{
    if (word_.empty()) return "id";
    std::string out;
    for (std::size_t i = 0; i < word_.size(); ++i) {
        if (i) out += '.';
        out += to_string(word_[i]);
    }
    return out;
}

ReflectionSet right_descents(const AffineElement& x)
{
    ReflectionSet out;
    const Centroid3 here = apply3(x.linear(), x.translation(), centroid3(kFundamentalAlcove));
    const Centroid3 origin = centroid3(kFundamentalAlcove);
    const auto idx_here = strip_indices(here);
    const auto idx_origin = strip_indices(origin);
    for (Reflection s : kReflections) {
        // x s A0 is the neighbour of x A0 across its s-coloured wall.
        const AffineMap r = reflection_map(s);
        const Centroid3 across = apply3(x.linear(), x.translation(), apply3(r.m, r.t, origin));
        const auto idx_across = strip_indices(across);
        int family = -1;
        for (int f = 0; f < 3; ++f) {
            if (idx_across[f] != idx_here[f]) {
                if (family != -1) throw GeometryError("neighbouring alcoves differ in two strips");
                family = f;
            }
        }
        if (family == -1) throw GeometryError("reflection fixed an alcove");
        // The wall sits between the two strips; A0 lies on the far side iff
        // its strip index is on the neighbour's side of that wall.
        const bool towards_origin = idx_across[family] < idx_here[family]
                                        ? idx_origin[family] <= idx_across[family]
                                        : idx_origin[family] >= idx_across[family];
        if (towards_origin) out.insert(s);
    }
    return out;
}

AffineElement x_sequence(std::size_t i)
{
    AffineElement x;
    for (std::size_t j = 0; j < i; ++j) x = x.times(x_sequence_letter(j));
    if (i >= 1) {
        if (!x.is_minimal_coset_rep()) {
            throw GeometryError("x_" + std::to_string(i) + " is not a minimal coset representative");
        }
        if (right_descents(x).size() != 1) {
            throw GeometryError("x_" + std::to_string(i) + " does not have a unique right descent");
        }
    }
    return x;
}

Reflection x_sequence_descent(std::size_t i)
{
    if (i == 0) throw DomainError("x_0 has no right descent");
    const auto desc = right_descents(x_sequence(i)).elements();
    return desc.front();
}

BoxAlcoves box_alcoves(Weight mu)
{
    if (!is_strictly_dominant(mu) && mu != Weight{0, 0}) {
        throw DomainError("box_alcoves: " + to_string(mu) + " is not strictly dominant");
    }
    return {AffineElement::from_alcove({mu, Half::lower}), AffineElement::from_alcove({mu, Half::upper})};
}

AffineElement x_mu_s(Weight mu, Reflection s)
{
    if (!is_strictly_dominant(mu)) {
        throw DomainError("x_mu_s: " + to_string(mu) + " is not strictly dominant");
    }
    BoxAlcoves box = box_alcoves(mu);
    const bool in_lower = right_descents(box.lower).contains(s);
    const bool in_upper = right_descents(box.upper).contains(s);
    if (in_lower == in_upper) {
        throw GeometryError("x_mu_s: " + std::string(in_lower ? "two" : "no") + " box elements with descent " +
                            to_string(s) + " at " + to_string(mu));
    }
    return in_lower ? std::move(box.lower) : std::move(box.upper);
}

Alcove x_mu_s_alcove(Weight mu, Reflection s)
{
    if (!is_strictly_dominant(mu)) {
        throw DomainError("x_mu_s: " + to_string(mu) + " is not strictly dominant");
    }
    // The upper alcove has a single descent: the colour of the diagonal wall,
    // which is the type (a - b) mod 3 of the opposite vertex mu.
    const auto diagonal = static_cast<Reflection>(mod(mu.a - mu.b, 3));
    return {mu, s == diagonal ? Half::upper : Half::lower};
}

Weight dot_p(const AffineElement& x, Weight lambda, std::int64_t p)
{
    if (p < 2) throw DomainError("dot_p: p must be at least 2");
    const auto& m = x.linear();
    const Weight shifted = lambda + kRho;
    const Weight lin{m[0][0] * shifted.a + m[0][1] * shifted.b, m[1][0] * shifted.a + m[1][1] * shifted.b};
    return lin + p * x.translation() - kRho;
}

} // namespace a2bill

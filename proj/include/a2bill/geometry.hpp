#pragma once

// Weight-lattice and alcove geometry for the affine Weyl group of type A2~.
//
// Weights are written in fundamental-weight coordinates (a, b) meaning
// a*w1 + b*w2.  The pairings with the positive coroots alpha1, alpha2 and
// theta = alpha1 + alpha2 are a, b and a + b.  The affine reflecting
// hyperplanes are therefore the lines a = c, b = c and a + b = c for
// integers c, and every unit box [m, m+1] x [n, n+1] is cut by the line
// a + b = m + n + 1 into a lower and an upper alcove.  That (box, half)
// pair is the address used for alcoves everywhere in this library.

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace a2bill {

/// Raised when an operation is called outside its domain (a non-dominant
/// weight, a point that is not a vertex of the wall graph, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a structural assumption about the geometry fails at runtime,
/// e.g. a descent set that should be a singleton is not.
class GeometryError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Weight {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend constexpr Weight operator+(Weight x, Weight y) { return {x.a + y.a, x.b + y.b}; }
    friend constexpr Weight operator-(Weight x, Weight y) { return {x.a - y.a, x.b - y.b}; }
    friend constexpr Weight operator*(std::int64_t c, Weight x) { return {c * x.a, c * x.b}; }
    friend constexpr bool operator==(Weight, Weight) = default;
    friend constexpr auto operator<=>(Weight, Weight) = default;
};

inline constexpr Weight kRho{1, 1};

std::string to_string(Weight w);

enum class Coroot { alpha1, alpha2, theta };

constexpr std::int64_t pairing(Weight w, Coroot c)
{
    switch (c) {
    case Coroot::alpha1: return w.a;
    case Coroot::alpha2: return w.b;
    case Coroot::theta: return w.a + w.b;
    }
    return 0;
}

constexpr bool is_dominant(Weight w) { return w.a >= 0 && w.b >= 0; }
constexpr bool is_strictly_dominant(Weight w) { return w.a > 0 && w.b > 0; }

// ---------------------------------------------------------------------------
// Wall graphs

/// Edge directions of the graph on dominant weights.  Each direction keeps
/// one pairing fixed: D1 keeps b, D2 keeps a + b, D3 keeps a.
enum class Direction { D1, D2, D3 };

inline constexpr std::array<Direction, 3> kDirections{Direction::D1, Direction::D2, Direction::D3};

constexpr Weight step(Direction d)
{
    switch (d) {
    case Direction::D1: return {1, 0};
    case Direction::D2: return {-1, 1};
    case Direction::D3: return {0, -1};
    }
    return {};
}

/// The coroot whose pairing is invariant along `d`.
constexpr Coroot preserved_coroot(Direction d)
{
    switch (d) {
    case Direction::D1: return Coroot::alpha2;
    case Direction::D2: return Coroot::theta;
    case Direction::D3: return Coroot::alpha1;
    }
    return Coroot::theta;
}

std::string to_string(Direction d);

/// Throws DomainError unless ell >= 3.
void require_ell(std::int64_t ell);

bool is_corner(Weight w, std::int64_t ell);
bool is_almost_corner(Weight w, std::int64_t ell);

/// True iff w is a vertex of the wall graph: dominant, on at least one
/// ell-wall, and (when on a wall of the dominant cone) equal to k*ell*w1 or
/// k*ell*w2 with k >= 1.
bool in_wall_graph(Weight w, std::int64_t ell);

/// Directions of the outgoing wall-graph edges of `w`, in D1, D2, D3 order.
std::vector<Direction> wall_out_edges(Weight w, std::int64_t ell);

// ---------------------------------------------------------------------------
// Alcoves and the affine Weyl group

enum class Half { lower, upper };

struct Alcove {
    Weight box;
    Half half = Half::lower;

    friend bool operator==(const Alcove&, const Alcove&) = default;
    friend auto operator<=>(const Alcove&, const Alcove&) = default;
};

inline constexpr Alcove kFundamentalAlcove{{0, 0}, Half::lower};

/// "box <a> <b> <L|U>"
std::string to_string(const Alcove& c);
/// Parses the textual address; throws DomainError on malformed input.
Alcove parse_alcove(const std::string& text);

bool is_dominant(const Alcove& c);

enum class Reflection : std::uint8_t { s0 = 0, s1 = 1, s2 = 2 };

inline constexpr std::array<Reflection, 3> kReflections{Reflection::s0, Reflection::s1, Reflection::s2};

std::string to_string(Reflection s);

/// Small set of simple reflections.
class ReflectionSet {
public:
    ReflectionSet() = default;
    void insert(Reflection s) { bits_ |= bit(s); }
    bool contains(Reflection s) const { return (bits_ & bit(s)) != 0; }
    int size() const { return __builtin_popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    std::vector<Reflection> elements() const;
    friend bool operator==(ReflectionSet, ReflectionSet) = default;

private:
    static constexpr unsigned bit(Reflection s) { return 1u << static_cast<unsigned>(s); }
    unsigned bits_ = 0;
};

/// An element of the affine Weyl group, kept both as a reduced word and as
/// the affine map  lambda -> M lambda + t  on weight space.
class AffineElement {
public:
    using Matrix = std::array<std::array<std::int64_t, 2>, 2>;

    /// The identity.
    AffineElement();

    /// Multiplies out `word` left to right.  Throws GeometryError if the
    /// word is not reduced.
    static AffineElement from_word(const std::vector<Reflection>& word);

    /// The unique element x with x.A0 == c.
    static AffineElement from_alcove(const Alcove& c);

    const std::vector<Reflection>& word() const { return word_; }
    std::size_t length() const { return word_.size(); }

    /// The alcove x.A0.
    Alcove alcove() const;

    /// Standard affine action on weight space (integral points only).
    Weight apply(Weight w) const;

    const Matrix& linear() const { return linear_; }
    Weight translation() const { return translation_; }

    /// x * s.  Throws GeometryError if the result is not length-increasing.
    AffineElement times(Reflection s) const;

    bool is_minimal_coset_rep() const { return is_dominant(alcove()); }

    std::string word_string() const;

    friend bool operator==(const AffineElement& x, const AffineElement& y)
    {
        return x.linear_ == y.linear_ && x.translation_ == y.translation_;
    }

private:
    /// Composes the map with s on the right without touching the word.
    void compose_right(Reflection s);

    std::vector<Reflection> word_;
    Matrix linear_{{{1, 0}, {0, 1}}};
    Weight translation_{0, 0};
};

/// Number of affine hyperplanes separating c from the fundamental alcove.
std::size_t alcove_length(const Alcove& c);

/// Reflection of an alcove through the wall of the fundamental alcove fixed by s.
Alcove reflect(const Alcove& c, Reflection s);

/// Right descent set, computed from the position of the walls of x.A0
/// relative to A0.
ReflectionSet right_descents(const AffineElement& x);

/// Product of the first i letters of s0 s1 s2 s0 s1 s2 ...  For i >= 1 the
/// result is checked to be a minimal coset representative with exactly one
/// right descent.
AffineElement x_sequence(std::size_t i);

/// Letter appended when passing from x_sequence(i) to x_sequence(i + 1).
constexpr Reflection x_sequence_letter(std::size_t i)
{
    return static_cast<Reflection>(i % 3);
}

/// The unique right descent of x_sequence(i), i >= 1.
Reflection x_sequence_descent(std::size_t i);

struct BoxAlcoves {
    AffineElement lower;
    AffineElement upper;
};

/// Elements whose alcoves are the two alcoves of the box above mu.  Accepts
/// strictly dominant mu and, as a special case, mu = 0.
BoxAlcoves box_alcoves(Weight mu);

/// The box element having s as a right descent.  mu must be strictly dominant.
AffineElement x_mu_s(Weight mu, Reflection s);

/// Alcove of x_mu_s without materialising the element.
Alcove x_mu_s_alcove(Weight mu, Reflection s);

/// p-dilated dot action  x ._p lambda = p x((lambda + rho) / p) - rho.
Weight dot_p(const AffineElement& x, Weight lambda, std::int64_t p);

} // namespace a2bill

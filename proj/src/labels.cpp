#include "a2bill/labels.hpp"

#include <cctype>
#include <limits>

namespace a2bill {

std::string to_string(Label l) { return std::to_string(l.n) + "(v^" + std::to_string(l.k) + ")"; }

LaurentPolynomial LaurentPolynomial::monomial(const BigInt& c, std::int64_t e)
{
    LaurentPolynomial p;
    p.add_term(e, c);
    return p;
}

void LaurentPolynomial::add_term(std::int64_t e, const BigInt& c)
{
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BigInt LaurentPolynomial::coefficient(std::int64_t e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
}

std::int64_t LaurentPolynomial::min_exponent() const
{
    if (terms_.empty()) throw std::logic_error("min_exponent of zero polynomial");
    return terms_.begin()->first;
}

std::int64_t LaurentPolynomial::max_exponent() const
{
    if (terms_.empty()) throw std::logic_error("max_exponent of zero polynomial");
    return terms_.rbegin()->first;
}

LaurentPolynomial LaurentPolynomial::bar() const
{
    LaurentPolynomial out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
    return out;
}

bool LaurentPolynomial::is_bar_invariant() const { return bar() == *this; }

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o)
{
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o)
{
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const BigInt& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
    return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& x, const LaurentPolynomial& y)
{
    LaurentPolynomial out;
    for (const auto& [ex, cx] : x.terms_) {
        for (const auto& [ey, cy] : y.terms_) out.add_term(ex + ey, cx * cy);
    }
    return out;
}

std::string LaurentPolynomial::to_string() const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (c < 0) {
            out += '-';
        } else if (!first) {
            out += '+';
        }
        first = false;
        if (e == 0) {
            out += mag.str();
            continue;
        }
        if (mag != 1) out += mag.str() + "*";
        out += 'v';
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text)
    {
        for (char ch : text) {
            if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
        }
    }

    LaurentPolynomial run()
    {
        if (s_.empty()) fail("empty polynomial");
        LaurentPolynomial p;
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [e, c] = term();
            p.add_term(e, sign * c);
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw PolynomialParseError("polynomial '" + s_ + "': " + why + " at offset " + std::to_string(pos_));
    }

    bool digit_at(std::size_t i) const { return i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i])); }

    BigInt natural()
    {
        if (!digit_at(pos_)) fail("expected digits");
        std::size_t start = pos_;
        while (digit_at(pos_)) ++pos_;
        return BigInt(s_.substr(start, pos_ - start));
    }

    std::int64_t exponent()
    {
        int sign = 1;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            sign = s_[pos_] == '-' ? -1 : 1;
            ++pos_;
        }
        BigInt e = natural();
        if (e > BigInt(std::numeric_limits<std::int64_t>::max())) fail("exponent out of range");
        return sign * e.convert_to<std::int64_t>();
    }

    std::pair<std::int64_t, BigInt> power()
    {
        // at 'v'
        ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            return {exponent(), BigInt(1)};
        }
        return {1, BigInt(1)};
    }

    std::pair<std::int64_t, BigInt> term()
    {
        if (pos_ < s_.size() && s_[pos_] == 'v') return power();
        BigInt c = natural();
        if (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            if (pos_ >= s_.size() || s_[pos_] != 'v') fail("expected 'v' after '*'");
            auto [e, one] = power();
            return {e, c * one};
        }
        if (pos_ < s_.size() && s_[pos_] == 'v') fail("missing '*' between coefficient and 'v'");
        return {0, c};
    }

    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace

LaurentPolynomial LaurentPolynomial::parse(std::string_view text) { return PolyParser(text).run(); }

LaurentPolynomial phi_monomial(std::int64_t k)
{
    if (k < 0) throw std::invalid_argument("phi: negative exponent " + std::to_string(k));
    LaurentPolynomial out = LaurentPolynomial::monomial(1, k);
    if (k > 0) out.add_term(-k, 1);
    return out;
}

LaurentPolynomial phi(const LaurentPolynomial& f)
{
    LaurentPolynomial out;
    for (const auto& [e, c] : f.terms()) {
        if (e < 0) throw std::invalid_argument("phi: negative exponent " + std::to_string(e));
        out += phi_monomial(e) * c;
    }
    return out;
}

LaurentPolynomial truncate_nonneg(const LaurentPolynomial& f)
{
    LaurentPolynomial out;
    for (const auto& [e, c] : f.terms()) {
        if (e >= 0) out.add_term(e, c);
    }
    return out;
}

} // namespace a2bill

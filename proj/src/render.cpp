#include "a2bill/render.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace a2bill {

namespace {

struct Text {
    double a;
    double b;
    std::string body;
    bool underline = false;
    const char* color = "black";
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

class Canvas {
public:
    Canvas(std::int64_t size, const RenderOptions& opts) : size_(std::max<std::int64_t>(size, 1)), opts_(opts) {}

    void add(Text t) { texts_.push_back(std::move(t)); }

    std::string str() const { return opts_.format == RenderFormat::svg ? svg() : tikz(); }

private:
    double x(double a, double b) const { return a + b / 2.0; }
    double y(double b) const { return b * std::sqrt(3.0) / 2.0; }

    // The three families of lattice lines inside the triangle a, b >= 0, a + b <= size.
    std::vector<std::array<double, 4>> segments() const
    {
        std::vector<std::array<double, 4>> out;
        const double s = static_cast<double>(size_);
        for (std::int64_t c = 0; c <= size_; ++c) {
            const double d = static_cast<double>(c);
            out.push_back({x(d, 0), y(0), x(d, s - d), y(s - d)});
            out.push_back({x(0, d), y(d), x(s - d, d), y(d)});
            out.push_back({x(d, 0), y(0), x(0, d), y(d)});
        }
        return out;
    }

    std::string svg() const
    {
        const double u = opts_.unit;
        const double margin = u;
        const double w = static_cast<double>(size_) * u + 2 * margin;
        const double h = y(static_cast<double>(size_)) * u + 2 * margin;
        auto px = [&](double xx) { return fmt(margin + xx * u); };
        auto py = [&](double yy) { return fmt(h - margin - yy * u); };
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
           << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
        os << "<g stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
        for (const auto& s : segments()) {
            os << "<line x1=\"" << px(s[0]) << "\" y1=\"" << py(s[1]) << "\" x2=\"" << px(s[2]) << "\" y2=\"" << py(s[3])
               << "\"/>\n";
        }
        os << "</g>\n<g font-family=\"serif\" font-size=\"" << fmt(u / 4) << "\">\n";
        for (const auto& t : texts_) {
            os << "<text x=\"" << px(x(t.a, t.b)) << "\" y=\"" << py(y(t.b)) << "\" fill=\"" << t.color << "\"";
            if (t.underline) os << " text-decoration=\"underline\"";
            os << ">" << escape_xml(t.body) << "</text>\n";
        }
        os << "</g>\n</svg>\n";
        return os.str();
    }

    std::string tikz() const
    {
        std::ostringstream os;
        os << "\\begin{tikzpicture}[x=" << fmt(opts_.unit / 40.0) << "cm,y=" << fmt(opts_.unit / 40.0) << "cm]\n";
        for (const auto& s : segments()) {
            os << "\\draw[black!20] (" << fmt(s[0]) << "," << fmt(s[1]) << ") -- (" << fmt(s[2]) << "," << fmt(s[3])
               << ");\n";
        }
        for (const auto& t : texts_) {
            std::string body = "$" + t.body + "$";
            if (t.underline) body = "$\\underline{" + t.body + "}$";
            os << "\\node[anchor=south west,inner sep=1pt";
            if (std::string(t.color) != "black") os << ",text=" << t.color;
            os << "] at (" << fmt(x(t.a, t.b)) << "," << fmt(y(t.b)) << ") {\\tiny " << body << "};\n";
        }
        os << "\\end{tikzpicture}\n";
        return os.str();
    }

    std::int64_t size_;
    const RenderOptions& opts_;
    std::vector<Text> texts_;
};

std::string label_text(Label l, RenderFormat f)
{
    if (f == RenderFormat::tikz) return std::to_string(l.n) + "(v^{" + std::to_string(l.k) + "})";
    return to_string(l);
}

std::string poly_text(const LaurentPolynomial& f, RenderFormat fmt)
{
    const std::string plain = f.to_string();
    if (fmt == RenderFormat::svg) return plain;
    std::string out;
    for (std::size_t i = 0; i < plain.size(); ++i) {
        if (plain[i] == '*') continue;
        if (plain[i] != '^') {
            out += plain[i];
            continue;
        }
        out += "^{";
        std::size_t j = i + 1;
        if (j < plain.size() && plain[j] == '-') out += plain[j++];
        while (j < plain.size() && std::isdigit(static_cast<unsigned char>(plain[j]))) out += plain[j++];
        out += "}";
        i = j - 1;
    }
    return out;
}

// Stacked lines at one node, spaced a fifth of a unit apart.
constexpr double kLineStep = 0.2;

} // namespace

RenderFormat parse_render_format(const std::string& name)
{
    if (name == "svg") return RenderFormat::svg;
    if (name == "tikz") return RenderFormat::tikz;
    throw DomainError("unknown render format '" + name + "' (svg or tikz)");
}

std::string render(const PointMultiset& points, const RenderOptions& opts)
{
    std::int64_t size = 1;
    for (const auto& [key, entry] : points.entries()) size = std::max(size, key.weight.a + key.weight.b + 1);
    Canvas canvas(size, opts);

    Weight node{-1, -1};
    int line = 0;
    for (const auto& [key, entry] : points.entries()) {
        if (key.weight != node) {
            node = key.weight;
            line = 0;
        }
        Text t{static_cast<double>(key.weight.a), static_cast<double>(key.weight.b) + kLineStep * line++,
               label_text(key.label, opts.format)};
        if (entry.multiplicity() > 1) t.body += " x" + entry.multiplicity().str();
        t.underline = opts.show_seeds && entry.seed();
        if (opts.color_merges) {
            if (entry.merge() == MergeKind::type_iii) t.color = "red";
            if (entry.merge() == MergeKind::type_ii) t.color = "blue";
        }
        canvas.add(std::move(t));
    }
    return canvas.str();
}

std::string render(const Picture& pic, const RenderOptions& opts)
{
    std::int64_t size = 1;
    for (const auto& [c, entries] : pic) size = std::max(size, c.box.a + c.box.b + 2);
    Canvas canvas(size, opts);
    for (const auto& [c, entries] : pic) {
        const double off = c.half == Half::lower ? 1.0 / 3.0 : 2.0 / 3.0;
        int line = 0;
        for (const auto& e : entries) {
            std::string body = std::to_string(e.i) + "(" + poly_text(e.f, opts.format) + ")";
            canvas.add(Text{static_cast<double>(c.box.a) + off - 0.15,
                            static_cast<double>(c.box.b) + off - 0.1 + kLineStep * 0.5 * line++, body});
        }
    }
    return canvas.str();
}

} // namespace a2bill

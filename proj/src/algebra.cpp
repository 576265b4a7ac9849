#include "suq2/algebra.hpp"

#include <algorithm>
#include <cstdio>

namespace suq2 {

std::string_view to_string(Generator g)
{
    switch (g) {
    case Generator::Alpha: return "alpha";
    case Generator::AlphaStar: return "alpha*";
    case Generator::Beta: return "beta";
    case Generator::BetaStar: return "beta*";
    }
    return "?";
}

std::string_view file_token(Generator g)
{
    switch (g) {
    case Generator::Alpha: return "alpha";
    case Generator::AlphaStar: return "alpha_star";
    case Generator::Beta: return "beta";
    case Generator::BetaStar: return "beta_star";
    }
    return "?";
}

Generator star(Generator g)
{
    switch (g) {
    case Generator::Alpha: return Generator::AlphaStar;
    case Generator::AlphaStar: return Generator::Alpha;
    case Generator::Beta: return Generator::BetaStar;
    case Generator::BetaStar: return Generator::Beta;
    }
    return g;
}

GeneratorWord GeneratorWord::unit()
{
    GeneratorWord w;
    w.terms_.push_back({1.0, {}});
    return w;
}

GeneratorWord GeneratorWord::letter(Generator g)
{
    GeneratorWord w;
    w.terms_.push_back({1.0, {g}});
    return w;
}

std::size_t GeneratorWord::length() const
{
    std::size_t l = 0;
    for (const auto& m : terms_) l = std::max(l, m.letters.size());
    return l;
}

GeneratorWord GeneratorWord::operator+(const GeneratorWord& o) const
{
    GeneratorWord w = *this;
    w.terms_.insert(w.terms_.end(), o.terms_.begin(), o.terms_.end());
    return w;
}

GeneratorWord GeneratorWord::operator-(const GeneratorWord& o) const { return *this + (-1.0) * o; }

GeneratorWord GeneratorWord::operator*(const GeneratorWord& o) const
{
    GeneratorWord w;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            Monomial m{a.coeff * b.coeff, a.letters};
            m.letters.insert(m.letters.end(), b.letters.begin(), b.letters.end());
            w.terms_.push_back(std::move(m));
        }
    }
    return w;
}

GeneratorWord operator*(double s, const GeneratorWord& w)
{
    GeneratorWord out = w;
    for (auto& m : out.terms_) m.coeff *= s;
    return out;
}

std::string GeneratorWord::str() const
{
    std::string out;
    char buf[32];
    for (const auto& m : terms_) {
        std::snprintf(buf, sizeof buf, "%+g", m.coeff);
        out += buf;
        if (m.letters.empty()) out += "*1";
        for (auto g : m.letters) {
            out += '*';
            out += to_string(g);
        }
        out += ' ';
    }
    if (!out.empty()) out.pop_back();
    return out;
}

std::vector<NamedRelation> su_q2_relations(double q)
{
    const auto a = GeneratorWord::letter(Generator::Alpha);
    const auto as = GeneratorWord::letter(Generator::AlphaStar);
    const auto b = GeneratorWord::letter(Generator::Beta);
    const auto bs = GeneratorWord::letter(Generator::BetaStar);
    const auto one = GeneratorWord::unit();
    return {
        {"a*a+b*b-1", as * a + bs * b - one},
        {"aa*+q2bb*-1", a * as + (q * q) * (b * bs) - one},
        {"ab-qba", a * b - q * (b * a)},
        {"ab*-qb*a", a * bs - q * (bs * a)},
        {"b*b-bb*", bs * b - b * bs},
    };
}

SparseOp evaluate(const GeneratorWord& word, const TruncatedSpace& space, const GeneratorMap& generators)
{
    SparseOp total(space, space);
    for (const auto& m : word.terms()) {
        SparseOp prod = SparseOp::identity(space);
        // rightmost letter acts first
        for (auto it = m.letters.rbegin(); it != m.letters.rend(); ++it) prod = compose(generators(*it), prod);
        total = add(total, scale(prod, m.coeff));
    }
    return total;
}

} // namespace suq2

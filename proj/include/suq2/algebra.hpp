#pragma once

#include "suq2/linop.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace suq2 {

enum class Generator : std::uint8_t { Alpha, AlphaStar, Beta, BetaStar };

inline constexpr std::array<Generator, 4> kAllGenerators{Generator::Alpha, Generator::AlphaStar, Generator::Beta,
                                                         Generator::BetaStar};

std::string_view to_string(Generator g);   // "alpha", "alpha*", ...
std::string_view file_token(Generator g);  // "alpha", "alpha_star", ...
Generator star(Generator g);

/// Scalar times a product of generators; the empty product is the unit.
struct Monomial {
    double coeff = 1.0;
    std::vector<Generator> letters;
};

/// A noncommutative *-polynomial in alpha, beta. Evaluation is a
/// homomorphism: the product of two words evaluates to the operator product.
class GeneratorWord {
public:
    GeneratorWord() = default;
    static GeneratorWord unit();
    static GeneratorWord letter(Generator g);

    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    /// Longest monomial; a word of length L moves the level n by at most L/2.
    std::size_t length() const;

    GeneratorWord operator+(const GeneratorWord& o) const;
    GeneratorWord operator-(const GeneratorWord& o) const;
    GeneratorWord operator*(const GeneratorWord& o) const;
    friend GeneratorWord operator*(double s, const GeneratorWord& w);

    std::string str() const;

private:
    std::vector<Monomial> terms_;
};

/// The five defining relations, each written as (lhs - rhs).
struct NamedRelation {
    std::string name;
    GeneratorWord word;
};
std::vector<NamedRelation> su_q2_relations(double q);

/// Operators for the four generators on a common space.
using GeneratorMap = std::function<const SparseOp&(Generator)>;

/// Sum over monomials of coeff * (product of generator operators, leftmost outermost).
SparseOp evaluate(const GeneratorWord& word, const TruncatedSpace& space, const GeneratorMap& generators);

} // namespace suq2

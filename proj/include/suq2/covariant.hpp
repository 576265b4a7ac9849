#pragma once

#include "suq2/linop.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace suq2 {

inline constexpr double kGramTolerance = 1e-8;

/// Growth of span{ w(generators) seed : words w of length <= depth }.
///
/// The regular representation is irreducible exactly when the Haar
/// projection has rank one, i.e. when the Haar vector is cyclic. At finite
/// depth this shows up as the span filling every level n <= depth/2.
struct CyclicityReport {
    unsigned depth = 0;
    std::size_t reached = 0;
    std::size_t target = 0;
    bool saturated = false;
    double gram_tolerance = kGramTolerance;
    std::size_t discarded = 0; // candidates that fell below the Gram tolerance

    std::vector<std::size_t> reached_by_depth; // index L = depth L
    std::vector<std::size_t> target_by_depth;
    /// Basis labels at distance > 1e-6 from the span; filled only when not saturated.
    std::vector<BasisLabel> unreached;
};

/// Generators must be endomorphisms of one space; requires depth/2 <= n_max.
CyclicityReport cyclic_dimension(std::span<const SparseOp> generators, std::size_t seed, unsigned depth,
                                 double gram_tolerance = kGramTolerance);

} // namespace suq2

#include "suq2/covariant.hpp"

#include "suq2/error.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace suq2 {

CyclicityReport cyclic_dimension(std::span<const SparseOp> generators, std::size_t seed, unsigned depth,
                                 double gram_tolerance)
{
    if (generators.empty()) throw ParameterError("cyclic_dimension needs at least one generator");
    const TruncatedSpace& space = generators.front().dom();
    for (const auto& g : generators) {
        if (!(g.dom() == space) || !(g.cod() == space)) {
            throw DimensionError("cyclic_dimension: generators must act on one common space");
        }
    }
    if (seed >= space.dim()) throw ParameterError("cyclic_dimension: seed ordinal out of range");
    if (static_cast<std::int64_t>(depth) > space.n_max().twice) {
        throw ParameterError("cyclic_dimension: depth " + std::to_string(depth) + " exceeds 2*n_max = " +
                             std::to_string(space.n_max().twice));
    }
    if (!(gram_tolerance > 0.0)) throw ParameterError("cyclic_dimension: Gram tolerance must be positive");

    CyclicityReport rep;
    rep.depth = depth;
    rep.gram_tolerance = gram_tolerance;

    const std::size_t dim = space.dim();
    const HalfInt seed_level = space.label(seed).n;
    auto support_end = [&](unsigned d) {
        HalfInt top = seed_level + HalfInt::from_twice(static_cast<std::int32_t>(d));
        if (top > space.n_max()) top = space.n_max();
        return space.level_range(top).second;
    };
    auto target_at = [&](unsigned d) {
        const HalfInt top = HalfInt::from_twice(static_cast<std::int32_t>(d));
        return space.level_range(top > space.n_max() ? space.n_max() : top).second;
    };

    // Orthonormal basis as the leading columns of Q.
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), 1);
    Eigen::Index m = 0;
    auto push = [&](const Eigen::VectorXd& v) {
        if (m == Q.cols()) Q.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(2 * Q.cols(), dim));
        Q.col(m++) = v;
    };
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    e[static_cast<Eigen::Index>(seed)] = 1.0;
    push(e);
    std::vector<Eigen::Index> frontier{0};
    rep.reached_by_depth.push_back(1);
    rep.target_by_depth.push_back(target_at(0));

    std::vector<double> buf(dim);
    for (unsigned d = 1; d <= depth; ++d) {
        const auto len = static_cast<Eigen::Index>(support_end(d));
        const auto k = static_cast<Eigen::Index>(frontier.size() * generators.size());
        const Eigen::Index m0 = m;

        // all candidates of this depth, projected against the earlier basis in one block
        Eigen::MatrixXd C(len, k);
        Eigen::Index col = 0;
        for (const Eigen::Index b : frontier) {
            Eigen::Map<Eigen::VectorXd>(buf.data(), static_cast<Eigen::Index>(dim)) = Q.col(b);
            for (const auto& g : generators) {
                const auto image = suq2::apply(g, buf);
                C.col(col++) = Eigen::Map<const Eigen::VectorXd>(image.data(), len);
            }
        }
        const Eigen::VectorXd orig = C.colwise().norm().transpose();
        const auto B = Q.topLeftCorner(len, m0);
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::MatrixXd coeff = B.transpose() * C;
            C.noalias() -= B * coeff;
        }

        std::vector<Eigen::Index> next;
        for (Eigen::Index c = 0; c < k; ++c) {
            // once the span fills the whole prefix every further candidate is dependent
            if (orig[c] == 0.0 || m == len) {
                ++rep.discarded;
                continue;
            }
            Eigen::VectorXd v = C.col(c);
            const auto N = Q.block(0, m0, len, m - m0);
            for (int pass = 0; pass < 2; ++pass) {
                const Eigen::VectorXd coeff = N.transpose() * v;
                v.noalias() -= N * coeff;
            }
            const double res = v.norm();
            if (res <= gram_tolerance * orig[c]) {
                ++rep.discarded;
                continue;
            }
            Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
            full.head(len) = v / res;
            next.push_back(m);
            push(full);
        }
        frontier = std::move(next);
        rep.reached_by_depth.push_back(static_cast<std::size_t>(m));
        rep.target_by_depth.push_back(target_at(d));
    }

    rep.reached = static_cast<std::size_t>(m);
    rep.target = target_at(depth);
    rep.saturated = rep.reached == rep.target;
    if (!rep.saturated) {
        for (std::size_t k = 0; k < rep.target; ++k) {
            const double proj = Q.row(static_cast<Eigen::Index>(k)).head(m).squaredNorm();
            if (1.0 - proj > 1e-6) rep.unreached.push_back(space.label(k));
        }
    }
    return rep;
}

} // namespace suq2

#include "suq2/linop.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace suq2 {

namespace {

void require_same(const TruncatedSpace& a, const TruncatedSpace& b, const char* what)
{
    if (!(a == b)) {
        throw DimensionError(std::string(what) + ": space mismatch (" + std::string(to_string(a.kind())) +
                             ", n_max=" + a.n_max().str() + ") vs (" + std::string(to_string(b.kind())) +
                             ", n_max=" + b.n_max().str() + ")");
    }
}

double dot(std::span<const double> a, std::span<const double> b)
{
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// 1 + frac(k * golden ratio) / 2: strictly positive and never constant.
std::vector<double> start_vector(std::size_t n)
{
    constexpr double kGolden = 0.6180339887498949;
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double x = static_cast<double>(k + 1) * kGolden;
        v[k] = 1.0 + 0.5 * (x - std::floor(x));
    }
    const double nrm = norm2(v);
    for (auto& x : v) x /= nrm;
    return v;
}

} // namespace

SparseOp::SparseOp(TruncatedSpace dom, TruncatedSpace cod)
    : dom_(std::move(dom)), cod_(std::move(cod)), row_ptr_(cod_.dim() + 1, 0)
{
}

SparseOp SparseOp::from_triplets(TruncatedSpace dom, TruncatedSpace cod, std::vector<Triplet> entries)
{
    SparseOp out(std::move(dom), std::move(cod));
    const std::size_t nrows = out.rows();
    const std::size_t ncols = out.cols();
    for (const auto& t : entries) {
        if (t.row >= nrows || t.col >= ncols) {
            throw DimensionError("triplet (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                                 ") outside a " + std::to_string(nrows) + "x" + std::to_string(ncols) + " operator");
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

    out.col_idx_.reserve(entries.size());
    out.values_.reserve(entries.size());
    std::size_t k = 0;
    for (std::size_t r = 0; r < nrows; ++r) {
        out.row_ptr_[r] = out.values_.size();
        while (k < entries.size() && entries[k].row == r) {
            const std::size_t c = entries[k].col;
            double sum = 0.0;
            while (k < entries.size() && entries[k].row == r && entries[k].col == c) sum += entries[k++].value;
            if (std::fabs(sum) >= kPruneThreshold) {
                out.col_idx_.push_back(c);
                out.values_.push_back(sum);
            }
        }
    }
    out.row_ptr_[nrows] = out.values_.size();
    return out;
}

SparseOp SparseOp::identity(const TruncatedSpace& space)
{
    std::vector<double> ones(space.dim(), 1.0);
    return diagonal(space, ones);
}

SparseOp SparseOp::diagonal(const TruncatedSpace& space, std::span<const double> values)
{
    if (values.size() != space.dim()) throw DimensionError("diagonal: value count differs from dimension");
    std::vector<Triplet> t;
    t.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) t.push_back({k, k, values[k]});
    return from_triplets(space, space, std::move(t));
}

std::span<const std::size_t> SparseOp::row_cols(std::size_t row) const
{
    return std::span<const std::size_t>(col_idx_).subspan(row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]);
}

std::span<const double> SparseOp::row_values(std::size_t row) const
{
    return std::span<const double>(values_).subspan(row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]);
}

double SparseOp::coeff(std::size_t row, std::size_t col) const
{
    const auto cols = row_cols(row);
    auto it = std::lower_bound(cols.begin(), cols.end(), col);
    if (it == cols.end() || *it != col) return 0.0;
    return row_values(row)[static_cast<std::size_t>(it - cols.begin())];
}

std::vector<Triplet> SparseOp::triplets() const
{
    std::vector<Triplet> out;
    out.reserve(nnz());
    for (std::size_t r = 0; r < rows(); ++r) {
        const auto cols = row_cols(r);
        const auto vals = row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) out.push_back({r, cols[k], vals[k]});
    }
    return out;
}

bool SparseOp::is_diagonal() const
{
    if (!(dom_ == cod_)) return false;
    for (std::size_t r = 0; r < rows(); ++r) {
        for (auto c : row_cols(r)) {
            if (c != r) return false;
        }
    }
    return true;
}

std::vector<double> SparseOp::diagonal_values() const
{
    if (!(dom_ == cod_)) throw DimensionError("diagonal_values: operator is not square");
    std::vector<double> d(rows(), 0.0);
    for (std::size_t r = 0; r < rows(); ++r) d[r] = coeff(r, r);
    return d;
}

std::vector<double> apply(const SparseOp& op, std::span<const double> v)
{
    if (v.size() != op.cols()) {
        throw DimensionError("apply: vector of length " + std::to_string(v.size()) + " for an operator with " +
                             std::to_string(op.cols()) + " columns");
    }
    std::vector<double> out(op.rows(), 0.0);
    for (std::size_t r = 0; r < op.rows(); ++r) {
        const auto cols = op.row_cols(r);
        const auto vals = op.row_values(r);
        double s = 0.0;
        for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * v[cols[k]];
        out[r] = s;
    }
    return out;
}

std::vector<double> apply_adjoint(const SparseOp& op, std::span<const double> v)
{
    if (v.size() != op.rows()) throw DimensionError("apply_adjoint: vector length differs from operator rows");
    std::vector<double> out(op.cols(), 0.0);
    for (std::size_t r = 0; r < op.rows(); ++r) {
        if (v[r] == 0.0) continue;
        const auto cols = op.row_cols(r);
        const auto vals = op.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) out[cols[k]] += vals[k] * v[r];
    }
    return out;
}

SparseOp compose(const SparseOp& lhs, const SparseOp& rhs)
{
    require_same(lhs.dom(), rhs.cod(), "compose");
    std::vector<Triplet> out;
    std::vector<double> acc(rhs.cols(), 0.0);
    std::vector<char> seen(rhs.cols(), 0);
    std::vector<std::size_t> touched;
    for (std::size_t r = 0; r < lhs.rows(); ++r) {
        touched.clear();
        const auto lc = lhs.row_cols(r);
        const auto lv = lhs.row_values(r);
        for (std::size_t a = 0; a < lc.size(); ++a) {
            const auto rc = rhs.row_cols(lc[a]);
            const auto rv = rhs.row_values(lc[a]);
            for (std::size_t b = 0; b < rc.size(); ++b) {
                if (!seen[rc[b]]) {
                    seen[rc[b]] = 1;
                    touched.push_back(rc[b]);
                }
                acc[rc[b]] += lv[a] * rv[b];
            }
        }
        for (auto c : touched) {
            out.push_back({r, c, acc[c]});
            acc[c] = 0.0;
            seen[c] = 0;
        }
    }
    return SparseOp::from_triplets(rhs.dom(), lhs.cod(), std::move(out));
}

SparseOp add(const SparseOp& a, const SparseOp& b)
{
    require_same(a.dom(), b.dom(), "add (domain)");
    require_same(a.cod(), b.cod(), "add (codomain)");
    auto t = a.triplets();
    auto tb = b.triplets();
    t.insert(t.end(), tb.begin(), tb.end());
    return SparseOp::from_triplets(a.dom(), a.cod(), std::move(t));
}

SparseOp subtract(const SparseOp& a, const SparseOp& b) { return add(a, scale(b, -1.0)); }

SparseOp scale(const SparseOp& a, double s)
{
    auto t = a.triplets();
    for (auto& e : t) e.value *= s;
    return SparseOp::from_triplets(a.dom(), a.cod(), std::move(t));
}

SparseOp adjoint(const SparseOp& a)
{
    auto t = a.triplets();
    for (auto& e : t) std::swap(e.row, e.col);
    return SparseOp::from_triplets(a.cod(), a.dom(), std::move(t));
}

SparseOp restrict_domain(const SparseOp& op, std::span<const std::size_t> cols)
{
    std::vector<char> keep(op.cols(), 0);
    for (auto c : cols) keep.at(c) = 1;
    auto t = op.triplets();
    std::erase_if(t, [&](const Triplet& e) { return !keep[e.col]; });
    return SparseOp::from_triplets(op.dom(), op.cod(), std::move(t));
}

SparseOp restrict_codomain(const SparseOp& op, std::span<const std::size_t> rows)
{
    std::vector<char> keep(op.rows(), 0);
    for (auto r : rows) keep.at(r) = 1;
    auto t = op.triplets();
    std::erase_if(t, [&](const Triplet& e) { return !keep[e.row]; });
    return SparseOp::from_triplets(op.dom(), op.cod(), std::move(t));
}

double max_abs_entry(const SparseOp& op)
{
    double m = 0.0;
    for (std::size_t r = 0; r < op.rows(); ++r) {
        for (double v : op.row_values(r)) m = std::max(m, std::fabs(v));
    }
    return m;
}

ConvergenceError::ConvergenceError(std::vector<double> last_iterate, double last_estimate, std::size_t iterations)
    : DiagnosticError("power iteration did not converge after " + std::to_string(iterations) +
                      " iterations (last estimate " + std::to_string(last_estimate) + ")"),
      last_iterate_(std::move(last_iterate)), last_estimate_(last_estimate), iterations_(iterations)
{
}

namespace {

double power_iterate(const SparseOp& op, std::vector<double> x, const NormOptions& options)
{
    double lambda = 0.0;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        const auto y = suq2::apply(op, x);
        const double next = dot(y, y); // Rayleigh quotient of T^*T at unit x
        auto z = apply_adjoint(op, y);
        const double zn = norm2(z);
        if (zn == 0.0) return 0.0;
        for (auto& v : z) v /= zn;
        x = std::move(z);
        if (it > 0 && std::fabs(next - lambda) <= options.rel_tol * next) return std::sqrt(next);
        lambda = next;
    }
    throw ConvergenceError(std::move(x), std::sqrt(lambda), options.max_iterations);
}

} // namespace

double op_norm(const SparseOp& op, const NormOptions& options)
{
    if (!(options.rel_tol > 0.0)) throw ParameterError("op_norm: tolerance must be positive");
    if (op.nnz() == 0) return 0.0;

    // Largest column norm is a lower bound for sigma_max; if the fixed start
    // vector lands (numerically) in a deficient subspace, restart there.
    std::vector<double> colsq(op.cols(), 0.0);
    for (std::size_t r = 0; r < op.rows(); ++r) {
        const auto cols = op.row_cols(r);
        const auto vals = op.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) colsq[cols[k]] += vals[k] * vals[k];
    }
    const auto best = static_cast<std::size_t>(std::max_element(colsq.begin(), colsq.end()) - colsq.begin());
    const double lower = std::sqrt(colsq[best]);

    const double est = power_iterate(op, start_vector(op.cols()), options);
    if (est >= lower * (1.0 - 1e-12)) return est;

    std::vector<double> e(op.cols(), 0.0);
    e[best] = 1.0;
    return std::max(est, power_iterate(op, std::move(e), options));
}

double block_norm(const SparseOp& op, HalfInt level)
{
    const auto [begin, end] = op.cod().level_range(level);

    std::vector<std::size_t> cols;
    for (std::size_t r = begin; r < end; ++r) {
        for (auto c : op.row_cols(r)) cols.push_back(c);
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (cols.empty()) return 0.0;

    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(end - begin),
                                                  static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = begin; r < end; ++r) {
        const auto rc = op.row_cols(r);
        const auto rv = op.row_values(r);
        for (std::size_t k = 0; k < rc.size(); ++k) {
            const auto pos = std::lower_bound(cols.begin(), cols.end(), rc[k]) - cols.begin();
            block(static_cast<Eigen::Index>(r - begin), pos) = rv[k];
        }
    }
    const Eigen::MatrixXd gram =
        block.rows() <= block.cols() ? Eigen::MatrixXd(block * block.transpose()) : Eigen::MatrixXd(block.transpose() * block);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

std::vector<std::pair<HalfInt, double>> level_block_norms(const SparseOp& op)
{
    std::vector<std::pair<HalfInt, double>> out;
    for (auto n : op.cod().levels()) out.emplace_back(n, block_norm(op, n));
    return out;
}

namespace {

void write_space(std::ostream& out, const char* tag, const TruncatedSpace& s)
{
    out << "# " << tag << ' ' << to_string(s.kind()) << " twice_nmax=" << s.n_max().twice << " dim=" << s.dim() << '\n';
}

TruncatedSpace read_space(std::istream& in, const std::string& tag)
{
    std::string line;
    if (!std::getline(in, line)) throw ParameterError("operator dump: missing " + tag + " header");
    std::istringstream ls(line);
    std::string hash, t, kind, nmax, dim;
    ls >> hash >> t >> kind >> nmax >> dim;
    if (hash != "#" || t != tag || nmax.rfind("twice_nmax=", 0) != 0) {
        throw ParameterError("operator dump: malformed " + tag + " header: " + line);
    }
    SpaceKind k;
    if (kind == "L2") k = SpaceKind::L2;
    else if (kind == "Double") k = SpaceKind::Double;
    else if (kind == "L2Pair") k = SpaceKind::L2Pair;
    else throw ParameterError("operator dump: unknown space kind " + kind);
    return TruncatedSpace::enumerate(k, HalfInt::from_twice(std::stoi(nmax.substr(11))));
}

} // namespace

void write_triplets(std::ostream& out, const SparseOp& op)
{
    out << "# suq2 sparse operator\n";
    write_space(out, "dom", op.dom());
    write_space(out, "cod", op.cod());
    out << "# nnz " << op.nnz() << '\n';
    char buf[64];
    for (const auto& t : op.triplets()) {
        std::snprintf(buf, sizeof buf, "%.17g", t.value);
        out << t.row << ' ' << t.col << ' ' << buf << '\n';
    }
}

SparseOp read_triplets(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != "# suq2 sparse operator") {
        throw ParameterError("operator dump: missing magic line");
    }
    auto dom = read_space(in, "dom");
    auto cod = read_space(in, "cod");
    if (!std::getline(in, line) || line.rfind("# nnz ", 0) != 0) throw ParameterError("operator dump: missing nnz");
    const auto nnz = static_cast<std::size_t>(std::stoull(line.substr(6)));
    std::vector<Triplet> t;
    t.reserve(nnz);
    Triplet e{};
    while (in >> e.row >> e.col >> e.value) t.push_back(e);
    if (t.size() != nnz) throw ParameterError("operator dump: nnz header disagrees with entry count");
    return SparseOp::from_triplets(std::move(dom), std::move(cod), std::move(t));
}

} // namespace suq2

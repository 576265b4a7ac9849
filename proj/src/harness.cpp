#include "suq2/harness.hpp"

#include "suq2/covariant.hpp"
#include "suq2/decomp.hpp"
#include "suq2/error.hpp"
#include "suq2/rep_double.hpp"
#include "suq2/rep_l2.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace suq2 {

std::string_view to_string(Suite s)
{
    switch (s) {
    case Suite::Relations: return "relations";
    case Suite::Adjoint: return "adjoint";
    case Suite::Decompose: return "decompose";
    case Suite::KqDecay: return "kq-decay";
    case Suite::Asymptotics: return "asymptotics";
    case Suite::Commutators: return "commutators";
    case Suite::Minimality: return "minimality";
    case Suite::Family: return "family";
    }
    return "?";
}

std::vector<Suite> all_suites()
{
    return {Suite::Relations, Suite::Adjoint,     Suite::Decompose,  Suite::KqDecay,
            Suite::Asymptotics, Suite::Commutators, Suite::Minimality, Suite::Family};
}

std::optional<Suite> parse_suite(std::string_view name)
{
    for (auto s : all_suites()) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

std::string format_q(double q)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", q);
    return buf;
}

void validate(const RunConfig& c)
{
    if (c.suites.empty()) throw ConfigError("suites: at least one suite must be selected");
    if (c.qs.empty()) throw ConfigError("q: at least one q value is required");
    for (double q : c.qs) {
        if (!(q > 0.0 && q < 1.0)) throw ConfigError("q: every value must lie in (0,1), got " + format_q(q));
    }
    if (c.n_max.twice < 0) throw ConfigError("nmax: must be nonnegative");
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw ConfigError(std::string("tol-") + name + ": must be positive");
    };
    positive(c.tol.relation, "relation");
    positive(c.tol.adjoint, "adjoint");
    positive(c.tol.norm, "norm");
    positive(c.tol.gram, "gram");

    const auto need = [&](Suite s, int min_twice, const char* why) {
        if (c.suites.count(s) && c.n_max.twice < min_twice) {
            throw ConfigError("nmax: suite " + std::string(to_string(s)) + " needs " + why);
        }
    };
    need(Suite::Relations, 2, "n_max >= 1 (interior margin 1)");
    need(Suite::Adjoint, 2, "n_max >= 1 (interior margin 1)");
    need(Suite::KqDecay, 8, "n_max >= 4 (three levels in [2, n_max-1])");
    need(Suite::Commutators, 6, "n_max >= 3 (compares n_max-2 with n_max)");
    need(Suite::Minimality, 1, "n_max >= 1/2 (depth 1)");
}

bool RunResult::all_pass() const
{
    return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.pass; });
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

struct CellOutput {
    std::vector<VerificationReport> reports;
    std::vector<PlotSeries> plots;
};

VerificationReport make_report(Suite s, double q, HalfInt n_max, std::string subject)
{
    VerificationReport r;
    r.suite = std::string(to_string(s));
    r.key = {q, n_max.twice, std::move(subject)};
    return r;
}

double interior_norm(const SparseOp& op, const std::vector<std::size_t>& inner, const Tolerances& tol)
{
    return op_norm(restrict_domain(op, inner), NormOptions{tol.norm, 100000});
}

// ---- relations ------------------------------------------------------------

CellOutput relations_cell(double qv, HalfInt n_max, const Tolerances& tol)
{
    const QParam q(qv);
    CellOutput out;
    const HatRepresentation hat(TruncatedSpace::enumerate(SpaceKind::L2, n_max), q);
    const PrimeRepresentation prime(TruncatedSpace::enumerate(SpaceKind::Double, n_max), q);

    for (const auto& rel : su_q2_relations(qv)) {
        const HalfInt margin = HalfInt::from_twice(static_cast<std::int32_t>(rel.word.length()));
        for (int which = 0; which < 2; ++which) {
            const auto t0 = Clock::now();
            const bool is_hat = which == 0;
            const auto& space = is_hat ? hat.space() : prime.space();
            const auto defect = is_hat ? hat.pi_hat(rel.word) : prime.pi_prime(rel.word);
            const auto inner = interior(space, margin);
            auto r = make_report(Suite::Relations, qv, n_max, std::string(is_hat ? "pi_hat:" : "pi_prime:") + rel.name);
            const double nrm = interior_norm(defect, inner, tol);
            r.metrics.push_back({"defect_norm", nrm});
            r.metrics.push_back({"defect_max_entry", max_abs_entry(restrict_domain(defect, inner))});
            r.thresholds.push_back({"defect_norm", tol.relation});
            r.pass = nrm <= tol.relation;
            if (is_hat && !r.pass) {
                // Where the defect lives: columns on the top weight i = n versus the rest.
                std::vector<std::size_t> off_top;
                for (auto k : inner) {
                    const auto& l = space.label(k);
                    if (l.i != l.n) off_top.push_back(k);
                }
                r.metrics.push_back({"defect_norm_off_top_weight", interior_norm(defect, off_top, tol)});
                r.note = "beta-hat drops its e^{(n-1/2)}_{i+1/2,j-1/2} component at i = n (no such label)";
            }
            r.wall_ms = elapsed_ms(t0);
            out.reports.push_back(std::move(r));
        }
    }
    return out;
}

// ---- adjoint --------------------------------------------------------------

CellOutput adjoint_cell(double qv, HalfInt n_max, const Tolerances& tol)
{
    const QParam q(qv);
    CellOutput out;
    const PrimeRepresentation prime(TruncatedSpace::enumerate(SpaceKind::Double, n_max), q);
    const auto inner = interior(prime.space(), kOne);
    for (auto g : {Generator::Alpha, Generator::Beta}) {
        const auto t0 = Clock::now();
        auto r = make_report(Suite::Adjoint, qv, n_max,
                             "pi_prime(" + std::string(to_string(g)) + ")^*-pi_prime(" + std::string(to_string(star(g))) + ")");
        const auto diff = adjoint(prime(g)) - prime(star(g));
        const double nrm = interior_norm(diff, inner, tol);
        r.metrics.push_back({"defect_norm", nrm});
        r.thresholds.push_back({"defect_norm", tol.adjoint});
        r.pass = nrm <= tol.adjoint;
        r.wall_ms = elapsed_ms(t0);
        out.reports.push_back(std::move(r));
    }
    return out;
}

// ---- decompose ------------------------------------------------------------

CellOutput decompose_cell(double qv, HalfInt n_max)
{
    CellOutput out;
    out.reports.push_back(check_dirac_intertwine(n_max, qv));
    return out;
}

// ---- kq-decay -------------------------------------------------------------

constexpr double kKqRateThreshold = 1.8;     // in units of ln(1/q)
constexpr double kControlRateThreshold = 0.5; // in units of ln(1/q)

void fill_fit(VerificationReport& r, const std::vector<std::pair<HalfInt, double>>& norms, HalfInt lo, HalfInt hi,
              QParam q)
{
    try {
        const auto fit = decay_fit(norms, lo, hi);
        r.metrics.push_back({"rate_units", fit.rate_in_units(q)});
        r.metrics.push_back({"rate", fit.rate});
        r.metrics.push_back({"fit_residual", fit.residual});
        r.metrics.push_back({"censored", static_cast<double>(fit.censored)});
        r.metrics.push_back({"fit_points", static_cast<double>(fit.levels.size())});
    } catch (const DiagnosticError& e) {
        r.note = e.what();
    }
}

PlotSeries plot_of(const std::string& token, double qv, const std::vector<std::pair<HalfInt, double>>& norms)
{
    PlotSeries p;
    p.file_name = "kq_" + token + "_q" + format_q(qv) + ".dat";
    for (const auto& [n, v] : norms) {
        if (v > kNormFloor) p.points.emplace_back(n.value(), std::log(v));
    }
    return p;
}

CellOutput kq_cell(double qv, HalfInt n_max, bool plots)
{
    const QParam q(qv);
    CellOutput out;
    const HalfInt lo = HalfInt::from_int(2);
    const HalfInt hi = n_max - kOne;
    for (auto g : {Generator::AlphaStar, Generator::Beta}) {
        const auto t0 = Clock::now();
        const auto norms = level_block_norms(kq_defect(g, n_max, q));
        auto r = make_report(Suite::KqDecay, qv, n_max, "defect:" + std::string(to_string(g)));
        r.metrics.push_back({"level0_block_norm", norms.front().second});
        fill_fit(r, norms, lo, hi, q);
        r.thresholds.push_back({"rate_units_min", kKqRateThreshold});
        r.pass = std::any_of(r.metrics.begin(), r.metrics.end(), [](const Metric& m) {
            return m.name == "rate_units" && m.value >= kKqRateThreshold;
        });
        if (plots) out.plots.push_back(plot_of(std::string(file_token(g)), qv, norms));
        r.wall_ms = elapsed_ms(t0);
        out.reports.push_back(std::move(r));
    }
    {
        const auto t0 = Clock::now();
        const auto dbl = TruncatedSpace::enumerate(SpaceKind::Double, n_max);
        const auto norms = level_block_norms(pi_prime(Generator::AlphaStar, dbl, q));
        auto r = make_report(Suite::KqDecay, qv, n_max, "control:pi_prime(alpha*)");
        fill_fit(r, norms, lo, hi, q);
        r.thresholds.push_back({"rate_units_max", kControlRateThreshold});
        r.pass = std::any_of(r.metrics.begin(), r.metrics.end(), [](const Metric& m) {
            return m.name == "rate_units" && m.value < kControlRateThreshold;
        });
        r.wall_ms = elapsed_ms(t0);
        out.reports.push_back(std::move(r));
    }
    return out;
}

// ---- asymptotics ----------------------------------------------------------

constexpr double kAsymptoticEnvelope = 10.0;

CellOutput asymptotics_cell(double qv, HalfInt n_max)
{
    const QParam q(qv);
    CellOutput out;
    for (auto kind : {CoeffKind::APlus, CoeffKind::AMinus, CoeffKind::BPlus, CoeffKind::BMinus}) {
        const auto t0 = Clock::now();
        const auto pts = asymptotic_residual(kind, HalfInt::from_int(1), HalfInt::from_int(6), q);
        const double c1 = pts.front().scaled;
        double worst = 0.0;
        for (const auto& p : pts) worst = std::max(worst, p.scaled);
        auto r = make_report(Suite::Asymptotics, qv, n_max, std::string(to_string(kind)));
        r.metrics.push_back({"scaled_residual_n1", c1});
        r.metrics.push_back({"scaled_residual_max", worst});
        r.metrics.push_back({"envelope_ratio", c1 > 0.0 ? worst / c1 : 0.0});
        r.thresholds.push_back({"envelope_ratio", kAsymptoticEnvelope});
        r.pass = c1 > 0.0 && worst <= kAsymptoticEnvelope * c1;
        r.note = "levels 1..6; envelope constant estimated at n=1";
        r.wall_ms = elapsed_ms(t0);
        out.reports.push_back(std::move(r));
    }
    return out;
}

// ---- commutators ----------------------------------------------------------

constexpr double kPlateauChange = 0.05;

CellOutput commutators_cell(double qv, HalfInt n_max, const Tolerances& tol)
{
    const QParam q(qv);
    CellOutput out;
    const HalfInt small = n_max - HalfInt::from_int(2);

    struct Norms {
        std::array<double, 4> hat{}, prime{};
    };
    auto measure = [&](HalfInt nm) {
        Norms n;
        const HatRepresentation hat(TruncatedSpace::enumerate(SpaceKind::L2, nm), q);
        const PrimeRepresentation prime(TruncatedSpace::enumerate(SpaceKind::Double, nm), q);
        const auto d1 = dirac_family(kD1, hat.space());
        const auto d = dirac_D(prime.space());
        const auto in_l2 = interior(hat.space(), kOne);
        const auto in_dbl = interior(prime.space(), kOne);
        for (auto g : kAllGenerators) {
            const auto k = static_cast<std::size_t>(g);
            n.hat[k] = interior_norm(d1 * hat(g) - hat(g) * d1, in_l2, tol);
            n.prime[k] = interior_norm(d * prime(g) - prime(g) * d, in_dbl, tol);
        }
        return n;
    };
    const auto t0 = Clock::now();
    const Norms lo = measure(small), hi = measure(n_max);
    const double ms = elapsed_ms(t0) / 8.0;

    for (int which = 0; which < 2; ++which) {
        for (auto g : kAllGenerators) {
            const auto k = static_cast<std::size_t>(g);
            const double a = which == 0 ? lo.hat[k] : lo.prime[k];
            const double b = which == 0 ? hi.hat[k] : hi.prime[k];
            auto r = make_report(Suite::Commutators, qv, n_max,
                                 which == 0 ? "[D1,pi_hat(" + std::string(to_string(g)) + ")]"
                                            : "[D,pi_prime(" + std::string(to_string(g)) + ")]");
            const double change = std::fabs(b - a) / std::max(a, b);
            r.metrics.push_back({"norm_nmax_minus_2", a});
            r.metrics.push_back({"norm_nmax", b});
            r.metrics.push_back({"relative_change", change});
            r.thresholds.push_back({"relative_change", kPlateauChange});
            r.pass = change < kPlateauChange;
            r.wall_ms = ms;
            out.reports.push_back(std::move(r));
        }
    }
    return out;
}

// ---- minimality -----------------------------------------------------------

constexpr std::size_t kDepthOneDimension = 5; // Omega plus its four distinct depth-1 images

CellOutput minimality_cell(double qv, HalfInt n_max, const Tolerances& tol)
{
    const QParam q(qv);
    CellOutput out;
    const HatRepresentation hat(TruncatedSpace::enumerate(SpaceKind::L2, n_max), q);
    const std::vector<SparseOp> gens{hat(Generator::Alpha), hat(Generator::AlphaStar), hat(Generator::Beta),
                                     hat(Generator::BetaStar)};
    const auto depth = static_cast<unsigned>(n_max.twice);
    {
        const auto t0 = Clock::now();
        const auto rep = cyclic_dimension(gens, 0, depth, tol.gram);
        bool monotone = true, capped = true;
        for (std::size_t d = 0; d < rep.reached_by_depth.size(); ++d) {
            if (d > 0 && rep.reached_by_depth[d] < rep.reached_by_depth[d - 1]) monotone = false;
            if (rep.reached_by_depth[d] > rep.target_by_depth[d]) capped = false;
        }
        const std::size_t d1 = rep.reached_by_depth.size() > 1 ? rep.reached_by_depth[1] : 0;
        auto r = make_report(Suite::Minimality, qv, n_max, "cyclic:Omega");
        r.metrics = {{"depth", static_cast<double>(rep.depth)},
                     {"depth1_reached", static_cast<double>(d1)},
                     {"monotone", monotone ? 1.0 : 0.0},
                     {"level_capped", capped ? 1.0 : 0.0},
                     {"reached", static_cast<double>(rep.reached)},
                     {"target", static_cast<double>(rep.target)},
                     {"saturated", rep.saturated ? 1.0 : 0.0},
                     {"discarded", static_cast<double>(rep.discarded)},
                     {"unreached", static_cast<double>(rep.unreached.size())},
                     {"gram_tolerance", rep.gram_tolerance}};
        r.thresholds = {{"depth1_reached", static_cast<double>(kDepthOneDimension)}};
        r.pass = d1 == kDepthOneDimension && monotone && capped;
        r.note = rep.saturated ? "saturated (informational)"
                               : "NOT saturated (informational): " + std::to_string(rep.target - rep.reached) +
                                     " directions missing";
        r.wall_ms = elapsed_ms(t0);
        out.reports.push_back(std::move(r));
    }
    {
        const auto t0 = Clock::now();
        const std::vector<SparseOp> diag{dirac_family(kD1, hat.space())};
        const auto rep = cyclic_dimension(diag, 0, depth, tol.gram);
        const bool flat = std::all_of(rep.reached_by_depth.begin(), rep.reached_by_depth.end(),
                                      [](std::size_t v) { return v == 1; });
        auto r = make_report(Suite::Minimality, qv, n_max, "control:{D1}");
        r.metrics = {{"reached", static_cast<double>(rep.reached)}, {"flat", flat ? 1.0 : 0.0}};
        r.thresholds = {{"reached", 1.0}};
        r.pass = flat;
        r.wall_ms = elapsed_ms(t0);
        out.reports.push_back(std::move(r));
    }
    return out;
}

// ---- family ---------------------------------------------------------------

CellOutput family_cell(HalfInt n_max)
{
    CellOutput out;
    const HalfInt table_top = std::min(n_max, HalfInt::from_int(4));
    const auto l2 = TruncatedSpace::enumerate(SpaceKind::L2, table_top);

    auto table_report = [&](const char* name, const SparseOp& op, auto expected) {
        const auto t0 = Clock::now();
        const auto d = op.diagonal_values();
        double dev = op.is_diagonal() ? 0.0 : 1.0;
        for (std::size_t k = 0; k < l2.dim(); ++k) {
            const auto& l = l2.label(k);
            dev = std::max(dev, std::fabs(d[k] - expected(l.n.value(), l.j == l.n)));
        }
        auto r = make_report(Suite::Family, 0.0, table_top, name);
        r.metrics = {{"max_table_deviation", dev}};
        r.thresholds = {{"max_table_deviation", 0.0}};
        r.pass = dev == 0.0;
        r.wall_ms = elapsed_ms(t0);
        out.reports.push_back(std::move(r));
    };
    const auto d2 = dirac_family(kD2, l2);
    table_report("table:D1", dirac_family(kD1, l2), [](double n, bool top) { return top ? 2 * n + 1 : -2 * n; });
    table_report("table:D2", d2, [](double n, bool top) { return top ? 2 * n + 1 : -2 * n - 1; });
    table_report("table:|D2|", abs_op(d2), [](double n, bool) { return 2 * n + 1; });

    {
        const auto t0 = Clock::now();
        const std::vector<DiracParams> grid{{0, -2, 0, 2, 1}, {1, 3, -1, -0.5, 2}, {2, -1, 4, 7, -3}, {3, 0.5, 0, -2, 1}};
        double diagonal_ok = 1.0, nj_only = 1.0, right_ni_only = 1.0;
        for (const auto& p : grid) {
            for (auto side : {Equivariance::Left, Equivariance::Right}) {
                const auto d = dirac_family(p, l2, side);
                if (!d.is_diagonal()) diagonal_ok = 0.0;
                const auto vals = d.diagonal_values();
                for (std::size_t a = 0; a < l2.dim(); ++a) {
                    for (std::size_t b = a + 1; b < l2.dim() && l2.label(b).n == l2.label(a).n; ++b) {
                        const auto& la = l2.label(a);
                        const auto& lb = l2.label(b);
                        const bool same = side == Equivariance::Left ? la.j == lb.j : la.i == lb.i;
                        if (same && vals[a] != vals[b]) (side == Equivariance::Left ? nj_only : right_ni_only) = 0.0;
                    }
                }
            }
        }
        std::size_t rejected = 0;
        const std::vector<DiracParams> bad{{0, 1, 0, 1, 0}, {0, -1, 0, -3, 0}, {0, 0, 1, 2, 0}, {1, 2, 0, 0, 0}};
        for (const auto& p : bad) {
            try {
                (void)dirac_family(p, l2);
            } catch (const ParameterError&) {
                ++rejected;
            }
        }
        auto r = make_report(Suite::Family, 0.0, table_top, "structure");
        r.metrics = {{"diagonal", diagonal_ok},
                     {"left_depends_on_n_j_only", nj_only},
                     {"right_depends_on_n_i_only", right_ni_only},
                     {"rejected_ac_nonnegative", static_cast<double>(rejected)}};
        r.thresholds = {{"rejected_ac_nonnegative", static_cast<double>(bad.size())}};
        r.pass = diagonal_ok == 1.0 && nj_only == 1.0 && right_ni_only == 1.0 && rejected == bad.size();
        r.wall_ms = elapsed_ms(t0);
        out.reports.push_back(std::move(r));
    }
    return out;
}

bool report_less(const VerificationReport& a, const VerificationReport& b)
{
    if (a.suite != b.suite) return a.suite < b.suite;
    return a.key < b.key;
}

} // namespace

RunResult run(const RunConfig& config)
{
    validate(config);
    const auto t0 = Clock::now();

    std::vector<std::function<CellOutput()>> cells;
    for (auto s : config.suites) {
        if (s == Suite::Family) {
            cells.emplace_back([&] { return family_cell(config.n_max); });
            continue;
        }
        for (double q : config.qs) {
            switch (s) {
            case Suite::Relations: cells.emplace_back([&, q] { return relations_cell(q, config.n_max, config.tol); }); break;
            case Suite::Adjoint: cells.emplace_back([&, q] { return adjoint_cell(q, config.n_max, config.tol); }); break;
            case Suite::Decompose: cells.emplace_back([&, q] { return decompose_cell(q, config.n_max); }); break;
            case Suite::KqDecay: cells.emplace_back([&, q] { return kq_cell(q, config.n_max, config.emit_plot_data); }); break;
            case Suite::Asymptotics: cells.emplace_back([&, q] { return asymptotics_cell(q, config.n_max); }); break;
            case Suite::Commutators: cells.emplace_back([&, q] { return commutators_cell(q, config.n_max, config.tol); }); break;
            case Suite::Minimality: cells.emplace_back([&, q] { return minimality_cell(q, config.n_max, config.tol); }); break;
            case Suite::Family: break;
            }
        }
    }

    std::vector<CellOutput> results(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < cells.size(); k = next++) {
            try {
                results[k] = cells[k]();
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    unsigned nthreads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(std::max<std::size_t>(1, cells.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    RunResult out;
    for (auto& c : results) {
        for (auto& r : c.reports) out.reports.push_back(std::move(r));
        for (auto& p : c.plots) out.plots.push_back(std::move(p));
    }
    std::stable_sort(out.reports.begin(), out.reports.end(), report_less);
    std::sort(out.plots.begin(), out.plots.end(),
              [](const PlotSeries& a, const PlotSeries& b) { return a.file_name < b.file_name; });
    out.total_ms = elapsed_ms(t0);
    return out;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson report_to_json(const VerificationReport& r)
{
    ojson j;
    j["suite"] = r.suite;
    j["q"] = r.key.q;
    j["twice_nmax"] = r.key.twice_nmax;
    j["subject"] = r.key.subject;
    ojson m = ojson::object();
    for (const auto& x : r.metrics) m[x.name] = x.value;
    j["metrics"] = m;
    ojson t = ojson::object();
    for (const auto& x : r.thresholds) t[x.name] = x.value;
    j["thresholds"] = t;
    j["pass"] = r.pass;
    j["note"] = r.note;
    return j;
}

ojson payload(const std::vector<VerificationReport>& reports)
{
    ojson arr = ojson::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return ojson{{"reports", arr}};
}

std::string fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw EmitError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw EmitError("write failed for " + path.string());
}

} // namespace

std::string payload_json(const std::vector<VerificationReport>& reports) { return payload(reports).dump(2); }

std::string payload_hash(const std::vector<VerificationReport>& reports) { return fnv1a(payload_json(reports)); }

std::string report_json(const RunConfig& config, const RunResult& result)
{
    ojson doc;
    doc["schema"] = "suq2lab-report/1";
    ojson cfg;
    cfg["q"] = config.qs;
    cfg["twice_nmax"] = config.n_max.twice;
    std::vector<std::string> suites;
    for (auto s : config.suites) suites.emplace_back(to_string(s));
    cfg["suites"] = suites;
    cfg["tolerances"] = ojson{{"relation", config.tol.relation},
                              {"adjoint", config.tol.adjoint},
                              {"norm", config.tol.norm},
                              {"gram", config.tol.gram}};
    cfg["emit_plot_data"] = config.emit_plot_data;
    doc["config"] = cfg;
    doc["payload"] = payload(result.reports);
    doc["payload_hash"] = payload_hash(result.reports);
    doc["all_pass"] = result.all_pass();

    ojson timing;
    ojson cells = ojson::array();
    for (const auto& r : result.reports) {
        cells.push_back(ojson{{"suite", r.suite}, {"q", r.key.q}, {"subject", r.key.subject}, {"wall_ms", r.wall_ms}});
    }
    timing["cells"] = cells;
    timing["total_ms"] = result.total_ms;
    timing["threads"] = config.threads ? config.threads : std::thread::hardware_concurrency();
    doc["timing"] = timing;
    return doc.dump(2) + "\n";
}

std::string report_csv(const std::vector<VerificationReport>& reports)
{
    std::string out = "suite,q,twice_nmax,subject,pass,metrics,thresholds\n";
    for (const auto& r : reports) {
        std::string m, t;
        for (const auto& x : r.metrics) m += (m.empty() ? "" : ";") + x.name + "=" + fmt_double(x.value);
        for (const auto& x : r.thresholds) t += (t.empty() ? "" : ";") + x.name + "=" + fmt_double(x.value);
        out += csv_field(r.suite) + "," + format_q(r.key.q) + "," + std::to_string(r.key.twice_nmax) + "," +
               csv_field(r.key.subject) + "," + (r.pass ? "true" : "false") + "," + csv_field(m) + "," + csv_field(t) +
               "\n";
    }
    return out;
}

std::vector<std::filesystem::path> emit(const RunConfig& config, const RunResult& result)
{
    std::vector<std::filesystem::path> written;
    if (config.out_dir.empty()) return written;
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw EmitError("cannot create output directory " + config.out_dir.string() + ": " + ec.message());

    const auto json_path = config.out_dir / "report.json";
    write_file(json_path, report_json(config, result));
    written.push_back(json_path);
    const auto csv_path = config.out_dir / "report.csv";
    write_file(csv_path, report_csv(result.reports));
    written.push_back(csv_path);

    if (config.emit_plot_data) {
        for (const auto& p : result.plots) {
            std::string text = "# n ln_block_norm\n";
            for (const auto& [x, y] : p.points) {
                char buf[80];
                std::snprintf(buf, sizeof buf, "%g %.17g\n", x, y);
                text += buf;
            }
            const auto path = config.out_dir / p.file_name;
            write_file(path, text);
            written.push_back(path);
        }
    }
    return written;
}

} // namespace suq2

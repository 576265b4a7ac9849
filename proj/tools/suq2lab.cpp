// suq2lab: verification runs for the quantum SU(2) spectral triple.

#include "suq2/decomp.hpp"
#include "suq2/error.hpp"
#include "suq2/harness.hpp"
#include "suq2/hilbert.hpp"
#include "suq2/linop.hpp"
#include "suq2/rep_double.hpp"
#include "suq2/rep_l2.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

enum ExitCode { kOk = 0, kFailures = 1, kConfig = 2, kIo = 3 };

struct Common {
    std::vector<double> qs;
    int twice_nmax = 16;
    suq2::Tolerances tol;
    std::string out;
    bool plot = false;
    unsigned threads = 0;
    bool quiet = false;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--q", c.qs, "deformation parameter in (0,1); repeatable (default 0.3 0.5 0.7)");
    cmd->add_option("--nmax", c.twice_nmax, "truncation level as a doubled integer (16 means n_max = 8)");
    cmd->add_option("--tol-relation", c.tol.relation, "relation defect threshold");
    cmd->add_option("--tol-adjoint", c.tol.adjoint, "adjoint defect threshold");
    cmd->add_option("--tol-norm", c.tol.norm, "power-iteration relative tolerance");
    cmd->add_option("--tol-gram", c.tol.gram, "Gram-Schmidt rank tolerance");
    cmd->add_option("--out", c.out, "directory for report.json, report.csv and plot data");
    cmd->add_flag("--plot", c.plot, "also write kq_<gen>_q<value>.dat plot data");
    cmd->add_option("--threads", c.threads, "worker threads (0: hardware concurrency)");
    cmd->add_flag("--quiet", c.quiet, "print only the summary line");
}

suq2::RunConfig to_config(const Common& c, std::set<suq2::Suite> suites)
{
    suq2::RunConfig cfg;
    if (!c.qs.empty()) cfg.qs = c.qs;
    cfg.n_max = suq2::HalfInt::from_twice(c.twice_nmax);
    cfg.tol = c.tol;
    cfg.suites = std::move(suites);
    cfg.out_dir = c.out;
    cfg.emit_plot_data = c.plot;
    cfg.threads = c.threads;
    return cfg;
}

void print_reports(const suq2::RunResult& result, bool quiet)
{
    std::size_t failed = 0;
    for (const auto& r : result.reports) {
        if (!r.pass) ++failed;
        if (quiet) continue;
        std::printf("%-4s %-12s q=%-4s nmax=%-5s %s", r.pass ? "ok" : "FAIL", r.suite.c_str(),
                    r.key.q > 0 ? suq2::format_q(r.key.q).c_str() : "-",
                    suq2::HalfInt::from_twice(r.key.twice_nmax).str().c_str(), r.key.subject.c_str());
        for (const auto& m : r.metrics) std::printf(" %s=%.6g", m.name.c_str(), m.value);
        std::printf("\n");
    }
    std::printf("%zu reports, %zu failed, payload %s\n", result.reports.size(), failed,
                suq2::payload_hash(result.reports).c_str());
}

int run_suites(const Common& c, std::set<suq2::Suite> suites)
{
    const auto cfg = to_config(c, std::move(suites));
    try {
        suq2::validate(cfg);
    } catch (const suq2::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    }
    const auto result = suq2::run(cfg);
    print_reports(result, c.quiet);
    try {
        for (const auto& p : suq2::emit(cfg, result)) {
            if (!c.quiet) std::printf("wrote %s\n", p.string().c_str());
        }
    } catch (const suq2::EmitError& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kIo;
    }
    return result.all_pass() ? kOk : kFailures;
}

suq2::SpaceKind parse_kind(const std::string& s)
{
    if (s == "l2") return suq2::SpaceKind::L2;
    if (s == "double") return suq2::SpaceKind::Double;
    return suq2::SpaceKind::L2Pair;
}

suq2::Generator parse_generator(const std::string& s)
{
    for (auto g : suq2::kAllGenerators) {
        if (suq2::file_token(g) == s || suq2::to_string(g) == s) return g;
    }
    throw CLI::ValidationError("--gen", "unknown generator " + s);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"suq2lab: numerical checks for the Dirac operator on quantum SU(2)"};
    app.require_subcommand(1);

    Common common;
    std::vector<std::pair<CLI::App*, suq2::Suite>> suite_cmds;
    for (auto s : suq2::all_suites()) {
        auto* cmd = app.add_subcommand(std::string(suq2::to_string(s)), "run the " + std::string(suq2::to_string(s)) + " suite");
        add_common(cmd, common);
        suite_cmds.emplace_back(cmd, s);
    }
    auto* all = app.add_subcommand("all", "run every suite");
    add_common(all, common);

    std::string kind = "l2";
    int basis_twice = 4;
    auto* basis = app.add_subcommand("basis", "print the ordered basis of a truncated space as CSV");
    basis->add_option("--kind", kind, "l2, double or l2pair")->check(CLI::IsMember({"l2", "double", "l2pair"}));
    basis->add_option("--nmax", basis_twice, "truncation level as a doubled integer");

    std::string op_name = "pi_prime", gen = "alpha", op_out;
    double op_q = 0.5;
    int op_twice = 4;
    auto* oper = app.add_subcommand("operator", "dump one operator as sparse triplets");
    oper->add_option("name", op_name, "pi_hat, pi_prime, D, D1, D2, U or defect")
        ->check(CLI::IsMember({"pi_hat", "pi_prime", "D", "D1", "D2", "U", "defect"}));
    oper->add_option("--gen", gen, "generator: alpha, alpha_star, beta, beta_star");
    oper->add_option("--q", op_q, "deformation parameter");
    oper->add_option("--nmax", op_twice, "truncation level as a doubled integer");
    oper->add_option("--out", op_out, "file to write (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfig;
    }

    try {
        for (const auto& [cmd, s] : suite_cmds) {
            if (cmd->parsed()) return run_suites(common, {s});
        }
        if (all->parsed()) {
            const auto v = suq2::all_suites();
            return run_suites(common, {v.begin(), v.end()});
        }
        if (basis->parsed()) {
            if (basis_twice < 0) throw suq2::ParameterError("nmax must be nonnegative");
            suq2::write_basis_csv(std::cout, suq2::enumerate(parse_kind(kind), suq2::HalfInt::from_twice(basis_twice)));
            return kOk;
        }
        if (oper->parsed()) {
            using namespace suq2;
            const HalfInt n_max = HalfInt::from_twice(op_twice);
            const QParam q(op_q);
            const auto build = [&]() -> SparseOp {
                if (op_name == "pi_hat") return HatRepresentation(enumerate(SpaceKind::L2, n_max), q)(parse_generator(gen));
                if (op_name == "pi_prime") return pi_prime(parse_generator(gen), enumerate(SpaceKind::Double, n_max), q);
                if (op_name == "D") return dirac_D(enumerate(SpaceKind::Double, n_max));
                if (op_name == "D1") return dirac_family(kD1, enumerate(SpaceKind::L2, n_max));
                if (op_name == "D2") return dirac_family(kD2, enumerate(SpaceKind::L2, n_max));
                if (op_name == "U") return build_U(n_max);
                return kq_defect(parse_generator(gen), n_max, q);
            };
            const SparseOp op = build();
            if (op_out.empty()) {
                write_triplets(std::cout, op);
            } else {
                std::ofstream f(op_out);
                if (!f) {
                    std::cerr << "output error: cannot open " << op_out << "\n";
                    return kIo;
                }
                write_triplets(f, op);
            }
            return kOk;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailures;
    }
    return kOk;
}

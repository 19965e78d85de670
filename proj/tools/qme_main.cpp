#include <chrono>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qme/qme.hpp"

namespace {

using qme::DenseMatrix;
using qme::QbdProblem;
using qme::SolveReport;
using qme::SolverOptions;

int exit_code_for(qme::ErrorCode code) {
    switch (code) {
        case qme::ErrorCode::parse: return 2;
        case qme::ErrorCode::validation: return 3;
        case qme::ErrorCode::singular: return 4;
        case qme::ErrorCode::no_convergence: return 5;
    }
    return 1;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string fmt_e2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

std::string fmt_ms(std::chrono::duration<double> d) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", d.count() * 1e3);
    return buf;
}

std::pair<DenseMatrix, SolveReport> run_method(const std::string& method, const QbdProblem& p,
                                               const SolverOptions& opts) {
    if (method == "newton") return qme::newton_solve(p, opts);
    if (method == "newton-shamanskii") return qme::newton_shamanskii_solve(p, opts);
    if (method == "fixed-point") return qme::fixed_point_solve(p, opts);
    throw qme::ParameterOutOfRange("unknown method '" + method + "'");
}

struct SolveArgs {
    std::string problem_path;
    std::string method = "newton-shamanskii";
    std::size_t m = 2;
    double tol = 1e-13;
    std::size_t max_outer = 200;
    std::string out_path;
};

int cmd_solve(const SolveArgs& args) {
    const QbdProblem p = qme::read_problem(args.problem_path);
    SolverOptions opts;
    opts.tol = args.tol;
    opts.max_outer = args.max_outer;
    opts.inner_steps = args.m;
    auto [s, report] = run_method(args.method, p, opts);
    std::printf("problem=%s n=%zu method=%s m=%zu tol=%s\n", args.problem_path.c_str(), p.n(),
                args.method.c_str(), args.method == "newton-shamanskii" ? args.m : 1,
                fmt_g(args.tol).c_str());
    std::printf("outer=%zu inner=%zu nres=%s time_ms=%s converged=%s monotone=%s mmatrix=%s\n",
                report.outer_steps, report.inner_steps, fmt_e2(report.final_nres).c_str(),
                fmt_ms(report.elapsed).c_str(), report.converged ? "yes" : "no",
                report.monotone_ok ? "ok" : "violated", report.mmatrix_ok ? "ok" : "failed");
    if (!args.out_path.empty()) {
        qme::write_matrix(s, args.out_path);
        std::printf("solution written to %s\n", args.out_path.c_str());
    }
    return 0;
}

struct CheckArgs {
    std::string problem_path;
};

int cmd_check(const CheckArgs& args) {
    const QbdProblem p = qme::read_problem(args.problem_path);
    std::printf("valid: n=%zu\n", p.n());
    const double rho = qme::drift_rate(p);
    const char* kind = "positive recurrent";
    if (std::abs(rho - 1.0) <= 1e-12) {
        kind = "null recurrent";
    } else if (rho > 1.0) {
        kind = "transient";
    }
    const auto cert = qme::mmatrix_certificate(p, DenseMatrix(p.n(), p.n(), 0.0));
    std::printf("rho=%s, %s, certificate %s\n", fmt_g(rho).c_str(), kind, cert ? "OK" : "FAIL");
    return 0;
}

struct BenchArgs {
    std::vector<std::size_t> sizes{20, 100, 200};
    std::vector<double> deltas{0.5, 0.1, 1e-3};
    std::vector<std::string> methods{"newton", "newton-shamanskii"};
    std::size_t m = 2;
    double tol = 1e-13;
    std::size_t max_outer = 200;
    std::string csv_path;
};

int cmd_bench(const BenchArgs& args) {
    std::string csv = "delta,n,method,m,outer_iters,inner_steps,nres,time_ms\n";
    bool any_failed = false;
    for (double delta : args.deltas) {
        for (std::size_t n : args.sizes) {
            const QbdProblem p = qme::make_delta_example(n, delta);
            for (const std::string& method : args.methods) {
                SolverOptions opts;
                opts.tol = args.tol;
                opts.max_outer = args.max_outer;
                opts.inner_steps = args.m;
                const std::size_t effective_m = method == "newton-shamanskii" ? args.m : 1;
                csv += fmt_g(delta) + "," + std::to_string(n) + "," + method + "," +
                       std::to_string(effective_m) + ",";
                try {
                    auto [s, report] = run_method(method, p, opts);
                    csv += std::to_string(report.outer_steps) + "," +
                           std::to_string(report.inner_steps) + "," + fmt_e2(report.final_nres) +
                           "," + fmt_ms(report.elapsed) + "\n";
                } catch (const qme::Error& e) {
                    any_failed = true;
                    csv += std::string("0,0,error:") + qme::to_string(e.code()) + ",0\n";
                }
            }
        }
    }
    if (args.csv_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::FILE* f = std::fopen(args.csv_path.c_str(), "wb");
        if (!f) throw qme::ParseError("cannot open '" + args.csv_path + "' for writing", 0, 0);
        std::fputs(csv.c_str(), f);
        std::fclose(f);
        std::printf("bench grid written to %s\n", args.csv_path.c_str());
    }
    return any_failed ? 5 : 0;
}

struct GenerateArgs {
    std::string kind;
    std::size_t n = 20;
    double delta = 0.5;
    std::uint64_t seed = 1;
    std::optional<double> rho;
    double a = 0.2;
    double c = 0.5;
    std::string out_path;
};

int cmd_generate(const GenerateArgs& args) {
    QbdProblem p = [&] {
        if (args.kind == "delta-example") return qme::make_delta_example(args.n, args.delta);
        if (args.kind == "random") return qme::random_problem(args.n, args.seed, args.rho);
        if (args.kind == "scalar") return qme::make_scalar_problem(args.a, args.c);
        throw qme::ParameterOutOfRange("unknown problem kind '" + args.kind + "'");
    }();
    qme::write_problem(p, args.out_path);
    std::printf("wrote %s: n=%zu rho=%s\n", args.out_path.c_str(), p.n(),
                fmt_g(qme::drift_rate(p)).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal nonnegative solver for the QBD quadratic matrix equation "
                 "A X^2 + B X + C = 0"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "solve a problem file and report the iteration");
    solve->add_option("problem", solve_args.problem_path, "problem file")->required();
    solve->add_option("--method", solve_args.method, "newton | newton-shamanskii | fixed-point")
        ->default_val(solve_args.method);
    solve->add_option("--m", solve_args.m, "inner updates per factorization")->default_val(2);
    solve->add_option("--tol", solve_args.tol, "NRes stopping threshold")->default_val(1e-13);
    solve->add_option("--max-outer", solve_args.max_outer, "outer step budget")->default_val(200);
    solve->add_option("--out", solve_args.out_path, "write the solution matrix here");

    CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "validate a problem file and classify it");
    check->add_option("problem", check_args.problem_path, "problem file")->required();

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "run the delta-example benchmark grid");
    bench->add_option("--sizes", bench_args.sizes, "problem sizes")
        ->delimiter(',')
        ->default_val(bench_args.sizes);
    bench->add_option("--deltas", bench_args.deltas, "delta values")
        ->delimiter(',')
        ->default_val(bench_args.deltas);
    bench->add_option("--methods", bench_args.methods, "methods to run")
        ->delimiter(',')
        ->default_val(bench_args.methods);
    bench->add_option("--m", bench_args.m, "inner updates per factorization")->default_val(2);
    bench->add_option("--tol", bench_args.tol, "NRes stopping threshold")->default_val(1e-13);
    bench->add_option("--max-outer", bench_args.max_outer, "outer step budget")->default_val(200);
    bench->add_option("--csv", bench_args.csv_path, "CSV output path (stdout when omitted)");

    GenerateArgs gen_args;
    CLI::App* gen = app.add_subcommand("generate", "write a generated problem file");
    gen->add_option("kind", gen_args.kind, "delta-example | random | scalar")->required();
    gen->add_option("--n", gen_args.n, "dimension")->default_val(20);
    gen->add_option("--delta", gen_args.delta, "delta for the delta-example")->default_val(0.5);
    gen->add_option("--seed", gen_args.seed, "seed for random problems")->default_val(1);
    double rho_opt = 0.0;
    CLI::Option* rho_flag =
        gen->add_option("--rho", rho_opt, "drift target for random problems (optional)");
    gen->add_option("--a", gen_args.a, "A entry of the scalar problem")->default_val(0.2);
    gen->add_option("--c", gen_args.c, "C entry of the scalar problem")->default_val(0.5);
    gen->add_option("--out", gen_args.out_path, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::fflush(stdout);
        std::fprintf(stderr, "error:usage: %s\n", e.what());
        return 64;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_args);
        if (check->parsed()) return cmd_check(check_args);
        if (bench->parsed()) return cmd_bench(bench_args);
        if (gen->parsed()) {
            if (rho_flag->count() > 0) gen_args.rho = rho_opt;
            return cmd_generate(gen_args);
        }
    } catch (const qme::Error& e) {
        std::fflush(stdout);
        std::fprintf(stderr, "error:%s: %s\n", qme::to_string(e.code()), e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::fflush(stdout);
        std::fprintf(stderr, "error:internal: %s\n", e.what());
        return 1;
    }
    return 0;
}

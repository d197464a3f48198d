#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "monoapprox/bernstein.hpp"
#include "monoapprox/engine.hpp"
#include "monoapprox/errors.hpp"
#include "monoapprox/json_io.hpp"
#include "monoapprox/order.hpp"
#include "monoapprox/phi.hpp"
#include "monoapprox/rational.hpp"

using namespace monoapprox;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(ErrorKind::Schema, "cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json load_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        raise(ErrorKind::Schema, path + ": " + e.what());
    }
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        raise(ErrorKind::Schema, "cannot open " + out_path + " for writing");
    }
    out << text;
}

void check_format(const std::string& requested, const std::string& natural) {
    if (!requested.empty() && requested != natural) {
        raise(ErrorKind::Schema,
              "this command emits " + natural + ", not " + requested);
    }
}

long long resolve_max_iter(long long flag_value, bool flag_given) {
    if (flag_given) {
        return flag_value;
    }
    if (const char* env = std::getenv("MONOAPPROX_MAX_ITER")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0) {
            raise(ErrorKind::Schema,
                  "MONOAPPROX_MAX_ITER must be a positive integer, got \"" +
                      std::string(env) + "\"");
        }
        return v;
    }
    return kDefaultIterationCap;
}

std::vector<std::pair<double, double>> parse_pairs(const std::string& text,
                                                   const std::string& what) {
    std::vector<std::pair<double, double>> pts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        double x = 0.0;
        double y = 0.0;
        char comma = 0;
        std::stringstream pair(item);
        if (!(pair >> x >> comma >> y) || comma != ',') {
            raise(ErrorKind::Schema, what + ": bad point \"" + item + "\"");
        }
        std::string rest;
        if (pair >> rest) {
            raise(ErrorKind::Schema, what + ": bad point \"" + item + "\"");
        }
        pts.emplace_back(x, y);
    }
    if (pts.size() < 2) {
        raise(ErrorKind::Schema, what + ": need at least two x,y points");
    }
    return pts;
}

PhiSpec phi_from_flags(const std::string& name, double a, bool a_given) {
    if (name == "gamma") return PhiSpec::gamma();
    if (name == "beta") return PhiSpec::beta();
    if (name == "chi") return PhiSpec::chi();
    if (name == "alpha") {
        if (!a_given) {
            raise(ErrorKind::Schema, "--phi alpha needs --a in (0, 1]");
        }
        return PhiSpec::alpha(a);
    }
    if (name.rfind("pwl:", 0) == 0) {
        return PhiSpec::piecewise_linear(parse_pairs(name.substr(4), "--phi pwl"));
    }
    raise(ErrorKind::Schema,
          "unknown squashing map \"" + name +
              "\" (expected alpha, beta, gamma, chi or pwl:<x,y;...>)");
}

// Monotone interpolant through sorted breakpoints, clamped outside.
std::function<double(double)> interpolant(std::vector<std::pair<double, double>> pts) {
    std::sort(pts.begin(), pts.end());
    for (size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i].first > pts[i - 1].first)) {
            raise(ErrorKind::Schema, "breakpoints must have strictly increasing x");
        }
        if (pts[i].second < pts[i - 1].second) {
            raise(ErrorKind::NotMonotoneSamples,
                  "values decrease between x = " + fmt(pts[i - 1].first) +
                      " and x = " + fmt(pts[i].first));
        }
    }
    for (const auto& [x, y] : pts) {
        if (y < 0.0) {
            raise(ErrorKind::NegativeSample, "value at x = " + fmt(x) + " is negative");
        }
    }
    return [pts = std::move(pts)](double x) {
        if (x <= pts.front().first) return pts.front().second;
        if (x >= pts.back().first) return pts.back().second;
        size_t hi = 1;
        while (pts[hi].first < x) ++hi;
        const auto& [x0, y0] = pts[hi - 1];
        const auto& [x1, y1] = pts[hi];
        return y0 + (x - x0) / (x1 - x0) * (y1 - y0);
    };
}

std::function<double(double)> target_from_data_file(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::pair<double, double>> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        double x = 0.0;
        double y = 0.0;
        char comma = 0;
        std::stringstream row(line);
        if (!(row >> x >> comma >> y) || comma != ',') {
            raise(ErrorKind::Schema, path + ": bad row \"" + line + "\"");
        }
        pts.emplace_back(x, y);
    }
    if (pts.size() < 2) {
        raise(ErrorKind::Schema, path + ": need at least two x,f rows");
    }
    return interpolant(std::move(pts));
}

std::function<double(double)> builtin_target(const std::string& spec, double b) {
    if (spec == "identity") {
        return [](double x) { return x; };
    }
    if (spec == "sqrt") {
        return [](double x) { return std::sqrt(x); };
    }
    if (spec == "step-smoothed") {
        return [b](double x) { return 0.5 * (1.0 + std::tanh(8.0 * (x / b - 0.5))); };
    }
    if (spec.rfind("const:", 0) == 0) {
        const double c = std::strtod(spec.c_str() + 6, nullptr);
        if (!(c >= 0.0) || !std::isfinite(c)) {
            raise(ErrorKind::Schema, "const target must be a non-negative real");
        }
        return [c](double) { return c; };
    }
    if (spec.rfind("pwl:", 0) == 0) {
        return interpolant(parse_pairs(spec.substr(4), "--fn pwl"));
    }
    return target_from_data_file(spec);
}

struct OrderArgs {
    std::string space_path;
    std::string family_path;
    std::string format;
    std::string out_path;
};

int run_order(const OrderArgs& args) {
    check_format(args.format, "text");
    auto order = space_from_json(load_json(args.space_path));
    std::string report = "preorder: ok; antisymmetric: ";
    report += order.antisymmetric() ? "yes" : "no";
    report += "\n";
    if (!args.family_path.empty()) {
        auto family = family_from_json(load_json(args.family_path));
        report += "generates: ";
        report += generates(order, family) ? "yes" : "no";
        report += "\n";
        auto ns = common_zero_set(family);
        report += "N_S = {";
        for (size_t i = 0; i < ns.size(); ++i) {
            if (i) report += ", ";
            report += std::to_string(ns[i]);
        }
        report += "}\n";
    }
    write_output(report, args.out_path);
    return 0;
}

struct ApproximateArgs {
    std::string space_path;
    std::string family_path;
    std::string target_path;
    int n = 2;
    std::string phi_name = "gamma";
    double a = 0.0;
    bool a_given = false;
    long long max_iter = 0;
    bool max_iter_given = false;
    std::string format;
    std::string out_path;
};

int run_approximate(const ApproximateArgs& args) {
    check_format(args.format, "json");
    auto order = space_from_json(load_json(args.space_path));
    auto family = family_from_json(load_json(args.family_path));
    auto target = target_from_json(load_json(args.target_path));
    auto phi = phi_from_flags(args.phi_name, args.a, args.a_given);
    const long long cap = resolve_max_iter(args.max_iter, args.max_iter_given);

    auto result = approximate(order, family, phi, target, args.n, cap);
    const std::string body = approx_result_to_json(result).dump(2) + "\n";
    const std::string summary = "sup_error = " + fmt(result.sup_error) +
                                " (bound 3/n = " + fmt(result.bound) + ")\n";
    if (args.out_path.empty()) {
        std::fputs(body.c_str(), stdout);
        std::fputs(summary.c_str(), stderr);
    } else {
        write_output(body, args.out_path);
        std::fputs(summary.c_str(), stdout);
    }
    return 0;
}

struct BernsteinArgs {
    std::string fn_spec;
    std::vector<int> n_list;
    double b = 1.0;
    int grid = 10000;
    double delta = 0.0;
    bool delta_given = false;
    double epsilon = 0.0;
    bool epsilon_given = false;
    std::string format;
    std::string out_path;
};

int run_bernstein(const BernsteinArgs& args) {
    check_format(args.format, "csv");
    auto f = builtin_target(args.fn_spec, args.b);
    std::vector<int> ns = args.n_list;
    if (ns.empty()) {
        ns = {25, 50, 100, 200};
    }
    std::string csv;
    if (ns.size() == 1) {
        const int n = ns[0];
        auto op = build_operator(f, n, args.b);
        csv += "x,R_n,f,absdiff\n";
        for (int i = 0; i < args.grid; ++i) {
            const double x = i + 1 == args.grid
                                 ? args.b
                                 : args.b * static_cast<double>(i) /
                                       static_cast<double>(args.grid - 1);
            const double rn = eval(op, x);
            const double fx = f(x);
            csv += fmt(x) + "," + fmt(rn) + "," + fmt(fx) + "," +
                   fmt(std::fabs(rn - fx)) + "\n";
        }
    } else {
        const bool with_bound = args.delta_given && args.epsilon_given;
        csv += "n,sup_error,shift_bound,monotonicity_gap";
        if (with_bound) csv += ",total_error_bound";
        csv += "\n";
        for (int n : ns) {
            auto op = build_operator(f, n, args.b);
            csv += std::to_string(n) + "," + fmt(sup_error(op, f, args.grid)) + "," +
                   fmt(shift_bound(n, args.b)) + "," +
                   fmt(monotonicity_gap(op, args.grid));
            if (with_bound) {
                ErrorBoundInputs in;
                in.delta = args.delta;
                in.eps_half = args.epsilon / 2.0;
                in.sup_f = f(args.b);
                in.n = n;
                csv += ",";
                try {
                    csv += fmt(total_error_bound(in, args.b));
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::BoundNotApplicable) throw;
                    csv += "n/a";
                }
            }
            csv += "\n";
        }
    }
    write_output(csv, args.out_path);
    return 0;
}

struct ClosureArgs {
    unsigned long long seed = 12345;
    int trials = 200;
    int dim = 3;
    int maxdeg = 4;
    std::string format;
    std::string out_path;
};

int run_closure(const ClosureArgs& args) {
    check_format(args.format, "text");
    auto result = run_closure_suite(args.seed, args.trials, args.dim, args.maxdeg);
    std::string report = "seed " + std::to_string(args.seed) + "  trials " +
                         std::to_string(args.trials) + "  dim <= " +
                         std::to_string(args.dim) + "  degree <= " +
                         std::to_string(args.maxdeg) + "\n";
    report += std::to_string(result.trials - result.failed_trials) + "/" +
              std::to_string(result.trials) + " closure checks passed\n";
    if (!result.ok()) {
        report += "first failure: " + result.first_failure + "\n";
    }
    write_output(report, args.out_path);
    if (!result.ok()) {
        // the suite checks our own algebra, so any failure is a defect here
        std::fputs("error: rational closure invariants violated\n", stderr);
        return 4;
    }
    return 0;
}

struct PhiArgs {
    std::string phi_name = "gamma";
    double a = 0.0;
    bool a_given = false;
    double b = 10.0;
    int grid = 1001;
    long long max_iter = 0;
    bool max_iter_given = false;
    std::string format;
    std::string out_path;
};

int run_phi(const PhiArgs& args) {
    check_format(args.format, "csv");
    auto phi = phi_from_flags(args.phi_name, args.a, args.a_given);
    const long long cap = resolve_max_iter(args.max_iter, args.max_iter_given);

    std::string csv = "x,phi,gap\n";
    for (int i = 0; i < args.grid; ++i) {
        const double x = i + 1 == args.grid
                             ? args.b
                             : args.b * static_cast<double>(i) /
                                   static_cast<double>(args.grid - 1);
        const double y = eval_phi(phi, x);
        csv += fmt(x) + "," + fmt(y) + "," + fmt(x - y) + "\n";
    }
    const auto probe = [&](double start, double fixed_point) {
        double x = start;
        long long n = 0;
        while (std::fabs(x - fixed_point) >= 1e-6 && n < cap) {
            x = eval_phi(phi, x);
            ++n;
        }
        std::string line = "# probe " + fmt(start) + " -> " + fmt(fixed_point) + ": ";
        if (std::fabs(x - fixed_point) < 1e-6) {
            line += "N = " + std::to_string(n);
        } else {
            line += "not reached within " + std::to_string(cap) + " iterations";
        }
        line += ", final = " + fmt(x) + "\n";
        return line;
    };
    csv += probe(0.9, 0.0);
    csv += probe(1.1, 1.0);
    write_output(csv, args.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monotone approximation toolkit"};
    app.require_subcommand(1);

    OrderArgs order_args;
    auto* order_cmd = app.add_subcommand(
        "order", "validate a preorder and summarize a generator family");
    order_cmd->add_option("--space", order_args.space_path, "space JSON file")
        ->required();
    order_cmd->add_option("--family", order_args.family_path, "family JSON file");
    order_cmd->add_option("--format", order_args.format, "output format (text)");
    order_cmd->add_option("--out", order_args.out_path, "output path (default stdout)");

    ApproximateArgs approx_args;
    auto* approx_cmd = app.add_subcommand(
        "approximate", "build an isotone approximant with a certified bound");
    approx_cmd->add_option("--space", approx_args.space_path, "space JSON file")
        ->required();
    approx_cmd->add_option("--family", approx_args.family_path, "family JSON file")
        ->required();
    approx_cmd->add_option("--target", approx_args.target_path, "target JSON file")
        ->required();
    approx_cmd->add_option("--n", approx_args.n, "accuracy parameter, bound is 3/n")
        ->required()
        ->check(CLI::Range(2, 1000000000));
    approx_cmd->add_option("--phi", approx_args.phi_name,
                           "squashing map: alpha, beta, gamma, chi or pwl:<pts>");
    auto* approx_a = approx_cmd->add_option("--a", approx_args.a, "alpha parameter");
    auto* approx_mi =
        approx_cmd->add_option("--max-iter", approx_args.max_iter, "iteration cap")
            ->check(CLI::PositiveNumber);
    approx_cmd->add_option("--format", approx_args.format, "output format (json)");
    approx_cmd->add_option("--out", approx_args.out_path, "output path (default stdout)");

    BernsteinArgs bern_args;
    auto* bern_cmd = app.add_subcommand(
        "bernstein", "convergence tables for the half-line approximation operator");
    bern_cmd->add_option("--fn", bern_args.fn_spec,
                          "target: identity, sqrt, step-smoothed, const:<v>, "
                          "pwl:<x,y;...> or a data file of x,f rows")
        ->required();
    bern_cmd->add_option("--n", bern_args.n_list,
                          "operator sizes; one value gives a per-x table, several "
                          "give a convergence table (default 25 50 100 200)")
        ->check(CLI::PositiveNumber);
    bern_cmd->add_option("--b", bern_args.b, "domain is [0, b]")
        ->check(CLI::PositiveNumber);
    bern_cmd->add_option("--grid", bern_args.grid, "evaluation grid size")
        ->check(CLI::Range(2, 100000000));
    auto* bern_delta =
        bern_cmd->add_option("--delta", bern_args.delta, "continuity scale delta")
            ->check(CLI::PositiveNumber);
    auto* bern_eps = bern_cmd->add_option(
        "--epsilon", bern_args.epsilon,
        "accuracy epsilon; with --delta adds the total_error_bound column");
    bern_cmd->add_option("--format", bern_args.format, "output format (csv)");
    bern_cmd->add_option("--out", bern_args.out_path, "output path (default stdout)");

    ClosureArgs closure_args;
    auto* closure_cmd = app.add_subcommand(
        "closure", "run the rational-algebra closure suite");
    closure_cmd->add_option("--seed", closure_args.seed, "random seed");
    closure_cmd->add_option("--trials", closure_args.trials, "number of trials")
        ->check(CLI::PositiveNumber);
    closure_cmd->add_option("--dim", closure_args.dim, "max variable count")
        ->check(CLI::PositiveNumber);
    closure_cmd->add_option("--maxdeg", closure_args.maxdeg, "max degree")
        ->check(CLI::PositiveNumber);
    closure_cmd->add_option("--format", closure_args.format, "output format (text)");
    closure_cmd->add_option("--out", closure_args.out_path,
                            "output path (default stdout)");

    PhiArgs phi_args;
    auto* phi_cmd = app.add_subcommand(
        "phi", "tabulate a squashing map and its convergence probes");
    phi_cmd->add_option("--phi", phi_args.phi_name,
                        "squashing map: alpha, beta, gamma, chi or pwl:<pts>");
    auto* phi_a = phi_cmd->add_option("--a", phi_args.a, "alpha parameter");
    phi_cmd->add_option("--b", phi_args.b, "tabulate on [0, b]")
        ->check(CLI::PositiveNumber);
    phi_cmd->add_option("--grid", phi_args.grid, "number of grid rows")
        ->check(CLI::Range(2, 100000000));
    auto* phi_mi = phi_cmd->add_option("--max-iter", phi_args.max_iter,
                                       "probe iteration cap")
        ->check(CLI::PositiveNumber);
    phi_cmd->add_option("--format", phi_args.format, "output format (csv)");
    phi_cmd->add_option("--out", phi_args.out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    approx_args.a_given = approx_a->count() > 0;
    approx_args.max_iter_given = approx_mi->count() > 0;
    bern_args.delta_given = bern_delta->count() > 0;
    bern_args.epsilon_given = bern_eps->count() > 0;
    phi_args.a_given = phi_a->count() > 0;
    phi_args.max_iter_given = phi_mi->count() > 0;

    try {
        if (order_cmd->parsed()) return run_order(order_args);
        if (approx_cmd->parsed()) return run_approximate(approx_args);
        if (bern_cmd->parsed()) return run_bernstein(bern_args);
        if (closure_cmd->parsed()) return run_closure(closure_args);
        if (phi_cmd->parsed()) return run_phi(phi_args);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_class();
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

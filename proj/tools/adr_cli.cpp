// Command-line front end: single runs, convergence sweeps, registry listing.
//
//   adr_cli list
//   adr_cli run --problem ex1 --method predictor_corrector --tau 0.001953125 --out u.csv
//   adr_cli convergence --problem ex1 --methods predictor_corrector,classical_strang
//           --k 4..10 --out ex1.csv

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adr/errors.hpp"
#include "adr/harness.hpp"
#include "adr/integrators.hpp"
#include "adr/problems.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

const char* kDefaultMethods =
    "corrected_first_order,predictor_corrector,classical_lie,classical_strang";

struct KRange {
    int first = 4;
    int last = 10;
};

KRange parse_k_range(const std::string& text) {
    KRange r;
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            r.first = r.last = std::stoi(text);
        } else {
            r.first = std::stoi(text.substr(0, dots));
            r.last = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("--k expects a..b, got '" + text + "'");
    }
    if (r.first < 0 || r.first > r.last) {
        throw std::invalid_argument("--k range must satisfy 0 <= a <= b, got '" + text + "'");
    }
    return r;
}

std::vector<adr::MethodId> parse_method_list(const std::string& text) {
    std::vector<adr::MethodId> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(adr::parse_method(item));
    }
    if (out.empty()) throw std::invalid_argument("--methods must name at least one method");
    return out;
}

CLI::Validator problem_id_validator() {
    return CLI::Validator(
        [](std::string& value) -> std::string {
            try {
                adr::make_example(value);
            } catch (const adr::UnknownId& e) {
                return e.what();
            }
            return {};
        },
        "PROBLEM");
}

CLI::Validator method_validator() {
    return CLI::Validator(
        [](std::string& value) -> std::string {
            try {
                adr::parse_method(value);
            } catch (const adr::UnknownId& e) {
                return e.what();
            }
            return {};
        },
        "METHOD");
}

CLI::Validator method_list_validator() {
    return CLI::Validator(
        [](std::string& value) -> std::string {
            try {
                parse_method_list(value);
            } catch (const std::exception& e) {
                return e.what();
            }
            return {};
        },
        "METHODS");
}

CLI::Validator k_range_validator() {
    return CLI::Validator(
        [](std::string& value) -> std::string {
            try {
                parse_k_range(value);
            } catch (const std::exception& e) {
                return e.what();
            }
            return {};
        },
        "a..b");
}

struct RunOptions {
    std::string problem;
    std::string method = "predictor_corrector";
    std::optional<double> tau;
    std::size_t grid_n = 500;
    std::optional<double> t_final;
    std::string out = "-";
};

struct ConvergenceOptions {
    std::string problem;
    std::string methods = kDefaultMethods;
    std::string k = "4..10";
    std::size_t grid_n = 500;
    std::optional<double> t_final;
    std::optional<std::size_t> reference_steps;
    unsigned threads = 0;
    std::string out;
    std::string format = "csv";
};

int cmd_list() {
    std::cout << "problems:\n";
    for (const auto& id : adr::example_ids()) {
        const auto p = adr::make_example(id);
        std::cout << "  " << id << "  " << p.description << " (t_final "
                  << adr::shortest_repr(p.t_final) << (p.compatible() ? "" : ", incompatible data")
                  << ")\n";
    }
    std::cout << "methods:\n";
    for (auto m : adr::kAllMethods) {
        std::cout << "  " << adr::method_name(m) << "  " << adr::method_description(m) << '\n';
    }
    return kExitOk;
}

int cmd_run(const RunOptions& opt) {
    adr::Problem prob = adr::make_example(opt.problem);
    if (opt.t_final) prob = prob.with_t_final(*opt.t_final);
    const auto method = adr::parse_method(opt.method);
    const adr::Grid g = adr::problem_grid(prob, opt.grid_n);
    const double tau = opt.tau ? *opt.tau : std::ldexp(prob.t_final, -8);

    const auto result = adr::integrate(g, prob, method, tau);

    std::ostringstream os;
    os << "# problem=" << prob.id << " method=" << adr::method_name(method)
       << " tau=" << adr::shortest_repr(tau) << " grid_n=" << opt.grid_n
       << " t_final=" << adr::shortest_repr(prob.t_final) << " steps=" << result.steps_taken
       << '\n';
    os << "x,u\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        os << adr::shortest_repr(g.x(i)) << ',' << adr::shortest_repr(result.final_state[i]) << '\n';
    }
    if (opt.out == "-") {
        std::cout << os.str();
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f || !(f << os.str())) throw adr::IoError("cannot write '" + opt.out + "'");
    }
    return kExitOk;
}

int cmd_convergence(const ConvergenceOptions& opt) {
    adr::SweepSpec spec;
    spec.problem_id = opt.problem;
    spec.methods = parse_method_list(opt.methods);
    spec.grid_n = opt.grid_n;
    spec.t_final = opt.t_final;
    spec.reference_steps = opt.reference_steps;
    spec.threads = opt.threads;
    const double t_final = opt.t_final ? *opt.t_final : adr::make_example(opt.problem).t_final;
    const auto k = parse_k_range(opt.k);
    spec.taus = adr::tau_ladder(t_final, k.first, k.last);

    const auto report = adr::run_sweep(spec);
    const auto format = opt.format == "dat" ? adr::ReportFormat::dat : adr::ReportFormat::csv;
    if (opt.out == "-") {
        std::cout << adr::format_report(report, format);
    } else {
        adr::write_report(report, opt.out, format);
    }

    for (const auto& s : report.series) {
        std::cerr << adr::method_name(s.method) << ": fitted slope "
                  << (s.fitted_slope ? adr::shortest_repr(*s.fitted_slope) : "undefined") << '\n';
    }
    if (!report.trusted) {
        std::cerr << "error: reference not trusted (certificate delta "
                  << adr::shortest_repr(report.certificate_delta) << " > "
                  << adr::shortest_repr(adr::kReferenceCertificateTol) << ")";
        if (!report.reference_failure.empty()) std::cerr << ": " << report.reference_failure;
        std::cerr << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary-corrected splitting and predictor-corrector schemes for 1D "
                 "advection-diffusion-reaction problems"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List registered problems and methods");

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Integrate one problem and write the final field as x,u csv");
    run->add_option("--problem", run_opt.problem, "Problem id")
        ->required()
        ->check(problem_id_validator());
    run->add_option("--method", run_opt.method, "Method id")
        ->check(method_validator())
        ->capture_default_str();
    run->add_option("--tau", run_opt.tau, "Step size (default t_final/256)");
    run->add_option("--n", run_opt.grid_n, "Grid points")->capture_default_str()->check(
        CLI::Range(std::size_t{3}, std::size_t{1} << 24));
    run->add_option("--t-final", run_opt.t_final, "Override the problem's final time")
        ->check(CLI::PositiveNumber);
    run->add_option("--out", run_opt.out, "Output path, '-' for stdout")->capture_default_str();

    ConvergenceOptions conv_opt;
    auto* conv = app.add_subcommand("convergence", "Run a step-size sweep against an RK4 reference");
    conv->add_option("--problem", conv_opt.problem, "Problem id")
        ->required()
        ->check(problem_id_validator());
    conv->add_option("--methods", conv_opt.methods, "Comma-separated method ids")
        ->check(method_list_validator())
        ->capture_default_str();
    conv->add_option("--k", conv_opt.k, "Exponent range a..b, tau = t_final/2^k")
        ->check(k_range_validator())
        ->capture_default_str();
    conv->add_option("--n", conv_opt.grid_n, "Grid points")->capture_default_str()->check(
        CLI::Range(std::size_t{3}, std::size_t{1} << 24));
    conv->add_option("--t-final", conv_opt.t_final, "Override the problem's final time")
        ->check(CLI::PositiveNumber);
    conv->add_option("--ref-steps", conv_opt.reference_steps,
                     "RK4 reference steps (default: smallest power of two with tau <= h^2/8)");
    conv->add_option("--threads", conv_opt.threads, "Worker threads, 0 = hardware")
        ->capture_default_str();
    conv->add_option("--out", conv_opt.out, "Report path, '-' for stdout")->required();
    conv->add_option("--format", conv_opt.format, "Report format")
        ->check(CLI::IsMember({"csv", "dat"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (list->parsed()) return cmd_list();
        if (run->parsed()) return cmd_run(run_opt);
        if (conv->parsed()) return cmd_convergence(conv_opt);
    } catch (const adr::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

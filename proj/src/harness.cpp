#include "adr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "adr/errors.hpp"
#include "adr/problems.hpp"

namespace adr {

double compute_error(const Grid& g, const Field& u_num, const Field& u_ref) {
    require_on_grid(g, u_num);
    require_on_grid(g, u_ref);
    return norm_h2(g, u_num - u_ref);
}

double fit_order(std::span<const std::pair<double, double>> pairs) {
    double sx = 0.0, sy = 0.0;
    std::size_t count = 0;
    for (const auto& [tau, err] : pairs) {
        if (tau > 0.0 && err > 0.0 && std::isfinite(err)) {
            sx += std::log(tau);
            sy += std::log(err);
            ++count;
        }
    }
    if (count < 2) throw UndefinedOrder("order fit needs at least two positive errors");
    const double mx = sx / static_cast<double>(count);
    const double my = sy / static_cast<double>(count);
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [tau, err] : pairs) {
        if (tau > 0.0 && err > 0.0 && std::isfinite(err)) {
            const double dx = std::log(tau) - mx;
            sxy += dx * (std::log(err) - my);
            sxx += dx * dx;
        }
    }
    if (!(sxx > 0.0)) throw UndefinedOrder("order fit needs at least two distinct step sizes");
    return sxy / sxx;
}

std::vector<double> tau_ladder(double t_final, int k_first, int k_last) {
    if (k_first > k_last) throw std::invalid_argument("k range must be ascending");
    std::vector<double> taus;
    for (int k = k_first; k <= k_last; ++k) taus.push_back(std::ldexp(t_final, -k));
    return taus;
}

std::size_t default_reference_steps(const Grid& g, double t_final) {
    const double limit = g.spacing() * g.spacing() / 8.0;
    std::size_t n = 1;
    while (t_final / static_cast<double>(n) > limit) n *= 2;
    return n;
}

void SweepSpec::validate() const {
    if (taus.empty()) throw std::invalid_argument("sweep needs at least one step size");
    if (grid_n < 3) throw std::invalid_argument("sweep grid needs at least 3 nodes");
    for (std::size_t i = 1; i < taus.size(); ++i) {
        if (!(taus[i] < taus[i - 1])) {
            throw std::invalid_argument("sweep step sizes must be strictly decreasing");
        }
    }
    if (reference_steps && *reference_steps == 0) {
        throw std::invalid_argument("reference needs at least one step");
    }
    if (methods.empty()) throw std::invalid_argument("sweep needs at least one method");
    const Problem prob = make_example(problem_id);
    const double t = t_final ? *t_final : prob.t_final;
    for (double tau : taus) tiling_steps(t, tau);
}

std::vector<std::pair<double, double>> MethodSeries::usable_pairs() const {
    std::vector<std::pair<double, double>> out;
    for (const auto& c : cells) {
        if (!c.failed && c.error_h2 > 0.0 && std::isfinite(c.error_h2)) {
            out.emplace_back(c.tau, c.error_h2);
        }
    }
    return out;
}

const MethodSeries* ConvergenceReport::find(MethodId m) const {
    for (const auto& s : series) {
        if (s.method == m) return &s;
    }
    return nullptr;
}

void finalize_series(MethodSeries& series) {
    const auto& cells = series.cells;
    series.observed_orders.assign(cells.size(), std::nullopt);
    for (std::size_t k = 1; k < cells.size(); ++k) {
        const auto& a = cells[k - 1];
        const auto& b = cells[k];
        if (a.failed || b.failed || !(a.error_h2 > 0.0) || !(b.error_h2 > 0.0)) continue;
        series.observed_orders[k] = std::log(a.error_h2 / b.error_h2) / std::log(a.tau / b.tau);
    }
    const auto pairs = series.usable_pairs();
    series.fitted_slope.reset();
    if (pairs.size() >= 2) series.fitted_slope = fit_order(pairs);
}

namespace {

// Runs independent jobs on up to `threads` workers. Each job writes only its
// own output slot, so the result is independent of scheduling.
void run_jobs(std::vector<std::function<void()>>& jobs, unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
    if (threads <= 1) {
        for (auto& job : jobs) job();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < jobs.size(); i = next++) jobs[i]();
        });
    }
}

struct ReferenceSlot {
    std::optional<Field> state;
    std::string failure;
};

void compute_reference(ReferenceSlot& slot, const Grid& g, const Problem& prob, std::size_t steps) {
    try {
        slot.state = rk4_reference_solve(g, prob, steps);
    } catch (const std::exception& e) {
        slot.failure = e.what();
    }
}

}  // namespace

ConvergenceReport run_sweep(const SweepSpec& spec) {
    spec.validate();
    Problem prob = make_example(spec.problem_id);
    if (spec.t_final) prob = prob.with_t_final(*spec.t_final);
    const Grid g = problem_grid(prob, spec.grid_n);

    ConvergenceReport report;
    report.problem_id = prob.id;
    report.grid_n = spec.grid_n;
    report.t_final = prob.t_final;
    report.reference_steps =
        spec.reference_steps ? *spec.reference_steps : default_reference_steps(g, prob.t_final);

    // Stage 1: the reference and its certificate.
    ReferenceSlot reference, refined;
    {
        std::vector<std::function<void()>> jobs = {
            [&] { compute_reference(reference, g, prob, report.reference_steps); },
            [&] { compute_reference(refined, g, prob, 2 * report.reference_steps); },
        };
        run_jobs(jobs, spec.threads);
    }
    if (reference.state && refined.state) {
        report.certificate_delta = compute_error(g, *reference.state, *refined.state);
    } else {
        report.certificate_delta = std::numeric_limits<double>::quiet_NaN();
        if (!reference.state) {
            report.reference_failure = "reference: " + reference.failure;
        } else {
            report.reference_failure = "certificate: " + refined.failure;
        }
    }
    report.trusted = std::isfinite(report.certificate_delta) &&
                     report.certificate_delta <= kReferenceCertificateTol;

    // Stage 2: every (method, tau) cell.
    for (MethodId m : spec.methods) {
        MethodSeries s;
        s.method = m;
        for (double tau : spec.taus) s.cells.push_back({tau, 0.0, false, {}});
        report.series.push_back(std::move(s));
    }
    std::vector<std::function<void()>> jobs;
    for (auto& s : report.series) {
        for (auto& cell : s.cells) {
            if (!reference.state) {
                cell.failed = true;
                cell.failure = "no reference";
                cell.error_h2 = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            jobs.emplace_back([&, method = s.method] {
                try {
                    const auto result = integrate(g, prob, method, cell.tau);
                    cell.error_h2 = compute_error(g, result.final_state, *reference.state);
                    if (!std::isfinite(cell.error_h2)) {
                        cell.failed = true;
                        cell.failure = "non-finite error";
                    }
                } catch (const NumericalFailure& e) {
                    cell.failed = true;
                    cell.failure = e.what();
                    cell.error_h2 = std::numeric_limits<double>::quiet_NaN();
                }
            });
        }
    }
    run_jobs(jobs, spec.threads);
    for (auto& s : report.series) finalize_series(s);
    return report;
}

std::string shortest_repr(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

void write_provenance(std::ostream& os, const ConvergenceReport& r) {
    os << "# problem=" << r.problem_id << " grid_n=" << r.grid_n
       << " t_final=" << shortest_repr(r.t_final) << '\n';
    os << "# reference=rk4_reference reference_steps=" << r.reference_steps
       << " certificate_delta=" << shortest_repr(r.certificate_delta)
       << " certificate_tol=" << shortest_repr(kReferenceCertificateTol)
       << " trusted=" << (r.trusted ? "true" : "false") << '\n';
    if (!r.reference_failure.empty()) os << "# reference_failure=" << r.reference_failure << '\n';
    os << "# error_norm=H2_h";
    if (!r.series.empty() && !r.series.front().cells.empty()) {
        os << " taus=";
        const auto& cells = r.series.front().cells;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << (i ? ";" : "") << shortest_repr(cells[i].tau);
        }
    }
    os << '\n';
    for (const auto& s : r.series) {
        os << "# fitted_slope " << method_name(s.method) << '='
           << (s.fitted_slope ? shortest_repr(*s.fitted_slope) : std::string("undefined")) << '\n';
    }
}

}  // namespace

std::string format_report(const ConvergenceReport& report, ReportFormat format) {
    std::ostringstream os;
    write_provenance(os, report);
    if (format == ReportFormat::csv) {
        os << "problem,method,tau,error_h2,observed_order\n";
        for (const auto& s : report.series) {
            for (std::size_t k = 0; k < s.cells.size(); ++k) {
                const auto& c = s.cells[k];
                os << report.problem_id << ',' << method_name(s.method) << ','
                   << shortest_repr(c.tau) << ',' << shortest_repr(c.error_h2) << ',';
                if (k < s.observed_orders.size() && s.observed_orders[k]) {
                    os << shortest_repr(*s.observed_orders[k]);
                }
                os << '\n';
            }
        }
    } else {
        bool first = true;
        for (const auto& s : report.series) {
            if (!first) os << '\n';
            first = false;
            os << "# method " << method_name(s.method) << '\n';
            for (const auto& c : s.cells) {
                if (c.failed) continue;
                os << shortest_repr(c.tau) << ' ' << shortest_repr(c.error_h2) << '\n';
            }
        }
    }
    return os.str();
}

void write_report(const ConvergenceReport& report, const std::string& path, ReportFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << format_report(report, format);
    out.close();
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace adr

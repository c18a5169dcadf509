#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adr/grid.hpp"
#include "adr/integrators.hpp"

namespace adr {

/// H2_h distance between a numerical and a reference field on the same grid.
double compute_error(const Grid& g, const Field& u_num, const Field& u_ref);

/// Least-squares slope of log(error) against log(tau). Pairs with error <= 0
/// (or non-finite) are dropped; throws UndefinedOrder if fewer than two remain.
double fit_order(std::span<const std::pair<double, double>> pairs);

/// t_final / 2^k for k = k_first..k_last (descending taus).
std::vector<double> tau_ladder(double t_final, int k_first, int k_last);

/// Smallest power of two N with t_final/N <= h^2/8.
std::size_t default_reference_steps(const Grid& g, double t_final);

/// Self-refinement delta at or below which a reference is trusted.
inline constexpr double kReferenceCertificateTol = 1e-8;

struct SweepSpec {
    std::string problem_id;
    std::vector<MethodId> methods;
    std::vector<double> taus;                    ///< strictly decreasing, each tiling [0, T]
    std::size_t grid_n = 500;
    std::optional<double> t_final;               ///< defaults to the problem's
    std::optional<std::size_t> reference_steps;  ///< defaults to default_reference_steps
    unsigned threads = 0;                        ///< 0: hardware concurrency

    /// Throws std::invalid_argument when the invariants above do not hold.
    void validate() const;
};

struct SweepCell {
    double tau = 0.0;
    double error_h2 = 0.0;
    bool failed = false;
    std::string failure;  ///< reason when failed
};

struct MethodSeries {
    MethodId method{};
    std::vector<SweepCell> cells;
    /// Entry k compares cells k-1 and k; entry 0 and entries touching a
    /// failed cell are empty.
    std::vector<std::optional<double>> observed_orders;
    std::optional<double> fitted_slope;  ///< empty if fewer than two usable cells

    std::vector<std::pair<double, double>> usable_pairs() const;
};

struct ConvergenceReport {
    std::string problem_id;
    std::size_t grid_n = 0;
    double t_final = 0.0;
    std::size_t reference_steps = 0;
    /// H2_h distance between references with reference_steps and twice as many.
    double certificate_delta = 0.0;
    bool trusted = false;
    std::string reference_failure;  ///< non-empty when no reference could be computed
    std::vector<MethodSeries> series;

    const MethodSeries* find(MethodId m) const;
};

/// Computes the reference (and its self-refinement certificate) once, then
/// integrates every (method, tau) cell against it. Non-finite cells are
/// recorded as failed. A reference that cannot be computed is recorded in
/// reference_failure, with every cell marked failed.
ConvergenceReport run_sweep(const SweepSpec& spec);

/// Pairwise orders and fitted slope for a series whose cells are filled in.
void finalize_series(MethodSeries& series);

enum class ReportFormat { csv, dat };

/// Both formats start with '#'-prefixed provenance lines. csv then has the
/// header problem,method,tau,error_h2,observed_order; dat has one blank-line
/// separated block of "tau error" rows per method. Throws IoError.
void write_report(const ConvergenceReport& report, const std::string& path, ReportFormat format);

/// The same content as write_report, as a string.
std::string format_report(const ConvergenceReport& report, ReportFormat format);

/// Shortest decimal that round-trips to the same double.
std::string shortest_repr(double value);

}  // namespace adr

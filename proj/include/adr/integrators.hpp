#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "adr/grid.hpp"
#include "adr/problems.hpp"

namespace adr {

enum class MethodId {
    corrected_first_order,
    predictor_corrector,
    classical_lie,
    classical_strang,
    rk4_reference,
};

inline constexpr std::array<MethodId, 5> kAllMethods = {
    MethodId::corrected_first_order, MethodId::predictor_corrector, MethodId::classical_lie,
    MethodId::classical_strang, MethodId::rk4_reference};

std::string_view method_name(MethodId m);
std::string_view method_description(MethodId m);
/// Throws UnknownId listing the valid names.
MethodId parse_method(std::string_view name);

// Single steps from (u_n, t_n) to t_n + tau. Each throws std::invalid_argument
// for tau <= 0 and DimensionMismatch when u_n is not on g.

/// Frozen source q = f(u_n, D_h u_n) moved into the diffusion subflow, which is
/// advanced by one implicit Euler step. The reaction subflow is stationary and
/// not solved.
Field step_corrected_first_order(const Grid& g, const Problem& prob, const Field& u_n, double t_n,
                                 double tau);

/// Crank-Nicolson predictor with frozen source q, then a forward Euler corrector
/// of width tau/2 on w' = f(w, D_h w) - q at the interior nodes. Boundary nodes
/// end at b(t_n + tau).
Field step_predictor_corrector(const Grid& g, const Problem& prob, const Field& u_n, double t_n,
                               double tau);

/// Implicit Euler heat step, then one forward Euler reaction step at all nodes.
Field step_classical_lie(const Grid& g, const Problem& prob, const Field& u_n, double t_n,
                         double tau);

/// CN half step, Heun reaction step of width tau at all nodes, CN half step.
Field step_classical_strang(const Grid& g, const Problem& prob, const Field& u_n, double t_n,
                            double tau);

/// Interior increment of the corrector: (tau/2)(f(v, D_h v) - q), zero at the
/// boundary nodes.
Field corrector_increment(const Grid& g, const Problem& prob, const Field& v, const Field& q,
                          double tau);

/// Largest explicit RK4 step accepted by the reference solver.
double rk4_stable_step(const Grid& g);

/// Classical RK4 on the method-of-lines system over [t_start, t_start + duration]
/// in n_steps steps, with boundary nodes pinned to b(t) at every stage time.
/// Throws StabilityViolation if duration/n_steps > h^2/4 and NonFiniteState
/// (with the step index in the message) if the state blows up.
Field rk4_integrate(const Grid& g, const Problem& prob, const Field& u_start, double t_start,
                    double duration, std::size_t n_steps);

/// rk4_integrate from the initial state over [0, t_final].
Field rk4_reference_solve(const Grid& g, const Problem& prob, std::size_t n_steps);

/// One step of any method. rk4_reference takes a single RK4 step.
Field step(MethodId method, const Grid& g, const Problem& prob, const Field& u_n, double t_n,
           double tau);

struct IntegrationResult {
    Field final_state;
    std::size_t steps_taken = 0;
    double t_final_reached = 0.0;
};

/// Steps from the initial state to prob.t_final with constant tau. Throws
/// std::invalid_argument unless t_final/tau is within 1e-8 of an integer.
IntegrationResult integrate(const Grid& g, const Problem& prob, MethodId method, double tau);

/// Number of steps of size tau that tile [0, t_final]; throws if they don't.
std::size_t tiling_steps(double t_final, double tau);

}  // namespace adr

#pragma once

#include <span>
#include <vector>

#include "adr/boundary.hpp"
#include "adr/grid.hpp"

namespace adr {

/// Tridiagonal matrix of order m: lower/upper have m-1 entries, diag has m.
/// Row i reads lower[i-1]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1].
class TridiagonalSystem {
public:
    /// Throws DimensionMismatch when the diagonal lengths are inconsistent.
    TridiagonalSystem(std::vector<double> lower, std::vector<double> diag,
                      std::vector<double> upper);

    std::size_t order() const noexcept { return diag_.size(); }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& diag() const noexcept { return diag_; }
    const std::vector<double>& upper() const noexcept { return upper_; }

    bool strictly_diagonally_dominant() const noexcept;

    /// y = A x
    std::vector<double> multiply(std::span<const double> x) const;

private:
    std::vector<double> lower_;
    std::vector<double> diag_;
    std::vector<double> upper_;
};

/// Thomas algorithm, no pivoting. Throws SingularSystem when a pivot falls
/// below 1e-14 times the largest diagonal magnitude.
std::vector<double> thomas_solve(const TridiagonalSystem& sys, std::span<const double> rhs);

/// I - theta*tau*L on the interior nodes of g, L the central second difference.
TridiagonalSystem diffusion_matrix(const Grid& g, double theta_tau);

/// One step of the diffusion subflow dv/dt = v_xx + q with v = b(t) on the boundary
/// and the source q frozen over the step.
struct DiffusionStepInput {
    const Grid& grid;
    const Field& state;   ///< full field at time t
    double t;
    double tau;
    const Field& source;  ///< q, full length; only interior values are used
    const BoundarySpec& bc;
};

/// (I - tau L) v = u + tau q + tau c(t + tau); boundary nodes set to b(t + tau).
Field implicit_euler_diffusion_step(const DiffusionStepInput& in);

/// (I - tau/2 L) v = (I + tau/2 L) u + tau q + tau/2 (c(t) + c(t + tau));
/// boundary nodes set to b(t + tau).
Field crank_nicolson_diffusion_step(const DiffusionStepInput& in);

}  // namespace adr

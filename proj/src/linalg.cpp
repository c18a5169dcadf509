#include "adr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "adr/errors.hpp"

namespace adr {

TridiagonalSystem::TridiagonalSystem(std::vector<double> lower, std::vector<double> diag,
                                     std::vector<double> upper)
    : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper)) {
    if (diag_.empty()) throw DimensionMismatch("tridiagonal system has no rows");
    if (lower_.size() + 1 != diag_.size() || upper_.size() + 1 != diag_.size()) {
        throw DimensionMismatch("tridiagonal diagonals have lengths " +
                                std::to_string(lower_.size()) + "/" + std::to_string(diag_.size()) +
                                "/" + std::to_string(upper_.size()));
    }
}

bool TridiagonalSystem::strictly_diagonally_dominant() const noexcept {
    const std::size_t m = diag_.size();
    for (std::size_t i = 0; i < m; ++i) {
        double off = 0.0;
        if (i > 0) off += std::abs(lower_[i - 1]);
        if (i + 1 < m) off += std::abs(upper_[i]);
        if (!(std::abs(diag_[i]) > off)) return false;
    }
    return true;
}

std::vector<double> TridiagonalSystem::multiply(std::span<const double> x) const {
    const std::size_t m = diag_.size();
    if (x.size() != m) throw DimensionMismatch("matrix-vector size mismatch");
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        double s = diag_[i] * x[i];
        if (i > 0) s += lower_[i - 1] * x[i - 1];
        if (i + 1 < m) s += upper_[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys, std::span<const double> rhs) {
    const std::size_t m = sys.order();
    if (rhs.size() != m) {
        throw DimensionMismatch("rhs has " + std::to_string(rhs.size()) + " entries, system order " +
                                std::to_string(m));
    }
    const auto& a = sys.lower();
    const auto& b = sys.diag();
    const auto& c = sys.upper();

    double max_diag = 0.0;
    for (double d : b) max_diag = std::max(max_diag, std::abs(d));
    const double pivot_floor = 1e-14 * max_diag;

    std::vector<double> c_star(m);
    std::vector<double> x(m);

    double pivot = b[0];
    if (!(std::abs(pivot) >= pivot_floor) || pivot == 0.0) {
        throw SingularSystem("near-zero pivot at row 0");
    }
    c_star[0] = m > 1 ? c[0] / pivot : 0.0;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < m; ++i) {
        pivot = b[i] - a[i - 1] * c_star[i - 1];
        if (!(std::abs(pivot) >= pivot_floor) || pivot == 0.0) {
            throw SingularSystem("near-zero pivot at row " + std::to_string(i));
        }
        c_star[i] = i + 1 < m ? c[i] / pivot : 0.0;
        x[i] = (rhs[i] - a[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = m - 1; i-- > 0;) {
        x[i] -= c_star[i] * x[i + 1];
    }
    return x;
}

TridiagonalSystem diffusion_matrix(const Grid& g, double theta_tau) {
    const std::size_t m = g.interior_size();
    const double r = theta_tau / (g.spacing() * g.spacing());
    return TridiagonalSystem(std::vector<double>(m - 1, -r), std::vector<double>(m, 1.0 + 2.0 * r),
                             std::vector<double>(m - 1, -r));
}

namespace {

void validate(const DiffusionStepInput& in) {
    require_on_grid(in.grid, in.state);
    require_on_grid(in.grid, in.source);
    if (!(in.tau > 0.0)) throw std::invalid_argument("diffusion step needs tau > 0");
}

// Both steppers are solved for the increment v - u:
//   (I - theta tau L)(v - u) = tau (L u + c_eff + q)
// where L u + c_eff is the full central stencil on the interior with the
// boundary neighbours replaced by left/right. A steady state then yields an
// exactly zero right-hand side and is reproduced bitwise.
Field increment_solve(const DiffusionStepInput& in, double theta, double left, double right) {
    const Grid& g = in.grid;
    const Field& u = in.state;
    const std::size_t n = g.size();
    const std::size_t m = g.interior_size();
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());

    std::vector<double> rhs(m);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double lo = i == 1 ? left : u[i - 1];
        const double hi = i + 2 == n ? right : u[i + 1];
        rhs[i - 1] = in.tau * ((lo - 2.0 * u[i] + hi) * inv_h2 + in.source[i]);
    }
    const auto delta = thomas_solve(diffusion_matrix(g, theta * in.tau), rhs);

    Field v(n);
    for (std::size_t i = 1; i + 1 < n; ++i) v[i] = u[i] + delta[i - 1];
    v[0] = in.bc.left(in.t + in.tau);
    v[n - 1] = in.bc.right(in.t + in.tau);
    return v;
}

}  // namespace

Field implicit_euler_diffusion_step(const DiffusionStepInput& in) {
    validate(in);
    const double t1 = in.t + in.tau;
    return increment_solve(in, 1.0, in.bc.left(t1), in.bc.right(t1));
}

Field crank_nicolson_diffusion_step(const DiffusionStepInput& in) {
    validate(in);
    const double t1 = in.t + in.tau;
    const double left = 0.5 * (in.bc.left(in.t) + in.bc.left(t1));
    const double right = 0.5 * (in.bc.right(in.t) + in.bc.right(t1));
    return increment_solve(in, 0.5, left, right);
}

}  // namespace adr

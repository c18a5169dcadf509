#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace adr {

/**
 * Uniform 1D mesh on [x0, x1] with n nodes, both endpoints included.
 *
 * Node i sits at x0 + i*h with h = (x1 - x0)/(n - 1). Nodes 0 and n-1 carry
 * Dirichlet data; nodes 1..n-2 are the evolved unknowns.
 */
class Grid {
public:
    /// Throws std::invalid_argument for n < 3 or x0 >= x1.
    Grid(std::size_t n, double x0, double x1);

    std::size_t size() const noexcept { return n_; }
    std::size_t interior_size() const noexcept { return n_ - 2; }
    double x0() const noexcept { return x0_; }
    double x1() const noexcept { return x1_; }
    double spacing() const noexcept { return h_; }

    /// Coordinate of node i. The last node returns x1 exactly.
    double x(std::size_t i) const noexcept {
        return i + 1 == n_ ? x1_ : x0_ + static_cast<double>(i) * h_;
    }

    bool operator==(const Grid&) const = default;

private:
    std::size_t n_;
    double x0_;
    double x1_;
    double h_;
};

Grid make_grid(std::size_t n, double x0, double x1);

/// Nodal values of a scalar function on a Grid, boundary nodes included.
class Field {
public:
    Field() = default;
    explicit Field(std::size_t n, double value = 0.0) : values_(n, value) {}
    explicit Field(std::vector<double> values) : values_(std::move(values)) {}

    template <class Fn>
    static Field sample(const Grid& g, Fn&& fn) {
        Field out(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) out[i] = fn(g.x(i));
        return out;
    }

    std::size_t size() const noexcept { return values_.size(); }
    double& operator[](std::size_t i) noexcept { return values_[i]; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    double* data() noexcept { return values_.data(); }
    const double* data() const noexcept { return values_.data(); }
    auto begin() noexcept { return values_.begin(); }
    auto end() noexcept { return values_.end(); }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    std::span<double> span() noexcept { return values_; }
    std::span<const double> span() const noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Nodes 1..n-2.
    std::span<double> interior() noexcept { return span().subspan(1, size() - 2); }
    std::span<const double> interior() const noexcept { return span().subspan(1, size() - 2); }

    bool all_finite() const noexcept;

    bool operator==(const Field&) const = default;

private:
    std::vector<double> values_;
};

Field operator-(const Field& a, const Field& b);
Field operator+(const Field& a, const Field& b);
Field operator*(double s, const Field& a);

/// Throws DimensionMismatch unless u.size() == g.size().
void require_on_grid(const Grid& g, const Field& u);

// Second-order finite differences. Interior nodes use central stencils,
// boundary nodes the one-sided second-order stencils.
Field apply_laplacian(const Grid& g, const Field& u);
Field apply_gradient(const Grid& g, const Field& u);

// Discrete Sobolev norms with trapezoidal weights, boundary nodes included.
//   |u|_{L2}^2 = sum_i w_i h u_i^2,  w = 1/2 at the ends, 1 elsewhere
//   |u|_{H1}^2 = |u|_{L2}^2 + |D_h u|_{L2}^2
//   |u|_{H2}^2 = |u|_{H1}^2 + |L_h u|_{L2}^2
double norm_l2(const Grid& g, const Field& u);
double norm_h1(const Grid& g, const Field& u);
double norm_h2(const Grid& g, const Field& u);

}  // namespace adr

#include "adr/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "adr/errors.hpp"

namespace adr {

Grid::Grid(std::size_t n, double x0, double x1) : n_(n), x0_(x0), x1_(x1), h_(0.0) {
    if (n < 3) {
        throw std::invalid_argument("grid needs at least 3 nodes, got " + std::to_string(n));
    }
    if (!(x0 < x1)) {
        throw std::invalid_argument("grid interval must satisfy x0 < x1");
    }
    h_ = (x1 - x0) / static_cast<double>(n - 1);
}

Grid make_grid(std::size_t n, double x0, double x1) { return Grid(n, x0, x1); }

bool Field::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

void require_same_size(const Field& a, const Field& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("field sizes differ: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
    }
}

}  // namespace

Field operator-(const Field& a, const Field& b) {
    require_same_size(a, b);
    Field out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Field operator+(const Field& a, const Field& b) {
    require_same_size(a, b);
    Field out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Field operator*(double s, const Field& a) {
    Field out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return out;
}

void require_on_grid(const Grid& g, const Field& u) {
    if (u.size() != g.size()) {
        throw DimensionMismatch("field has " + std::to_string(u.size()) + " values but grid has " +
                                std::to_string(g.size()) + " nodes");
    }
}

Field apply_laplacian(const Grid& g, const Field& u) {
    require_on_grid(g, u);
    const std::size_t n = g.size();
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    Field out(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_h2;
    }
    if (n >= 4) {
        // 2u0 - 5u1 + 4u2 - u3 written in differences so constants give exact zeros.
        out[0] = (2.0 * (u[0] - u[1]) - 3.0 * (u[1] - u[2]) + (u[2] - u[3])) * inv_h2;
        out[n - 1] =
            (2.0 * (u[n - 1] - u[n - 2]) - 3.0 * (u[n - 2] - u[n - 3]) + (u[n - 3] - u[n - 4])) *
            inv_h2;
    } else {
        // Three nodes: the only available second difference.
        out[0] = out[1];
        out[2] = out[1];
    }
    return out;
}

Field apply_gradient(const Grid& g, const Field& u) {
    require_on_grid(g, u);
    const std::size_t n = g.size();
    const double inv_2h = 0.5 / g.spacing();
    Field out(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = (u[i + 1] - u[i - 1]) * inv_2h;
    }
    out[0] = (3.0 * (u[1] - u[0]) - (u[2] - u[1])) * inv_2h;
    out[n - 1] = (3.0 * (u[n - 1] - u[n - 2]) - (u[n - 2] - u[n - 3])) * inv_2h;
    return out;
}

namespace {

double l2_squared(const Grid& g, const Field& u) {
    const std::size_t n = u.size();
    double sum = 0.5 * (u[0] * u[0] + u[n - 1] * u[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) sum += u[i] * u[i];
    return sum * g.spacing();
}

double h1_squared(const Grid& g, const Field& u) {
    return l2_squared(g, u) + l2_squared(g, apply_gradient(g, u));
}

}  // namespace

double norm_l2(const Grid& g, const Field& u) {
    require_on_grid(g, u);
    return std::sqrt(l2_squared(g, u));
}

double norm_h1(const Grid& g, const Field& u) {
    require_on_grid(g, u);
    return std::sqrt(h1_squared(g, u));
}

double norm_h2(const Grid& g, const Field& u) {
    require_on_grid(g, u);
    return std::sqrt(h1_squared(g, u) + l2_squared(g, apply_laplacian(g, u)));
}

}  // namespace adr

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "adr/errors.hpp"
#include "adr/grid.hpp"

using namespace adr;
using std::numbers::pi;

namespace {

double max_abs(const Field& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("make_grid spacing and validation") {
    CHECK(make_grid(500, 0.0, 1.0).spacing() == doctest::Approx(1.0 / 499.0).epsilon(1e-15));
    CHECK(make_grid(3, 0.0, 1.0).spacing() == 0.5);
    CHECK_THROWS_AS(make_grid(2, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(10, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(10, 1.0, 0.0), std::invalid_argument);

    const Grid g = make_grid(500, 0.0, 1.0);
    CHECK(g.x(0) == 0.0);
    CHECK(g.x(499) == 1.0);
    CHECK(g.x(250) == doctest::Approx(250.0 / 499.0));
    CHECK(g.interior_size() == 498);
}

TEST_CASE("laplacian on low-degree polynomials") {
    const Grid g = make_grid(11, 0.0, 1.0);
    const Field sq = Field::sample(g, [](double x) { return x * x; });
    const Field cube = Field::sample(g, [](double x) { return x * x * x; });
    const Field lap_sq = apply_laplacian(g, sq);
    const Field lap_cube = apply_laplacian(g, cube);
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        CHECK(lap_sq[i] == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(std::abs(lap_cube[i] - 6.0 * g.x(i)) <= 1e-10);
    }
    // The one-sided boundary stencils are also exact on cubics.
    CHECK(std::abs(lap_cube[0]) <= 1e-10);
    CHECK(lap_cube[10] == doctest::Approx(6.0).epsilon(1e-10));

    const Field lap_const = apply_laplacian(g, Field(11, 3.7));
    for (double v : lap_const) CHECK(v == 0.0);
}

TEST_CASE("gradient on linears and the refinement study on sin") {
    const Grid g = make_grid(17, 0.0, 1.0);
    const Field grad = apply_gradient(g, Field::sample(g, [](double x) { return 3.0 * x + 1.0; }));
    for (double v : grad) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
    for (double v : apply_gradient(g, Field(17, -2.0))) CHECK(v == 0.0);

    auto max_error = [](std::size_t n) {
        const Grid gg = make_grid(n, 0.0, 1.0);
        const Field d = apply_gradient(gg, Field::sample(gg, [](double x) { return std::sin(pi * x); }));
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(d[i] - pi * std::cos(pi * gg.x(i))));
        return e;
    };
    const double e100 = max_error(101);
    const double e200 = max_error(201);
    const double e400 = max_error(401);
    CHECK(e100 / e200 >= 3.5);
    CHECK(e100 / e200 <= 4.5);
    CHECK(e200 / e400 >= 3.5);
    CHECK(e200 / e400 <= 4.5);
    // C h^2 with a modest constant.
    CHECK(e100 <= 20.0 * 0.01 * 0.01);
}

TEST_CASE("discrete norms") {
    const Grid g = make_grid(500, 0.0, 1.0);
    const Field one(500, 1.0);
    CHECK(norm_l2(g, one) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm_h1(g, one) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm_h2(g, one) == doctest::Approx(1.0).epsilon(1e-14));

    const Field zero(500);
    CHECK(norm_l2(g, zero) == 0.0);
    CHECK(norm_h1(g, zero) == 0.0);
    CHECK(norm_h2(g, zero) == 0.0);

    // Continuous H2 norm of sin(pi x) on (0,1): sqrt((1 + pi^2 + pi^4)/2).
    const Field s = Field::sample(g, [](double x) { return std::sin(pi * x); });
    const double exact = std::sqrt((1.0 + pi * pi + pi * pi * pi * pi) / 2.0);
    CHECK(std::abs(norm_h2(g, s) - exact) / exact <= 1e-3);
}

TEST_CASE("dimension mismatch is reported") {
    const Grid g = make_grid(10, 0.0, 1.0);
    const Field u(9);
    CHECK_THROWS_AS(apply_laplacian(g, u), DimensionMismatch);
    CHECK_THROWS_AS(apply_gradient(g, u), DimensionMismatch);
    CHECK_THROWS_AS(norm_l2(g, u), DimensionMismatch);
    CHECK_THROWS_AS(norm_h2(g, u), DimensionMismatch);
    CHECK_THROWS_AS(Field(3) - Field(4), DimensionMismatch);
}

TEST_CASE("property: stencil exactness on random polynomials") {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_int_distribution<int> size(4, 80);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = static_cast<std::size_t>(size(rng));
        const double x0 = coef(rng);
        const Grid g = make_grid(n, x0, x0 + 0.5 + std::abs(coef(rng)));
        const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
        const Field cubic = Field::sample(g, [&](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); });
        const Field quad = Field::sample(g, [&](double x) { return c0 + x * (c1 + x * c2); });
        const double h = g.spacing();
        const double lap_tol = 1e-12 * (max_abs(cubic) + 1.0) / (h * h);
        const double grad_tol = 1e-12 * (max_abs(quad) + 1.0) / h;

        const Field lap = apply_laplacian(g, cubic);
        const Field grad = apply_gradient(g, quad);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = g.x(i);
            if (i > 0 && i + 1 < n) CHECK(std::abs(lap[i] - (2.0 * c2 + 6.0 * c3 * x)) <= lap_tol);
            CHECK(std::abs(grad[i] - (c1 + 2.0 * c2 * x)) <= grad_tol);
        }
    }
}

TEST_CASE("property: linearity and norm ordering") {
    std::mt19937 rng(7);
    std::normal_distribution<double> val(0.0, 1.0);
    const Grid g = make_grid(64, -1.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        Field u(64), v(64);
        for (std::size_t i = 0; i < 64; ++i) {
            u[i] = val(rng);
            v[i] = val(rng);
        }
        const double a = val(rng), b = val(rng);
        const Field combo = a * u + b * v;
        const Field lhs = apply_laplacian(g, combo);
        const Field rhs = a * apply_laplacian(g, u) + b * apply_laplacian(g, v);
        const double scale = max_abs(lhs) + 1.0;
        for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12 * scale);

        CHECK(norm_l2(g, u) <= norm_h1(g, u));
        CHECK(norm_h1(g, u) <= norm_h2(g, u));
        CHECK(norm_l2(g, u) >= 0.0);
    }
}

TEST_CASE("property: second-order refinement of the laplacian") {
    auto max_error = [](std::size_t n) {
        const Grid g = make_grid(n, 0.0, 1.0);
        const Field lap = apply_laplacian(g, Field::sample(g, [](double x) { return std::exp(x) * std::cos(2 * x); }));
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = g.x(i);
            const double exact = std::exp(x) * (-3.0 * std::cos(2 * x) - 4.0 * std::sin(2 * x));
            e = std::max(e, std::abs(lap[i] - exact));
        }
        return e;
    };
    const double r1 = max_error(51) / max_error(101);
    const double r2 = max_error(101) / max_error(201);
    CHECK(r1 >= 3.5);
    CHECK(r1 <= 4.5);
    CHECK(r2 >= 3.5);
    CHECK(r2 <= 4.5);
}

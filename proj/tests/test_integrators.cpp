#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "adr/errors.hpp"
#include "adr/integrators.hpp"
#include "adr/linalg.hpp"
#include "oracles.hpp"

using namespace adr;
using std::numbers::pi;

namespace {

Problem constant_with(Nonlinearity f) {
    Problem p = make_example("constant");
    p.nonlinearity = std::move(f);
    return p;
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Dense oracle for the diffusion subflow v' = v_xx + q on the interior, with
// boundary values held at b (time-independent on ex1).
oracle::DenseLinearOde subflow_ode(const Grid& g, const Field& q, double left, double right) {
    const std::size_t m = g.interior_size();
    const double ih2 = 1.0 / (g.spacing() * g.spacing());
    oracle::DenseLinearOde ode;
    ode.a.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        ode.a[i][i] = -2.0 * ih2;
        if (i > 0) ode.a[i][i - 1] = ih2;
        if (i + 1 < m) ode.a[i][i + 1] = ih2;
    }
    std::vector<double> f(m);
    for (std::size_t i = 0; i < m; ++i) f[i] = q[i + 1];
    f[0] += left * ih2;
    f[m - 1] += right * ih2;
    ode.forcing = [f](double) { return f; };
    return ode;
}

}  // namespace

TEST_CASE("method names round trip") {
    for (MethodId m : kAllMethods) CHECK(parse_method(method_name(m)) == m);
    CHECK_THROWS_AS(parse_method("euler"), UnknownId);
}

TEST_CASE("constant states are bitwise fixed points of every step") {
    const Problem p = make_example("constant");
    const Grid g = problem_grid(p, 64);
    const Field u = initial_state(g, p);
    for (MethodId m : kAllMethods) {
        INFO(method_name(m));
        const double tau = m == MethodId::rk4_reference ? rk4_stable_step(g) : 0.01;
        CHECK(step(m, g, p, u, 0.0, tau) == u);
    }
    CHECK(rk4_integrate(g, p, u, 0.0, 0.01, 200) == u);
}

TEST_CASE("corrected first order keeps the discrete steady state of a constant source") {
    const double kappa = 3.0;
    const Problem p = constant_with(Nonlinearity("kappa", [kappa](double, double) { return kappa; }));
    const Grid g = problem_grid(p, 41);
    // v_xx = -kappa with v = 2 at both ends is quadratic, so the central stencil is exact.
    const Field v = Field::sample(g, [&](double x) { return 2.0 + 0.5 * kappa * x * (1.0 - x); });
    for (double tau : {1e-3, 0.1, 10.0}) {
        CHECK(max_abs_diff(step_corrected_first_order(g, p, v, 0.0, tau), v) <= 1e-12);
    }
}

TEST_CASE("zero reaction reduces every scheme to its diffusion solver") {
    const Problem heat = make_example("heat");
    const Grid g = problem_grid(heat, 50);
    const Field u = initial_state(g, heat);
    const Field zero(g.size());
    const double tau = 0.01, t = 0.2;
    const DiffusionStepInput full{g, u, t, tau, zero, heat.bc};
    CHECK(step_predictor_corrector(g, heat, u, t, tau) == crank_nicolson_diffusion_step(full));
    CHECK(step_corrected_first_order(g, heat, u, t, tau) == implicit_euler_diffusion_step(full));
    CHECK(step_classical_lie(g, heat, u, t, tau) == implicit_euler_diffusion_step(full));

    const Field half = crank_nicolson_diffusion_step({g, u, t, tau / 2, zero, heat.bc});
    const Field twice = crank_nicolson_diffusion_step({g, half, t + tau / 2, tau / 2, zero, heat.bc});
    CHECK(step_classical_strang(g, heat, u, t, tau) == twice);
}

TEST_CASE("lie applies the reaction at every node after the heat step") {
    const Problem p = constant_with(Nonlinearity("u", [](double u, double) { return u; }));
    const Grid g = problem_grid(p, 20);
    const Field u = initial_state(g, p);
    const double tau = 0.05;
    const Field out = step_classical_lie(g, p, u, 0.0, tau);
    for (double v : out) CHECK(v == doctest::Approx(kConstantProblemValue * (1.0 + tau)).epsilon(1e-14));
}

TEST_CASE("the corrector vanishes at the frozen state") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> val(0.5, 1.5);
    for (const auto& id : {"ex1", "ex2", "ex3", "ex4"}) {
        const Problem p = make_example(id);
        const Grid g = problem_grid(p, 40);
        Field v(g.size());
        for (auto& x : v) x = val(rng);
        const Field q = evaluate_nonlinearity(g, p, v);
        for (double d : corrector_increment(g, p, v, q, 0.1)) CHECK(d == 0.0);
    }
}

TEST_CASE("boundary nodes equal the data after every step on ex3") {
    const Problem p = make_example("ex3");
    const Grid g = problem_grid(p, 500);
    const double tau = std::ldexp(1.0, -16);
    for (MethodId m : {MethodId::corrected_first_order, MethodId::predictor_corrector}) {
        Field u = initial_state(g, p);
        for (int n = 0; n < 64; ++n) {
            const double t = n * tau;
            u = step(m, g, p, u, t, tau);
            CHECK(u[0] == p.bc.left(t + tau));
            CHECK(u[499] == p.bc.right(t + tau));
        }
    }
}

TEST_CASE("corrected first order one step against a fine subflow solve") {
    const Problem ex1 = make_example("ex1");
    const Grid g = problem_grid(ex1, 41);
    const Field u0 = initial_state(g, ex1);
    const Field q = evaluate_nonlinearity(g, ex1, u0);
    const auto ode = subflow_ode(g, q, 1.0, 3.0);
    std::vector<double> y0(u0.begin() + 1, u0.end() - 1);

    // q(0) differs from the boundary compatibility value, so the subflow has a
    // boundary layer; the local error is second order once tau resolves it.
    const double h2 = g.spacing() * g.spacing();
    std::vector<double> taus, errs;
    for (double tau : {h2 / 16, h2 / 32, h2 / 64, h2 / 128}) {
        const Field v = step_corrected_first_order(g, ex1, u0, 0.0, tau);
        const std::size_t sub = static_cast<std::size_t>(std::ceil(1024 * tau / h2));
        const auto ref = oracle::rk4_dense(ode, y0, 0.0, tau, sub);
        double e = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i) e = std::max(e, std::abs(v[i + 1] - ref[i]));
        taus.push_back(tau);
        errs.push_back(e);
    }
    const double slope = oracle::loglog_slope(taus, errs);
    INFO("slope " << slope << " errs " << errs[0] << " " << errs[3]);
    CHECK(slope >= 1.6);
    CHECK(slope <= 2.4);
}

TEST_CASE("integrate tiles the interval") {
    const Problem p = make_example("ex2");
    const Grid g = problem_grid(p, 40);
    const auto one = integrate(g, p, MethodId::predictor_corrector, p.t_final);
    CHECK(one.steps_taken == 1);
    CHECK(one.t_final_reached == p.t_final);
    CHECK(one.final_state == step_predictor_corrector(g, p, initial_state(g, p), 0.0, p.t_final));

    const auto two = integrate(g, p, MethodId::corrected_first_order, p.t_final / 2);
    const Field a = step_corrected_first_order(g, p, initial_state(g, p), 0.0, 0.25);
    CHECK(two.final_state == step_corrected_first_order(g, p, a, 0.25, 0.25));

    CHECK_THROWS_AS(integrate(g, p, MethodId::classical_lie, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(integrate(g, p, MethodId::classical_lie, 0.0), std::invalid_argument);
    CHECK(tiling_steps(0.5, std::ldexp(0.5, -10)) == 1024);
}

TEST_CASE("integrate is deterministic") {
    const Problem p = make_example("ex4");
    const Grid g = problem_grid(p, 100);
    for (MethodId m : {MethodId::corrected_first_order, MethodId::classical_lie}) {
        CHECK(integrate(g, p, m, 0.5 / 64).final_state == integrate(g, p, m, 0.5 / 64).final_state);
    }
}

TEST_CASE("rk4 reference on the heat problem") {
    const Problem heat = make_example("heat");
    const Grid g = problem_grid(heat, 101);
    const double h = g.spacing();
    const std::size_t steps = tiling_steps(0.5, std::ldexp(0.5, -16));
    const Field u = rk4_reference_solve(g, heat, steps);
    const Field exact = Field::sample(g, [](double x) { return std::exp(-pi * pi * 0.5) * std::sin(pi * x); });
    CHECK(max_abs_diff(u, exact) <= h * h);
}

TEST_CASE("rk4 reference rejects unstable steps") {
    const Problem p = make_example("ex1");
    const Grid g = problem_grid(p, 500);
    CHECK_THROWS_AS(rk4_reference_solve(g, p, 1024), StabilityViolation);
    CHECK_THROWS_AS(step(MethodId::rk4_reference, g, p, initial_state(g, p), 0.0, 1e-5),
                    StabilityViolation);
}

TEST_CASE("non-finite states are reported") {
    const Problem p = constant_with(Nonlinearity("1/(u-2)", [](double u, double) { return 1.0 / (u - 2.0); }));
    const Grid g = problem_grid(p, 20);
    CHECK_THROWS_AS(integrate(g, p, MethodId::classical_lie, 0.1), NonFiniteState);
}

TEST_CASE("invalid step arguments") {
    const Problem p = make_example("ex1");
    const Grid g = problem_grid(p, 20);
    const Field u = initial_state(g, p);
    CHECK_THROWS_AS(step_predictor_corrector(g, p, u, 0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(step_classical_strang(g, p, Field(19), 0.0, 0.1), DimensionMismatch);
}

TEST_CASE("corrected first order on ex1 at 500 nodes against 1024 substeps of the same subflow") {
    const Problem ex1 = make_example("ex1");
    const Grid g = problem_grid(ex1, 500);
    const Field u0 = initial_state(g, ex1);
    const Field q = evaluate_nonlinearity(g, ex1, u0);
    const double tau = 1.0 / 320.0;
    const Field one = step_corrected_first_order(g, ex1, u0, 0.0, tau);
    Field fine = u0;
    const double dt = tau / 1024;
    for (int s = 0; s < 1024; ++s) fine = implicit_euler_diffusion_step({g, fine, s * dt, dt, q, ex1.bc});
    const double d = norm_h2(g, one - fine);
    // Regression value from the first verified run. The distance is far above
    // tau^2 in H2 because q(0) clashes with the fixed boundary data and the
    // single step does not resolve the resulting layer (see the small-grid probe above).
    CHECK(d == doctest::Approx(0.34031052440409953).epsilon(1e-9));
}

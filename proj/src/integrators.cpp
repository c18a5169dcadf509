#include "adr/integrators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "adr/errors.hpp"
#include "adr/linalg.hpp"

namespace adr {

namespace {

struct MethodInfo {
    MethodId id;
    std::string_view name;
    std::string_view description;
};

constexpr std::array<MethodInfo, 5> kMethodInfo = {{
    {MethodId::corrected_first_order, "corrected_first_order",
     "frozen-source diffusion solve (implicit Euler), reaction subflow skipped; order 1"},
    {MethodId::predictor_corrector, "predictor_corrector",
     "Crank-Nicolson predictor with frozen source + half-step forward Euler corrector; order 2"},
    {MethodId::classical_lie, "classical_lie",
     "implicit Euler diffusion then forward Euler reaction at all nodes"},
    {MethodId::classical_strang, "classical_strang",
     "CN half step / Heun reaction / CN half step, reaction at all nodes"},
    {MethodId::rk4_reference, "rk4_reference",
     "explicit RK4 on the method-of-lines system (requires tau <= h^2/4)"},
}};

void check_step_args(const Grid& g, const Field& u, double tau) {
    require_on_grid(g, u);
    if (!(tau > 0.0)) throw std::invalid_argument("step size must be positive");
}

void require_finite(const Field& u, std::string_view what) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!std::isfinite(u[i])) {
            std::ostringstream msg;
            msg << what << " produced a non-finite value at node " << i;
            throw NonFiniteState(msg.str(), i);
        }
    }
}

// One forward Euler step of w' = f(w, D_h w) at every node, boundaries included.
Field reaction_euler_all_nodes(const Grid& g, const Problem& prob, const Field& w, double tau) {
    const Field k = evaluate_nonlinearity(g, prob, w);
    Field out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] + tau * k[i];
    return out;
}

// Heun's method for the same subflow.
Field reaction_heun_all_nodes(const Grid& g, const Problem& prob, const Field& w, double tau) {
    const Field k1 = evaluate_nonlinearity(g, prob, w);
    Field stage(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) stage[i] = w[i] + tau * k1[i];
    const Field k2 = evaluate_nonlinearity(g, prob, stage);
    Field out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] + 0.5 * tau * (k1[i] + k2[i]);
    return out;
}

const Field& zero_source(const Grid& g) {
    thread_local Field zero;
    if (zero.size() != g.size()) zero = Field(g.size());
    return zero;
}

}  // namespace

std::string_view method_name(MethodId m) {
    for (const auto& info : kMethodInfo) {
        if (info.id == m) return info.name;
    }
    return "unknown";
}

std::string_view method_description(MethodId m) {
    for (const auto& info : kMethodInfo) {
        if (info.id == m) return info.description;
    }
    return "";
}

MethodId parse_method(std::string_view name) {
    for (const auto& info : kMethodInfo) {
        if (info.name == name) return info.id;
    }
    std::string valid;
    for (const auto& info : kMethodInfo) {
        valid += (valid.empty() ? "" : ", ") + std::string(info.name);
    }
    throw UnknownId("unknown method '" + std::string(name) + "' (valid: " + valid + ")");
}

Field step_corrected_first_order(const Grid& g, const Problem& prob, const Field& u_n, double t_n,
                                 double tau) {
    check_step_args(g, u_n, tau);
    const Field q = evaluate_nonlinearity(g, prob, u_n);
    return implicit_euler_diffusion_step({g, u_n, t_n, tau, q, prob.bc});
}

Field corrector_increment(const Grid& g, const Problem& prob, const Field& v, const Field& q,
                          double tau) {
    require_on_grid(g, q);
    const Field fv = evaluate_nonlinearity(g, prob, v);
    Field inc(v.size());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) inc[i] = 0.5 * tau * (fv[i] - q[i]);
    return inc;
}

Field step_predictor_corrector(const Grid& g, const Problem& prob, const Field& u_n, double t_n,
                               double tau) {
    check_step_args(g, u_n, tau);
    const Field q = evaluate_nonlinearity(g, prob, u_n);
    Field v = crank_nicolson_diffusion_step({g, u_n, t_n, tau, q, prob.bc});
    const Field inc = corrector_increment(g, prob, v, q, tau);
    // Boundary nodes of v already hold b(t_n + tau) and the increment is zero there.
    for (std::size_t i = 1; i + 1 < v.size(); ++i) v[i] += inc[i];
    require_finite(v, "predictor-corrector step");
    return v;
}

Field step_classical_lie(const Grid& g, const Problem& prob, const Field& u_n, double t_n,
                         double tau) {
    check_step_args(g, u_n, tau);
    const Field v = implicit_euler_diffusion_step({g, u_n, t_n, tau, zero_source(g), prob.bc});
    Field w = reaction_euler_all_nodes(g, prob, v, tau);
    require_finite(w, "Lie splitting step");
    return w;
}

Field step_classical_strang(const Grid& g, const Problem& prob, const Field& u_n, double t_n,
                            double tau) {
    check_step_args(g, u_n, tau);
    const double half = 0.5 * tau;
    const Field& zero = zero_source(g);
    const Field v = crank_nicolson_diffusion_step({g, u_n, t_n, half, zero, prob.bc});
    const Field w = reaction_heun_all_nodes(g, prob, v, tau);
    Field out = crank_nicolson_diffusion_step({g, w, t_n + half, half, zero, prob.bc});
    require_finite(out, "Strang splitting step");
    return out;
}

double rk4_stable_step(const Grid& g) { return 0.25 * g.spacing() * g.spacing(); }

namespace {

// Method-of-lines right-hand side on the interior: k = L_h u + f(u, D_h u).
// u's boundary nodes must already hold b(t) for the stage time.
class MolRhs {
public:
    MolRhs(const Grid& g, const Problem& prob)
        : prob_(prob),
          n_(g.size()),
          inv_h2_(1.0 / (g.spacing() * g.spacing())),
          inv_2h_(0.5 / g.spacing()),
          grad_(n_ - 2) {}

    void operator()(const std::vector<double>& u, std::vector<double>& k) {
        const std::size_t m = n_ - 2;
        for (std::size_t i = 1; i + 1 < n_; ++i) grad_[i - 1] = (u[i + 1] - u[i - 1]) * inv_2h_;
        std::span<double> k_int(k.data() + 1, m);
        prob_.nonlinearity.apply(std::span<const double>(u.data() + 1, m), grad_, k_int);
        for (std::size_t i = 1; i + 1 < n_; ++i) {
            k[i] += (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_h2_;
        }
    }

private:
    const Problem& prob_;
    std::size_t n_;
    double inv_h2_;
    double inv_2h_;
    std::vector<double> grad_;
};

}  // namespace

Field rk4_integrate(const Grid& g, const Problem& prob, const Field& u_start, double t_start,
                    double duration, std::size_t n_steps) {
    require_on_grid(g, u_start);
    if (n_steps == 0 || !(duration > 0.0)) {
        throw std::invalid_argument("RK4 needs a positive duration and at least one step");
    }
    const double dt = duration / static_cast<double>(n_steps);
    if (dt > rk4_stable_step(g)) {
        std::ostringstream msg;
        msg << "RK4 step " << dt << " exceeds the explicit stability bound h^2/4 = "
            << rk4_stable_step(g);
        throw StabilityViolation(msg.str());
    }

    const std::size_t n = g.size();
    const std::size_t last = n - 1;
    MolRhs rhs(g, prob);
    std::vector<double> u(u_start.begin(), u_start.end());
    std::vector<double> stage(n), k1(n), k2(n), k3(n), k4(n);
    u[0] = prob.bc.left(t_start);
    u[last] = prob.bc.right(t_start);

    constexpr std::size_t kFiniteCheckInterval = 256;
    for (std::size_t s = 0; s < n_steps; ++s) {
        const double t = t_start + static_cast<double>(s) * dt;
        const double t_mid = t + 0.5 * dt;
        const double t_end = t_start + static_cast<double>(s + 1) * dt;
        const double bl_mid = prob.bc.left(t_mid);
        const double br_mid = prob.bc.right(t_mid);

        rhs(u, k1);

        stage[0] = bl_mid;
        stage[last] = br_mid;
        for (std::size_t i = 1; i < last; ++i) stage[i] = u[i] + 0.5 * dt * k1[i];
        rhs(stage, k2);

        for (std::size_t i = 1; i < last; ++i) stage[i] = u[i] + 0.5 * dt * k2[i];
        rhs(stage, k3);

        stage[0] = prob.bc.left(t_end);
        stage[last] = prob.bc.right(t_end);
        for (std::size_t i = 1; i < last; ++i) stage[i] = u[i] + dt * k3[i];
        rhs(stage, k4);

        for (std::size_t i = 1; i < last; ++i) {
            u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        u[0] = stage[0];
        u[last] = stage[last];

        if ((s + 1) % kFiniteCheckInterval == 0 || s + 1 == n_steps) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!std::isfinite(u[i])) {
                    std::ostringstream msg;
                    msg << "RK4 state became non-finite at node " << i << " by step " << s + 1;
                    throw NonFiniteState(msg.str(), i);
                }
            }
        }
    }
    return Field(std::move(u));
}

Field rk4_reference_solve(const Grid& g, const Problem& prob, std::size_t n_steps) {
    return rk4_integrate(g, prob, initial_state(g, prob), 0.0, prob.t_final, n_steps);
}

Field step(MethodId method, const Grid& g, const Problem& prob, const Field& u_n, double t_n,
           double tau) {
    switch (method) {
        case MethodId::corrected_first_order:
            return step_corrected_first_order(g, prob, u_n, t_n, tau);
        case MethodId::predictor_corrector:
            return step_predictor_corrector(g, prob, u_n, t_n, tau);
        case MethodId::classical_lie:
            return step_classical_lie(g, prob, u_n, t_n, tau);
        case MethodId::classical_strang:
            return step_classical_strang(g, prob, u_n, t_n, tau);
        case MethodId::rk4_reference:
            return rk4_integrate(g, prob, u_n, t_n, tau, 1);
    }
    throw std::invalid_argument("unhandled method id");
}

std::size_t tiling_steps(double t_final, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("step size must be positive");
    const double ratio = t_final / tau;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-8) {
        std::ostringstream msg;
        msg << "tau = " << tau << " does not tile [0, " << t_final << "]";
        throw std::invalid_argument(msg.str());
    }
    return static_cast<std::size_t>(rounded);
}

IntegrationResult integrate(const Grid& g, const Problem& prob, MethodId method, double tau) {
    const std::size_t n_steps = tiling_steps(prob.t_final, tau);
    if (method == MethodId::rk4_reference) {
        return {rk4_reference_solve(g, prob, n_steps), n_steps,
                static_cast<double>(n_steps) * tau};
    }
    Field u = initial_state(g, prob);
    for (std::size_t s = 0; s < n_steps; ++s) {
        u = step(method, g, prob, u, static_cast<double>(s) * tau, tau);
    }
    return {std::move(u), n_steps, static_cast<double>(n_steps) * tau};
}

}  // namespace adr

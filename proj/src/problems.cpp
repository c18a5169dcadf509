#include "adr/problems.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "adr/errors.hpp"

namespace adr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCompatibilityTol = 1e-12;

Problem ex1() {
    return {"ex1",
            "f = u p^2, b1 = 1, b2 = 3, u0 = 1 + 2 sin(pi x/2)",
            Nonlinearity("u*p^2", [](double u, double p) { return u * p * p; }),
            BoundarySpec::constant(1.0, 3.0),
            [](double x) { return 1.0 + 2.0 * std::sin(0.5 * kPi * x); }};
}

Problem ex2() {
    return {"ex2",
            "f = u^2 p^2, b1 = b2 = 1, u0 = sin(pi x) + 1",
            Nonlinearity("u^2*p^2", [](double u, double p) { return u * u * p * p; }),
            BoundarySpec::constant(1.0, 1.0),
            [](double x) { return std::sin(kPi * x) + 1.0; }};
}

Problem ex3() {
    return {"ex3",
            "f = 3 u p^2, b1 = 2, b2 = 1 + cos(3 pi t), u0 = 2 + sin(2 pi x)",
            Nonlinearity("3*u*p^2", [](double u, double p) { return 3.0 * u * p * p; }),
            BoundarySpec{[](double) { return 2.0; },
                         [](double t) { return 1.0 + std::cos(3.0 * kPi * t); }},
            [](double x) { return 2.0 + std::sin(2.0 * kPi * x); }};
}

Nonlinearity logistic_plus_gradient() {
    return Nonlinearity("u*(1-u)+p^2", [](double u, double p) { return u * (1.0 - u) + p * p; });
}

// Initial data as printed: u0(1) = 3 while b2(0) = 2.
Problem ex4() {
    return {"ex4",
            "f = u(1-u) + p^2, b1 = 1 + cos(2 pi t), b2 = 2 + sin(pi t/2), u0 = 1 + x + cos(2 pi x)",
            logistic_plus_gradient(),
            BoundarySpec{[](double t) { return 1.0 + std::cos(2.0 * kPi * t); },
                         [](double t) { return 2.0 + std::sin(0.5 * kPi * t); }},
            [](double x) { return 1.0 + x + std::cos(2.0 * kPi * x); }};
}

// ex4 with the right boundary shifted so that u0 matches b(0) at both ends.
Problem ex4c() {
    auto p = ex4();
    p.id = "ex4c";
    p.description =
        "ex4 with compatible right boundary b2 = 3 + sin(pi t/2)";
    p.bc.right = [](double t) { return 3.0 + std::sin(0.5 * kPi * t); };
    return p;
}

Problem heat() {
    return {"heat", "f = 0, b = 0, u0 = sin(pi x)", Nonlinearity(), BoundarySpec::constant(0.0, 0.0),
            [](double x) { return std::sin(kPi * x); }};
}

Problem constant() {
    constexpr double c = kConstantProblemValue;
    return {"constant", "f = 0, b1 = b2 = u0 = 2", Nonlinearity(), BoundarySpec::constant(c, c),
            [](double) { return c; }};
}

}  // namespace

bool Problem::compatible_left() const {
    return std::abs(initial(x0) - bc.left(0.0)) <= kCompatibilityTol;
}

bool Problem::compatible_right() const {
    return std::abs(initial(x1) - bc.right(0.0)) <= kCompatibilityTol;
}

Problem Problem::with_t_final(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("final time must be positive");
    Problem p = *this;
    p.t_final = t;
    return p;
}

std::vector<std::string> example_ids() {
    return {"ex1", "ex2", "ex3", "ex4", "ex4c", "heat", "constant"};
}

Problem make_example(std::string_view id) {
    if (id == "ex1") return ex1();
    if (id == "ex2") return ex2();
    if (id == "ex3") return ex3();
    if (id == "ex4") return ex4();
    if (id == "ex4c") return ex4c();
    if (id == "heat") return heat();
    if (id == "constant") return constant();
    std::string valid;
    for (const auto& known : example_ids()) valid += (valid.empty() ? "" : ", ") + known;
    throw UnknownId("unknown problem '" + std::string(id) + "' (valid: " + valid + ")");
}

Field evaluate_nonlinearity(const Grid& g, const Problem& prob, const Field& u) {
    const Field p = apply_gradient(g, u);
    Field out(u.size());
    prob.nonlinearity.apply(u.span(), p.span(), out.span());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!std::isfinite(out[i])) {
            std::ostringstream msg;
            msg << "nonlinearity " << prob.nonlinearity.label() << " is non-finite at node " << i
                << " (u = " << u[i] << ", p = " << p[i] << ")";
            throw NonFiniteState(msg.str(), i);
        }
    }
    return out;
}

Field initial_state(const Grid& g, const Problem& prob) {
    Field u = Field::sample(g, prob.initial);
    u[0] = prob.bc.left(0.0);
    u[g.size() - 1] = prob.bc.right(0.0);
    return u;
}

Grid problem_grid(const Problem& prob, std::size_t n) { return Grid(n, prob.x0, prob.x1); }

}  // namespace adr

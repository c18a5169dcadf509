#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adr/boundary.hpp"
#include "adr/grid.hpp"

namespace adr {

/// Pointwise nonlinearity f(u, p) with p standing for du/dx.
///
/// Holds the scalar map plus a batched form built from the same callable, so
/// hot loops avoid one type-erased call per node.
class Nonlinearity {
public:
    using Scalar = std::function<double(double, double)>;
    using Batch = std::function<void(std::span<const double> u, std::span<const double> p,
                                     std::span<double> out)>;

    Nonlinearity() : Nonlinearity("zero", [](double, double) { return 0.0; }) {}

    template <class Fn>
    Nonlinearity(std::string label, Fn fn)
        : label_(std::move(label)),
          scalar_(fn),
          batch_([fn](std::span<const double> u, std::span<const double> p, std::span<double> out) {
              for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(u[i], p[i]);
          }) {}

    double operator()(double u, double p) const { return scalar_(u, p); }
    void apply(std::span<const double> u, std::span<const double> p, std::span<double> out) const {
        batch_(u, p, out);
    }
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
    Scalar scalar_;
    Batch batch_;
};

struct Problem {
    std::string id;
    std::string description;
    Nonlinearity nonlinearity;
    BoundarySpec bc;
    std::function<double(double)> initial;
    double t_final = 0.5;
    double x0 = 0.0;
    double x1 = 1.0;

    /// u0(x0) == b1(0) to 1e-12. Informational only.
    bool compatible_left() const;
    /// u0(x1) == b2(0) to 1e-12.
    bool compatible_right() const;
    bool compatible() const { return compatible_left() && compatible_right(); }

    /// Same problem with a different final time (must be > 0).
    Problem with_t_final(double t_final) const;
};

/// Value used by the "constant" problem for both the state and the boundary data.
inline constexpr double kConstantProblemValue = 2.0;

/// Registered ids: ex1, ex2, ex3, ex4, ex4c, heat, constant. Throws UnknownId.
Problem make_example(std::string_view id);

std::vector<std::string> example_ids();

/// f(u_i, (D_h u)_i) at every node, boundaries included. Throws NonFiniteState
/// naming the first offending node.
Field evaluate_nonlinearity(const Grid& g, const Problem& prob, const Field& u);

/// u0 sampled on g, then boundary nodes overwritten with b(0).
Field initial_state(const Grid& g, const Problem& prob);

Grid problem_grid(const Problem& prob, std::size_t n);

}  // namespace adr

#pragma once

#include <functional>

namespace adr {

/// Time-dependent Dirichlet data: u(x0, t) = left(t), u(x1, t) = right(t).
struct BoundarySpec {
    std::function<double(double)> left;
    std::function<double(double)> right;

    static BoundarySpec constant(double left_value, double right_value) {
        return {[left_value](double) { return left_value; },
                [right_value](double) { return right_value; }};
    }
};

}  // namespace adr

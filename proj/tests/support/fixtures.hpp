#pragma once

#include "ddc/lti.hpp"

namespace ddc::test {

// y = u with u = c, y = w: the plant w = c. Variables (c, w).
inline StateSpaceModel static_plant() {
    return StateSpaceModel(Matrix(0, 0), Matrix(0, 1), Matrix(1, 0), Matrix::Constant(1, 1, 1.0),
                           Partition(2, {2}, {1}));
}

// x(t+1) = x(t) + c(t), w = x: the plant sigma w = w + c. Variables (c, w).
inline StateSpaceModel integrator_plant() {
    return StateSpaceModel(Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 1.0),
                           Matrix::Zero(1, 1), Partition(2, {2}, {1}));
}

// Autonomous sigma r = a r.
inline StateSpaceModel decaying_reference(double a = 0.5) {
    return StateSpaceModel(Matrix::Constant(1, 1, a), Matrix(1, 0), Matrix::Constant(1, 1, 1.0), Matrix(1, 0));
}

} // namespace ddc::test

#pragma once

#include <stdexcept>
#include <string>

namespace ddc {

// Index or horizon outside the valid range of a trajectory.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Inconsistent matrix/trajectory/channel dimensions.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PartitionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Requested rank exceeds what the matrix shape allows.
class InfeasibleRankError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MinimalityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computed projector failed its symmetry/idempotence checks.
class NumericalDegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Horizon L does not exceed the lag bound.
class HorizonError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EmptySubspaceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed CSV or JSON input.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ddc

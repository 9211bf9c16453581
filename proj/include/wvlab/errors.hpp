#pragma once

#include <stdexcept>
#include <string>

namespace wvlab {

// Precondition breach: dimension mismatch, missing Hermiticity/unitarity,
// malformed projector sets, zero coupling where nonzero is required.
struct contract_violation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Bad grid or scenario parameters detected before any computation runs.
struct configuration_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested joint dimension exceeds the configured cap.
struct capacity_error : std::length_error {
    using std::length_error::length_error;
};

// An iterative method failed to converge within its iteration cap.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument rejected by a range guard (wraparound, momentum-weight overflow).
struct range_guard_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Post-selection overlap below the meaningfulness threshold.
struct post_selection_impossible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Conditional probability with vanishing denominator.
struct undefined_conditional : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation on a (near) zero-norm state.
struct degenerate_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Monte Carlo filter never accepted a sample.
struct empty_filter_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Amplitude ratio evaluated at a node of the wavefunction.
struct undefined_ratio_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wvlab

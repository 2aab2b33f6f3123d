// cdg/ham_action.hpp — shared callable type for time-dependent Hamiltonian
// actions. An action computes out = H(t)·in where `in` holds one state per
// column. Instances may own scratch storage and are not thread-safe: create
// one action per concurrent propagation.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "cdg/units.hpp"

namespace cdg {

using HamAction = std::function<void(double, const Eigen::MatrixXcd&, Eigen::MatrixXcd&)>;

// Raised when a propagation leaves the trustworthy regime (norm drift beyond
// tolerance or non-finite amplitudes). Callers that scan parameter space
// must catch this and treat the point as failed — it must never be mapped to
// a fabricated objective value.
struct PropagationError : std::runtime_error {
  explicit PropagationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cdg

#pragma once

#include <stdexcept>
#include <string>

namespace sigtamp {

// Malformed network, scenario or frontier input. The CLI maps this to exit 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A structural guarantee of the model was violated (infeasible super-graph,
// gadget over capacity, objective mismatch). The CLI maps this to exit 3.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sigtamp

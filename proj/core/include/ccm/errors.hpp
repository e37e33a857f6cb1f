#pragma once

#include <stdexcept>
#include <string>

namespace ccm {

/// A computation was refused because its size exceeds a feasibility guard.
/// Setting CCM_GUARD_OVERRIDE=1 in the environment lifts the guards.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hypothesis of a construction theorem does not hold for the inputs.
class ConditionViolated : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool guard_override_enabled();

}  // namespace ccm

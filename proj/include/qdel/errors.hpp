// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qdel {

/// A parameter regime the closed forms deliberately do not cover
/// (e.g. asking for a Kraus decomposition of the squeezed channel).
class unsupported_regime : public std::domain_error {
public:
    explicit unsupported_regime(const std::string& what) : std::domain_error(what) {}
};

/// Non-finite values produced where the stable evaluation should make
/// them impossible. Carries the integration step index when known.
class numerical_failure : public std::runtime_error {
public:
    explicit numerical_failure(const std::string& what, long step = -1)
        : std::runtime_error(step >= 0 ? what + " (step " + std::to_string(step) + ")" : what),
          step_index(step) {}

    long step_index;
};

} // namespace qdel

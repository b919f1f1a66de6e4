// SPDX-License-Identifier: Apache-2.0
// Umbrella header: the whole library in one include.
#pragma once

#include "qdel/bath.hpp"
#include "qdel/dissipative.hpp"
#include "qdel/errors.hpp"
#include "qdel/experiments.hpp"
#include "qdel/lindblad.hpp"
#include "qdel/mat2.hpp"
#include "qdel/qnd.hpp"
#include "qdel/state.hpp"
#include "qdel/version.hpp"

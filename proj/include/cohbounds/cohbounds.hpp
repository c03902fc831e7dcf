#pragma once

// Two-sided estimates on the relative entropy of coherence for rank-one
// POVMs assigned to quantum t-designs, with the qubit design catalog and
// the verification harness built around them.

#include "cohbounds/bounds.hpp"
#include "cohbounds/check.hpp"
#include "cohbounds/coefficients.hpp"
#include "cohbounds/coherence.hpp"
#include "cohbounds/design.hpp"
#include "cohbounds/errors.hpp"
#include "cohbounds/io.hpp"
#include "cohbounds/random.hpp"
#include "cohbounds/state.hpp"
#include "cohbounds/sweep.hpp"

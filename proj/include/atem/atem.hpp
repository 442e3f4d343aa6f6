// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

/// \file atem.hpp
/// Umbrella header.

#ifndef ATEM_ATEM_HPP
#define ATEM_ATEM_HPP

#include "atem/algebraic.hpp"
#include "atem/big_real.hpp"
#include "atem/eigensolve.hpp"
#include "atem/error.hpp"
#include "atem/frobenius.hpp"
#include "atem/problems.hpp"
#include "atem/quasi_exact.hpp"
#include "atem/regular.hpp"
#include "atem/series.hpp"
#include "atem/shooting.hpp"
#include "atem/wavefunction.hpp"

#endif // ATEM_ATEM_HPP

// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef LSCRAN_ERRORS_HPP
#define LSCRAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lscran {

// A realization that must be discarded and redrawn with a fresh seed.
class RealizationDiscard : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Two nodes coincide exactly (pathloss would be infinite).
class DegenerateGeometry : public RealizationDiscard {
  public:
    using RealizationDiscard::RealizationDiscard;
};

// The ZF Gram system's condition estimate exceeds 1e12.
class IllConditionedGram : public RealizationDiscard {
  public:
    using RealizationDiscard::RealizationDiscard;
};

// A user ended up with an all-zero precoder column.
class ZeroNormPrecoder : public RealizationDiscard {
  public:
    using RealizationDiscard::RealizationDiscard;
};

// A sweep point produced no usable trials, or too many were excluded.
class InsufficientPoints : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An empirical slope fell outside its tolerance band (verify command).
class ToleranceFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace lscran

#endif  // LSCRAN_ERRORS_HPP

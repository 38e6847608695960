/******************************************************************************
 * Copyright 2026 The OOC Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#pragma once

namespace ooc {

// Tolerances shared across modules. Every threshold the library compares
// against lives here so a scenario can tighten or relax them in one place.
struct NumericPolicy {
  double structural_zero = 1e-10;     // absolute zero test for graph/kernel checks
  double rank_relative = 1e-9;        // singular value cutoff, relative to sigma_max
  double hurwitz_margin = 1e-9;       // eigenvalues must satisfy Re < -margin
  double triplet_residual = 1e-10;    // accepted residual of the regulation equations
  double unsolvable_residual = 1e-8;  // least-squares residual that means "no solution"
  double z_guard = 1e-9;              // lower bound on z_i^i before dividing by it
  double m_floor = 1e-6;              // smallest usable strong-convexity estimate
  double convexity_tolerance = 1e-8;  // negative monotonicity quotient allowed as noise
};

inline const NumericPolicy& default_policy() {
  static const NumericPolicy policy{};
  return policy;
}

}  // namespace ooc

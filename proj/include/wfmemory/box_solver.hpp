// Copyright 2026 The wfmemory Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file box_solver.hpp
 * Exact solvers for tiny linear and quadratic programs (a handful of
 * variables): vertex enumeration for LPs, active-set enumeration for strictly
 * convex QPs, and the Chebyshev (minimax) residual of a linear system over
 * the unit box. Everything is finite and deterministic; there is no
 * iteration count or convergence threshold.
 */
#pragma once

#include <optional>

#include <Eigen/Dense>

namespace wfm::box {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Slack used when testing G x <= h for a candidate vertex.
inline constexpr double kConstraintSlack = 1e-11;

/// min c.x subject to G x <= h. The feasible set must be pointed (true
/// whenever x is bounded by the constraints). nullopt when infeasible.
std::optional<VectorXd> minimize_linear(const VectorXd &c, const MatrixXd &G,
                                        const VectorXd &h);

/// min 0.5 x'Hx + g.x subject to G x <= h, H symmetric positive definite.
std::optional<VectorXd> minimize_quadratic(const MatrixXd &H,
                                           const VectorXd &g,
                                           const MatrixXd &G,
                                           const VectorXd &h);

struct MinimaxResidual {
    VectorXd point;   ///< minimizer in [0,1]^k
    double value = 0; ///< min over the box of max_i |A_i x - b_i|
    Index worst_row = 0;
};

/// Chebyshev residual of A x = b over x in [0,1]^k.
MinimaxResidual minimax_residual(const MatrixXd &A, const VectorXd &b);

/// Solution set of A x = b in least-squares form x = particular + N z.
struct AffineSet {
    VectorXd particular;
    MatrixXd null_basis;          ///< orthonormal columns
    double inconsistency = 0.0;   ///< max_i |A_i particular - b_i|
};

AffineSet solve_affine(const MatrixXd &A, const VectorXd &b,
                       double rank_tolerance = 1e-12);

} // namespace wfm::box

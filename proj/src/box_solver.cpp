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
#include "wfmemory/box_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace wfm::box {

namespace {

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class F> void for_each_subset(Index n, Index k, F &&f) {
    if (k > n) {
        return;
    }
    std::vector<Index> idx(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) {
        idx[static_cast<std::size_t>(i)] = i;
    }
    while (true) {
        f(idx);
        Index pos = k - 1;
        while (pos >= 0 &&
               idx[static_cast<std::size_t>(pos)] == n - k + pos) {
            --pos;
        }
        if (pos < 0) {
            return;
        }
        ++idx[static_cast<std::size_t>(pos)];
        for (Index j = pos + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] =
                idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

bool satisfies(const MatrixXd &G, const VectorXd &h, const VectorXd &x) {
    const VectorXd slack = G * x - h;
    for (Index i = 0; i < slack.size(); ++i) {
        if (slack(i) > kConstraintSlack * (1.0 + std::abs(h(i)))) {
            return false;
        }
    }
    return true;
}

} // namespace

std::optional<VectorXd> minimize_linear(const VectorXd &c, const MatrixXd &G,
                                        const VectorXd &h) {
    const Index n = c.size();
    if (n == 0) {
        const VectorXd empty(0);
        if (h.size() == 0 || h.minCoeff() >= -kConstraintSlack) {
            return empty;
        }
        return std::nullopt;
    }
    std::optional<VectorXd> best;
    double best_value = std::numeric_limits<double>::infinity();
    MatrixXd M(n, n);
    VectorXd rhs(n);
    for_each_subset(G.rows(), n, [&](const std::vector<Index> &rows) {
        for (Index i = 0; i < n; ++i) {
            M.row(i) = G.row(rows[static_cast<std::size_t>(i)]);
            rhs(i) = h(rows[static_cast<std::size_t>(i)]);
        }
        Eigen::FullPivLU<MatrixXd> lu(M);
        lu.setThreshold(1e-12);
        if (lu.rank() < n) {
            return;
        }
        const VectorXd x = lu.solve(rhs);
        if (!x.allFinite() || !satisfies(G, h, x)) {
            return;
        }
        const double value = c.dot(x);
        if (value < best_value - 1e-15) {
            best_value = value;
            best = x;
        }
    });
    return best;
}

std::optional<VectorXd> minimize_quadratic(const MatrixXd &H,
                                           const VectorXd &g,
                                           const MatrixXd &G,
                                           const VectorXd &h) {
    const Index n = g.size();
    if (n == 0) {
        return minimize_linear(g, G, h);
    }
    std::optional<VectorXd> best;
    double best_value = std::numeric_limits<double>::infinity();
    // The optimum is the equality-constrained minimizer for its own active
    // set, so it is among the feasible candidates below.
    for (Index k = 0; k <= std::min(n, G.rows()); ++k) {
        for_each_subset(G.rows(), k, [&](const std::vector<Index> &rows) {
            MatrixXd K = MatrixXd::Zero(n + k, n + k);
            VectorXd rhs(n + k);
            K.topLeftCorner(n, n) = H;
            rhs.head(n) = -g;
            for (Index i = 0; i < k; ++i) {
                const auto r = rows[static_cast<std::size_t>(i)];
                K.block(n + i, 0, 1, n) = G.row(r);
                K.block(0, n + i, n, 1) = G.row(r).transpose();
                rhs(n + i) = h(r);
            }
            Eigen::FullPivLU<MatrixXd> lu(K);
            lu.setThreshold(1e-12);
            if (lu.rank() < n + k) {
                return;
            }
            const VectorXd x = lu.solve(rhs).head(n);
            if (!x.allFinite() || !satisfies(G, h, x)) {
                return;
            }
            const double value = 0.5 * x.dot(H * x) + g.dot(x);
            if (value < best_value - 1e-15) {
                best_value = value;
                best = x;
            }
        });
    }
    return best;
}

MinimaxResidual minimax_residual(const MatrixXd &A, const VectorXd &b) {
    const Index k = A.cols();
    const Index m = A.rows();
    // Variables (x, t): minimize t subject to 0 <= x <= 1, |A x - b| <= t.
    MatrixXd G = MatrixXd::Zero(2 * k + 2 * m, k + 1);
    VectorXd h = VectorXd::Zero(2 * k + 2 * m);
    for (Index i = 0; i < k; ++i) {
        G(i, i) = -1.0;
        G(k + i, i) = 1.0;
        h(k + i) = 1.0;
    }
    for (Index i = 0; i < m; ++i) {
        G.block(2 * k + i, 0, 1, k) = A.row(i);
        G(2 * k + i, k) = -1.0;
        h(2 * k + i) = b(i);
        G.block(2 * k + m + i, 0, 1, k) = -A.row(i);
        G(2 * k + m + i, k) = -1.0;
        h(2 * k + m + i) = -b(i);
    }
    VectorXd c = VectorXd::Zero(k + 1);
    c(k) = 1.0;
    const auto sol = minimize_linear(c, G, h);
    MinimaxResidual out;
    out.point = sol ? VectorXd(sol->head(k)) : VectorXd::Zero(k);
    out.point = out.point.cwiseMax(0.0).cwiseMin(1.0);
    const VectorXd residual = (A * out.point - b).cwiseAbs();
    if (m > 0) {
        out.value = residual.maxCoeff(&out.worst_row);
    }
    return out;
}

AffineSet solve_affine(const MatrixXd &A, const VectorXd &b,
                       double rank_tolerance) {
    const Index k = A.cols();
    AffineSet out;
    if (A.rows() == 0) {
        out.particular = VectorXd::Zero(k);
        out.null_basis = MatrixXd::Identity(k, k);
        return out;
    }
    Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const VectorXd &sigma = svd.singularValues();
    const double cutoff =
        rank_tolerance * std::max(1.0, sigma.size() > 0 ? sigma(0) : 0.0);
    Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) {
        ++rank;
    }
    out.particular = VectorXd::Zero(k);
    for (Index i = 0; i < rank; ++i) {
        out.particular += svd.matrixV().col(i) *
                          (svd.matrixU().col(i).dot(b) / sigma(i));
    }
    out.null_basis = svd.matrixV().rightCols(k - rank);
    out.inconsistency = (A * out.particular - b).cwiseAbs().maxCoeff();
    return out;
}

} // namespace wfm::box

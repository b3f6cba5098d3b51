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
#include "wfmemory/flip_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wfmemory/box_solver.hpp"

namespace wfm {

namespace {

using box::Index;
using box::MatrixXd;
using box::VectorXd;

// Lexicographic objective level: minimize max_j |form_j . q|.
using Level = std::vector<VectorXd>;

struct FlipProblem {
    FlipFamily family;
    std::vector<FlipEquation> equations;
    std::vector<Level> levels;
    double reference;
    SecondaryRule rule;
};

VectorXd form(std::initializer_list<double> values) {
    VectorXd v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double x : values) {
        v(i++) = x;
    }
    return v;
}

double reference_flip(const ScenarioConfig &c) {
    return 2.0 * c.wigner_a.squared() * c.wigner_b.squared();
}

// Row block of the z-space constraints that keeps q = p + N z inside the
// box widened by `slack`.
void append_rows(MatrixXd &G, VectorXd &h, const MatrixXd &rows,
                 const VectorXd &rhs) {
    const Index old = G.rows();
    G.conservativeResize(old + rows.rows(), rows.cols());
    h.conservativeResize(old + rows.rows());
    G.bottomRows(rows.rows()) = rows;
    h.tail(rows.rows()) = rhs;
}

double epsilon_of(FlipFamily family, const std::vector<double> &q) {
    switch (family) {
    case FlipFamily::two:
    case FlipFamily::joint_two:
        return q[1] - q[0];
    case FlipFamily::four:
        return std::max(std::abs(q[0] - q[1]), std::abs(q[2] - q[3]));
    case FlipFamily::single:
        break;
    }
    return 0.0;
}

// Tie-broken point of {q : A q = b} within the box, or nullopt when the
// affine set misses the box.
std::optional<VectorXd> resolve_affine(const box::AffineSet &affine,
                                       const FlipProblem &pr, Index k) {
    VectorXd p = affine.particular;
    MatrixXd N = affine.null_basis;
    Index d = N.cols();
    if (d == 0) {
        const double violation =
            std::max({0.0, -p.minCoeff(), p.maxCoeff() - 1.0});
        if (violation > kFeasibilityTolerance) {
            return std::nullopt;
        }
        return p;
    }

    // Phase 1: smallest uniform box violation s over the affine set.
    MatrixXd G1(2 * k, d + 1);
    VectorXd h1(2 * k);
    G1.topLeftCorner(k, d) = -N;
    G1.bottomLeftCorner(k, d) = N;
    G1.col(d).setConstant(-1.0);
    h1.head(k) = p;
    h1.tail(k) = VectorXd::Ones(k) - p;
    VectorXd c1 = VectorXd::Zero(d + 1);
    c1(d) = 1.0;
    const auto phase1 = box::minimize_linear(c1, G1, h1);
    if (!phase1 || (*phase1)(d) > kFeasibilityTolerance) {
        return std::nullopt;
    }
    const double slack = std::max(0.0, (*phase1)(d)) + 1e-12;

    // z-space constraints accumulated across levels; q = p + N z.
    MatrixXd G(0, d);
    VectorXd h(0);
    {
        MatrixXd rows(2 * k, d);
        rows.topRows(k) = -N;
        rows.bottomRows(k) = N;
        VectorXd rhs(2 * k);
        rhs.head(k) = p + VectorXd::Constant(k, slack);
        rhs.tail(k) = VectorXd::Constant(k, 1.0 + slack) - p;
        append_rows(G, h, rows, rhs);
    }

    for (const auto &level : pr.levels) {
        if (d == 0) {
            break;
        }
        const auto forms = static_cast<Index>(level.size());
        MatrixXd DN(forms, d);
        VectorXd Dp(forms);
        for (Index j = 0; j < forms; ++j) {
            const auto &D = level[static_cast<std::size_t>(j)];
            DN.row(j) = D.transpose() * N;
            Dp(j) = D.dot(p);
        }
        MatrixXd Gl = MatrixXd::Zero(G.rows() + 2 * forms, d + 1);
        VectorXd hl(G.rows() + 2 * forms);
        Gl.topLeftCorner(G.rows(), d) = G;
        hl.head(G.rows()) = h;
        for (Index j = 0; j < forms; ++j) {
            Gl.block(G.rows() + 2 * j, 0, 1, d) = DN.row(j);
            Gl(G.rows() + 2 * j, d) = -1.0;
            hl(G.rows() + 2 * j) = -Dp(j);
            Gl.block(G.rows() + 2 * j + 1, 0, 1, d) = -DN.row(j);
            Gl(G.rows() + 2 * j + 1, d) = -1.0;
            hl(G.rows() + 2 * j + 1) = Dp(j);
        }
        VectorXd cl = VectorXd::Zero(d + 1);
        cl(d) = 1.0;
        const auto best = box::minimize_linear(cl, Gl, hl);
        if (!best) {
            return std::nullopt;
        }
        const double optimum = std::max(0.0, (*best)(d));

        if (optimum <= kFeasibilityTolerance) {
            // The level vanishes: impose D q = 0 exactly and shrink the
            // search space instead of carrying a slack band.
            const auto sub = box::solve_affine(DN, -Dp);
            if (sub.inconsistency <= kFeasibilityTolerance) {
                h -= G * sub.particular;
                G = G * sub.null_basis;
                p += N * sub.particular;
                N = N * sub.null_basis;
                d = N.cols();
                continue;
            }
        }

        const double level_value = optimum + 1e-12;
        MatrixXd rows(2 * forms, d);
        VectorXd rhs(2 * forms);
        for (Index j = 0; j < forms; ++j) {
            rows.row(2 * j) = DN.row(j);
            rhs(2 * j) = level_value - Dp(j);
            rows.row(2 * j + 1) = -DN.row(j);
            rhs(2 * j + 1) = level_value + Dp(j);
        }
        append_rows(G, h, rows, rhs);
    }

    if (d == 0) {
        return p;
    }
    std::optional<VectorXd> z;
    if (pr.rule == SecondaryRule::min_mass) {
        z = box::minimize_linear(N.transpose() * VectorXd::Ones(k), G, h);
    } else {
        const MatrixXd H = N.transpose() * N;
        const VectorXd g =
            N.transpose() * (p - VectorXd::Constant(k, pr.reference));
        z = box::minimize_quadratic(H, g, G, h);
    }
    if (!z) {
        return std::nullopt;
    }
    return VectorXd(p + N * *z);
}

FlipSolution solve_problem(const FlipProblem &pr) {
    const auto m = static_cast<Index>(pr.equations.size());
    const auto k = static_cast<Index>(pr.equations.front().coefficients.size());
    MatrixXd A(m, k);
    VectorXd b(m);
    for (Index i = 0; i < m; ++i) {
        const auto &eq = pr.equations[static_cast<std::size_t>(i)];
        for (Index j = 0; j < k; ++j) {
            A(i, j) = eq.coefficients[static_cast<std::size_t>(j)];
        }
        b(i) = eq.rhs;
    }

    FlipSolution sol;
    sol.family = pr.family;
    sol.equations = pr.equations;
    sol.reference = pr.reference;
    sol.rule = pr.rule;

    const auto affine = box::solve_affine(A, b);
    std::optional<VectorXd> q;
    bool resolved = false;
    if (affine.inconsistency <= kFeasibilityTolerance) {
        q = resolve_affine(affine, pr, k);
        resolved = affine.null_basis.cols() > 0;
    }
    if (!q) {
        const auto cheb = box::minimax_residual(A, b);
        if (cheb.value > kFeasibilityTolerance) {
            sol.status = FlipStatus::infeasible;
            sol.parameters.assign(cheb.point.data(),
                                  cheb.point.data() + cheb.point.size());
            sol.residual = cheb.value;
            sol.epsilon = epsilon_of(pr.family, sol.parameters);
            sol.certificate = InfeasibilityCertificate{
                pr.equations[static_cast<std::size_t>(cheb.worst_row)].name,
                std::max(0.0, cheb.value - 1e-12)};
            return sol;
        }
        // Within tolerance of the box: the Chebyshev point is a solution.
        q = cheb.point;
        resolved = false;
    }

    const VectorXd clamped = q->cwiseMax(0.0).cwiseMin(1.0);
    sol.parameters.assign(clamped.data(), clamped.data() + clamped.size());
    sol.residual = m > 0 ? (A * clamped - b).cwiseAbs().maxCoeff() : 0.0;
    sol.epsilon = epsilon_of(pr.family, sol.parameters);
    sol.status =
        resolved ? FlipStatus::underdetermined_resolved : FlipStatus::feasible;
    return sol;
}

// Friend-marginal consistency for the simple scenario, written as the sum
// and difference of the two marginal equations.
std::vector<FlipEquation> simple_equations(const ScenarioConfig &config,
                                           bool outcome_dependent) {
    const double A = config.alpha.squared();
    const double B = config.beta.squared();
    const auto post = simple_friend_marginal(config, Time::t2).p;
    FlipEquation sum{"sum: p(f2=0)+p(f2=1)", {}, post[0] + post[1] - A - B};
    FlipEquation diff{"difference: p(f2=0)-p(f2=1)", {},
                      post[0] - post[1] - A + B};
    if (outcome_dependent) {
        sum.coefficients = {0.0, 0.0};
        diff.coefficients = {-2.0 * A, 2.0 * B};
    } else {
        sum.coefficients = {0.0};
        diff.coefficients = {-2.0 * A + 2.0 * B};
    }
    return {sum, diff};
}

// Joint-table consistency p(f3, B3) for the extended scenario. Parameter of
// (record n, Bob m) is index(n, m).
template <class IndexFn>
std::vector<FlipEquation> joint_equations(const ScenarioConfig &config,
                                          std::size_t parameters,
                                          IndexFn index) {
    const auto pre = extended_joint_table(config, Time::t2).p;
    const auto post = extended_joint_table(config, Time::t3).p;
    std::vector<FlipEquation> eqs;
    for (std::size_t f = 0; f < 2; ++f) {
        for (std::size_t bob = 0; bob < 2; ++bob) {
            FlipEquation eq;
            eq.name = "p(f3=" + std::to_string(f) + ",B3=" +
                      std::to_string(bob) + ")";
            eq.coefficients.assign(parameters, 0.0);
            const double keep = pre[f][bob];
            const double other = pre[1 - f][bob];
            // (1 - q_f) keep + q_other other = post
            eq.coefficients[index(f, bob)] -= keep;
            eq.coefficients[index(1 - f, bob)] += other;
            eq.rhs = post[f][bob] - keep;
            eqs.push_back(std::move(eq));
        }
    }
    return eqs;
}

} // namespace

std::string to_string(FlipFamily f) {
    switch (f) {
    case FlipFamily::single:
        return "single";
    case FlipFamily::two:
        return "two";
    case FlipFamily::joint_two:
        return "joint-two";
    case FlipFamily::four:
        return "four";
    }
    return "unknown";
}

std::string to_string(FlipStatus s) {
    switch (s) {
    case FlipStatus::feasible:
        return "feasible";
    case FlipStatus::infeasible:
        return "infeasible";
    case FlipStatus::underdetermined_resolved:
        return "underdetermined-resolved";
    }
    return "unknown";
}

std::string to_string(SecondaryRule r) {
    return r == SecondaryRule::min_mass ? "min-mass" : "reference-flip";
}

double FlipSolution::q(std::size_t n, std::size_t m) const {
    if (n > 1 || m > 1) {
        throw DomainError("flip index out of range");
    }
    switch (family) {
    case FlipFamily::single:
        return parameters.at(0);
    case FlipFamily::two:
    case FlipFamily::joint_two:
        return parameters.at(n);
    case FlipFamily::four:
        return parameters.at(2 * n + m);
    }
    return 0.0;
}

FlipSolution solve_single_flip(const ScenarioConfig &config,
                               SecondaryRule rule) {
    config.validate(false);
    return solve_problem({FlipFamily::single, simple_equations(config, false),
                          {}, reference_flip(config), rule});
}

FlipSolution solve_outcome_flip(const ScenarioConfig &config,
                                SecondaryRule rule) {
    config.validate(false);
    return solve_problem({FlipFamily::two,
                          simple_equations(config, true),
                          {{form({-1.0, 1.0})}},
                          reference_flip(config),
                          rule});
}

FlipSolution solve_joint_flip(const ScenarioConfig &config,
                              SecondaryRule rule) {
    config.validate(true);
    auto eqs = joint_equations(config, 2,
                               [](std::size_t n, std::size_t) { return n; });
    return solve_problem({FlipFamily::joint_two,
                          std::move(eqs),
                          {{form({-1.0, 1.0})}},
                          reference_flip(config),
                          rule});
}

FlipSolution solve_conditional_flip(const ScenarioConfig &config,
                                    SecondaryRule rule) {
    config.validate(true);
    auto eqs = joint_equations(config, 4, [](std::size_t n, std::size_t m) {
        return 2 * n + m;
    });
    // Parameter order q00, q01, q10, q11.
    std::vector<Level> levels = {
        {form({1.0, -1.0, 0.0, 0.0}), form({0.0, 0.0, 1.0, -1.0})},
        {form({-1.0, 0.0, 1.0, 0.0}), form({0.0, -1.0, 0.0, 1.0})},
    };
    auto sol = solve_problem({FlipFamily::four, std::move(eqs),
                              std::move(levels), reference_flip(config),
                              rule});
    if (sol.feasible()) {
        sol.effective = effective_flip(
            sol, extended_marginals(config, Party::bob, Time::t2));
    }
    return sol;
}

FlipSolution solve_flip(FlipFamily family, const ScenarioConfig &config,
                        SecondaryRule rule) {
    switch (family) {
    case FlipFamily::single:
        return solve_single_flip(config, rule);
    case FlipFamily::two:
        return solve_outcome_flip(config, rule);
    case FlipFamily::joint_two:
        return solve_joint_flip(config, rule);
    case FlipFamily::four:
        return solve_conditional_flip(config, rule);
    }
    throw DomainError("unknown flip family");
}

std::array<double, 2> effective_flip(const FlipSolution &solution,
                                     const OutcomeDistribution &bob_t2) {
    if (solution.family != FlipFamily::four) {
        throw DomainError("effective flips need a four-parameter solution");
    }
    if (bob_t2.party != Party::bob) {
        throw DomainError("effective flips are weighted by Bob's marginal");
    }
    const auto &w = bob_t2.p;
    return {w[0] * solution.q(0, 0) + w[1] * solution.q(0, 1),
            w[0] * solution.q(1, 0) + w[1] * solution.q(1, 1)};
}

JointTable reconstruct_joint(const FlipSolution &solution,
                             const JointTable &pre) {
    if (!solution.feasible()) {
        throw DomainError("cannot reconstruct from an infeasible flip model");
    }
    JointTable post{Time::t3, {}};
    for (std::size_t bob = 0; bob < 2; ++bob) {
        for (std::size_t before = 0; before < 2; ++before) {
            const double flip = solution.q(before, bob);
            post.p[before][bob] += pre.p[before][bob] * (1.0 - flip);
            post.p[1 - before][bob] += pre.p[before][bob] * flip;
        }
    }
    return post;
}

OutcomeDistribution reconstruct_marginal(const FlipSolution &solution,
                                         const OutcomeDistribution &pre) {
    if (!solution.feasible()) {
        throw DomainError("cannot reconstruct from an infeasible flip model");
    }
    OutcomeDistribution post{pre.party, Time::t2, {}};
    for (std::size_t before = 0; before < 2; ++before) {
        const double flip = solution.q(before, 0);
        post.p[before] += pre.p[before] * (1.0 - flip);
        post.p[1 - before] += pre.p[before] * flip;
    }
    return post;
}

FeasibilityPoint no_signaling_feasibility(double x, double cos_delta_phi) {
    if (!(x >= 0.0 && x <= std::numbers::pi / 2.0)) {
        throw DomainError("Wigner angle must lie in [0, pi/2]");
    }
    if (!(cos_delta_phi >= -1.0 && cos_delta_phi <= 1.0)) {
        throw DomainError("cos(delta phi) must lie in [-1, 1]");
    }
    // sin(pi/2 - x) rather than cos(x) so that b vanishes exactly at pi/2.
    const double a = std::sin(x);
    const double b = std::sin(std::numbers::pi / 2.0 - x);
    const double cross = a * a * b * b;
    const double odd = a * a * a * b - a * b * b * b;
    FeasibilityPoint pt;
    pt.x = x;
    pt.cos_delta_phi = cos_delta_phi;
    pt.q00 = 2.0 * cross -
             (2.0 * std::numbers::sqrt2 / 3.0) * odd * cos_delta_phi;
    pt.feasible = pt.q00 >= -kSweepTolerance && pt.q00 <= 1.0 + kSweepTolerance;
    return pt;
}

std::vector<FeasibilityPoint> feasibility_sweep(std::size_t steps,
                                                double cos_delta_phi,
                                                Execution exec) {
    if (steps < 2) {
        throw DomainError("a sweep needs at least two points");
    }
    std::vector<FeasibilityPoint> points(steps);
    const double last = static_cast<double>(steps - 1);
    for_each_index(steps, exec, [&](std::size_t i) {
        const double x =
            (std::numbers::pi / 2.0) * (static_cast<double>(i) / last);
        points[i] = no_signaling_feasibility(x, cos_delta_phi);
    });
    return points;
}

bool any_infeasible(const std::vector<FeasibilityPoint> &points) {
    return std::any_of(points.begin(), points.end(),
                       [](const FeasibilityPoint &p) { return !p.feasible; });
}

} // namespace wfm

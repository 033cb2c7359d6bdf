#pragma once

// Projected saddle-point dynamics for a standard-form linear program
//
//     min c^T x   s.t.  A x = b,  x >= 0
//
//     x_i' = f_i(x, z)             if x_i > 0
//          = max{0, f_i(x, z)}     if x_i = 0
//     z'   = A x - b
//     f    = -c - A^T (A x - b + z)
//
// Equilibria are exactly the KKT points: A x = b, x >= 0, A^T z + c >= 0 and
// (A^T z + c)^T x = 0. Note the dual constraint reads A^T z + c >= 0; with
// this z the dual program is max{-b^T z : A^T z + c >= 0}.

#include "dyadic/trajectory.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace dyadic {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a state leaves the admissible set (negative x).
class StateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when the state norm exceeds the configured bound.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(double t, double norm);
    [[nodiscard]] double time() const { return t_; }
    [[nodiscard]] double norm() const { return norm_; }

private:
    double t_;
    double norm_;
};

struct LpProblem {
    Eigen::VectorXd c;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;

    [[nodiscard]] Eigen::Index num_vars() const { return c.size(); }
    [[nodiscard]] Eigen::Index num_rows() const { return b.size(); }
    /// Throws DimensionError unless A is rows(b) x size(c).
    void validate() const;
};

/// Matrix-free constraint operator: the caller supplies A x and A^T y.
struct LinearOperator {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply_transpose;

    static LinearOperator dense(Eigen::MatrixXd A);
};

struct OperatorLp {
    Eigen::VectorXd c;
    LinearOperator A;
    Eigen::VectorXd b;

    [[nodiscard]] static OperatorLp from_dense(const LpProblem& p);
    void validate() const;
};

struct LpState {
    Eigen::VectorXd x;
    Eigen::VectorXd z;
};

struct LpRates {
    Eigen::VectorXd x_dot;
    Eigen::VectorXd z_dot;
};

[[nodiscard]] Eigen::VectorXd nominal_flow(const LpProblem& p, const LpState& s);
[[nodiscard]] Eigen::VectorXd nominal_flow(const OperatorLp& p, const LpState& s);

/// Throws StateError if any x_i < 0.
[[nodiscard]] LpRates projected_rhs(const LpProblem& p, const LpState& s);
[[nodiscard]] LpRates projected_rhs(const OperatorLp& p, const LpState& s);

/// max(|Ax - b|_inf, |min(x,0)|_inf, |min(A^T z + c, 0)|_inf, |(A^T z + c)^T x|)
[[nodiscard]] double kkt_residual(const LpProblem& p, const LpState& s);
[[nodiscard]] double kkt_residual(const OperatorLp& p, const LpState& s);

struct IntegrateOptions {
    double dt = 1e-3;
    double t_final = 100.0;
    double max_norm = 1e9;
    std::size_t max_steps = 500'000'000;
    SamplingOptions sampling{};
};

using LpObserver = std::function<void(double t, const LpState& s, double kkt_residual)>;

struct LpRun {
    LpState final_state;
    double t_final = 0.0;
    /// Columns t, x_1.., z_1.., kkt_residual.
    Trajectory trajectory;
};

/// Explicit Euler with a post-step clamp of x onto the nonnegative orthant.
/// Throws DivergenceError when |(x, z)|_inf exceeds options.max_norm, and
/// std::invalid_argument for a bad step size or an oversized step count.
[[nodiscard]] LpRun integrate(const LpProblem& p, LpState s0, const IntegrateOptions& options,
                              const LpObserver& observer = {});
[[nodiscard]] LpRun integrate(const OperatorLp& p, LpState s0, const IntegrateOptions& options,
                              const LpObserver& observer = {});

/// Number of Euler steps for a horizon; throws on dt <= 0 or t_final < 0.
[[nodiscard]] std::size_t step_count(double dt, double t_final, std::size_t max_steps);

}  // namespace dyadic

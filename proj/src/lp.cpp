#include "dyadic/lp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

namespace dyadic {

DivergenceError::DivergenceError(double t, double norm)
    : std::runtime_error("state norm " + std::to_string(norm) + " exceeded bound at t = " +
                         std::to_string(t)),
      t_(t),
      norm_(norm) {}

void LpProblem::validate() const {
    if (A.rows() != b.size() || A.cols() != c.size()) {
        throw DimensionError("LP dimensions disagree: A is " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()) + ", b has " + std::to_string(b.size()) +
                             ", c has " + std::to_string(c.size()));
    }
}

LinearOperator LinearOperator::dense(Eigen::MatrixXd A) {
    LinearOperator op;
    op.rows = A.rows();
    op.cols = A.cols();
    auto shared = std::make_shared<const Eigen::MatrixXd>(std::move(A));
    op.apply = [shared](const Eigen::VectorXd& x) -> Eigen::VectorXd { return *shared * x; };
    op.apply_transpose = [shared](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return shared->transpose() * y;
    };
    return op;
}

OperatorLp OperatorLp::from_dense(const LpProblem& p) {
    p.validate();
    return OperatorLp{p.c, LinearOperator::dense(p.A), p.b};
}

void OperatorLp::validate() const {
    if (A.rows != b.size() || A.cols != c.size() || !A.apply || !A.apply_transpose) {
        throw DimensionError("operator LP dimensions disagree or operator is incomplete");
    }
}

namespace {

void check_state(const OperatorLp& p, const LpState& s) {
    if (s.x.size() != p.c.size() || s.z.size() != p.b.size()) {
        throw DimensionError("LP state dimensions disagree with the problem");
    }
}

Eigen::VectorXd flow_from_residual(const OperatorLp& p, const LpState& s,
                                   const Eigen::VectorXd& primal_residual) {
    return -p.c - p.A.apply_transpose(primal_residual + s.z);
}

LpRates rates_impl(const OperatorLp& p, const LpState& s) {
    check_state(p, s);
    if ((s.x.array() < 0.0).any()) {
        throw StateError("LP state has a negative primal component");
    }
    const Eigen::VectorXd r = p.A.apply(s.x) - p.b;
    Eigen::VectorXd f = flow_from_residual(p, s, r);
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        if (s.x[i] == 0.0) {
            f[i] = std::max(0.0, f[i]);
        }
    }
    return LpRates{std::move(f), r};
}

double kkt_impl(const OperatorLp& p, const LpState& s) {
    check_state(p, s);
    const Eigen::VectorXd dual_slack = p.A.apply_transpose(s.z) + p.c;
    double res = (p.A.apply(s.x) - p.b).lpNorm<Eigen::Infinity>();
    if (s.x.size() > 0) {
        res = std::max(res, -std::min(0.0, s.x.minCoeff()));
        res = std::max(res, -std::min(0.0, dual_slack.minCoeff()));
    }
    res = std::max(res, std::abs(dual_slack.dot(s.x)));
    return res;
}

std::vector<std::string> lp_columns(Eigen::Index nx, Eigen::Index m) {
    std::vector<std::string> cols{"t"};
    for (Eigen::Index i = 0; i < nx; ++i) {
        cols.push_back("x_" + std::to_string(i + 1));
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        cols.push_back("z_" + std::to_string(i + 1));
    }
    cols.emplace_back("kkt_residual");
    return cols;
}

}  // namespace

Eigen::VectorXd nominal_flow(const OperatorLp& p, const LpState& s) {
    p.validate();
    check_state(p, s);
    return flow_from_residual(p, s, p.A.apply(s.x) - p.b);
}

Eigen::VectorXd nominal_flow(const LpProblem& p, const LpState& s) {
    return nominal_flow(OperatorLp::from_dense(p), s);
}

LpRates projected_rhs(const OperatorLp& p, const LpState& s) {
    p.validate();
    return rates_impl(p, s);
}

LpRates projected_rhs(const LpProblem& p, const LpState& s) {
    return projected_rhs(OperatorLp::from_dense(p), s);
}

double kkt_residual(const OperatorLp& p, const LpState& s) {
    p.validate();
    return kkt_impl(p, s);
}

double kkt_residual(const LpProblem& p, const LpState& s) {
    return kkt_residual(OperatorLp::from_dense(p), s);
}

std::size_t step_count(double dt, double t_final, std::size_t max_steps) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("time step must be positive");
    }
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw std::invalid_argument("final time must be nonnegative");
    }
    const double steps = std::ceil(t_final / dt - 1e-9);
    if (steps > static_cast<double>(max_steps)) {
        throw std::invalid_argument("horizon needs " + std::to_string(steps) +
                                    " steps, above the step-count guard");
    }
    return static_cast<std::size_t>(steps);
}

LpRun integrate(const OperatorLp& p, LpState s, const IntegrateOptions& options,
                const LpObserver& observer) {
    p.validate();
    check_state(p, s);
    if ((s.x.array() < 0.0).any()) {
        throw StateError("initial LP state has a negative primal component");
    }
    const std::size_t steps = step_count(options.dt, options.t_final, options.max_steps);
    const std::size_t stride = std::max<std::size_t>(1, options.sampling.stride);

    LpRun run;
    run.trajectory = Trajectory(lp_columns(s.x.size(), s.z.size()));
    std::vector<double> row;
    auto sample = [&](double t) {
        const double res = kkt_impl(p, s);
        if (observer) {
            observer(t, s, res);
        }
        if (options.sampling.record) {
            row.assign(1, t);
            row.insert(row.end(), s.x.data(), s.x.data() + s.x.size());
            row.insert(row.end(), s.z.data(), s.z.data() + s.z.size());
            row.push_back(res);
            run.trajectory.append(row);
        }
    };

    sample(0.0);
    double t = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        LpRates r = rates_impl(p, s);
        s.x += options.dt * r.x_dot;
        s.x = s.x.cwiseMax(0.0);
        s.z += options.dt * r.z_dot;
        t = static_cast<double>(k) * options.dt;
        const double norm = std::max(s.x.size() ? s.x.lpNorm<Eigen::Infinity>() : 0.0,
                                     s.z.size() ? s.z.lpNorm<Eigen::Infinity>() : 0.0);
        if (!std::isfinite(norm) || norm > options.max_norm) {
            throw DivergenceError(t, norm);
        }
        if (k % stride == 0 || k == steps) {
            sample(t);
        }
    }
    run.t_final = t;
    run.final_state = std::move(s);
    return run;
}

LpRun integrate(const LpProblem& p, LpState s0, const IntegrateOptions& options,
                const LpObserver& observer) {
    return integrate(OperatorLp::from_dense(p), std::move(s0), options, observer);
}

}  // namespace dyadic

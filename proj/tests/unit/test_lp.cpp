#include "dyadic/lp.hpp"
#include "dyadic/oracle/lp_exact.hpp"

#include "support/random_lp.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dyadic;

namespace {

// min x  s.t.  x = 1
LpProblem unit_lp() {
    LpProblem p;
    p.c = Eigen::VectorXd::Constant(1, 1.0);
    p.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
    p.b = Eigen::VectorXd::Constant(1, 1.0);
    return p;
}

LpState state(std::initializer_list<double> x, std::initializer_list<double> z) {
    LpState s;
    s.x = Eigen::Map<const Eigen::VectorXd>(x.begin(), static_cast<Eigen::Index>(x.size()));
    s.z = Eigen::Map<const Eigen::VectorXd>(z.begin(), static_cast<Eigen::Index>(z.size()));
    return s;
}

double max_rate(const LpRates& r) {
    return std::max(r.x_dot.lpNorm<Eigen::Infinity>(), r.z_dot.lpNorm<Eigen::Infinity>());
}

}  // namespace

TEST_CASE("nominal flow and the projection") {
    const auto p = unit_lp();
    CHECK(nominal_flow(p, state({1.0}, {-1.0}))(0) == 0.0);

    // At the origin f = 0 but z still moves, so it is no equilibrium.
    const auto at_origin = projected_rhs(p, state({0.0}, {0.0}));
    CHECK(nominal_flow(p, state({0.0}, {0.0}))(0) == 0.0);
    CHECK(at_origin.x_dot(0) == 0.0);
    CHECK(at_origin.z_dot(0) == -1.0);

    // f = -1 - (x - 1 + z): x = 0, z = 2 gives f = -2, clamped to 0.
    CHECK(projected_rhs(p, state({0.0}, {2.0})).x_dot(0) == 0.0);
    // x = 0, z = -2 gives f = +2, which passes.
    CHECK(projected_rhs(p, state({0.0}, {-2.0})).x_dot(0) == 2.0);
    // Interior states follow the nominal flow.
    CHECK(projected_rhs(p, state({0.5}, {2.0})).x_dot(0) == nominal_flow(p, state({0.5}, {2.0}))(0));

    LpProblem zero_cost = p;
    zero_cost.c.setZero();
    CHECK(nominal_flow(zero_cost, state({1.0}, {0.0}))(0) == 0.0);

    CHECK_THROWS_AS((void)projected_rhs(p, state({-0.1}, {0.0})), StateError);
}

TEST_CASE("dimension checks") {
    auto p = unit_lp();
    p.b = Eigen::VectorXd::Zero(2);
    CHECK_THROWS_AS(p.validate(), DimensionError);
    CHECK_THROWS_AS((void)nominal_flow(p, state({1.0}, {0.0})), DimensionError);
    const auto q = unit_lp();
    CHECK_THROWS_AS((void)nominal_flow(q, state({1.0, 2.0}, {0.0})), DimensionError);
    CHECK_THROWS_AS((void)nominal_flow(q, state({1.0}, {0.0, 1.0})), DimensionError);
}

TEST_CASE("kkt residual") {
    const auto p = unit_lp();
    CHECK(kkt_residual(p, state({1.0}, {-1.0})) == 0.0);
    CHECK(kkt_residual(p, state({0.5}, {0.0})) >= 0.5);
    // Dual infeasible: A^T z + c = -1 < 0.
    CHECK(kkt_residual(p, state({1.0}, {-2.0})) == doctest::Approx(1.0));
}

TEST_CASE("integrate converges on min x s.t. x = 1") {
    const auto p = unit_lp();
    IntegrateOptions o;
    o.t_final = 50.0;
    const auto run = integrate(p, state({0.0}, {0.0}), o);
    CHECK(std::abs(run.final_state.x(0) - 1.0) < 1e-4);
    CHECK(std::abs(run.final_state.z(0) + 1.0) < 1e-4);
    CHECK(run.trajectory.columns() ==
          std::vector<std::string>{"t", "x_1", "z_1", "kkt_residual"});
    CHECK(run.trajectory.num_rows() == 501);
    for (double x : run.trajectory.column("x_1")) {
        CHECK(x >= 0.0);
    }
}

TEST_CASE("a KKT point stays put") {
    const auto p = unit_lp();
    IntegrateOptions o;
    o.t_final = 5.0;
    const auto run = integrate(p, state({1.0}, {-1.0}), o);
    CHECK(run.final_state.x(0) == 1.0);
    CHECK(run.final_state.z(0) == -1.0);
}

TEST_CASE("divergence and horizon guards") {
    auto p = unit_lp();
    p.b(0) = -1e3;  // infeasible: z grows without bound
    IntegrateOptions o;
    o.t_final = 1000.0;
    o.max_norm = 1e4;
    CHECK_THROWS_AS((void)integrate(p, state({0.0}, {0.0}), o), DivergenceError);

    IntegrateOptions tight;
    tight.max_norm = 0.5;
    try {
        (void)integrate(unit_lp(), state({1.0}, {0.0}), tight);
        FAIL("no DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(e.time() == doctest::Approx(1e-3));
    }

    IntegrateOptions bad;
    bad.dt = 0.0;
    CHECK_THROWS_AS((void)integrate(unit_lp(), state({0.0}, {0.0}), bad), std::invalid_argument);
    bad.dt = 1e-9;
    bad.t_final = 1e3;
    bad.max_steps = 1000;
    CHECK_THROWS_AS((void)integrate(unit_lp(), state({0.0}, {0.0}), bad), std::invalid_argument);
}

TEST_CASE("observer sees every sample") {
    IntegrateOptions o;
    o.t_final = 1.0;
    o.sampling.stride = 250;
    std::size_t calls = 0;
    const auto run = integrate(unit_lp(), state({0.0}, {0.0}), o,
                               [&](double, const LpState& s, double r) {
                                   ++calls;
                                   CHECK(r == doctest::Approx(kkt_residual(unit_lp(), s)));
                               });
    CHECK(calls == run.trajectory.num_rows());
    CHECK(calls == 5);
}

TEST_CASE("operator and dense paths agree") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 20; ++k) {
        const auto p = testing::random_bounded_lp(rng, 5, 3);
        const auto op = OperatorLp::from_dense(p);
        LpState s;
        s.x = Eigen::VectorXd::Random(5).cwiseAbs();
        s.z = Eigen::VectorXd::Random(3);
        const auto a = projected_rhs(p, s);
        const auto b = projected_rhs(op, s);
        CHECK((a.x_dot - b.x_dot).lpNorm<Eigen::Infinity>() < 1e-14);
        CHECK((a.z_dot - b.z_dot).lpNorm<Eigen::Infinity>() < 1e-14);
        CHECK(kkt_residual(p, s) == doctest::Approx(kkt_residual(op, s)));
    }
}

TEST_CASE("random LPs reach the exact optimum") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 10; ++k) {
        const auto p = testing::random_bounded_lp(rng, 5, 3);
        const auto exact = oracle::solve_standard_form(testing::to_exact(p));
        REQUIRE(exact.status == oracle::LpStatus::Optimal);

        IntegrateOptions o;
        o.t_final = 200.0;
        o.sampling.stride = 1000;
        LpState s0{Eigen::VectorXd::Zero(5), Eigen::VectorXd::Zero(3)};
        const double r0 = kkt_residual(p, s0);
        const auto run = integrate(p, s0, o);
        const double r1 = kkt_residual(p, run.final_state);
        CHECK(r1 < r0);
        CHECK(r1 < 1e-4);
        CHECK(p.c.dot(run.final_state.x) ==
              doctest::Approx(oracle::to_double(exact.value)).epsilon(1e-4));

        // The exact optimum with its certificate is an equilibrium.
        LpState star;
        star.x.resize(5);
        star.z.resize(3);
        for (int i = 0; i < 5; ++i) {
            star.x(i) = oracle::to_double(exact.x[i]);
        }
        for (int i = 0; i < 3; ++i) {
            star.z(i) = oracle::to_double(exact.z[i]);
        }
        CHECK(kkt_residual(p, star) < 1e-12);
        CHECK(max_rate(projected_rhs(p, star)) < 1e-12);
    }
}

TEST_CASE("near-equilibrium samples are near-KKT") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 5; ++k) {
        const auto p = testing::random_bounded_lp(rng, 4, 2);
        IntegrateOptions o;
        o.t_final = 300.0;
        o.sampling.record = false;
        (void)integrate(p, {Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(2)}, o,
                        [&](double, const LpState& s, double r) {
                            if (max_rate(projected_rhs(p, s)) < 1e-8) {
                                CHECK(r < 1e-6);
                            }
                        });
    }
}

TEST_CASE("exact LP solver") {
    using namespace dyadic::oracle;
    ExactLp lp;
    lp.A = {{Rational(1), Rational(1)}};
    lp.b = {Rational(2)};
    lp.c = {Rational(1), Rational(3)};
    auto sol = solve_standard_form(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == 2);
    CHECK(sol.x == RationalVector{Rational(2), Rational(0)});
    CHECK(sol.z == RationalVector{Rational(-1)});

    lp.c = {Rational(-1), Rational(0)};
    lp.A = {{Rational(1), Rational(-1)}};
    lp.b = {Rational(0)};
    CHECK(solve_standard_form(lp).status == LpStatus::Unbounded);

    lp.A = {{Rational(1), Rational(1)}};
    lp.b = {Rational(-1)};
    lp.c = {Rational(1), Rational(1)};
    CHECK(solve_standard_form(lp).status == LpStatus::Infeasible);

    // Redundant rows are tolerated, contradictory ones detected.
    lp.A = {{Rational(1), Rational(1)}, {Rational(2), Rational(2)}};
    lp.b = {Rational(1), Rational(2)};
    CHECK(solve_standard_form(lp).status == LpStatus::Optimal);
    lp.b = {Rational(1), Rational(3)};
    CHECK(solve_standard_form(lp).status == LpStatus::Infeasible);
}

#include <doctest.h>

#include "finsec/errors.hpp"
#include "finsec/numerics/discretize.hpp"
#include "finsec/numerics/oracle.hpp"
#include "finsec/numerics/pnorm.hpp"
#include "finsec/numerics/probe.hpp"
#include "finsec/numerics/sweep.hpp"

#include "common/random_expr.hpp"

#include <cmath>

using namespace finsec;
using namespace finsec::numerics;

namespace {

using E = OperatorExpr;
using Mat = Eigen::MatrixXcd;

double rel(const Mat& a, const Mat& b) { return (a - b).norm() / b.norm(); }

PCSOSymbol gaussian_symbol(double width) {
    auto t = std::make_shared<GeneratorTable>();
    t->add(make_gaussian("w", width));
    return PCSOSymbol({SymbolTerm{StepFunction::constant(1.0), {{"w"}}}}, t);
}

}  // namespace

TEST_CASE("grid") {
    const Grid g(4.0, 16);
    CHECK(g.h() == doctest::Approx(0.5));
    CHECK(g.x(0) == doctest::Approx(-3.75));
    CHECK(g.x(15) == doctest::Approx(3.75));
    CHECK_THROWS_AS(Grid(4.0, 7), DomainError);
    CHECK_THROWS_AS(Grid(4.0, 6), DomainError);
    CHECK_THROWS_AS(Grid(0.0, 16), DomainError);
    CHECK_THROWS_AS(Grid(1.0, 16, 0), DomainError);

    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(16);
    CHECK(lp_norm(v, 2.0, g.h()) == doctest::Approx(std::sqrt(8.0)));
    CHECK(lp_norm(v, 3.0, g.h()) == doctest::Approx(std::cbrt(8.0)));
}

TEST_CASE("multiplications and masks") {
    const Grid g(5.0, 20);
    const auto m = discretize(E::mult(StepFunction::chi_plus()), g).m;
    CHECK((m - Mat(m.diagonal().asDiagonal())).norm() == 0.0);
    for (int j = 0; j < g.n; ++j) CHECK(m(j, j) == complex{g.x(j) > 0 ? 1.0 : 0.0});
    const auto w = window_mask(g, 2.0);
    for (int j = 0; j < g.n; ++j) CHECK(w(j) == complex{std::abs(g.x(j)) < 2.0 ? 1.0 : 0.0});
    CHECK_THROWS_AS(window_mask(g, 6.0), DiscretizationError);
    CHECK_THROWS_AS(discretize(E::projseq(), g), DomainError);
}

TEST_CASE("convolution by constants is a multiple of the identity") {
    const Grid g(10.0, 256);
    const auto one = discretize(E::conv(PCSOSymbol::constant(1.0)), g).m;
    CHECK((one - Mat::Identity(g.n, g.n)).cwiseAbs().maxCoeff() < 1e-10);
    const complex c{2.0, -0.5};
    CHECK((convolution_oracle(PCSOSymbol::constant(c), g) - c * Mat::Identity(g.n, g.n)).norm() == 0.0);
}

TEST_CASE("P_R is nearly a projection and matches the quadrature oracle") {
    const Grid g(20.0, 512);
    const auto m = convolution_matrix(PCSOSymbol::from_step(StepFunction::chi_minus()), g);
    CHECK((m * m - m).norm() / m.norm() < 0.05);
    const auto o = convolution_oracle(PCSOSymbol::from_step(StepFunction::chi_minus()), g);
    CHECK(rel(o, m) < 0.05);
    // P_R + Q_R = I.
    const auto q = convolution_matrix(PCSOSymbol::from_step(StepFunction::chi_plus()), g);
    CHECK((m + q - Mat::Identity(g.n, g.n)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("smooth decaying symbol: transform and quadrature agree") {
    const Grid g(20.0, 512);
    const auto b = gaussian_symbol(2.0);
    CHECK(rel(convolution_oracle(b, g), convolution_matrix(b, g)) < 1e-6);
}

TEST_CASE("discretize is linear and multiplicative") {
    testing::RandomExpr gen(3);
    const Grid g(8.0, 64);
    for (int k = 0; k < 20; ++k) {
        const auto x = gen.expr(2, false, true), y = gen.expr(2, false, true);
        const Mat mx = discretize(x, g).m, my = discretize(y, g).m;
        CHECK((discretize(x + y, g).m - (mx + my)).norm() <= 1e-10 * (1.0 + mx.norm() + my.norm()));
        CHECK((discretize(x * y, g).m - mx * my).norm() <= 1e-10 * (1.0 + mx.norm() * my.norm()));
        CHECK((discretize(complex{0.0, 2.0} * x, g).m - complex{0.0, 2.0} * mx).norm() <= 1e-10 * (1.0 + mx.norm()));
    }
}

TEST_CASE("shift, dilation and modulation") {
    const Grid g(8.0, 64);
    const auto f = sample(g, [](double x) { return complex{std::exp(-x * x)}; });
    const Eigen::VectorXcd vf = shift_matrix(g, 1.0) * f;
    for (int j = 0; j < g.n; ++j) {
        const double x = g.x(j);
        if (x - 1.0 > -g.tau) CHECK(std::abs(vf(j) - std::exp(-(x - 1.0) * (x - 1.0))) < 1e-14);
    }
    const Eigen::VectorXcd zf = dilation_matrix(g, 2.0, 2.0) * f;
    CHECK(std::abs(zf(g.n / 2) - std::exp(-g.x(g.n / 2) * g.x(g.n / 2) / 4) / std::sqrt(2.0)) < 1e-2);
    const Eigen::VectorXcd uf = modulation_matrix(g, 3.0) * f;
    for (int j = 0; j < g.n; ++j) CHECK(std::abs(uf(j) - std::polar(1.0, 3.0 * g.x(j)) * f(j)) < 1e-14);
}

TEST_CASE("p-norm estimates") {
    Mat d = Mat::Zero(4, 4);
    d.diagonal() << 1.0, -3.0, 2.0, complex{0.0, 0.5};
    for (double p : {1.5, 2.0, 4.0}) CHECK(estimate_pnorm(d, {.p = p}) == doctest::Approx(3.0).epsilon(1e-8));
    // ||A||_1 is the largest column sum; ||A||_inf the largest row sum.
    Mat a(3, 3);
    a << 1, -2, 0, 3, 1, 1, 0, 0, 4;
    CHECK(estimate_pnorm(a, {.p = 1.0 + 1e-9}) == doctest::Approx(5.0).epsilon(1e-4));
    Mat b = Mat::Random(30, 30);
    const auto [smin, smax] = singular_value_range(b);
    CHECK(estimate_pnorm(b, {.p = 2.0}) == doctest::Approx(smax).epsilon(1e-6));
    CHECK(estimate_pnorm(b, {.p = 3.0}) <= b.cwiseAbs().rowwise().sum().maxCoeff() + 1e-9);
    CHECK(estimate_pcond(b, {.p = 2.0}) == doctest::Approx(smax / smin).epsilon(1e-5));
    CHECK(std::isinf(estimate_pcond(Mat::Zero(3, 3), {})));
}

TEST_CASE("finite section matrices") {
    const Grid g(10.0, 80);
    const auto id = finite_section_matrix(E::ident(), 5.0, g).m;
    CHECK((id - Mat::Identity(g.n, g.n)).norm() == 0.0);
    const auto sgn = finite_section_matrix(E::mult(StepFunction::two_valued(-1.0, 1.0)), 5.0, g).m;
    for (int j = 0; j < g.n; ++j) {
        const double want = std::abs(g.x(j)) < 5.0 && g.x(j) < 0 ? -1.0 : 1.0;
        CHECK(sgn(j, j) == complex{want});
    }
    CHECK_THROWS_AS(finite_section_matrix(E::ident(), 10.0, g), DiscretizationError);

    const auto pr = E::conv(PCSOSymbol::from_step(StepFunction::chi_minus()));
    const Grid gp(20.0, 256);
    const Eigen::VectorXcd w = window_mask(gp, 10.0);
    const Mat direct = w.asDiagonal() * discretize(pr, gp).m * w.asDiagonal();
    Mat want = direct;
    want.diagonal() += Eigen::VectorXcd::Ones(gp.n) - w;
    CHECK((finite_section_matrix(pr, 10.0, gp).m - want).norm() < 1e-12);
}

TEST_CASE("finite sections of P_R inherit its kernel") {
    // P_R is a non-trivial projection, so P_tau P_R P_tau + Q_tau annihilates
    // (up to discretization) truncated functions with spectrum in (0, inf).
    const auto pr = E::conv(PCSOSymbol::from_step(StepFunction::chi_minus()));
    const auto s = cond_sweep(pr, {5.0, 10.0, 20.0}, 2.0, {.n = 256});
    for (const auto& r : s.records) CHECK(r.sigma_min < 1e-6);
    const auto pm = E::conv(PCSOSymbol::from_step(StepFunction::two_valued(1.0, 2.0)));
    const auto ok = cond_sweep(pm, {5.0, 10.0, 20.0}, 2.0, {.n = 256});
    for (const auto& r : ok.records) CHECK(r.sigma_min > 0.5);
}

TEST_CASE("cond_sweep") {
    const auto id = cond_sweep(E::ident(), {2.0, 4.0, 8.0}, 3.0, {.n = 64});
    REQUIRE(id.records.size() == 3);
    for (const auto& r : id.records) {
        CHECK(r.cond2 == doctest::Approx(1.0));
        CHECK(r.condp == doctest::Approx(1.0));
        CHECK(r.n == 64);
    }
    CHECK(id.cond_ratio == doctest::Approx(1.0));
    CHECK_THROWS_AS(cond_sweep(E::ident(), {4.0, 2.0}, 2.0, {.n = 64}), DomainError);

    const auto zero = cond_sweep(E::mult(StepFunction::constant(0.0)), {2.0}, 2.0, {.n = 64});
    CHECK(zero.any_singular);

    // Threads do not change the records.
    const auto pr = E::conv(PCSOSymbol::from_step(StepFunction::two_valued(1.0, 2.0)));
    const auto one = cond_sweep(pr, {2.0, 4.0, 8.0}, 2.0, {.n = 128}, 1, 1);
    const auto many = cond_sweep(pr, {2.0, 4.0, 8.0}, 2.0, {.n = 128}, 1, 3);
    CHECK(one.records == many.records);
}

TEST_CASE("solve_fsm") {
    auto f = [](double t) { return complex{std::exp(-t * t / 2)}; };
    const auto id = solve_fsm(E::ident(), f, {2.0, 4.0, 8.0}, 2.0, {.n = 256});
    REQUIRE(id.records.size() == 3);
    CHECK_FALSE(id.records.front().diff_norm);
    CHECK(id.final_residual < 1e-12);

    const auto a = StepFunction::two_valued(2.0, 3.0);
    const auto d = solve_fsm(E::mult(a), f, {2.0, 4.0, 8.0}, 2.0, {.n = 512});
    CHECK(d.records.back().diff_norm.value() < d.records[1].diff_norm.value());
    CHECK(d.diffs_strictly_decreasing);
    CHECK(d.final_residual < 1e-10);
}

TEST_CASE("empirical spectrum") {
    const Grid g(4.0, 16);
    const auto ev = empirical_spectrum(discretize(E::mult(StepFunction::two_valued(2.0, 3.0)), g));
    REQUIRE(ev.size() == 16);
    int twos = 0, threes = 0;
    for (auto z : ev) {
        twos += std::abs(z - 2.0) < 1e-12;
        threes += std::abs(z - 3.0) < 1e-12;
    }
    CHECK(twos == 8);
    CHECK(threes == 8);
}

TEST_CASE("strong-limit probes") {
    const StepFunction a({-1.0, 1.0}, {2.0, 5.0, 3.0});
    const auto seq = E::mult(a);
    const auto wm = probe_w(seq, -1, {10.0, 20.0});
    CHECK(wm.final_deviation < 1e-12);
    const auto wp = probe_w(E::projseq(), 1, {10.0, 20.0});
    CHECK(wp.final_deviation < 1e-12);
    const auto h = probe_h(E::mult(StepFunction::two_valued(2.0, 3.0)), 0.0, {10.0, 40.0}, 256);
    CHECK(h.final_deviation < 1e-12);
}

TEST_CASE("parallel_for visits every index once") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

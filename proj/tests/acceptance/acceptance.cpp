// Acceptance run: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs; the exit code is nonzero when any selected criterion fails.

#include "finsec/analyzer.hpp"
#include "finsec/errors.hpp"
#include "finsec/geometry.hpp"
#include "finsec/homomorphisms.hpp"
#include "finsec/numerics/discretize.hpp"
#include "finsec/numerics/oracle.hpp"
#include "finsec/numerics/probe.hpp"
#include "finsec/run.hpp"

#include "../common/random_expr.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace finsec;
using geometry::ArcCurve;
using geometry::CircularArc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok    " : "FAILED") + "  " + what);
    }
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// ---------------------------------------------------------------- geometry

// Distance from z to the family of arcs A_s(0,1), s between s_lo and s_hi,
// by grid sampling of (s, mu) followed by compass searches from the best
// samples. All arcs meet at 0 and 1, so one start is not enough there.
// With s_lo = s_hi this is the distance to a single arc.
double arc_family_distance(complex z, double s_lo, double s_hi) {
    auto s_of = [&](double t) { return 1.0 / ((1.0 - t) / s_hi + t / s_lo); };
    auto dist = [&](double t, double mu) { return std::abs(geometry::f_param(s_of(t), mu) - z); };
    const bool single = s_lo == s_hi;
    const int nt = single ? 1 : 9, nm = 33;
    std::vector<std::array<double, 3>> samples;
    for (int i = 0; i < nt; ++i)
        for (int k = 0; k < nm; ++k) {
            const double t = single ? 0.0 : i / double(nt - 1), mu = k / double(nm - 1);
            samples.push_back({dist(t, mu), t, mu});
        }
    std::partial_sort(samples.begin(), samples.begin() + 6, samples.end());
    double best = INFINITY;
    for (int start = 0; start < 6; ++start) {
        auto [d0, bt, bm] = samples[start];
        double cur = d0, st = single ? 0.0 : 1.0 / (nt - 1), sm = 1.0 / (nm - 1);
        while (sm > 1e-14) {
            bool moved = false;
            const double cand[4][2] = {{bt + st, bm}, {bt - st, bm}, {bt, bm + sm}, {bt, bm - sm}};
            for (const auto& c : cand) {
                const double t = std::clamp(c[0], 0.0, 1.0), mu = std::clamp(c[1], 0.0, 1.0);
                const double d = dist(t, mu);
                if (d < cur) cur = d, bt = t, bm = mu, moved = true;
            }
            if (!moved) st *= 0.5, sm *= 0.5;
        }
        best = std::min(best, cur);
    }
    return best;
}

Outcome geometry_suite() {
    Outcome o;
    std::mt19937_64 rng(101);
    auto U = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };

    bool endpoints = true;
    for (int i = 0; i < 200; ++i) {
        const double s = U(1.01, 12.0);
        endpoints = endpoints && geometry::f_param(s, 0.0) == complex{0.0} &&
                    std::abs(geometry::f_param(s, 1.0) - 1.0) <= 1e-12;
    }
    o.check(endpoints, "f_s(0) = 0 and f_s(1) = 1 for 200 random s");
    bool branch = std::abs(geometry::f_param(2.0, 0.3) - 0.3) == 0.0 &&
                  std::abs(geometry::f_param(4.0, 0.5) - complex{0.5, -0.5}) < 1e-12;
    for (double mu : {0.1, 0.37, 0.5, 0.9})
        for (double s : {2.0 - 1e-6, 2.0 + 1e-6}) branch = branch && std::abs(geometry::f_param(s, mu) - mu) < 1e-5;
    o.check(branch, "f_2 = mu, f_4(1/2) = (1-i)/2, continuity across s = 2");

    int contains = 0;
    for (int i = 0; i < 200; ++i) {
        const auto arc = CircularArc::make({U(-2, 2), U(-2, 2)}, {U(-2, 2), U(-2, 2)}, U(1.05, 8.0));
        contains += geometry::arc_contains(arc, geometry::arc_point(arc, U(0, 1)), 1e-9);
    }
    o.check(contains == 200, "arc_contains(arc_point) for 200 random arcs: " + std::to_string(contains) + "/200");

    const int N = 200;
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
        const double q = geometry::conjugate_exponent(p);
        const double s_lo = std::min(p, q), s_hi = std::max(p, q);
        int disagree = 0, banded = 0, inside = 0, asym = 0;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const complex z{-1.0 + 3.0 * i / (N - 1), -1.5 + 3.0 * k / (N - 1)};
                const bool closed = geometry::lens_contains(p, z);
                asym += closed != geometry::lens_contains(q, z);
                const double boundary = std::min(arc_family_distance(z, s_lo, s_lo), arc_family_distance(z, s_hi, s_hi));
                if (boundary < 1e-6) {
                    ++banded;
                    continue;
                }
                const bool oracle = arc_family_distance(z, s_lo, s_hi) < 1e-7;
                inside += oracle;
                disagree += closed != oracle;
            }
        o.check(disagree == 0, "p=" + num(p) + ": closed form vs arc sampling on 200x200, " + std::to_string(disagree) +
                                   " disagreements, " + std::to_string(inside) + " inside, " + std::to_string(banded) +
                                   " in band");
        o.check(asym == 0, "p=" + num(p) + ": lens_contains(p) = lens_contains(q) on the grid");
    }
    return o;
}

// ----------------------------------------------------------------- winding

int polygon_winding(const ArcCurve& c) {
    const auto pts = c.sample(4096);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) total += std::arg(pts[k + 1] / pts[k]);
    total += std::arg(pts.front() / pts.back());
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

Outcome winding_suite() {
    Outcome o;
    bool point = true;
    for (double p : {1.5, 2.0, 3.5})
        for (complex z : {complex{1.0}, complex{-0.3, 2.0}, complex{0.0, -1.0}})
            point = point && geometry::winding_about_origin(geometry::triple_curve(p, z, z, z)) == 0;
    o.check(point, "wind c_p(z,z,z) = 0");

    const auto c1 = geometry::triple_curve(2.0, 1.0, 2.0, 3.0);
    const auto c2 = geometry::triple_curve(2.0, 1.0, {-1.0, 1.0}, {-1.0, -1.0});
    const int w1 = geometry::winding_about_origin(c1), w2 = geometry::winding_about_origin(c2);
    o.check(w1 == 0 && polygon_winding(c1) == 0, "wind c_2(1,2,3) = " + std::to_string(w1) + " (polygon oracle 0)");
    o.check(w2 == 1 && polygon_winding(c2) == 1,
            "wind c_2(1,-1+i,-1-i) = " + std::to_string(w2) + " (polygon oracle 1)");

    std::mt19937_64 rng(202);
    auto U = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    int done = 0, oracle_ok = 0, rot_ok = 0, rev_ok = 0;
    while (done < 50) {
        const double p = U(1.2, 5.0);
        const complex z1{U(-2, 2), U(-2, 2)}, z2{U(-2, 2), U(-2, 2)}, z3{U(-2, 2), U(-2, 2)};
        const auto c = geometry::triple_curve(p, z1, z2, z3);
        int w;
        try {
            w = geometry::winding_about_origin(c, 1e-3);
        } catch (const CurveThroughOrigin&) {
            continue;
        }
        ++done;
        oracle_ok += w == polygon_winding(c);
        rot_ok += geometry::winding_about_origin(geometry::triple_curve(p, z2, z3, z1)) == w &&
                  geometry::winding_about_origin(c.rotated(2)) == w;
        rev_ok += geometry::winding_about_origin(c.reversed()) == -w;
    }
    o.check(oracle_ok == 50, "50 random triples agree with the polygon oracle: " + std::to_string(oracle_ok));
    o.check(rot_ok == 50, "cyclic rotation invariance: " + std::to_string(rot_ok) + "/50");
    o.check(rev_ok == 50, "reversal antisymmetry: " + std::to_string(rev_ok) + "/50");
    return o;
}

// ---------------------------------------------------------- spectrum of PQ

Outcome spectrum_pq() {
    Outcome o;
    const int N = 100;
    for (double p : {2.0, 4.0}) {
        std::vector<std::vector<int>> lens(N, std::vector<int>(N)), gk(N, std::vector<int>(N));
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const complex lambda{-0.5 + 0.02 * i, 0.02 * (k - 50)};
                lens[i][k] = geometry::lens_contains(p, lambda);
                const auto r = gk_one_sided(p, StepFunction::constant(1.0 - lambda), StepFunction::constant(-lambda),
                                            0.0, 1.0);
                gk[i][k] = r.cls != GkClass::invertible;
            }
        int outside_band = 0, in_band = 0, hits = 0;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                hits += gk[i][k];
                if (gk[i][k] == lens[i][k]) continue;
                bool mixed = false;
                for (int di = -2; di <= 2; ++di)
                    for (int dk = -2; dk <= 2; ++dk) {
                        const int a = i + di, b = k + dk;
                        if (a >= 0 && a < N && b >= 0 && b < N && lens[a][b] != lens[i][k]) mixed = true;
                    }
                (mixed ? in_band : outside_band)++;
            }
        o.check(outside_band == 0, "p=" + num(p) + ": non-invertible P(1-lambda) + Q(-lambda) at " +
                                       std::to_string(hits) + " points, " + std::to_string(outside_band) +
                                       " disagreements outside the 2-pixel band, " + std::to_string(in_band) +
                                       " inside it");
    }
    return o;
}

// -------------------------------------------------------------- symbol maps

bool close(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, double tol) {
    return (a - b).norm() <= tol * std::max(1.0, std::max(a.norm(), b.norm()));
}

Outcome symbol_maps() {
    Outcome o;
    testing::RandomExpr gen(404);
    const std::vector<complex> xs{0.5, {0.3, 0.2}, {0.7, -0.25}, 0.1, {0.5, -0.4}};
    int w_ok = 0, h_ok = 0, n_ok = 0;
    for (int t = 0; t < 100; ++t) {
        const auto e1 = gen.expr(3, true), e2 = gen.expr(3, true);
        const complex c = gen.value();
        const auto s = e1 + e2, m = e1 * e2, sc = c * e1;
        bool w = true;
        for (int i : {-1, 0, 1})
            w = w && w_image(s, i) == w_image(e1, i) + w_image(e2, i) &&
                w_image(m, i) == w_image(e1, i) * w_image(e2, i) && w_image(sc, i) == c * w_image(e1, i);
        w_ok += w;
        bool h = true;
        for (double eta : {-1.0, 0.0, 0.25, 1.0, 3.0})
            h = h && h_eta_image(s, eta) == h_eta_image(e1, eta) + h_eta_image(e2, eta) &&
                h_eta_image(m, eta) == h_eta_image(e1, eta) * h_eta_image(e2, eta) &&
                h_eta_image(sc, eta) == c * h_eta_image(e1, eta);
        h_ok += h;
        const auto fiber = gen.fiber();
        bool n = true;
        for (Side side : {Side::minus, Side::plus}) {
            const auto N1 = n_eta_matrix(e1, fiber, side), N2 = n_eta_matrix(e2, fiber, side);
            const auto Ns = n_eta_matrix(s, fiber, side), Nm = n_eta_matrix(m, fiber, side),
                       Nc = n_eta_matrix(sc, fiber, side);
            for (complex x : xs)
                n = n && close(Ns(x), N1(x) + N2(x), 1e-12) && close(Nm(x), N1(x) * N2(x), 1e-12) &&
                    close(Nc(x), c * N1(x), 1e-12);
        }
        n_ok += n;
    }
    o.check(w_ok == 100, "W_i laws (sum, product, scalar) on 100 random pairs: " + std::to_string(w_ok));
    o.check(h_ok == 100, "H_eta laws on 100 random pairs: " + std::to_string(h_ok));
    o.check(n_ok == 100, "N_eta laws on 100 random pairs: " + std::to_string(n_ok));

    double branch_dev = 0.0, fsm_dev = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto seq = gen.expr(4, true);
        const auto a = gen.expr(4, false);
        const auto fiber = gen.fiber();
        for (Side side : {Side::minus, Side::plus}) {
            const auto N = n_eta_matrix(seq, fiber, side);
            const auto NA = n_eta_matrix(a, fiber, side);
            const auto NF = n_eta_matrix(OperatorExpr::finite_section(a), fiber, side);
            for (complex x : xs) {
                const complex d1 = N.det(x, 1), d2 = N.det(x, -1);
                branch_dev = std::max(branch_dev, std::abs(d1 - d2) / std::max(1.0, std::abs(d1)));
                const complex f = NF.det(x), e = NA.entry11(x);
                fsm_dev = std::max(fsm_dev, std::abs(f - e) / std::max(1.0, std::abs(e)));
            }
        }
    }
    o.check(branch_dev < 1e-12, "det invariant under the branch flip of R: max deviation " + num(branch_dev));
    o.check(fsm_dev < 1e-12, "det N(PAP+Q) = [N(A)]_11 on 100 random A: max deviation " + num(fsm_dev));
    return o;
}

// --------------------------------------------------------- paired operators

const char* kPairedTemplate = R"json({
  "p": 2,
  "generators": [ { "id": "g", "kind": "gk", "k": 1 } ],
  "symbols": { "a": A_SYMBOL, "b": B_SYMBOL },
  "expression": { "kind": "sum", "terms": [
    { "kind": "prod", "factors": [ { "kind": "conv", "symbol": "a" },
                                   { "kind": "mult", "step": { "breakpoints": [0], "values": [1, 0] } } ] },
    { "kind": "prod", "factors": [ { "kind": "conv", "symbol": "b" },
                                   { "kind": "mult", "step": { "breakpoints": [0], "values": [0, 1] } } ] } ] },
  "fiber": { "strategy": "product", "resolution": 8 },
  "tau_list": [10, 20, 40, 80],
  "grid": { "n": 1024 },
  "rhs": "exp(-t^2/50)"
})json";

Config paired_config(const std::string& a, const std::string& b, const std::string& mode) {
    std::string text = kPairedTemplate;
    text.replace(text.find("A_SYMBOL"), 8, a);
    text.replace(text.find("B_SYMBOL"), 8, b);
    Config c = parse_config(text);
    c.mode = mode;
    return c;
}

RunResult run_mode(const Config& c) {
    RunOptions opt;
    opt.write_files = false;
    opt.threads = 4;
    return run(c, opt);
}

const std::string kOscillating = R"json({ "terms": [ { "breakpoints": [0], "values": [1, 0] },
                                                  { "breakpoints": [0], "values": [0, 1], "factors": ["g"] } ] })json";

Outcome paired_end_to_end() {
    Outcome o;
    {
        const auto r = run_mode(paired_config("1", "1", "fsm"));
        const bool ok = r.exit_code == 0 && r.report && r.report->stability->verdict_text() == "applies";
        o.check(ok, "(i) a=b=1: fsm verdict '" + (r.report ? r.report->stability->verdict_text() : r.message) + "'");
    }
    {
        const auto f = run_mode(paired_config("1", "-1", "fsm"));
        o.check(f.exit_code == 0 && f.report && f.report->stability->verdict_text() == "applies",
                "(ii) a=1, b=-1: fsm verdict '" + (f.report ? f.report->stability->verdict_text() : f.message) + "'");
        const auto s = run_mode(paired_config("1", "-1", "simulate"));
        const bool ok = s.exit_code == 0 && s.report && s.report->sweep && s.report->sweep->cond_ratio < 3.0;
        o.check(ok, "(ii) cond_2 over tau in {10,20,40,80} at n=1024 varies by " +
                        (s.report ? num(s.report->sweep->cond_ratio) : s.message) + "x (< 3)");
    }
    {
        const auto f = run_mode(paired_config(kOscillating, "-1", "fsm"));
        bool witness = false;
        std::string where = "none";
        if (f.report) {
            if (const auto w = f.report->stability->witness(); w && w->fiber && w->witness_x) {
                const complex eta = w->fiber->at("g");
                witness = w->condition == Condition::c && std::abs(eta + 1.0) < 1e-9 &&
                          std::abs(*w->witness_x - 0.5) < 1e-6;
                where = "x=" + num(w->witness_x->real()) + ", eta(g)=" + num(eta.real());
            }
        }
        o.check(f.exit_code == 0 && f.report && f.report->stability->verdict_text() == "does not apply" && witness,
                "(iii) a=chi_- + g chi_+: '" + (f.report ? f.report->stability->verdict_text() : f.message) +
                    "', witness " + where);
        const auto s = run_mode(paired_config(kOscillating, "-1", "simulate"));
        const double drop = s.report ? s.report->sweep->sigma_drop : 0.0;
        o.check(s.exit_code == 0 && drop >= 10.0, "(iii) sigma_min shrinks " + num(drop) + "x from tau=10 to tau=80");
    }
    return o;
}

// ------------------------------------------------------------ spectrum cloud

Outcome spectrum_cloud() {
    Outcome o;
    const char* text = R"json({
      "p": 2, "mode": "spectrum",
      "symbols": { "P": { "breakpoints": [0], "values": [1, 0] }, "Q": { "breakpoints": [0], "values": [0, 1] } },
      "expression": { "kind": "sum", "terms": [
        { "kind": "prod", "factors": [ { "kind": "mult", "step": { "breakpoints": [0], "values": [0, 1] } },
                                       { "kind": "conv", "symbol": "P" },
                                       { "kind": "mult", "step": { "breakpoints": [0], "values": [0, 1] } } ] },
        { "kind": "prod", "factors": [ { "kind": "mult", "step": { "breakpoints": [0], "values": [1, 0] } },
                                       { "kind": "conv", "symbol": "Q" },
                                       { "kind": "mult", "step": { "breakpoints": [0], "values": [1, 0] } } ] } ] },
      "spectrum": { "tau": 20 }, "grid": { "n": 512 }
    })json";
    const auto r = run_mode(parse_config(text));
    const double frac = r.report && r.report->spectrum ? r.report->spectrum->fraction_near_lens : 0.0;
    o.check(r.exit_code == 0 && frac >= 0.95,
            num(100.0 * frac) + "% of " + std::to_string(r.report ? r.report->spectrum->count : 0) +
                " eigenvalues within 0.15 of [0,1]");
    return o;
}

// ------------------------------------------------------------------ oracle

Outcome oracle_equivalence() {
    Outcome o;
    const numerics::Grid g(20.0, 512, 4);
    auto rel = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).norm() / b.norm(); };
    const auto chi = PCSOSymbol::from_step(StepFunction::chi_minus());
    const double e1 = rel(numerics::convolution_matrix(chi, g), numerics::convolution_oracle(chi, g));
    o.check(e1 < 0.05, "chi_-: relative Frobenius difference " + num(e1) + " (< 0.05)");
    const auto c = PCSOSymbol::constant({2.5, -1.0});
    const double e2 = (numerics::convolution_matrix(c, g) - numerics::convolution_oracle(c, g)).norm();
    o.check(e2 < 1e-10, "constant symbol: Frobenius difference " + num(e2) + " (< 1e-10)");
    return o;
}

// ------------------------------------------------------------------ probes

std::string trail(const numerics::ProbeResult& r) {
    std::string s;
    for (const auto& x : r.records) s += (s.empty() ? "" : ", ") + num(x.deviation);
    return s;
}

Outcome strong_limits() {
    Outcome o;
    const std::vector<double> taus{10.0, 20.0, 40.0, 80.0};
    for (int i : {-1, 1}) {
        const auto r = numerics::probe_w(OperatorExpr::projseq(), i, taus);
        o.check(r.monotone && r.final_deviation < 1e-8,
                "(P_tau) shifted towards " + std::string(i < 0 ? "-inf" : "+inf") + ": " + trail(r));
    }
    const auto rp = numerics::probe_h(OperatorExpr::projseq(), 0.5, taus);
    o.check(rp.monotone && rp.final_deviation < 1e-8, "(P_tau) homogenized at eta=0.5: " + trail(rp));
    const auto b = PCSOSymbol::from_step(StepFunction({0.0, 1.0}, {1.0, 0.0, 2.0}));
    for (double eta : {0.0, 1.0}) {
        const auto r = numerics::probe_h(OperatorExpr::conv(b), eta, taus, 1024);
        o.check(r.monotone && r.final_deviation < 0.05,
                "W0(b), b with jumps at 0 and 1, homogenized at eta=" + num(eta) + ": " + trail(r));
    }
    return o;
}

// ------------------------------------------------------------- convergence

Outcome fsm_convergence() {
    Outcome o;
    const auto r = run_mode(paired_config("1", "-1", "simulate"));
    if (!r.report || !r.report->convergence) {
        o.check(false, "simulate failed: " + r.message);
        return o;
    }
    const auto& c = *r.report->convergence;
    std::string diffs;
    for (const auto& x : c.records)
        if (x.diff_norm) diffs += (diffs.empty() ? "" : ", ") + num(*x.diff_norm);
    o.check(c.final_residual < 1e-6, "residual at tau=80: " + num(c.final_residual) + " (< 1e-6)");
    o.check(c.diffs_strictly_decreasing, "successive differences strictly decreasing: " + diffs);
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> body;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "geometry suite", geometry_suite},
        {2, "winding suite", winding_suite},
        {3, "spectrum of P + Q(-lambda) vs lens", spectrum_pq},
        {4, "symbol-map suite", symbol_maps},
        {5, "paired operators end to end", paired_end_to_end},
        {6, "spectrum cloud", spectrum_cloud},
        {7, "oracle equivalence", oracle_equivalence},
        {8, "strong-limit probes", strong_limits},
        {9, "finite section convergence", fsm_convergence},
    };
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool ok = true;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
        std::printf("%s  criterion %d  %s  (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs);
        std::fflush(stdout);
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}

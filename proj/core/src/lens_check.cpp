#include "finsec/lens_check.hpp"

#include "finsec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace finsec {

namespace geo = finsec::geometry;

namespace {

struct Sample {
    complex x;
    double mod;
};

std::optional<complex> newton(const std::function<complex(complex)>& f, complex x, double scale) {
    for (int it = 0; it < 60; ++it) {
        const complex fx = f(x);
        if (std::abs(fx) <= 1e-13 * scale) return x;
        const double step = 1e-6 * (1.0 + std::abs(x));
        const complex df = (f(x + step) - f(x - step)) / (2.0 * step);
        if (std::abs(df) == 0.0) return std::nullopt;
        x -= fx / df;
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || std::abs(x) > 10.0) return std::nullopt;
    }
    return std::abs(f(x)) <= 1e-10 * scale ? std::optional<complex>(x) : std::nullopt;
}

// Argument increment of f along one arc, bisecting until steps are below pi/4.
// Returns false if |f| drops to `tol` somewhere on the way.
bool arc_increment(const std::function<complex(complex)>& f, const geo::CircularArc& arc, double tol,
                   double& total, Sample& worst) {
    constexpr int kSeeds = 64;
    auto eval = [&](double mu) {
        const complex x = geo::arc_point(arc, mu);
        const complex v = f(x);
        if (std::abs(v) < worst.mod) worst = {x, std::abs(v)};
        return v;
    };
    bool ok = true;
    std::function<void(double, complex, double, complex, int)> rec = [&](double m0, complex v0, double m1,
                                                                        complex v1, int depth) {
        if (!ok) return;
        const double d = std::arg(v1 / v0);
        if (std::abs(d) < M_PI / 4 || depth > 40) {
            total += d;
            return;
        }
        const double mm = 0.5 * (m0 + m1);
        const complex vm = eval(mm);
        if (std::abs(vm) <= tol) {
            ok = false;
            return;
        }
        rec(m0, v0, mm, vm, depth + 1);
        rec(mm, vm, m1, v1, depth + 1);
    };
    complex prev = eval(0.0);
    if (std::abs(prev) <= tol) return false;
    for (int k = 1; k <= kSeeds && ok; ++k) {
        const double mu = static_cast<double>(k) / kSeeds;
        const complex v = eval(mu);
        if (std::abs(v) <= tol) return false;
        rec(static_cast<double>(k - 1) / kSeeds, prev, mu, v, 0);
        prev = v;
    }
    return ok;
}

}  // namespace

LensCheck det_nonvanishing_on_lens(const std::function<complex(complex)>& f, double p, const LensCheckOptions& opt) {
    const geo::LensDomain lens(p);
    std::vector<Sample> samples;
    auto add = [&](complex x) { samples.push_back({x, std::abs(f(x))}); };

    if (lens.is_segment()) {
        for (int k = 0; k < opt.segment_points; ++k) add(static_cast<double>(k) / (opt.segment_points - 1));
    } else {
        for (int i = 0; i < opt.interior_t; ++i)
            for (int j = 0; j < opt.interior_mu; ++j)
                add(lens.interior_point(static_cast<double>(i) / (opt.interior_t - 1),
                                        static_cast<double>(j) / (opt.interior_mu - 1)));
    }
    double scale = 1.0;
    for (const auto& s : samples) scale = std::max(scale, s.mod);
    const double tol = opt.rel_tol * scale;

    LensCheck out;
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.mod < b.mod; });
    Sample worst = samples.front();

    // A zero near one of the smallest samples.
    for (std::size_t k = 0; k < std::min<std::size_t>(5, samples.size()); ++k) {
        if (auto r = newton(f, samples[k].x, scale); r && lens.contains(*r, 1e-7)) {
            out.witness = *r;
            out.detail = "zero located by Newton iteration";
            return out;
        }
    }

    std::ostringstream os;
    if (!lens.is_segment()) {
        double total = 0.0;
        bool clean = true;
        const auto boundary = lens.boundary();
        for (const auto& arc : boundary.arcs()) clean = clean && arc_increment(f, arc, tol, total, worst);
        if (!clean) {
            out.witness = worst.x;
            out.detail = "zero on the lens boundary";
            return out;
        }
        out.zero_count = static_cast<int>(std::lround(total / (2.0 * M_PI)));
        if (out.zero_count != 0) {
            out.witness = samples.front().x;
            os << out.zero_count << " zero(s) inside the boundary";
            out.detail = os.str();
            return out;
        }
        os << "argument principle: no zeros; ";
    }
    out.margin = std::min(worst.mod, samples.front().mod);
    if (out.margin <= tol) {
        out.witness = worst.mod <= samples.front().mod ? worst.x : samples.front().x;
        out.detail = "sampled modulus below tolerance";
        out.margin = 0.0;
        return out;
    }
    out.passed = true;
    os << "min |f| = " << out.margin;
    out.detail = os.str();
    return out;
}

LensCheck det_nonvanishing_on_lens(const SymbolMatrix2& m, double p, const LensCheckOptions& opt) {
    return det_nonvanishing_on_lens([&m](complex x) { return m.det(x); }, p, opt);
}

}  // namespace finsec

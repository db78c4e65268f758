#include "finsec/errors.hpp"
#include "finsec/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace finsec {

namespace {

double horner(const std::vector<double>& c, double t) {
    double acc = 0.0;
    for (double x : c) acc = acc * t + x;
    return acc;
}

std::vector<complex> trajectory_values(const SOGenerator& g, const ClusterSampled& s, int count) {
    std::vector<complex> out;
    const int n = std::max(1, std::min(count, s.steps));
    // Take the tail of the trajectory, where the generator is closest to its partial limits.
    double t = s.tau0 * std::pow(s.rho, s.steps - n);
    for (int i = 0; i < n; ++i, t *= s.rho) out.push_back(g(t));
    return out;
}

}  // namespace

std::vector<complex> SOGenerator::cluster_grid(int resolution) const {
    resolution = std::max(resolution, 1);
    return std::visit(
        [&](const auto& c) -> std::vector<complex> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ClusterPoint>) {
                return {c.c};
            } else if constexpr (std::is_same_v<T, ClusterCircle>) {
                std::vector<complex> v;
                for (int k = 0; k < resolution; ++k)
                    v.push_back(c.center + std::polar(c.radius, 2.0 * std::numbers::pi * k / resolution));
                return v;
            } else if constexpr (std::is_same_v<T, ClusterFinite>) {
                return c.points;
            } else {
                return trajectory_values(*this, c, resolution);
            }
        },
        cluster);
}

bool SOGenerator::cluster_contains(complex v, double tol) const {
    return std::visit(
        [&](const auto& c) -> bool {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ClusterPoint>) {
                return std::abs(v - c.c) <= tol;
            } else if constexpr (std::is_same_v<T, ClusterCircle>) {
                return std::abs(std::abs(v - c.center) - c.radius) <= tol;
            } else if constexpr (std::is_same_v<T, ClusterFinite>) {
                return std::any_of(c.points.begin(), c.points.end(),
                                   [&](complex w) { return std::abs(v - w) <= tol; });
            } else {
                // Sampled clusters are only known approximately; accept anything
                // within the spread of the trajectory tail.
                const auto pts = trajectory_values(*this, c, c.steps);
                double best = std::numeric_limits<double>::infinity();
                for (const auto& w : pts) best = std::min(best, std::abs(v - w));
                return best <= std::max(tol, 1e-2);
            }
        },
        cluster);
}

SOGenerator make_gk(const std::string& id, int k) {
    if (k < 1) throw DomainError("g_k needs k >= 1");
    SOGenerator g;
    g.id = id;
    g.evaluator = [k](double t) {
        const double t2 = t * t;
        const double mod = t2 / (t2 + 1.0);
        const double phase = std::sqrt(std::log1p(std::pow(t2, k)));
        return std::polar(mod, phase);
    };
    g.cluster = ClusterCircle{0.0, 1.0};
    return g;
}

SOGenerator make_rational(const std::string& id, std::vector<double> num, std::vector<double> den) {
    auto trim = [](std::vector<double>& c) {
        while (c.size() > 1 && c.front() == 0.0) c.erase(c.begin());
    };
    trim(num);
    trim(den);
    if (num.empty() || den.empty() || den.front() == 0.0) throw DomainError("rational generator needs a nonzero denominator");
    if (num.size() > den.size()) throw DomainError("rational generator must be bounded at infinity");
    const double limit = num.size() == den.size() ? num.front() / den.front() : 0.0;
    SOGenerator g;
    g.id = id;
    g.evaluator = [num, den](double t) { return complex{horner(num, t) / horner(den, t), 0.0}; };
    g.cluster = ClusterPoint{limit};
    return g;
}

SOGenerator make_gaussian(const std::string& id, double width) {
    if (!(width > 0.0)) throw DomainError("gaussian width must be positive");
    SOGenerator g;
    g.id = id;
    g.evaluator = [width](double t) { return complex{std::exp(-(t / width) * (t / width)), 0.0}; };
    g.cluster = ClusterPoint{0.0};
    g.decaying = true;
    return g;
}

SOGenerator make_phase(const std::string& id, const std::string& psi, ClusterSet cluster) {
    const ScalarExpression expr(psi);
    SOGenerator g;
    g.id = id;
    g.evaluator = [expr](double t) { return std::polar(1.0, expr(t)); };
    g.cluster = std::move(cluster);
    return g;
}

void GeneratorTable::add(SOGenerator g) {
    if (g.id.empty()) throw DomainError("generator id must not be empty");
    const std::string id = g.id;
    if (table_.count(id)) throw DomainError("duplicate generator id '" + id + "'");
    table_[id] = std::make_shared<const SOGenerator>(std::move(g));
}

const SOGenerator& GeneratorTable::get(const std::string& id) const {
    const auto it = table_.find(id);
    if (it == table_.end()) throw UnknownGenerator(id);
    return *it->second;
}

std::vector<std::string> GeneratorTable::ids() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : table_) out.push_back(k);
    return out;
}

std::shared_ptr<const GeneratorTable> GeneratorTable::merge(const std::shared_ptr<const GeneratorTable>& a,
                                                            const std::shared_ptr<const GeneratorTable>& b) {
    if (!a || a == b) return b;
    if (!b) return a;
    auto out = std::make_shared<GeneratorTable>(*a);
    for (const auto& [id, g] : b->table_) {
        const auto it = out->table_.find(id);
        if (it == out->table_.end()) out->table_[id] = g;
        else if (it->second != g) throw DomainError("generator id '" + id + "' bound to two different generators");
    }
    return out;
}

}  // namespace finsec

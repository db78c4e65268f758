#include "finsec/errors.hpp"
#include "finsec/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finsec {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<complex> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
    if (values_.size() != breaks_.size() + 1)
        throw DomainError("step function needs one more value than breakpoints");
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        if (!std::isfinite(breaks_[i])) throw DomainError("breakpoints must be finite");
        if (i > 0 && !(breaks_[i] > breaks_[i - 1]))
            throw DomainError("breakpoints must be strictly increasing");
    }
}

StepFunction StepFunction::indicator(double a, double b) {
    const double inf = std::numeric_limits<double>::infinity();
    if (!(a < b)) throw DomainError("indicator needs a < b");
    if (a == -inf && b == inf) return constant(1.0);
    if (a == -inf) return StepFunction({b}, {1.0, 0.0});
    if (b == inf) return StepFunction({a}, {0.0, 1.0});
    return StepFunction({a, b}, {0.0, 1.0, 0.0});
}

complex StepFunction::operator()(double t) const {
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    return values_[static_cast<std::size_t>(it - breaks_.begin())];
}

std::pair<complex, complex> StepFunction::one_sided_limits(double t) const {
    const auto lo = std::lower_bound(breaks_.begin(), breaks_.end(), t);
    const auto hi = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    return {values_[static_cast<std::size_t>(lo - breaks_.begin())],
            values_[static_cast<std::size_t>(hi - breaks_.begin())]};
}

bool StepFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](complex v) { return v == complex{0.0}; });
}

double StepFunction::min_modulus() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : values_) m = std::min(m, std::abs(v));
    return m;
}

StepFunction StepFunction::reflect() const {
    std::vector<double> b(breaks_.rbegin(), breaks_.rend());
    for (auto& x : b) x = -x;
    return StepFunction(std::move(b), std::vector<complex>(values_.rbegin(), values_.rend()));
}

StepFunction StepFunction::simplified() const {
    std::vector<double> b;
    std::vector<complex> v{values_.front()};
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        if (values_[i + 1] == v.back()) continue;
        b.push_back(breaks_[i]);
        v.push_back(values_[i + 1]);
    }
    return StepFunction(std::move(b), std::move(v));
}

StepFunction StepFunction::conj() const {
    std::vector<complex> v(values_);
    for (auto& x : v) x = std::conj(x);
    return StepFunction(breaks_, std::move(v));
}

namespace {

template <class Op>
StepFunction combine(const StepFunction& a, const StepFunction& b, Op op) {
    std::vector<double> br;
    std::set_union(a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin(),
                   b.breakpoints().end(), std::back_inserter(br));
    std::vector<complex> v;
    v.reserve(br.size() + 1);
    v.push_back(op(a.at_minus_inf(), b.at_minus_inf()));
    for (double x : br) v.push_back(op(a(x), b(x)));
    return StepFunction(std::move(br), std::move(v)).simplified();
}

}  // namespace

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
    return combine(a, b, [](complex x, complex y) { return x + y; });
}

StepFunction operator*(const StepFunction& a, const StepFunction& b) {
    return combine(a, b, [](complex x, complex y) { return x * y; });
}

StepFunction operator*(complex c, const StepFunction& a) {
    std::vector<complex> v(a.values());
    for (auto& x : v) x *= c;
    return StepFunction(a.breakpoints(), std::move(v)).simplified();
}

}  // namespace finsec

#pragma once

// Piecewise constant functions, slowly oscillating generators and the
// symbols built from them: finite sums of (step function) x (product of
// SO generators).

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace finsec {

using complex = std::complex<double>;

class StepFunction {
public:
    StepFunction() : values_{complex{0.0}} {}
    /// Throws DomainError unless breakpoints are strictly increasing and
    /// values.size() == breakpoints.size() + 1.
    StepFunction(std::vector<double> breakpoints, std::vector<complex> values);

    static StepFunction constant(complex c) { return StepFunction({}, {c}); }
    static StepFunction chi_minus() { return StepFunction({0.0}, {1.0, 0.0}); }
    static StepFunction chi_plus() { return StepFunction({0.0}, {0.0, 1.0}); }
    /// Characteristic function of (a, b); a may be -inf and b may be +inf.
    static StepFunction indicator(double a, double b);
    /// a_minus * chi_- + a_plus * chi_+.
    static StepFunction two_valued(complex a_minus, complex a_plus) {
        return StepFunction({0.0}, {a_minus, a_plus});
    }

    const std::vector<double>& breakpoints() const noexcept { return breaks_; }
    const std::vector<complex>& values() const noexcept { return values_; }

    /// Value at t; right limit at a breakpoint.
    complex operator()(double t) const;
    std::pair<complex, complex> one_sided_limits(double t) const;
    complex at_minus_inf() const { return values_.front(); }
    complex at_plus_inf() const { return values_.back(); }

    bool is_constant() const noexcept { return breaks_.empty(); }
    bool is_zero() const;
    /// Smallest modulus over all values (the essential infimum of |a|).
    double min_modulus() const;

    /// x -> f(-x)
    StepFunction reflect() const;
    /// Drops breakpoints across which the value does not change.
    StepFunction simplified() const;
    StepFunction conj() const;

    friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
    friend StepFunction operator*(const StepFunction& a, const StepFunction& b);
    friend StepFunction operator*(complex c, const StepFunction& a);
    friend StepFunction operator-(const StepFunction& a, const StepFunction& b) {
        return a + complex{-1.0} * b;
    }
    friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
    std::vector<double> breaks_;
    std::vector<complex> values_;
};

/// Declared set of partial limits of an SO generator at infinity.
struct ClusterPoint {
    complex c;
    friend bool operator==(const ClusterPoint&, const ClusterPoint&) = default;
};
struct ClusterCircle {
    complex center;
    double radius = 1.0;
    friend bool operator==(const ClusterCircle&, const ClusterCircle&) = default;
};
struct ClusterFinite {
    std::vector<complex> points;
    friend bool operator==(const ClusterFinite&, const ClusterFinite&) = default;
};
/// Partial limits estimated along the trajectory t_n = tau0 * rho^n, n < steps.
struct ClusterSampled {
    double tau0 = 2.0;
    double rho = 1.5;
    int steps = 256;
    friend bool operator==(const ClusterSampled&, const ClusterSampled&) = default;
};
using ClusterSet = std::variant<ClusterPoint, ClusterCircle, ClusterFinite, ClusterSampled>;

struct SOGenerator {
    std::string id;
    std::function<complex(double)> evaluator;
    ClusterSet cluster;
    /// True when g - lim g has an integrable Fourier kernel (used by the quadrature oracle).
    bool decaying = false;

    complex operator()(double t) const { return evaluator(t); }
    /// Cluster points this generator offers for fiber sampling.
    std::vector<complex> cluster_grid(int resolution) const;
    bool cluster_contains(complex v, double tol = 1e-6) const;
};

/// t^2/(t^2+1) * exp(i sqrt(log(t^{2k}+1))); cluster is the unit circle.
SOGenerator make_gk(const std::string& id, int k);
/// Ratio of real polynomials (coefficients highest degree first); needs deg num <= deg den.
SOGenerator make_rational(const std::string& id, std::vector<double> num, std::vector<double> den);
/// exp(-(t/width)^2); Point(0) cluster.
SOGenerator make_gaussian(const std::string& id, double width);
/// exp(i psi(t)) with psi given as an expression in t.
SOGenerator make_phase(const std::string& id, const std::string& psi, ClusterSet cluster);

class GeneratorTable {
public:
    /// Throws DomainError for an empty or already used id.
    void add(SOGenerator g);
    const SOGenerator& get(const std::string& id) const;
    bool contains(const std::string& id) const { return table_.count(id) != 0; }
    std::vector<std::string> ids() const;
    /// Union of two tables; ids present in both must refer to the same generator object.
    static std::shared_ptr<const GeneratorTable> merge(const std::shared_ptr<const GeneratorTable>& a,
                                                       const std::shared_ptr<const GeneratorTable>& b);

private:
    std::map<std::string, std::shared_ptr<const SOGenerator>> table_;
};

using FiberAssignment = std::map<std::string, complex>;

/// One SO factor of a term; `reflected` evaluates g(-t). Reflection does
/// not change the value at a fiber point because g(-t) - g(t) -> 0.
struct SOFactor {
    std::string id;
    bool reflected = false;
    friend auto operator<=>(const SOFactor&, const SOFactor&) = default;
};

struct SymbolTerm {
    StepFunction pc;
    std::vector<SOFactor> so;
};

class PCSOSymbol {
public:
    PCSOSymbol() = default;
    PCSOSymbol(std::vector<SymbolTerm> terms, std::shared_ptr<const GeneratorTable> table);
    static PCSOSymbol from_step(StepFunction s);
    static PCSOSymbol constant(complex c) { return from_step(StepFunction::constant(c)); }

    const std::vector<SymbolTerm>& terms() const noexcept { return terms_; }
    const std::shared_ptr<const GeneratorTable>& table() const noexcept { return table_; }

    /// Evaluation with the right-limit convention at breakpoints.
    complex operator()(double t) const;
    std::pair<complex, complex> one_sided_limits(double eta) const;
    /// (b_eta(-inf), b_eta(+inf)); throws MissingAssignment, or FiberError when
    /// an assigned value is farther than `cluster_tol` from the declared cluster.
    std::pair<complex, complex> fiber_values(const FiberAssignment& fiber, double cluster_tol = 1e-6) const;
    StepFunction gamma_eta(const FiberAssignment& fiber, double cluster_tol = 1e-6) const;
    PCSOSymbol reflect() const;

    bool is_pure_pc() const;
    /// Collapsed step function; throws DomainError when SO factors are present.
    StepFunction as_step() const;
    /// Sorted union of the breakpoints of all step parts.
    std::vector<double> breakpoints() const;
    std::vector<std::string> generator_ids() const;
    /// Merges terms with equal factor lists and drops zero terms.
    PCSOSymbol canonical() const;
    bool is_zero() const { return canonical().terms_.empty(); }

    friend PCSOSymbol operator+(const PCSOSymbol& a, const PCSOSymbol& b);
    friend PCSOSymbol operator*(const PCSOSymbol& a, const PCSOSymbol& b);
    friend PCSOSymbol operator*(complex c, const PCSOSymbol& a);
    friend PCSOSymbol operator-(const PCSOSymbol& a, const PCSOSymbol& b) {
        return a + complex{-1.0} * b;
    }
    /// Structural equality of canonical forms.
    friend bool same_symbol(const PCSOSymbol& a, const PCSOSymbol& b);

private:
    std::vector<SymbolTerm> terms_;
    std::shared_ptr<const GeneratorTable> table_;
};

enum class FiberStrategy { product, trajectory };

struct FiberSampling {
    FiberStrategy strategy = FiberStrategy::product;
    int resolution = 64;
    double tau0 = 2.0;
    double rho = 1.5;
};

/// Fiber points over infinity for all generators used by `symbols`. With no
/// generators a single empty assignment is returned.
std::vector<FiberAssignment> sample_fibers(const std::vector<PCSOSymbol>& symbols, const FiberSampling& cfg);

/// Real-valued expression in one variable `t`: + - * / ^, unary minus,
/// parentheses, pi, e and sin cos tan exp log sqrt abs atan sinh cosh tanh.
class ScalarExpression {
public:
    explicit ScalarExpression(const std::string& text);
    double operator()(double t) const;
    const std::string& text() const noexcept { return text_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace finsec

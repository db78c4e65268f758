#pragma once

// Run configuration: JSON-compatible text, parsed into plain structs and
// validated (unknown keys rejected with their path, symbol references
// resolved). The JSON library stays inside the implementation.

#include "finsec/analyzer.hpp"
#include "finsec/numerics/sweep.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace finsec {

struct GeneratorSpec {
    std::string id;
    /// gk | rational | gaussian | phase
    std::string kind = "gk";
    int k = 1;
    std::vector<double> num, den;
    double width = 1.0;
    std::string psi;
    ClusterSet cluster = ClusterSampled{};

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct TermSpec {
    std::vector<double> breakpoints;
    std::vector<complex> values{complex{1.0}};
    /// Generator ids; a leading '~' selects the reflected generator g(-t).
    std::vector<std::string> factors;

    friend bool operator==(const TermSpec&, const TermSpec&) = default;
};

struct SymbolSpec {
    std::string name;
    std::vector<TermSpec> terms;

    friend bool operator==(const SymbolSpec&, const SymbolSpec&) = default;
};

struct StepSpec {
    std::vector<double> breakpoints;
    std::vector<complex> values;

    friend bool operator==(const StepSpec&, const StepSpec&) = default;
};

struct ExprNode {
    /// ident | projseq | mult | conv | scale | sum | prod
    std::string kind = "ident";
    /// Symbol name for conv, and for mult when `step` is absent (must be pure PC).
    std::string symbol;
    std::optional<StepSpec> step;
    complex value{1.0};
    std::vector<ExprNode> children;

    friend bool operator==(const ExprNode&, const ExprNode&) = default;
};

struct GridSpec {
    int n = 1024;
    int padding = 4;
    double tau_ratio = 2.0;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Tolerances {
    double zero = 1e-9;
    double cluster = 1e-6;
    double lens_rel = 1e-9;

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct Thresholds {
    /// Largest acceptable max/min ratio of cond_2 across a sweep of a stable sequence.
    double cond_ratio = 3.0;
    /// sigma_min drop that counts as unbounded inverses.
    double sigma_drop = 10.0;
    /// Distance to the lens within which an eigenvalue counts as inside.
    double spectrum_distance = 0.15;

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct FiberSpec {
    FiberStrategy strategy = FiberStrategy::product;
    int resolution = 64;
    double tau0 = 2.0;
    double rho = 1.5;

    friend bool operator==(const FiberSpec&, const FiberSpec&) = default;
};

struct Config {
    double p = 2.0;
    /// analyze | fsm | simulate | spectrum
    std::string mode = "analyze";
    std::vector<GeneratorSpec> generators;
    std::vector<SymbolSpec> symbols;
    ExprNode expression;
    FiberSpec fiber;
    std::vector<double> tau_list{10.0, 20.0, 40.0, 80.0};
    GridSpec grid;
    /// Window radius for spectrum mode.
    double spectrum_tau = 20.0;
    Tolerances tolerances;
    Thresholds thresholds;
    std::string output = "finsec_out";
    /// Right-hand side f(t) for simulate mode (real expression in t).
    std::string rhs = "exp(-t^2/2)";
    std::uint64_t seed = 20240917;

    friend bool operator==(const Config&, const Config&) = default;
};

/// Throws ConfigError naming the offending key path (or undefined symbol).
Config parse_config(const std::string& text);
std::string serialize_config(const Config& cfg);

struct Model {
    std::shared_ptr<const GeneratorTable> table;
    std::map<std::string, PCSOSymbol> symbols;
    OperatorExpr expr;
};

/// Instantiates generators, symbols and the expression. Throws ConfigError.
Model build_model(const Config& cfg);

AnalyzerConfig analyzer_config(const Config& cfg, int threads = 1);
numerics::GridPolicy grid_policy(const Config& cfg);

}  // namespace finsec

#pragma once

// Stability of sequences in the algebra generated by (aI), (W0(b)) and
// (P_tau): invertibility of the three limit operators W_{-1,0,1}(A), of
// the homogenized operators H_eta(A) for every eta, and nonvanishing of
// det N_eta^{+-}(A) on the lens for every fiber point over infinity.

#include "finsec/criteria.hpp"
#include "finsec/lens_check.hpp"

#include <optional>
#include <string>
#include <vector>

namespace finsec {

enum class Condition { a, b, c };
enum class Verdict { stable, stable_numeric, unstable, inconclusive };

const char* to_string(Condition c);
const char* to_string(Verdict v);

struct ConditionRecord {
    Condition condition = Condition::a;
    std::string checkpoint;
    bool passed = false;
    /// False for failures of the numeric probe, which do not settle the question.
    bool decided = true;
    double margin = 0.0;
    Method method = Method::exact;
    std::string detail;
    std::optional<FiberAssignment> fiber;
    std::optional<complex> witness_x;
    std::optional<double> eta;

    friend bool operator==(const ConditionRecord&, const ConditionRecord&) = default;
};

struct AnalyzerConfig {
    double p = 2.0;
    DecideConfig decide;
    FiberSampling fibers;
    LensCheckOptions lens;
    /// Condition (b) sampling density between jumps when symbols carry SO factors.
    int eta_per_unit = 512;
    double cluster_tol = 1e-6;
    int threads = 1;
};

struct StabilityReport {
    Verdict verdict = Verdict::inconclusive;
    std::vector<ConditionRecord> records;
    double p = 2.0;
    FiberStrategy strategy = FiberStrategy::product;
    bool fsm = false;

    /// "stable", "unstable", ... or for fsm reports "applies", "does not apply", ...
    std::string verdict_text() const;
    std::optional<ConditionRecord> first_failure() const;
    /// First failure that locates the obstruction (fiber point or x), else first_failure().
    std::optional<ConditionRecord> witness() const;

    friend bool operator==(const StabilityReport&, const StabilityReport&) = default;
};

Verdict aggregate(const std::vector<ConditionRecord>& records);

std::vector<ConditionRecord> check_condition_a(const OperatorExpr& seq, const AnalyzerConfig& cfg);
std::vector<ConditionRecord> check_condition_b(const OperatorExpr& seq, const AnalyzerConfig& cfg);
/// One record per side. With `entry11` the (1,1) entry of N_eta(expr) is tested instead of the determinant.
std::vector<ConditionRecord> check_condition_c(const OperatorExpr& expr, const std::vector<FiberAssignment>& fibers,
                                               const AnalyzerConfig& cfg, bool entry11 = false);

StabilityReport analyze_stability(const OperatorExpr& seq, const AnalyzerConfig& cfg);

/// Applicability of the finite section method to the operator A (no (P_tau) allowed).
StabilityReport fsm_check(const OperatorExpr& a, const AnalyzerConfig& cfg);

}  // namespace finsec

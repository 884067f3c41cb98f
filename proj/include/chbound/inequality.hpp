#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chbound/state.hpp"

namespace chbound {

// One signed summand of a CH inequality: coefficient * P(event), where the
// event is defined by the context settings and the outcome pattern. The
// context's theta is a placeholder here; it is bound when the inequality is
// evaluated against a quantum state.
struct InequalityTerm {
    int coefficient;
    MeasurementContext context;
    OutcomePattern pattern;

    int detection_count() const { return pattern.detection_count(); }
};

// Signed term lists for both sides of an n-site CH inequality. The residual
// convention is fixed globally: residual = sum(lhs) - sum(rhs), and a
// positive residual certifies violation.
struct CHInequality {
    int n_sites;
    std::vector<InequalityTerm> lhs_terms;
    std::vector<InequalityTerm> rhs_terms;
};

// A local-hidden-variable polytope vertex: per site, predetermined outcomes
// (a_i, b_i) for settings A and B. Encoded as a base-4 integer whose digit i
// (little-endian) is a_i + 2*b_i, so exhaustive enumeration is the ascending
// range [0, 4^n).
class DeterministicStrategy {
public:
    DeterministicStrategy(int n_sites, std::uint64_t code);

    static DeterministicStrategy from_outcomes(const std::vector<std::pair<bool, bool>>& ab_pairs);

    int n_sites() const { return n_sites_; }
    std::uint64_t code() const { return code_; }
    bool outcome(int site, Setting setting) const;
    // Bit i set means outcome 1 at site i under the A (resp. B) setting.
    std::uint64_t a_mask() const { return a_mask_; }
    std::uint64_t b_mask() const { return b_mask_; }

private:
    int n_sites_;
    std::uint64_t code_;
    std::uint64_t a_mask_;
    std::uint64_t b_mask_;
};

struct LhvReport {
    double max_residual;
    std::uint64_t argmax_strategy;  // lowest code attaining max_residual
    double argmax_eta;
    bool certified;  // max_residual <= 1e-12
};

// Residual threshold below which LHV certification passes.
inline constexpr double kLhvTolerance = 1e-12;

// The two-site inequality, terms laid out exactly as displayed:
//   P(A1=B2=1) + P(B1=A2=1) - P(B1=B2=1)
//     <= P(A1=1) + P(A2=1) - P(A1=A2=1).
CHInequality build_two_site_ch();

// The n-site generalization. LHS: +P(one B, all other A's = 1) per site,
// minus P(even number >= 2 of B's, all other A's = 1) per even-sized subset.
// RHS: +P(all A's = 1 except one) per site (the excluded site is
// marginalized; its setting is fixed to A), with coefficient -(n-1) on
// P(all A's = 1). Reduces to build_two_site_ch() at n = 2.
CHInequality build_nsite_ch(int n_sites);

// Efficiency-scaled residual on a quantum state: each term is weighted by
// eta^k with k the term's detection count. Positive means violation.
double evaluate_quantum(const CHInequality& ineq, const StateVector& state, double theta,
                        double eta);

// Same scaling with deterministic indicator probabilities (1 if every One
// site's preassigned outcome under its setting is 1, else 0).
double evaluate_strategy(const CHInequality& ineq, const DeterministicStrategy& strategy,
                         double eta);

// Exhaustively scans all 4^n deterministic strategies against every eta in
// eta_list (strategies ascending by code, etas in the given order; first
// maximum wins). Certification passes iff max_residual <= kLhvTolerance.
LhvReport lhv_certify(const CHInequality& ineq, const std::vector<double>& eta_list);

}  // namespace chbound

#include "chbound/inequality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>

namespace chbound {

namespace {

constexpr int kMaxTermEnumerationSites = 20;  // term count grows as 2^n
constexpr int kMaxCertificationSites = 12;    // 4^n strategy enumeration guard

void require_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw EtaOutOfRangeError("eta must lie in [0, 1], got " + std::to_string(eta));
}

// Term with B at the sites of b_sites, A elsewhere; One at the sites of
// one_sites, Any elsewhere.
InequalityTerm make_term(int coefficient, int n, std::uint64_t b_sites, std::uint64_t one_sites) {
    std::vector<Setting> settings(static_cast<std::size_t>(n));
    std::vector<Requirement> reqs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        settings[static_cast<std::size_t>(i)] =
            ((b_sites >> i) & 1u) ? Setting::B : Setting::A;
        reqs[static_cast<std::size_t>(i)] =
            ((one_sites >> i) & 1u) ? Requirement::One : Requirement::Any;
    }
    return InequalityTerm{coefficient, MeasurementContext(std::move(settings), 0.0),
                          OutcomePattern(std::move(reqs))};
}

// Precompiled indicator masks: a term fires for a strategy iff every One
// site's preassigned outcome under the term's setting is 1.
struct CompiledTerm {
    std::uint64_t requires_a;  // One sites measured with setting A
    std::uint64_t requires_b;  // One sites measured with setting B
    int coefficient;
    int detections;
};

std::vector<CompiledTerm> compile_terms(const std::vector<InequalityTerm>& terms) {
    std::vector<CompiledTerm> compiled;
    compiled.reserve(terms.size());
    for (const InequalityTerm& term : terms) {
        CompiledTerm ct{0, 0, term.coefficient, term.detection_count()};
        const int n = term.pattern.n_sites();
        for (int i = 0; i < n; ++i) {
            if (term.pattern.requirements[static_cast<std::size_t>(i)] != Requirement::One)
                continue;
            if (term.context.settings[static_cast<std::size_t>(i)] == Setting::A)
                ct.requires_a |= std::uint64_t{1} << i;
            else
                ct.requires_b |= std::uint64_t{1} << i;
        }
        compiled.push_back(ct);
    }
    return compiled;
}

double eval_compiled(const std::vector<CompiledTerm>& terms, std::uint64_t a_mask,
                     std::uint64_t b_mask, const std::vector<double>& eta_powers) {
    double sum = 0.0;
    for (const CompiledTerm& t : terms)
        if ((a_mask & t.requires_a) == t.requires_a && (b_mask & t.requires_b) == t.requires_b)
            sum += t.coefficient * eta_powers[static_cast<std::size_t>(t.detections)];
    return sum;
}

std::vector<double> eta_power_table(double eta, int n) {
    std::vector<double> powers(static_cast<std::size_t>(n) + 1, 1.0);
    for (int k = 1; k <= n; ++k)
        powers[static_cast<std::size_t>(k)] = powers[static_cast<std::size_t>(k - 1)] * eta;
    return powers;
}

struct BestResidual {
    double residual = -std::numeric_limits<double>::infinity();
    std::uint64_t strategy = 0;
    std::size_t eta_index = 0;

    // Deterministic total order: higher residual, then lower strategy code,
    // then lower eta index.
    bool improves_on(const BestResidual& other) const {
        if (residual != other.residual) return residual > other.residual;
        if (strategy != other.strategy) return strategy < other.strategy;
        return eta_index < other.eta_index;
    }
};

}  // namespace

DeterministicStrategy::DeterministicStrategy(int n_sites, std::uint64_t code)
    : n_sites_(n_sites), code_(code), a_mask_(0), b_mask_(0) {
    if (n_sites < 1 || n_sites > 31)
        throw InvalidNError("strategy n_sites must be in [1, 31], got " +
                            std::to_string(n_sites));
    if (n_sites < 32 && code >= (std::uint64_t{1} << (2 * n_sites)))
        throw Error("strategy code " + std::to_string(code) + " out of range [0, 4^" +
                    std::to_string(n_sites) + ")");
    for (int i = 0; i < n_sites; ++i) {
        if ((code >> (2 * i)) & 1u) a_mask_ |= std::uint64_t{1} << i;
        if ((code >> (2 * i + 1)) & 1u) b_mask_ |= std::uint64_t{1} << i;
    }
}

DeterministicStrategy DeterministicStrategy::from_outcomes(
    const std::vector<std::pair<bool, bool>>& ab_pairs) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < ab_pairs.size(); ++i) {
        const std::uint64_t digit =
            (ab_pairs[i].first ? 1u : 0u) + (ab_pairs[i].second ? 2u : 0u);
        code |= digit << (2 * i);
    }
    return DeterministicStrategy(static_cast<int>(ab_pairs.size()), code);
}

bool DeterministicStrategy::outcome(int site, Setting setting) const {
    const std::uint64_t mask = setting == Setting::A ? a_mask_ : b_mask_;
    return (mask >> site) & 1u;
}

CHInequality build_two_site_ch() {
    CHInequality ineq;
    ineq.n_sites = 2;
    // P(A1=B2=1) + P(B1=A2=1) - P(B1=B2=1)
    ineq.lhs_terms.push_back(make_term(+1, 2, 0b10, 0b11));
    ineq.lhs_terms.push_back(make_term(+1, 2, 0b01, 0b11));
    ineq.lhs_terms.push_back(make_term(-1, 2, 0b11, 0b11));
    // P(A1=1) + P(A2=1) - P(A1=A2=1)
    ineq.rhs_terms.push_back(make_term(+1, 2, 0b00, 0b01));
    ineq.rhs_terms.push_back(make_term(+1, 2, 0b00, 0b10));
    ineq.rhs_terms.push_back(make_term(-1, 2, 0b00, 0b11));
    return ineq;
}

CHInequality build_nsite_ch(int n) {
    if (n < 2) throw InvalidNError("n-site CH inequality needs n >= 2, got " + std::to_string(n));
    if (n > kMaxTermEnumerationSites)
        throw TooManySitesError("term enumeration capped at n = " +
                                std::to_string(kMaxTermEnumerationSites));

    CHInequality ineq;
    ineq.n_sites = n;
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;

    for (int j = 0; j < n; ++j)
        ineq.lhs_terms.push_back(make_term(+1, n, std::uint64_t{1} << j, all));
    for (std::uint64_t mask = 1; mask <= all; ++mask) {
        const int k = std::popcount(mask);
        if (k >= 2 && k % 2 == 0) ineq.lhs_terms.push_back(make_term(-1, n, mask, all));
    }
    for (int j = 0; j < n; ++j)
        ineq.rhs_terms.push_back(make_term(+1, n, 0, all & ~(std::uint64_t{1} << j)));
    ineq.rhs_terms.push_back(make_term(-(n - 1), n, 0, all));
    return ineq;
}

double evaluate_quantum(const CHInequality& ineq, const StateVector& state, double theta,
                        double eta) {
    require_eta(eta);
    if (state.n_sites() != ineq.n_sites)
        throw DimensionMismatchError("state has " + std::to_string(state.n_sites()) +
                                     " sites, inequality has " + std::to_string(ineq.n_sites));
    const std::vector<double> powers = eta_power_table(eta, ineq.n_sites);
    double residual = 0.0;
    for (const InequalityTerm& t : ineq.lhs_terms)
        residual += t.coefficient * powers[static_cast<std::size_t>(t.detection_count())] *
                    joint_probability(state, t.context.with_theta(theta), t.pattern);
    for (const InequalityTerm& t : ineq.rhs_terms)
        residual -= t.coefficient * powers[static_cast<std::size_t>(t.detection_count())] *
                    joint_probability(state, t.context.with_theta(theta), t.pattern);
    return residual;
}

double evaluate_strategy(const CHInequality& ineq, const DeterministicStrategy& strategy,
                         double eta) {
    require_eta(eta);
    if (strategy.n_sites() != ineq.n_sites)
        throw DimensionMismatchError("strategy has " + std::to_string(strategy.n_sites()) +
                                     " sites, inequality has " + std::to_string(ineq.n_sites));
    const std::vector<double> powers = eta_power_table(eta, ineq.n_sites);
    const std::vector<CompiledTerm> lhs = compile_terms(ineq.lhs_terms);
    const std::vector<CompiledTerm> rhs = compile_terms(ineq.rhs_terms);
    return eval_compiled(lhs, strategy.a_mask(), strategy.b_mask(), powers) -
           eval_compiled(rhs, strategy.a_mask(), strategy.b_mask(), powers);
}

LhvReport lhv_certify(const CHInequality& ineq, const std::vector<double>& eta_list) {
    const int n = ineq.n_sites;
    if (n > kMaxCertificationSites)
        throw TooManySitesError("exhaustive certification capped at n = " +
                                std::to_string(kMaxCertificationSites) + ", got " +
                                std::to_string(n));
    if (eta_list.empty()) throw Error("eta_list must not be empty");
    for (double eta : eta_list) require_eta(eta);

    const std::vector<CompiledTerm> lhs = compile_terms(ineq.lhs_terms);
    const std::vector<CompiledTerm> rhs = compile_terms(ineq.rhs_terms);
    std::vector<std::vector<double>> power_tables;
    power_tables.reserve(eta_list.size());
    for (double eta : eta_list) power_tables.push_back(eta_power_table(eta, n));

    const std::uint64_t total = std::uint64_t{1} << (2 * n);

    const auto scan_range = [&](std::uint64_t begin, std::uint64_t end) {
        BestResidual best;
        for (std::uint64_t code = begin; code < end; ++code) {
            std::uint64_t a_mask = 0;
            std::uint64_t b_mask = 0;
            for (int i = 0; i < n; ++i) {
                if ((code >> (2 * i)) & 1u) a_mask |= std::uint64_t{1} << i;
                if ((code >> (2 * i + 1)) & 1u) b_mask |= std::uint64_t{1} << i;
            }
            for (std::size_t e = 0; e < eta_list.size(); ++e) {
                const double residual = eval_compiled(lhs, a_mask, b_mask, power_tables[e]) -
                                        eval_compiled(rhs, a_mask, b_mask, power_tables[e]);
                const BestResidual candidate{residual, code, e};
                if (candidate.improves_on(best)) best = candidate;
            }
        }
        return best;
    };

    BestResidual best;
    const unsigned hw = std::thread::hardware_concurrency();
    const std::uint64_t n_threads =
        total >= (std::uint64_t{1} << 14) ? std::max(1u, std::min(hw, 16u)) : 1;
    if (n_threads <= 1) {
        best = scan_range(0, total);
    } else {
        std::vector<BestResidual> partials(n_threads);
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (total + n_threads - 1) / n_threads;
        for (std::uint64_t t = 0; t < n_threads; ++t)
            workers.emplace_back([&, t] {
                partials[t] = scan_range(t * chunk, std::min(total, (t + 1) * chunk));
            });
        for (std::thread& w : workers) w.join();
        for (const BestResidual& partial : partials)
            if (partial.improves_on(best)) best = partial;
    }

    return LhvReport{best.residual, best.strategy, eta_list[best.eta_index],
                     best.residual <= kLhvTolerance};
}

}  // namespace chbound

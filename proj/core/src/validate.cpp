#include "semnoma/validate.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "semnoma/slot_sampler.hpp"

namespace semnoma {

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

struct SlotCheck {
    double gap = 0.0;       // relative shortfall of the solver against the oracle
    double residual = 0.0;  // |residual| at interior roots, else 0
    bool interior = false;
};

void check_mode(const ValidateOptions& opt, SlotMode mode, const std::string& label, ValidationReport& report) {
    const auto slots = sample_slots(opt.seed, mode, opt.slots_per_mode, opt.model);
    double worst_gap = 0.0;
    double worst_residual = 0.0;
    std::size_t roots = 0;
    detail::indexed_map_reduce<SlotCheck>(
        slots.size(), opt.threads,
        [&](std::size_t i) {
            const SampledSlot& s = slots[i];
            const SlotOutcome got = solve_slot(s.plan, s.ch, s.p_max, opt.model, opt.solver);
            const SlotOutcome ref = grid_oracle(s.plan, s.ch, s.p_max, opt.model, opt.solver.grid_points);
            SlotCheck c;
            const double scale = std::max(std::abs(ref.slot_se), 1e-300);
            c.gap = std::max(0.0, (ref.slot_se - got.slot_se) / scale);
            if (got.chosen == CandidateKind::interior_root) {
                c.residual = std::abs(got.residual);
                c.interior = true;
            }
            return c;
        },
        [&](std::size_t, const SlotCheck& c) {
            worst_gap = std::max(worst_gap, c.gap);
            roots += c.interior;
            // NaN residuals must fail the check.
            if (!(c.residual <= worst_residual)) worst_residual = std::isnan(c.residual) ? INFINITY : c.residual;
        });
    report.checks.push_back(
        {label + "_oracle_gap", worst_gap <= opt.oracle_rel_tol, worst_gap, opt.oracle_rel_tol, slots.size()});
    report.checks.push_back({label + "_stationarity", worst_residual <= opt.solver.residual_tol, worst_residual,
                             opt.solver.residual_tol, roots});
}

}  // namespace

ValidationReport run_validation(const ValidateOptions& opt) {
    opt.model.validate();
    opt.solver.validate();
    ValidationReport report;
    check_mode(opt, SlotMode::hetero_noma, "hetero", report);
    check_mode(opt, SlotMode::semantic_noma, "semantic", report);

    const LogisticParams& lp = opt.model.logistic;

    // Smallest step of the similarity over a 1e4-point SNR grid on [0, 100].
    constexpr int kGrid = 10'000;
    double min_step = INFINITY;
    double prev = logistic_similarity(0.0, lp);
    for (int i = 1; i < kGrid; ++i) {
        const double cur = logistic_similarity(100.0 * i / (kGrid - 1), lp);
        min_step = std::min(min_step, cur - prev);
        prev = cur;
    }
    report.checks.push_back({"logistic_monotone", min_step >= 0.0, std::max(0.0, -min_step), 0.0, std::size_t(kGrid)});

    double worst_rt = 0.0;
    constexpr int kInverse = 1000;
    // Thresholds reachable at non-negative SNR.
    const double lo = logistic_similarity(0.0, lp);
    const double span = lp.a2 - lo;
    for (int i = 1; i < kInverse; ++i) {
        const double eps = lo + span * i / kInverse;
        worst_rt = std::max(worst_rt, std::abs(logistic_similarity(threshold_snr(lp, eps), lp) - eps));
    }
    report.checks.push_back({"inverse_round_trip", worst_rt <= 1e-10, worst_rt, 1e-10, std::size_t(kInverse - 1)});
    return report;
}

}  // namespace semnoma

#include "semnoma/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace semnoma {

void ModelConfig::validate() const {
    logistic.validate();
    semantics.validate();
    if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
        throw std::invalid_argument("noise_power must be positive and finite");
    }
}

double PowerAllocation::power(User user) const {
    switch (user) {
        case User::b: return p_b;
        case User::s1: return p_s1;
        case User::s2: return p_s2;
    }
    return 0.0;
}

double& PowerAllocation::power(User user) {
    switch (user) {
        case User::b: return p_b;
        case User::s1: return p_s1;
        case User::s2: break;
    }
    return p_s2;
}

const char* to_string(CandidateKind kind) {
    switch (kind) {
        case CandidateKind::evaluated: return "evaluated";
        case CandidateKind::grid_point: return "grid_point";
        case CandidateKind::all_to_first: return "all_to_first";
        case CandidateKind::all_to_second: return "all_to_second";
        case CandidateKind::gate_boundary: return "gate_boundary";
        case CandidateKind::interior_root: return "interior_root";
        case CandidateKind::gate_collapse: return "gate_collapse";
    }
    return "?";
}

const char* to_string(SlotStatus status) {
    switch (status) {
        case SlotStatus::ok: return "ok";
        case SlotStatus::semantic_invalid: return "semantic_invalid";
        case SlotStatus::no_positive_se: return "no_positive_se";
        case SlotStatus::residual_unmet: return "residual_unmet";
    }
    return "?";
}

void SolverConfig::validate() const {
    if (!(power_tol > 0.0) || !(residual_tol > 0.0) || grid_points == 0 || max_iter <= 0 ||
        scan_intervals <= 0) {
        throw std::invalid_argument("solver tolerances, grid_points, max_iter and scan_intervals must be positive");
    }
}

namespace {

// Past c1*gamma + c2 = 40 the logistic slope is ~4e-18 of its peak; no
// stationary point of either slot objective lies beyond it.
constexpr double kSlopeCutoff = 40.0;
constexpr int kMaxEscalations = 2;
constexpr int kMaxNudges = 64;

void require_power(double p, const char* who) {
    if (!std::isfinite(p) || p < 0.0) {
        throw std::invalid_argument(std::string(who) + ": powers must be finite and non-negative");
    }
}

double semantic_user_rate(double gamma, const ModelConfig& model, bool& valid) {
    const double eps = gated_similarity(gamma, model.logistic, model.semantics.eps_th);
    valid = eps > 0.0;
    return semantic_rate(eps, model.semantics);
}

// SNR at which the gate opens; 0 if always open, +inf if never.
double gate_snr(const ModelConfig& model) {
    const double eps_th = model.semantics.eps_th;
    if (eps_th <= model.logistic.a1) return 0.0;
    if (eps_th >= model.logistic.a2) return std::numeric_limits<double>::infinity();
    return threshold_snr(model.logistic, eps_th);
}

double gamma_cap(const LogisticParams& p) { return (kSlopeCutoff - p.c2) / p.c1; }

bool passes_gate(double gamma, const ModelConfig& model) {
    return gated_similarity(gamma, model.logistic, model.semantics.eps_th) > 0.0;
}

// Two-user slot parametrized by the SIC-decoded (second) user's power q; the
// first-decoded user takes the remainder of the budget.
struct Split {
    SlotPlan plan;
    User first;
    User second;
    double p_max;

    PowerAllocation at(double q) const {
        PowerAllocation a;
        a.power(second) = q;
        a.power(first) = p_max - q;
        return a;
    }
};

// Bisection on a bracket [lo, hi] with opposite residual signs. Stops at
// power_tol once the residual bound is met, otherwise continues until the
// bracket spans adjacent doubles.
template <class F>
double bisect(F&& f, double lo, double hi, double f_lo, double f_hi, const SolverConfig& solver) {
    for (int iter = 0; iter < solver.max_iter; ++iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        const bool narrow = hi - lo <= solver.power_tol * hi;
        if (narrow && std::min(std::abs(f_lo), std::abs(f_hi)) <= solver.residual_tol) break;
    }
    return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

// All sign changes of `f` across consecutive scan points, refined by bisection.
template <class F>
std::vector<double> find_roots(F&& f, const std::vector<double>& grid, const SolverConfig& solver) {
    std::vector<double> roots;
    if (grid.empty()) return roots;
    double x_prev = grid.front();
    double f_prev = f(x_prev);
    if (f_prev == 0.0) roots.push_back(x_prev);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double x = grid[i];
        const double fx = f(x);
        if (fx == 0.0) {
            roots.push_back(x);
        } else if (f_prev != 0.0 && std::signbit(fx) != std::signbit(f_prev)) {
            roots.push_back(bisect(f, x_prev, x, f_prev, fx, solver));
        }
        x_prev = x;
        f_prev = fx;
    }
    return roots;
}

// Uniform points in q plus, for every SNR axis, points uniform in that SNR
// mapped back to q. The SNR axes resolve sigmoid transitions that are far
// narrower than p_max / n.
template <class... Axes>
std::vector<double> scan_grid(double p_max, int n, Axes&&... axes) {
    std::vector<double> grid;
    grid.reserve(std::size_t(n + 1) * (1 + sizeof...(axes)));
    for (int j = 0; j <= n; ++j) grid.push_back(p_max * (double(j) / n));
    (axes(grid, n), ...);
    std::erase_if(grid, [p_max](double q) { return !(q >= 0.0 && q <= p_max); });
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

struct Candidate {
    CandidateKind kind;
    double q;
};

// Evaluates every candidate and keeps the first one with maximal SE.
// `collapse_gated` implements the hetero rule: a candidate whose semantic user
// fails the gate is replaced by the all-to-B allocation.
template <class Residual>
SlotOutcome pick_best(const Split& split, const std::vector<Candidate>& candidates,
                      const ChannelRealization& ch, const ModelConfig& model, Residual&& residual,
                      bool collapse_gated) {
    SlotOutcome best;
    bool have = false;
    for (const Candidate& c : candidates) {
        SlotOutcome out = slot_objective(split.plan, split.at(c.q), ch, model);
        CandidateKind kind = c.kind;
        if (collapse_gated && kind != CandidateKind::all_to_first) {
            const bool sem_valid = split.second == User::s1 ? out.valid_s1 : out.valid_s2;
            if (!sem_valid) {
                out = slot_objective(split.plan, split.at(0.0), ch, model);
                kind = CandidateKind::gate_collapse;
            }
        }
        out.chosen = kind;
        if (kind == CandidateKind::interior_root) out.residual = residual(c.q);
        if (!have || out.slot_se > best.slot_se) {
            best = out;
            have = true;
        }
    }
    return best;
}

template <class Residual, class GridFn>
SlotOutcome solve_split(const Split& split, const ChannelRealization& ch, const ModelConfig& model,
                        const SolverConfig& solver, Residual&& residual, GridFn&& make_grid,
                        const std::vector<Candidate>& boundaries, bool collapse_gated) {
    SlotOutcome best;
    int intervals = solver.scan_intervals;
    for (int attempt = 0; attempt <= kMaxEscalations; ++attempt, intervals *= 2) {
        std::vector<Candidate> candidates{{CandidateKind::all_to_first, 0.0}};
        for (double root : find_roots(residual, make_grid(intervals), solver)) {
            if (root > 0.0 && root < split.p_max) candidates.push_back({CandidateKind::interior_root, root});
        }
        candidates.insert(candidates.end(), boundaries.begin(), boundaries.end());
        candidates.push_back({CandidateKind::all_to_second, split.p_max});

        best = pick_best(split, candidates, ch, model, residual, collapse_gated);
        if (best.chosen != CandidateKind::interior_root ||
            std::abs(best.residual) <= solver.residual_tol) {
            return best;
        }
    }
    best.status = SlotStatus::residual_unmet;
    return best;
}

SlotPlan hetero_plan(User sem) {
    SlotPlan plan;
    plan.indicator_b = true;
    plan.mode = SlotMode::hetero_noma;
    plan.first_decoded = User::b;
    plan.second_decoded = sem;
    (sem == User::s1 ? plan.indicator_s1 : plan.indicator_s2) = true;
    return plan;
}

SlotPlan semantic_plan(User strong) {
    SlotPlan plan;
    plan.indicator_s1 = plan.indicator_s2 = true;
    plan.mode = SlotMode::semantic_noma;
    plan.first_decoded = strong;
    plan.second_decoded = strong == User::s1 ? User::s2 : User::s1;
    return plan;
}

void require_budget(double p_max) {
    if (!std::isfinite(p_max) || p_max < 0.0) {
        throw std::invalid_argument("p_max must be finite and non-negative");
    }
}

}  // namespace

SlotOutcome slot_objective(const SlotPlan& plan, const PowerAllocation& alloc,
                           const ChannelRealization& ch, const ModelConfig& model) {
    require_power(alloc.p_b, "slot_objective");
    require_power(alloc.p_s1, "slot_objective");
    require_power(alloc.p_s2, "slot_objective");
    for (User u : {User::b, User::s1, User::s2}) {
        if (!plan.active(u) && alloc.power(u) != 0.0) {
            throw std::invalid_argument(std::string("slot_objective: inactive user ") + to_string(u) +
                                        " has nonzero power");
        }
    }

    const double noise = model.noise_power;
    SlotOutcome out;
    out.alloc = alloc;

    switch (plan.mode) {
        case SlotMode::oma_bit: {
            out.rate_b_bits = bit_rate(snr(alloc.p_b, ch.gain_b, noise));
            break;
        }
        case SlotMode::hetero_noma: {
            const User sem = plan.second_decoded.value();
            const double p_sem = alloc.power(sem);
            // B decodes first and sees the semantic signal through its own channel.
            out.rate_b_bits = bit_rate(snr(alloc.p_b, ch.gain_b, noise, p_sem, ch.gain_b));
            bool valid = false;
            const double r = semantic_user_rate(snr(p_sem, ch.gain(sem), noise), model, valid);
            (sem == User::s1 ? out.rate_s1 : out.rate_s2) = r;
            (sem == User::s1 ? out.valid_s1 : out.valid_s2) = valid;
            break;
        }
        case SlotMode::semantic_noma: {
            const User strong = plan.first_decoded;
            const User weak = plan.second_decoded.value();
            const double g_strong = ch.gain(strong);
            const double p_weak = alloc.power(weak);
            bool valid_strong = false;
            bool valid_weak = false;
            const double r_strong = semantic_user_rate(
                snr(alloc.power(strong), g_strong, noise, p_weak, g_strong), model, valid_strong);
            const double r_weak = semantic_user_rate(snr(p_weak, ch.gain(weak), noise), model, valid_weak);
            out.rate_s1 = strong == User::s1 ? r_strong : r_weak;
            out.rate_s2 = strong == User::s1 ? r_weak : r_strong;
            out.valid_s1 = strong == User::s1 ? valid_strong : valid_weak;
            out.valid_s2 = strong == User::s1 ? valid_weak : valid_strong;
            break;
        }
    }

    out.rate_b_suts = equivalent_semantic_rate(out.rate_b_bits, model.semantics);
    out.slot_se = (plan.indicator_s1 ? out.rate_s1 : 0.0) + (plan.indicator_s2 ? out.rate_s2 : 0.0) +
                  (plan.indicator_b ? out.rate_b_suts : 0.0);
    return out;
}

double hetero_residual(double p_sem, const ChannelRealization& ch, User sem, double p_max,
                       const ModelConfig& model, ResidualMutation mutation) {
    (void)p_max;  // enters only through p_sem = p_max - p_b
    const SemanticConfig& s = model.semantics;
    const double noise = model.noise_power;
    const double g_b = ch.gain_b;
    const double snr_per_watt = ch.gain(sem) / noise;

    const double bit_term =
        s.info_per_word * s.eps_c / (s.mu_bits * std::numbers::ln2) * g_b / (noise + p_sem * g_b);
    const double sem_term = s.info_per_word / s.k_symbols *
                            logistic_slope(p_sem * snr_per_watt, model.logistic) * snr_per_watt;
    return mutation == ResidualMutation::flipped_semantic_sign ? bit_term + sem_term
                                                               : bit_term - sem_term;
}

double hetero_residual_semantic(double p_sem, const ChannelRealization& ch, User sem,
                                double p_max, const ModelConfig& model) {
    (void)p_max;
    const SemanticConfig& s = model.semantics;
    const double noise = model.noise_power;
    const double g_b = ch.gain_b;
    const double snr_per_watt = ch.gain(sem) / noise;
    // d/dP_sem of log2((noise + p_max g_b) / (noise + P_sem g_b)) scaled to suts.
    const double d_bit = -s.info_per_word * s.eps_c / (s.mu_bits * std::numbers::ln2) * g_b /
                         (noise + p_sem * g_b);
    const double d_sem = s.info_per_word / s.k_symbols *
                         logistic_slope(p_sem * snr_per_watt, model.logistic) * snr_per_watt;
    return d_bit + d_sem;
}

User strong_semantic_user(const ChannelRealization& ch) {
    return ch.gain_s2 > ch.gain_s1 ? User::s2 : User::s1;
}

double semantic_residual(double p_weak, const ChannelRealization& ch, double p_max,
                         const ModelConfig& model, ResidualMutation mutation) {
    const User strong = strong_semantic_user(ch);
    const User weak = strong == User::s1 ? User::s2 : User::s1;
    const double noise = model.noise_power;
    const double s_strong = ch.gain(strong) / noise;
    const double s_weak = ch.gain(weak) / noise;

    const double interference = 1.0 + p_weak * s_strong;
    const double gamma_strong = (p_max - p_weak) * s_strong / interference;
    const double dgamma_strong = s_strong * (1.0 + p_max * s_strong) / (interference * interference);
    const double gamma_weak = p_weak * s_weak;

    const double scale = model.semantics.info_per_word / model.semantics.k_symbols;
    const double strong_term = logistic_slope(gamma_strong, model.logistic) * dgamma_strong;
    const double weak_term = logistic_slope(gamma_weak, model.logistic) * s_weak;
    return mutation == ResidualMutation::flipped_semantic_sign ? scale * (strong_term + weak_term)
                                                               : scale * (strong_term - weak_term);
}

SlotOutcome solve_oma_bit(const ChannelRealization& ch, double p_max, const ModelConfig& model) {
    require_budget(p_max);
    SlotPlan plan;
    plan.indicator_b = true;
    PowerAllocation alloc;
    alloc.p_b = p_max;
    SlotOutcome out = slot_objective(plan, alloc, ch, model);
    out.chosen = CandidateKind::all_to_first;
    if (!(out.slot_se > 0.0)) out.status = SlotStatus::no_positive_se;
    return out;
}

SlotOutcome solve_hetero(const ChannelRealization& ch, User sem, double p_max,
                         const ModelConfig& model, const SolverConfig& solver) {
    require_budget(p_max);
    if (sem == User::b) throw std::invalid_argument("solve_hetero: partner must be a semantic user");
    const Split split{hetero_plan(sem), User::b, sem, p_max};
    const double noise = model.noise_power;
    const double g_sem = ch.gain(sem);

    // Gate closed even with the whole budget: everything goes to B.
    if (!passes_gate(snr(p_max, g_sem, noise), model)) {
        SlotOutcome out = slot_objective(split.plan, split.at(0.0), ch, model);
        out.chosen = CandidateKind::all_to_first;
        if (!(out.slot_se > 0.0)) out.status = SlotStatus::no_positive_se;
        return out;
    }

    const double snr_per_watt = g_sem / noise;
    const double cap = gamma_cap(model.logistic);
    auto residual = [&](double q) { return hetero_residual(q, ch, sem, p_max, model, solver.mutation); };
    auto make_grid = [&](int n) {
        return scan_grid(p_max, n, [&](std::vector<double>& grid, int m) {
            const double top = std::min(cap, p_max * snr_per_watt);
            for (int k = 0; k <= m; ++k) grid.push_back(top * (double(k) / m) / snr_per_watt);
        });
    };

    std::vector<Candidate> boundaries;
    const double gamma_th = gate_snr(model);
    if (gamma_th > 0.0) {
        double q = gamma_th / snr_per_watt;
        for (int i = 0; i < kMaxNudges && q <= p_max && !passes_gate(snr(q, g_sem, noise), model); ++i) {
            q = std::nextafter(q, std::numeric_limits<double>::infinity());
        }
        if (q <= p_max) boundaries.push_back({CandidateKind::gate_boundary, q});
    }

    SlotOutcome out = solve_split(split, ch, model, solver, residual, make_grid, boundaries, true);
    if (!(out.slot_se > 0.0)) out.status = SlotStatus::no_positive_se;
    return out;
}

SlotOutcome solve_semantic_only(const ChannelRealization& ch, double p_max,
                                const ModelConfig& model, const SolverConfig& solver) {
    require_budget(p_max);
    const User strong = strong_semantic_user(ch);
    const User weak = strong == User::s1 ? User::s2 : User::s1;
    const Split split{semantic_plan(strong), strong, weak, p_max};
    const double noise = model.noise_power;
    const double g_strong = ch.gain(strong);
    const double g_weak = ch.gain(weak);

    auto invalid = [&] {
        SlotOutcome out = slot_objective(split.plan, split.at(0.0), ch, model);
        out.chosen = CandidateKind::all_to_first;
        out.status = SlotStatus::semantic_invalid;
        return out;
    };

    if (!passes_gate(snr(p_max, g_strong, noise), model) && !passes_gate(snr(p_max, g_weak, noise), model)) {
        return invalid();
    }

    const double s_strong = g_strong / noise;
    const double s_weak = g_weak / noise;
    const double cap = gamma_cap(model.logistic);
    // Weak power that leaves the strong user at SINR gamma.
    auto q_for_strong = [&](double gamma) {
        return (p_max * s_strong - gamma) / (s_strong * (1.0 + gamma));
    };

    auto residual = [&](double q) { return semantic_residual(q, ch, p_max, model, solver.mutation); };
    auto make_grid = [&](int n) {
        return scan_grid(
            p_max, n,
            [&](std::vector<double>& grid, int m) {
                if (!(s_weak > 0.0)) return;
                const double top = std::min(cap, p_max * s_weak);
                for (int k = 0; k <= m; ++k) grid.push_back(top * (double(k) / m) / s_weak);
            },
            [&](std::vector<double>& grid, int m) {
                if (!(s_strong > 0.0)) return;
                const double top = std::min(cap, p_max * s_strong);
                for (int k = 0; k <= m; ++k) grid.push_back(q_for_strong(top * (double(k) / m)));
            });
    };

    std::vector<Candidate> boundaries;
    const double gamma_th = gate_snr(model);
    if (gamma_th > 0.0 && std::isfinite(gamma_th)) {
        if (s_weak > 0.0) {
            double q = gamma_th / s_weak;
            for (int i = 0; i < kMaxNudges && q <= p_max && !passes_gate(snr(q, g_weak, noise), model); ++i) {
                q = std::nextafter(q, std::numeric_limits<double>::infinity());
            }
            if (q <= p_max) boundaries.push_back({CandidateKind::gate_boundary, q});
        }
        if (s_strong > 0.0 && p_max * s_strong >= gamma_th) {
            double q = std::max(0.0, q_for_strong(gamma_th));
            for (int i = 0; i < kMaxNudges && q > 0.0 &&
                            !passes_gate(snr(p_max - q, g_strong, noise, q, g_strong), model);
                 ++i) {
                q = std::nextafter(q, 0.0);
            }
            boundaries.push_back({CandidateKind::gate_boundary, q});
        }
    }

    SlotOutcome out = solve_split(split, ch, model, solver, residual, make_grid, boundaries, false);
    if (!out.valid_s1 && !out.valid_s2) return invalid();
    return out;
}

SlotOutcome solve_slot(const SlotPlan& plan, const ChannelRealization& ch, double p_max,
                       const ModelConfig& model, const SolverConfig& solver) {
    switch (plan.mode) {
        case SlotMode::oma_bit: return solve_oma_bit(ch, p_max, model);
        case SlotMode::hetero_noma: return solve_hetero(ch, plan.second_decoded.value(), p_max, model, solver);
        case SlotMode::semantic_noma: {
            if (plan.first_decoded != strong_semantic_user(ch)) {
                throw std::invalid_argument("solve_slot: plan does not decode the stronger semantic user first");
            }
            return solve_semantic_only(ch, p_max, model, solver);
        }
    }
    throw std::logic_error("solve_slot: unknown slot mode");
}

SlotOutcome grid_oracle(const SlotPlan& plan, const ChannelRealization& ch, double p_max,
                        const ModelConfig& model, std::size_t n_points) {
    require_budget(p_max);
    if (!plan.second_decoded) throw std::invalid_argument("grid_oracle: needs a two-user plan");
    if (n_points == 0) throw std::invalid_argument("grid_oracle: n_points must be positive");
    const User first = plan.first_decoded;
    const User second = *plan.second_decoded;

    // Scalar copy of slot_objective's arithmetic without the checks; the
    // winning point is re-evaluated through slot_objective below.
    const LogisticParams& lp = model.logistic;
    const SemanticConfig& sc = model.semantics;
    const double noise = model.noise_power;
    auto sem_rate = [&](double gamma) {
        const double x = lp.c1 * gamma + lp.c2;
        const double eps = lp.a1 + (lp.a2 - lp.a1) / (1.0 + std::exp(-x));
        return sc.info_per_word / sc.k_symbols * (eps >= sc.eps_th ? eps : 0.0);
    };
    auto se_at = [&](double p_first, double p_second) {
        const double g_first = ch.gain(first);
        if (plan.mode == SlotMode::hetero_noma) {
            const double bits = std::log2(1.0 + p_first * g_first / (noise + p_second * g_first));
            return sem_rate(p_second * ch.gain(second) / noise) + bits * sc.info_per_word * sc.eps_c / sc.mu_bits;
        }
        const double r_first = sem_rate(p_first * g_first / (noise + p_second * g_first));
        const double r_second = sem_rate(p_second * ch.gain(second) / noise);
        return first == User::s1 ? r_first + r_second : r_second + r_first;
    };

    std::size_t best_j = 0;
    double best_se = 0.0;
    for (std::size_t j = 0; j <= n_points; ++j) {
        const double t = double(j) / double(n_points);
        const double se = se_at(t * p_max, (1.0 - t) * p_max);
        if (j == 0 || se > best_se) {
            best_se = se;
            best_j = j;
        }
    }
    const double t = double(best_j) / double(n_points);
    PowerAllocation alloc;
    alloc.power(first) = t * p_max;
    alloc.power(second) = (1.0 - t) * p_max;
    SlotOutcome best = slot_objective(plan, alloc, ch, model);
    best.chosen = CandidateKind::grid_point;
    return best;
}

}  // namespace semnoma

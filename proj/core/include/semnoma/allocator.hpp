#pragma once

#include <cstddef>
#include <limits>

#include "semnoma/channel.hpp"
#include "semnoma/scheduler.hpp"
#include "semnoma/semantic_model.hpp"

namespace semnoma {

/// Everything the per-slot objective depends on besides the channel.
struct ModelConfig {
    LogisticParams logistic;
    SemanticConfig semantics;
    double noise_power = 1e-9;

    void validate() const;
};

struct PowerAllocation {
    double p_b = 0.0;
    double p_s1 = 0.0;
    double p_s2 = 0.0;

    double power(User user) const;
    double& power(User user);
    double total() const { return p_b + p_s1 + p_s2; }

    bool operator==(const PowerAllocation&) const = default;
};

/// How the returned allocation was obtained.
enum class CandidateKind {
    evaluated,      // slot_objective on a caller-supplied allocation
    grid_point,     // grid_oracle winner
    all_to_first,   // whole budget to the first-decoded user (B, or the stronger semantic user)
    all_to_second,  // whole budget to the SIC-decoded user
    gate_boundary,  // a semantic user sits exactly at its validity threshold
    interior_root,  // root of the stationarity residual
    gate_collapse,  // candidate failed the gate and fell back to all_to_first
};

enum class SlotStatus {
    ok,
    semantic_invalid,  // semantic-only slot where neither user can pass the gate
    no_positive_se,    // no candidate produced positive SE (solver diagnostic)
    residual_unmet,    // interior root did not reach residual_tol (solver diagnostic)
};

const char* to_string(CandidateKind kind);
const char* to_string(SlotStatus status);

struct SlotOutcome {
    PowerAllocation alloc;
    double rate_b_bits = 0.0;  // bits/s/Hz
    double rate_b_suts = 0.0;  // suts/s/Hz
    double rate_s1 = 0.0;
    double rate_s2 = 0.0;
    /// I_S1 R_S1 + I_S2 R_S2 + I_B R_SB
    double slot_se = 0.0;
    bool valid_s1 = false;
    bool valid_s2 = false;

    CandidateKind chosen = CandidateKind::evaluated;
    /// Stationarity residual at the returned point; NaN unless chosen == interior_root.
    double residual = std::numeric_limits<double>::quiet_NaN();
    SlotStatus status = SlotStatus::ok;
};

/// Self-test hook: `validate --inject-fault` flips the sign of the semantic
/// term in the stationarity residuals so the oracle comparison must fail.
enum class ResidualMutation { none, flipped_semantic_sign };

struct SolverConfig {
    double power_tol = 1e-10;          // relative width at which bisection may stop
    double residual_tol = 1e-8;        // bound on |residual| at returned roots
    std::size_t grid_points = 1'000'000;
    int max_iter = 200;                // bisection cap per bracket
    int scan_intervals = 1024;         // bracket scan resolution (per scan axis)
    ResidualMutation mutation = ResidualMutation::none;

    void validate() const;

    bool operator==(const SolverConfig&) const = default;
};

/// Rates and equivalent semantic SE of one slot under a given allocation.
/// Throws std::invalid_argument if an inactive user has power or a power is
/// negative or non-finite.
SlotOutcome slot_objective(const SlotPlan& plan, const PowerAllocation& alloc,
                           const ChannelRealization& ch, const ModelConfig& model);

/// d(slot SE)/dP_B in a hetero slot after substituting P_sem = P_max - P_B,
/// evaluated at semantic power `p_sem`.
double hetero_residual(double p_sem, const ChannelRealization& ch, User sem, double p_max,
                       const ModelConfig& model,
                       ResidualMutation mutation = ResidualMutation::none);

/// The same stationarity condition differentiated with respect to P_sem
/// (substituting P_B = P_max - P_sem). Equals -hetero_residual.
double hetero_residual_semantic(double p_sem, const ChannelRealization& ch, User sem,
                                double p_max, const ModelConfig& model);

/// d(slot SE)/dP_strong in a semantic-only slot after substituting
/// P_weak = P_max - P_strong, evaluated at weak-user power `p_weak`.
double semantic_residual(double p_weak, const ChannelRealization& ch, double p_max,
                         const ModelConfig& model,
                         ResidualMutation mutation = ResidualMutation::none);

/// Stronger semantic user (S1 on ties), i.e. the one decoded first.
User strong_semantic_user(const ChannelRealization& ch);

SlotOutcome solve_oma_bit(const ChannelRealization& ch, double p_max, const ModelConfig& model);

/// Optimal split between B and semantic user `sem` (bit-to-semantic order).
SlotOutcome solve_hetero(const ChannelRealization& ch, User sem, double p_max,
                         const ModelConfig& model, const SolverConfig& solver);

/// Optimal split between the two semantic users (stronger decoded first).
SlotOutcome solve_semantic_only(const ChannelRealization& ch, double p_max,
                                const ModelConfig& model, const SolverConfig& solver);

/// Dispatches on the plan's mode.
SlotOutcome solve_slot(const SlotPlan& plan, const ChannelRealization& ch, double p_max,
                       const ModelConfig& model, const SolverConfig& solver);

/// Brute force over (t P_max, (1 - t) P_max), t = j / n_points, between the
/// first- and second-decoded users of a two-user plan. Test oracle.
SlotOutcome grid_oracle(const SlotPlan& plan, const ChannelRealization& ch, double p_max,
                        const ModelConfig& model, std::size_t n_points);

}  // namespace semnoma

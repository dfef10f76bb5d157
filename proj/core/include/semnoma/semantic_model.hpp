#pragma once

// Semantic similarity surrogate and rate conversions.
//
// All rates are spectral efficiencies (per Hz of bandwidth): semantic rates in
// suts/s/Hz, bit rates in bits/s/Hz.

namespace semnoma {

/// Generalized logistic fit of sentence similarity against linear SNR,
/// eps(gamma) = a1 + (a2 - a1) / (1 + exp(-(c1 * gamma + c2))).
/// The defaults are the fit for K = 5 semantic symbols per word.
struct LogisticParams {
    double a1 = 0.37;     // lower asymptote
    double a2 = 0.98;     // upper asymptote
    double c1 = 0.25;     // growth rate, per unit linear SNR
    double c2 = -0.7895;  // midpoint offset

    /// Throws std::invalid_argument unless 0 <= a1 < a2 <= 1 and c1 > 0.
    void validate() const;

    bool operator==(const LogisticParams&) const = default;
};

struct SemanticConfig {
    double k_symbols = 5.0;      // K, semantic symbols per word
    double mu_bits = 40.0;       // mu, bits per word
    double info_per_word = 1.0;  // I/L, suts per word
    double eps_th = 0.9;         // minimum similarity for a valid transmission
    double eps_c = 1.0;          // similarity credited to the bit user

    void validate() const;

    bool operator==(const SemanticConfig&) const = default;
};

/// Logistic similarity at linear SNR `gamma`. Throws std::domain_error for
/// negative or non-finite gamma.
double logistic_similarity(double gamma, const LogisticParams& params);

/// d eps / d gamma of the logistic surrogate.
double logistic_slope(double gamma, const LogisticParams& params);

/// Similarity after the validity gate: the logistic value when it reaches
/// `eps_th` (inclusive), otherwise exactly 0.
double gated_similarity(double gamma, const LogisticParams& params, double eps_th);

/// Analytic inverse of the logistic: the SNR at which the similarity equals
/// `eps_th`. Requires a1 < eps_th < a2.
double threshold_snr(const LogisticParams& params, double eps_th);

/// (I/L) / K * similarity.
double semantic_rate(double similarity, const SemanticConfig& cfg);

/// Shannon rate log2(1 + sinr).
double bit_rate(double sinr);

/// Converts a bit rate into suts/s/Hz: R * (I/L) * eps_c / mu.
double equivalent_semantic_rate(double bit_rate_bits, const SemanticConfig& cfg);

/// Smallest nonzero semantic rate a valid transmission can carry.
double min_valid_semantic_rate(const SemanticConfig& cfg);

}  // namespace semnoma

#include "semnoma/semantic_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace semnoma {

namespace {

void require_snr(double gamma, const char* what) {
    if (!std::isfinite(gamma) || gamma < 0.0) {
        throw std::domain_error(std::string(what) + ": SNR must be finite and non-negative, got " +
                                std::to_string(gamma));
    }
}

}  // namespace

void LogisticParams::validate() const {
    if (!(0.0 <= a1 && a1 < a2 && a2 <= 1.0)) {
        throw std::invalid_argument("logistic asymptotes must satisfy 0 <= a1 < a2 <= 1");
    }
    if (!(c1 > 0.0) || !std::isfinite(c1) || !std::isfinite(c2)) {
        throw std::invalid_argument("logistic growth rate c1 must be positive and c2 finite");
    }
}

void SemanticConfig::validate() const {
    if (!(k_symbols > 0.0) || !(mu_bits > 0.0) || !(info_per_word > 0.0)) {
        throw std::invalid_argument("k_symbols, mu_bits and info_per_word must be positive");
    }
    if (!(eps_th > 0.0 && eps_th < 1.0)) {
        throw std::invalid_argument("eps_th must lie in (0, 1)");
    }
    if (!(eps_c > 0.0 && eps_c <= 1.0)) {
        throw std::invalid_argument("eps_c must lie in (0, 1]");
    }
}

double logistic_similarity(double gamma, const LogisticParams& params) {
    require_snr(gamma, "logistic_similarity");
    const double x = params.c1 * gamma + params.c2;
    return params.a1 + (params.a2 - params.a1) / (1.0 + std::exp(-x));
}

double logistic_slope(double gamma, const LogisticParams& params) {
    require_snr(gamma, "logistic_slope");
    // sigma'(x) is even; evaluate on |x| so exp never overflows.
    const double e = std::exp(-std::abs(params.c1 * gamma + params.c2));
    const double denom = 1.0 + e;
    return (params.a2 - params.a1) * params.c1 * e / (denom * denom);
}

double gated_similarity(double gamma, const LogisticParams& params, double eps_th) {
    const double eps = logistic_similarity(gamma, params);
    return eps >= eps_th ? eps : 0.0;
}

double threshold_snr(const LogisticParams& params, double eps_th) {
    params.validate();
    if (!(eps_th > params.a1 && eps_th < params.a2)) {
        throw std::domain_error("threshold_snr: eps_th must lie strictly between a1 and a2");
    }
    const double odds = (params.a2 - params.a1) / (eps_th - params.a1) - 1.0;
    return (-std::log(odds) - params.c2) / params.c1;
}

double semantic_rate(double similarity, const SemanticConfig& cfg) {
    if (!(similarity >= 0.0 && similarity <= 1.0)) {
        throw std::domain_error("semantic_rate: similarity must lie in [0, 1]");
    }
    return cfg.info_per_word / cfg.k_symbols * similarity;
}

double bit_rate(double sinr) {
    if (!std::isfinite(sinr) || sinr < 0.0) {
        throw std::domain_error("bit_rate: SINR must be finite and non-negative");
    }
    return std::log2(1.0 + sinr);
}

double equivalent_semantic_rate(double bit_rate_bits, const SemanticConfig& cfg) {
    if (!(bit_rate_bits >= 0.0)) {
        throw std::domain_error("equivalent_semantic_rate: bit rate must be non-negative");
    }
    return bit_rate_bits * cfg.info_per_word * cfg.eps_c / cfg.mu_bits;
}

double min_valid_semantic_rate(const SemanticConfig& cfg) {
    return cfg.info_per_word / cfg.k_symbols * cfg.eps_th;
}

}  // namespace semnoma

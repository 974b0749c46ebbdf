#ifndef AGFEC_SISO_H
#define AGFEC_SISO_H

#include <array>
#include <cstdint>
#include <vector>

#include "agfec/hermitian.h"

namespace agfec {

// log-domain clamp; keeps every metric finite and comparable
inline constexpr double kLogClamp = 50.0;

// Log-likelihood of each of the 16 field values for one symbol, normalized
// so the largest entry is 0. A default-constructed value is uniform.
struct SymbolReliability {
    std::array<double, 16> loglik{};

    // subtract the maximum, then floor entries at -kLogClamp
    void normalize();

    // most likely value; ties go to the smallest field element
    GfElem argmax() const;

    // gap between the best and runner-up entries, >= 0
    double margin() const;

    // log-domain product of likelihoods
    void add(const SymbolReliability& other) {
        for (int v = 0; v < 16; ++v) loglik[static_cast<std::size_t>(v)] += other.loglik[static_cast<std::size_t>(v)];
    }
};

using SoftWord = std::vector<SymbolReliability>;

struct ChaseConfig {
    int p = 4; // least-reliable positions perturbed
    int s = 2; // alternative values tried per position
    std::vector<double> alpha_schedule = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<double> beta_schedule = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

    double alpha(int iteration) const;
    double beta(int iteration) const;
    void validate() const; // throws std::invalid_argument
};

struct ChaseResult {
    std::vector<GfElem> decision;            // 64 symbols
    std::vector<SymbolReliability> extrinsic; // 64 entries, input contribution removed
    bool failed = false;                      // no candidate decoded
    std::uint32_t hard_decode_calls = 0;
    std::uint32_t candidates_decoded = 0;     // distinct codewords found
};

// Chase search around the p least-reliable symbols with Pyndiah-style
// extrinsic output. `iteration` indexes the alpha/beta schedules.
ChaseResult chase_decode(const AgCode& code, const SoftWord& input,
                         const ChaseConfig& cfg, int iteration);

} // namespace agfec

#endif

#ifndef AGFEC_BTC_H
#define AGFEC_BTC_H

#include <cstdint>
#include <span>
#include <vector>

#include "agfec/siso.h"

namespace agfec {

// 64x64 product block of two identical AG component codes; after encoding,
// every row and every column is a codeword.
struct ProductBlock {
    std::vector<GfElem> grid; // row-major 64x64
};

// info is k x k row-major; info cell (i, j) lands at grid position
// (info_positions[i], info_positions[j])
ProductBlock encode_product(const AgCode& code, std::span<const GfElem> info);

struct ProductDecodeResult {
    std::vector<GfElem> info; // k x k row-major
    int iterations_run = 0;
    std::uint64_t chase_failures = 0;
    std::uint64_t hard_decode_calls = 0;
    std::vector<std::uint32_t> per_iteration_row_failures;
};

// Pyndiah-style alternating row/column half-iterations; each half-iteration
// feeds channel reliabilities plus the other dimension's extrinsics to the
// Chase decoder. Both halves of an iteration share its schedule index.
ProductDecodeResult decode_product(std::span<const SymbolReliability> soft,
                                   const AgCode& code, const ChaseConfig& cfg,
                                   int iterations);

} // namespace agfec

#endif

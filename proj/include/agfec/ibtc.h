#ifndef AGFEC_IBTC_H
#define AGFEC_IBTC_H

#include <cstdint>
#include <span>
#include <vector>

#include "agfec/siso.h"

namespace agfec {

struct ProfileEntry {
    int degree = 2;   // repetition count, >= 2
    double share = 1; // fraction of the info symbols
};

// Resolved irregular repetition structure: integer group sizes summing to
// kt, entries sorted by degree ascending.
struct DegreeProfile {
    std::vector<ProfileEntry> entries;
    std::vector<int> counts; // f_j per entry
};

// Frame accounting derived from a profile bound to a component code.
struct FrameLayout {
    int kt = 0;        // original info symbols
    int ht = 0;        // repeated symbols, sum of d_j * f_j
    int codewords = 0; // ht / k
    int pt = 0;        // parity symbols, codewords * (n - k)
    int nt = 0;        // kt + pt transmitted symbols
    double rate = 0;   // kt / nt
    int moved = 0;     // symbols shifted between the two lowest degrees
                       // to make ht divisible by k
};

struct ResolvedProfile {
    DegreeProfile profile;
    FrameLayout layout;
};

// Largest-remainder rounding of share*kt to integer group sizes, then a
// minimal deterministic transfer between the two lowest degrees until the
// repeated length divides the component code dimension. `strict` also
// enforces the degree-2 share window [0.75, 0.95].
ResolvedProfile resolve_profile(std::span<const ProfileEntry> shares, int kt,
                                const AgCode& code, bool strict = false);

// repeated index -> original info index, group-major: all first copies of a
// group, then its second copies, and so on, groups by ascending degree
std::vector<std::uint32_t> repetition_map(const DegreeProfile& profile);

std::vector<GfElem> repeat_nonuniform(std::span<const GfElem> info,
                                      const DegreeProfile& profile);

// Fisher-Yates permutation of [0, ht) seeded from (master seed, frame index),
// then deterministically repaired so the copies of any one symbol land in
// distinct component codewords; interleaved[j] = repeated[perm[j]]
std::vector<std::uint32_t> make_interleaver(std::uint64_t master_seed,
                                            std::uint64_t frame_index,
                                            const ResolvedProfile& rp);

// Transmitted frame: the untouched original info block plus the parity
// symbols of every component codeword. Repeated copies are never sent.
struct TxFrame {
    std::vector<GfElem> info;
    std::vector<GfElem> parity;
};

TxFrame encode_frame(std::span<const GfElem> info, const ResolvedProfile& rp,
                     const AgCode& code, std::span<const std::uint32_t> interleaver);

// Repetition-node rule: the new a priori of copy i is the log-domain sum of
// the other copies' extrinsics, renormalized. The aggregation rule lives
// here alone so an alternative can be swapped in for comparison.
std::vector<SymbolReliability> exclusive_extrinsic_sums(
    std::span<const SymbolReliability> copy_extrinsics);

// Channel reliabilities for one frame, split as received.
struct FrameSoftInput {
    std::vector<SymbolReliability> info_rel;   // kt entries
    std::vector<SymbolReliability> parity_rel; // pt entries
};

struct FrameDecodeResult {
    std::vector<GfElem> info;
    int iterations_run = 0;
    std::uint64_t chase_failures = 0;
    std::uint64_t hard_decode_calls = 0;
    // info decisions captured after each iteration
    std::vector<std::vector<GfElem>> per_iteration_info;
};

// Iterative decoding: per iteration every component codeword is Chase
// decoded with channel + a priori input; extrinsics are exchanged through
// the repetition structure (a copy's new a priori is the log-domain sum of
// the other copies' extrinsics). The final decision combines the channel
// reliability with all copies' extrinsics.
FrameDecodeResult decode_frame(const FrameSoftInput& in, const ResolvedProfile& rp,
                               const AgCode& code,
                               std::span<const std::uint32_t> interleaver,
                               const ChaseConfig& cfg, int iterations,
                               bool early_exit = false);

} // namespace agfec

#endif

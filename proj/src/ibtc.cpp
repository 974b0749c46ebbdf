#include "agfec/ibtc.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "agfec/rng.h"

namespace agfec {

ResolvedProfile resolve_profile(std::span<const ProfileEntry> shares, int kt,
                                const AgCode& code, bool strict) {
    if (kt < 1) throw std::invalid_argument("resolve_profile: kt must be >= 1");
    if (shares.empty()) throw std::invalid_argument("resolve_profile: empty profile");
    if (shares.size() > 3)
        throw std::invalid_argument("resolve_profile: at most 3 distinct degrees");

    std::vector<ProfileEntry> entries(shares.begin(), shares.end());
    std::sort(entries.begin(), entries.end(),
              [](const ProfileEntry& a, const ProfileEntry& b) { return a.degree < b.degree; });
    double total = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].degree < 2)
            throw std::invalid_argument("resolve_profile: degrees must be >= 2");
        if (entries[i].share <= 0.0)
            throw std::invalid_argument("resolve_profile: shares must be positive");
        if (i > 0 && entries[i].degree == entries[i - 1].degree)
            throw std::invalid_argument("resolve_profile: duplicate degree");
        total += entries[i].share;
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw std::invalid_argument("resolve_profile: shares must sum to 1");
    if (strict) {
        double deg2 = entries.front().degree == 2 ? entries.front().share : 0.0;
        if (deg2 < 0.75 || deg2 > 0.95)
            throw std::invalid_argument(
                "resolve_profile: degree-2 share outside [0.75, 0.95] (strict)");
    }

    // largest-remainder rounding to integer counts summing to kt
    const std::size_t j = entries.size();
    std::vector<int> counts(j);
    std::vector<double> rema(j);
    int assigned = 0;
    for (std::size_t i = 0; i < j; ++i) {
        double exact = entries[i].share * kt;
        counts[i] = static_cast<int>(std::floor(exact));
        rema[i] = exact - counts[i];
        assigned += counts[i];
    }
    std::vector<std::size_t> order(j);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rema[a] > rema[b]; });
    for (int left = kt - assigned; left > 0; --left)
        counts[order[static_cast<std::size_t>(kt - assigned - left)]] += 1;

    auto repeated_len = [&](const std::vector<int>& c) {
        long h = 0;
        for (std::size_t i = 0; i < j; ++i) h += static_cast<long>(entries[i].degree) * c[i];
        return h;
    };

    // transfer between the two lowest degrees until k divides ht; smallest
    // move count wins, moves toward the lowest degree tried first
    const int k = code.k();
    int moved = 0;
    if (repeated_len(counts) % k != 0) {
        if (j < 2)
            throw std::invalid_argument("resolve_profile: repeated length not divisible by k "
                                        "and only one degree to adjust");
        bool fixed = false;
        for (int delta = 1; delta <= kt && !fixed; ++delta) {
            // delta symbols moved from entry 1 into entry 0 ...
            if (counts[1] - delta >= 0) {
                std::vector<int> c = counts;
                c[0] += delta;
                c[1] -= delta;
                if (repeated_len(c) % k == 0) {
                    counts = c;
                    moved = delta;
                    fixed = true;
                    break;
                }
            }
            // ... or the other way
            if (counts[0] - delta >= 0) {
                std::vector<int> c = counts;
                c[0] -= delta;
                c[1] += delta;
                if (repeated_len(c) % k == 0) {
                    counts = c;
                    moved = delta;
                    fixed = true;
                    break;
                }
            }
        }
        if (!fixed)
            throw std::invalid_argument(
                "resolve_profile: cannot reach a repeated length divisible by k");
    }

    ResolvedProfile rp;
    rp.profile.entries = entries;
    rp.profile.counts = counts;
    rp.layout.kt = kt;
    rp.layout.ht = static_cast<int>(repeated_len(counts));
    rp.layout.codewords = rp.layout.ht / k;
    if (entries.back().degree > rp.layout.codewords)
        throw std::invalid_argument(
            "resolve_profile: max degree exceeds the codeword count, copies cannot be "
            "placed in distinct codewords");
    rp.layout.pt = rp.layout.codewords * (code.n() - k);
    rp.layout.nt = kt + rp.layout.pt;
    rp.layout.rate = static_cast<double>(kt) / rp.layout.nt;
    rp.layout.moved = moved;
    return rp;
}

std::vector<std::uint32_t> repetition_map(const DegreeProfile& profile) {
    std::vector<std::uint32_t> map;
    std::uint32_t group_base = 0;
    for (std::size_t gi = 0; gi < profile.entries.size(); ++gi) {
        const int d = profile.entries[gi].degree;
        const int f = profile.counts[gi];
        for (int copy = 0; copy < d; ++copy)
            for (int s = 0; s < f; ++s)
                map.push_back(group_base + static_cast<std::uint32_t>(s));
        group_base += static_cast<std::uint32_t>(f);
    }
    return map;
}

std::vector<GfElem> repeat_nonuniform(std::span<const GfElem> info,
                                      const DegreeProfile& profile) {
    const auto map = repetition_map(profile);
    std::vector<GfElem> out(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (map[i] >= info.size())
            throw std::invalid_argument("repeat_nonuniform: info shorter than profile");
        out[i] = info[map[i]];
    }
    return out;
}

std::vector<std::uint32_t> make_interleaver(std::uint64_t master_seed,
                                            std::uint64_t frame_index,
                                            const ResolvedProfile& rp) {
    const std::size_t ht = static_cast<std::size_t>(rp.layout.ht);
    const std::size_t k = ht / static_cast<std::size_t>(rp.layout.codewords);
    Rng rng(substream_seed(master_seed, frame_index, /*purpose=*/1));
    std::vector<std::uint32_t> perm(ht);
    std::iota(perm.begin(), perm.end(), 0u);
    rng.shuffle(perm);

    const auto rep = repetition_map(rp.profile);
    auto symbol_at = [&](std::size_t j) { return rep[perm[j]]; };
    auto symbol_in_block = [&](std::uint32_t sym, std::size_t block, std::size_t except) {
        for (std::size_t j = block * k; j < (block + 1) * k; ++j)
            if (j != except && symbol_at(j) == sym) return true;
        return false;
    };

    // swap colliding slots away; the probe start is drawn from the stream so
    // the repair stays a pure function of (seed, frame)
    for (int round = 0; round < 64; ++round) {
        bool clean = true;
        for (std::size_t j = 0; j < ht; ++j) {
            std::size_t block = j / k;
            if (!symbol_in_block(symbol_at(j), block, j)) continue;
            clean = false;
            std::size_t probe = static_cast<std::size_t>(rng.below(ht));
            for (std::size_t step = 0; step < ht; ++step) {
                std::size_t j2 = (probe + step) % ht;
                std::size_t block2 = j2 / k;
                if (block2 == block) continue;
                if (symbol_in_block(symbol_at(j2), block, j)) continue;
                if (symbol_in_block(symbol_at(j), block2, j2)) continue;
                std::swap(perm[j], perm[j2]);
                break;
            }
        }
        if (clean) return perm;
    }
    throw std::runtime_error("make_interleaver: could not separate symbol copies");
}

std::vector<SymbolReliability> exclusive_extrinsic_sums(
    std::span<const SymbolReliability> copy_extrinsics) {
    std::vector<SymbolReliability> out(copy_extrinsics.size());
    for (std::size_t a = 0; a < copy_extrinsics.size(); ++a) {
        SymbolReliability acc{};
        for (std::size_t b = 0; b < copy_extrinsics.size(); ++b) {
            if (b == a) continue;
            acc.add(copy_extrinsics[b]);
        }
        acc.normalize();
        out[a] = acc;
    }
    return out;
}

TxFrame encode_frame(std::span<const GfElem> info, const ResolvedProfile& rp,
                     const AgCode& code, std::span<const std::uint32_t> interleaver) {
    const FrameLayout& lay = rp.layout;
    if (static_cast<int>(info.size()) != lay.kt)
        throw std::invalid_argument("encode_frame: info length mismatch");
    if (static_cast<int>(interleaver.size()) != lay.ht)
        throw std::invalid_argument("encode_frame: interleaver length mismatch");

    std::vector<GfElem> repeated = repeat_nonuniform(info, rp.profile);
    std::vector<GfElem> interleaved(repeated.size());
    for (std::size_t i = 0; i < interleaved.size(); ++i)
        interleaved[i] = repeated[interleaver[i]];

    const int k = code.k();
    const int r = code.n() - k;
    TxFrame frame;
    frame.info.assign(info.begin(), info.end());
    frame.parity.resize(static_cast<std::size_t>(lay.pt));
    for (int c = 0; c < lay.codewords; ++c) {
        std::span<const GfElem> block(interleaved.data() + static_cast<std::size_t>(c) * k,
                                      static_cast<std::size_t>(k));
        std::vector<GfElem> cw = code.encode(block);
        for (int pj = 0; pj < r; ++pj)
            frame.parity[static_cast<std::size_t>(c) * r + static_cast<std::size_t>(pj)] =
                cw[static_cast<std::size_t>(code.parity_positions()[static_cast<std::size_t>(pj)])];
    }
    return frame;
}

FrameDecodeResult decode_frame(const FrameSoftInput& in, const ResolvedProfile& rp,
                               const AgCode& code,
                               std::span<const std::uint32_t> interleaver,
                               const ChaseConfig& cfg, int iterations, bool early_exit) {
    const FrameLayout& lay = rp.layout;
    if (static_cast<int>(in.info_rel.size()) != lay.kt ||
        static_cast<int>(in.parity_rel.size()) != lay.pt)
        throw std::invalid_argument("decode_frame: input sizes do not match layout");
    if (static_cast<int>(interleaver.size()) != lay.ht)
        throw std::invalid_argument("decode_frame: interleaver length mismatch");
    if (iterations < 1) throw std::invalid_argument("decode_frame: iterations must be >= 1");

    const int k = code.k();
    const int n = code.n();
    const int r = n - k;
    const auto rep_map = repetition_map(rp.profile);

    // copies of each original symbol, as repeated-domain indices
    std::vector<std::vector<std::uint32_t>> copies(static_cast<std::size_t>(lay.kt));
    for (std::size_t i = 0; i < rep_map.size(); ++i)
        copies[rep_map[i]].push_back(static_cast<std::uint32_t>(i));

    // extrinsics and a priori both live in the repeated domain; the a priori
    // starts uniform (zero log likelihood everywhere)
    std::vector<SymbolReliability> ext_rep(static_cast<std::size_t>(lay.ht));
    std::vector<SymbolReliability> apriori_rep(static_cast<std::size_t>(lay.ht));

    FrameDecodeResult res;
    res.per_iteration_info.reserve(static_cast<std::size_t>(iterations));

    SoftWord soft(static_cast<std::size_t>(n));
    auto decide = [&](std::span<const SymbolReliability> extr) {
        std::vector<GfElem> out(static_cast<std::size_t>(lay.kt));
        for (int o = 0; o < lay.kt; ++o) {
            SymbolReliability acc = in.info_rel[static_cast<std::size_t>(o)];
            for (std::uint32_t ci : copies[static_cast<std::size_t>(o)])
                acc.add(extr[ci]);
            out[static_cast<std::size_t>(o)] = acc.argmax();
        }
        return out;
    };

    for (int it = 0; it < iterations; ++it) {
        bool all_valid = true;
        for (int c = 0; c < lay.codewords; ++c) {
            // channel + a priori at the info slots, channel at the parity slots
            for (int idx = 0; idx < k; ++idx) {
                std::size_t j = static_cast<std::size_t>(c) * k + static_cast<std::size_t>(idx);
                SymbolReliability rel = in.info_rel[rep_map[interleaver[j]]];
                rel.add(apriori_rep[interleaver[j]]);
                rel.normalize();
                soft[static_cast<std::size_t>(code.info_positions()[static_cast<std::size_t>(idx)])] = rel;
            }
            for (int pj = 0; pj < r; ++pj)
                soft[static_cast<std::size_t>(code.parity_positions()[static_cast<std::size_t>(pj)])] =
                    in.parity_rel[static_cast<std::size_t>(c) * r + static_cast<std::size_t>(pj)];

            ChaseResult cr = chase_decode(code, soft, cfg, it);
            res.hard_decode_calls += cr.hard_decode_calls;
            if (cr.failed) {
                ++res.chase_failures;
                all_valid = false;
            }
            for (int idx = 0; idx < k; ++idx) {
                std::size_t j = static_cast<std::size_t>(c) * k + static_cast<std::size_t>(idx);
                ext_rep[interleaver[j]] =
                    cr.extrinsic[static_cast<std::size_t>(code.info_positions()[static_cast<std::size_t>(idx)])];
            }
        }

        // repetition node update
        std::vector<SymbolReliability> scratch;
        for (int o = 0; o < lay.kt; ++o) {
            const auto& cp = copies[static_cast<std::size_t>(o)];
            scratch.assign(cp.size(), SymbolReliability{});
            for (std::size_t a = 0; a < cp.size(); ++a) scratch[a] = ext_rep[cp[a]];
            auto updated = exclusive_extrinsic_sums(scratch);
            for (std::size_t a = 0; a < cp.size(); ++a) apriori_rep[cp[a]] = updated[a];
        }

        res.iterations_run = it + 1;
        res.per_iteration_info.push_back(decide(ext_rep));
        if (early_exit && all_valid) break;
    }

    res.info = res.per_iteration_info.back();
    return res;
}

} // namespace agfec

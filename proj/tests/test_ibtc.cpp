#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "agfec/ibtc.h"
#include "agfec/rng.h"

using namespace agfec;

namespace {

SoftWord noiseless(const std::vector<GfElem>& word) {
    SoftWord soft(word.size());
    for (std::size_t l = 0; l < word.size(); ++l) {
        soft[l].loglik.fill(-kLogClamp);
        soft[l].loglik[word[l]] = 0.0;
    }
    return soft;
}

FrameSoftInput noiseless_input(const TxFrame& tx) {
    FrameSoftInput in;
    in.info_rel = noiseless(tx.info);
    in.parity_rel = noiseless(tx.parity);
    return in;
}

void check_layout_identities(const ResolvedProfile& rp, const AgCode& code) {
    long ht = 0;
    int kt = 0;
    for (std::size_t i = 0; i < rp.profile.entries.size(); ++i) {
        ht += static_cast<long>(rp.profile.entries[i].degree) * rp.profile.counts[i];
        kt += rp.profile.counts[i];
    }
    CHECK(kt == rp.layout.kt);
    CHECK(ht == rp.layout.ht);
    CHECK(rp.layout.ht % code.k() == 0);
    CHECK(rp.layout.codewords == rp.layout.ht / code.k());
    CHECK(rp.layout.pt == rp.layout.codewords * (code.n() - code.k()));
    CHECK(rp.layout.nt == rp.layout.kt + rp.layout.pt);
    CHECK(rp.layout.rate ==
          doctest::Approx(static_cast<double>(rp.layout.kt) / rp.layout.nt).epsilon(1e-15));
}

} // namespace

TEST_SUITE("ibtc") {

TEST_CASE("paper profile for the (64,49) code") {
    AgCode code = build_code(49);
    std::vector<ProfileEntry> shares = {{2, 0.85}, {3, 0.10}, {9, 0.05}};
    ResolvedProfile rp = resolve_profile(shares, 980, code, /*strict=*/true);
    CHECK(rp.profile.counts == std::vector<int>{833, 98, 49});
    CHECK(rp.layout.ht == 2401);
    CHECK(rp.layout.codewords == 49);
    CHECK(rp.layout.pt == 735);
    CHECK(rp.layout.nt == 1715);
    CHECK(rp.layout.moved == 0);
    CHECK(rp.layout.rate == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
    check_layout_identities(rp, code);
}

TEST_CASE("chosen profile for the (64,44) code") {
    AgCode code = build_code(44);
    std::vector<ProfileEntry> shares = {{2, 0.90}, {4, 0.10}};
    ResolvedProfile rp = resolve_profile(shares, 440, code, /*strict=*/true);
    CHECK(rp.profile.counts == std::vector<int>{396, 44});
    CHECK(rp.layout.ht == 968);
    CHECK(rp.layout.codewords == 22);
    CHECK(rp.layout.pt == 440);
    CHECK(rp.layout.rate == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rp.layout.moved == 0);
    check_layout_identities(rp, code);
}

TEST_CASE("uniform degree-2 single entry") {
    AgCode code = build_code(49);
    std::vector<ProfileEntry> shares = {{2, 1.0}};
    ResolvedProfile rp = resolve_profile(shares, 49, code);
    CHECK(rp.layout.ht == 98);
    CHECK(rp.layout.codewords == 2);
    CHECK(rp.layout.rate ==
          doctest::Approx(49.0 / (49.0 + 2.0 * 15.0)).epsilon(1e-15));
}

TEST_CASE("divisibility repair moves symbols between the two lowest degrees") {
    AgCode code = build_code(49);
    std::vector<ProfileEntry> shares = {{2, 0.9}, {3, 0.1}};
    // f = (90, 10): ht = 210, not a multiple of 49; the smallest consistent
    // transfer is 35 symbols from degree 2 into degree 3
    ResolvedProfile rp = resolve_profile(shares, 100, code);
    CHECK(rp.layout.moved == 35);
    CHECK(rp.profile.counts == std::vector<int>{55, 45});
    CHECK(rp.layout.ht == 245);
    check_layout_identities(rp, code);
}

TEST_CASE("profile validation") {
    AgCode code = build_code(49);
    std::vector<ProfileEntry> bad_degree = {{1, 1.0}};
    CHECK_THROWS_AS(resolve_profile(bad_degree, 49, code), std::invalid_argument);
    std::vector<ProfileEntry> bad_sum = {{2, 0.5}, {3, 0.1}};
    CHECK_THROWS_AS(resolve_profile(bad_sum, 49, code), std::invalid_argument);
    std::vector<ProfileEntry> four = {{2, 0.7}, {3, 0.1}, {4, 0.1}, {5, 0.1}};
    CHECK_THROWS_AS(resolve_profile(four, 49, code), std::invalid_argument);
    std::vector<ProfileEntry> dup = {{2, 0.5}, {2, 0.5}};
    CHECK_THROWS_AS(resolve_profile(dup, 49, code), std::invalid_argument);
    // strict window on the degree-2 share
    std::vector<ProfileEntry> all2 = {{2, 1.0}};
    CHECK_THROWS_AS(resolve_profile(all2, 49, code, /*strict=*/true), std::invalid_argument);
    std::vector<ProfileEntry> low2 = {{2, 0.70}, {3, 0.30}};
    CHECK_THROWS_AS(resolve_profile(low2, 490, code, /*strict=*/true), std::invalid_argument);
}

TEST_CASE("group-major repetition order") {
    DegreeProfile profile;
    profile.entries = {{2, 1.0}};
    profile.counts = {2};
    std::vector<GfElem> info = {0xa, 0xb};
    CHECK(repeat_nonuniform(info, profile) == std::vector<GfElem>{0xa, 0xb, 0xa, 0xb});

    AgCode code = build_code(49);
    std::vector<ProfileEntry> shares = {{2, 0.85}, {3, 0.10}, {9, 0.05}};
    ResolvedProfile rp = resolve_profile(shares, 980, code);
    Rng rng(103);
    std::vector<GfElem> big(980);
    for (auto& s : big) s = static_cast<GfElem>(rng.below(16));
    auto repeated = repeat_nonuniform(big, rp.profile);
    CHECK(repeated.size() == 2401);
    // occurrence counts match the degrees
    auto map = repetition_map(rp.profile);
    std::vector<int> occur(980, 0);
    for (auto idx : map) occur[idx] += 1;
    for (int i = 0; i < 833; ++i) CHECK(occur[static_cast<std::size_t>(i)] == 2);
    for (int i = 833; i < 931; ++i) CHECK(occur[static_cast<std::size_t>(i)] == 3);
    for (int i = 931; i < 980; ++i) CHECK(occur[static_cast<std::size_t>(i)] == 9);
}

TEST_CASE("interleaver is a bijection, separates copies, distinct across frames") {
    AgCode code = build_code(49);
    std::vector<ProfileEntry> shares = {{2, 0.85}, {3, 0.10}, {9, 0.05}};
    ResolvedProfile rp = resolve_profile(shares, 980, code);
    const std::size_t ht = static_cast<std::size_t>(rp.layout.ht);
    const std::size_t k = static_cast<std::size_t>(code.k());
    const auto rep = repetition_map(rp.profile);
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint64_t frame = 0; frame < 100; ++frame) {
        auto perm = make_interleaver(99, frame, rp);
        std::vector<bool> hit(ht, false);
        for (auto v : perm) {
            REQUIRE(v < ht);
            CHECK_FALSE(hit[v]);
            hit[v] = true;
        }
        // no two copies of one symbol inside the same codeword block
        for (std::size_t block = 0; block < ht / k; ++block) {
            std::set<std::uint32_t> symbols;
            for (std::size_t j = block * k; j < (block + 1) * k; ++j)
                CHECK(symbols.insert(rep[perm[j]]).second);
        }
        CHECK(seen.insert(perm).second); // all permutations distinct
    }
    // reproducible for the same (seed, frame)
    CHECK(make_interleaver(99, 5, rp) == make_interleaver(99, 5, rp));
    CHECK(make_interleaver(99, 5, rp) != make_interleaver(100, 5, rp));
}

TEST_CASE("all-zero info gives all-zero parity") {
    AgCode code = build_code(49);
    std::vector<ProfileEntry> shares = {{2, 0.85}, {3, 0.10}, {9, 0.05}};
    ResolvedProfile rp = resolve_profile(shares, 980, code);
    auto interleaver = make_interleaver(1, 0, rp);
    std::vector<GfElem> zero(980, 0);
    TxFrame tx = encode_frame(zero, rp, code, interleaver);
    CHECK(tx.info == zero);
    for (GfElem p : tx.parity) CHECK(p == 0);
    CHECK(static_cast<int>(tx.parity.size()) == rp.layout.pt);
}

TEST_CASE("noiseless round trip in one iteration, both codes") {
    Rng rng(107);
    for (int ktarget : {49, 44}) {
        AgCode code = build_code(ktarget);
        std::vector<ProfileEntry> shares;
        int kt;
        if (ktarget == 49) {
            shares = {{2, 0.85}, {3, 0.10}, {9, 0.05}};
            kt = 980;
        } else {
            shares = {{2, 0.90}, {4, 0.10}};
            kt = 440;
        }
        ResolvedProfile rp = resolve_profile(shares, kt, code);
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<GfElem> info(static_cast<std::size_t>(kt));
            for (auto& s : info) s = static_cast<GfElem>(rng.below(16));
            auto interleaver =
                make_interleaver(7, static_cast<std::uint64_t>(trial), rp);
            TxFrame tx = encode_frame(info, rp, code, interleaver);
            ChaseConfig cfg;
            FrameDecodeResult dec =
                decode_frame(noiseless_input(tx), rp, code, interleaver, cfg, 1);
            CHECK(dec.info == info);
            CHECK(dec.chase_failures == 0);
        }
    }
}

TEST_CASE("degree-2 a priori swaps the two extrinsics verbatim") {
    Rng rng(109);
    std::vector<SymbolReliability> ext(2);
    for (auto& e : ext) {
        for (auto& v : e.loglik) v = -10.0 * rng.uniform01();
        e.normalize();
    }
    auto updated = exclusive_extrinsic_sums(ext);
    for (int v = 0; v < 16; ++v) {
        CHECK(updated[0].loglik[static_cast<std::size_t>(v)] ==
              doctest::Approx(ext[1].loglik[static_cast<std::size_t>(v)]));
        CHECK(updated[1].loglik[static_cast<std::size_t>(v)] ==
              doctest::Approx(ext[0].loglik[static_cast<std::size_t>(v)]));
    }
    // degree 3: each a priori is the sum of the other two
    std::vector<SymbolReliability> ext3(3);
    for (auto& e : ext3)
        for (auto& v : e.loglik) v = -5.0 * rng.uniform01();
    auto up3 = exclusive_extrinsic_sums(ext3);
    SymbolReliability manual{};
    manual.add(ext3[1]);
    manual.add(ext3[2]);
    manual.normalize();
    for (int v = 0; v < 16; ++v)
        CHECK(up3[0].loglik[static_cast<std::size_t>(v)] ==
              doctest::Approx(manual.loglik[static_cast<std::size_t>(v)]));
}

TEST_CASE("transmitted frame carries no repeated copies") {
    AgCode code = build_code(44);
    std::vector<ProfileEntry> shares = {{2, 0.90}, {4, 0.10}};
    ResolvedProfile rp = resolve_profile(shares, 440, code);
    Rng rng(113);
    std::vector<GfElem> info(440);
    for (auto& s : info) s = static_cast<GfElem>(rng.below(16));
    auto interleaver = make_interleaver(3, 1, rp);
    TxFrame tx = encode_frame(info, rp, code, interleaver);
    CHECK(static_cast<int>(tx.info.size() + tx.parity.size()) == rp.layout.nt);
    CHECK(tx.info == info);
}

} // TEST_SUITE

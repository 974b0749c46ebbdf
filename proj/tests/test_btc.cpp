#include <doctest.h>

#include <stdexcept>

#include "agfec/btc.h"
#include "agfec/rng.h"

using namespace agfec;

namespace {

std::vector<SymbolReliability> noiseless_grid(const std::vector<GfElem>& grid) {
    std::vector<SymbolReliability> soft(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        soft[i].loglik.fill(-kLogClamp);
        soft[i].loglik[grid[i]] = 0.0;
    }
    return soft;
}

std::vector<GfElem> random_info_block(const AgCode& code, Rng& rng) {
    std::vector<GfElem> info(static_cast<std::size_t>(code.k()) * code.k());
    for (auto& s : info) s = static_cast<GfElem>(rng.below(16));
    return info;
}

} // namespace

TEST_SUITE("btc") {

TEST_CASE("product rates") {
    CHECK(49.0 * 49.0 / (64.0 * 64.0) == doctest::Approx(0.5862).epsilon(1e-3));
    CHECK(44.0 * 44.0 / (64.0 * 64.0) == doctest::Approx(0.4727).epsilon(1e-3));
}

TEST_CASE("all-zero info encodes to the all-zero block") {
    AgCode code = build_code(49);
    std::vector<GfElem> zero(static_cast<std::size_t>(code.k()) * code.k(), 0);
    ProductBlock block = encode_product(code, zero);
    for (GfElem s : block.grid) CHECK(s == 0);
}

TEST_CASE("every row and column is a codeword") {
    Rng rng(127);
    for (int ktarget : {49, 44}) {
        AgCode code = build_code(ktarget);
        const int n = code.n();
        for (int trial = 0; trial < 3; ++trial) {
            auto info = random_info_block(code, rng);
            ProductBlock block = encode_product(code, info);
            std::vector<GfElem> line(static_cast<std::size_t>(n));
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) line[static_cast<std::size_t>(c)] = block.grid[static_cast<std::size_t>(r) * n + c];
                CHECK(code.is_codeword(line));
            }
            for (int c = 0; c < n; ++c) {
                for (int r = 0; r < n; ++r) line[static_cast<std::size_t>(r)] = block.grid[static_cast<std::size_t>(r) * n + c];
                CHECK(code.is_codeword(line));
            }
            // info region sits at the (info, info) positions
            const auto& ip = code.info_positions();
            for (int i = 0; i < code.k(); ++i)
                for (int j = 0; j < code.k(); ++j)
                    CHECK(block.grid[static_cast<std::size_t>(ip[static_cast<std::size_t>(i)]) * n +
                                     static_cast<std::size_t>(ip[static_cast<std::size_t>(j)])] ==
                          info[static_cast<std::size_t>(i) * code.k() + static_cast<std::size_t>(j)]);
        }
    }
}

TEST_CASE("transposition symmetry") {
    Rng rng(131);
    AgCode code = build_code(49);
    const int n = code.n(), k = code.k();
    auto info = random_info_block(code, rng);
    std::vector<GfElem> info_t(info.size());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            info_t[static_cast<std::size_t>(j) * k + i] = info[static_cast<std::size_t>(i) * k + j];
    ProductBlock a = encode_product(code, info);
    ProductBlock b = encode_product(code, info_t);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            CHECK(a.grid[static_cast<std::size_t>(r) * n + c] == b.grid[static_cast<std::size_t>(c) * n + r]);
}

TEST_CASE("size mismatch is rejected") {
    AgCode code = build_code(49);
    std::vector<GfElem> wrong(10, 0);
    CHECK_THROWS_AS(encode_product(code, wrong), std::invalid_argument);
}

TEST_CASE("noiseless decode recovers the info in one iteration") {
    Rng rng(137);
    AgCode code = build_code(49);
    auto info = random_info_block(code, rng);
    ProductBlock block = encode_product(code, info);
    ChaseConfig cfg;
    ProductDecodeResult res = decode_product(noiseless_grid(block.grid), code, cfg, 1);
    CHECK(res.info == info);
    CHECK(res.chase_failures == 0);
    CHECK(res.per_iteration_row_failures.size() == 1);
}

TEST_CASE("a single corrupted symbol is repaired") {
    Rng rng(139);
    AgCode code = build_code(49);
    auto info = random_info_block(code, rng);
    ProductBlock block = encode_product(code, info);
    ChaseConfig cfg;
    // corrupt one cell to confidently favor a wrong value; both its row and
    // column repair it and their extrinsics overturn the cell decision once
    // the beta schedule ramps up
    for (std::size_t cell : {std::size_t{64 * 17 + 42}, std::size_t{64 * 3 + 60}, std::size_t{0}}) {
        auto soft = noiseless_grid(block.grid);
        GfElem wrong = static_cast<GfElem>(block.grid[cell] ^ 0x5);
        soft[cell].loglik.fill(-kLogClamp);
        soft[cell].loglik[wrong] = 0.0;
        ProductDecodeResult res = decode_product(soft, code, cfg, 8);
        CHECK(res.info == info);
    }
}

TEST_CASE("decode is deterministic") {
    Rng rng(149);
    AgCode code = build_code(49);
    auto info = random_info_block(code, rng);
    ProductBlock block = encode_product(code, info);
    auto soft = noiseless_grid(block.grid);
    for (int j = 0; j < 20; ++j) {
        std::size_t cell = rng.below(64 * 64);
        soft[cell].loglik[rng.below(16)] = -0.2;
    }
    ChaseConfig cfg;
    ProductDecodeResult a = decode_product(soft, code, cfg, 2);
    ProductDecodeResult b = decode_product(soft, code, cfg, 2);
    CHECK(a.info == b.info);
    CHECK(a.chase_failures == b.chase_failures);
    CHECK(a.hard_decode_calls == b.hard_decode_calls);
}

} // TEST_SUITE

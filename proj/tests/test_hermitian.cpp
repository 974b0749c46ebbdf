#include <doctest.h>

#include <stdexcept>

#include <set>

#include "agfec/hermitian.h"
#include "agfec/rng.h"

using namespace agfec;

namespace {

// same bitwise oracle as the field tests; keeps the curve check independent
// of the Gf16 tables
unsigned slow_mul(unsigned a, unsigned b) {
    unsigned r = 0;
    for (int i = 0; i < 4; ++i)
        if (b & (1u << i)) r ^= a << i;
    for (int d = 7; d >= 4; --d)
        if (r & (1u << d)) r ^= 0b10011u << (d - 4);
    return r;
}

unsigned slow_pow(unsigned a, int e) {
    unsigned r = 1;
    for (int i = 0; i < e; ++i) r = slow_mul(r, a);
    return r;
}

int count_monomials(int m) {
    int count = 0;
    for (int b = 0; b <= 3; ++b)
        for (int a = 0; 4 * a + 5 * b <= m; ++a) ++count;
    return count;
}

std::vector<GfElem> random_info(const AgCode& code, Rng& rng) {
    std::vector<GfElem> info(static_cast<std::size_t>(code.k()));
    for (auto& s : info) s = static_cast<GfElem>(rng.below(16));
    return info;
}

int weight(const std::vector<GfElem>& w) {
    int c = 0;
    for (GfElem s : w)
        if (s != 0) ++c;
    return c;
}

} // namespace

TEST_SUITE("hermitian") {

TEST_CASE("point enumeration") {
    HermitianCurve curve = enumerate_points();
    CHECK(curve.points.size() == 64);
    // every point satisfies y^4 + y = x^5, checked with the bitwise oracle
    for (const auto& pt : curve.points) {
        unsigned lhs = slow_pow(pt.y, 4) ^ pt.y;
        unsigned rhs = slow_pow(pt.x, 5);
        CHECK(lhs == rhs);
    }
    // (0,0) present, exactly 4 points on x = 0, lexicographic order
    CHECK((curve.points[0].x == 0 && curve.points[0].y == 0));
    int x0 = 0;
    for (const auto& pt : curve.points)
        if (pt.x == 0) ++x0;
    CHECK(x0 == 4);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        int prev = curve.points[i - 1].x * 16 + curve.points[i - 1].y;
        int cur = curve.points[i].x * 16 + curve.points[i].y;
        CHECK(prev < cur);
    }
    // oracle recount over all 256 pairs
    int count = 0;
    for (unsigned x = 0; x < 16; ++x)
        for (unsigned y = 0; y < 16; ++y)
            if ((slow_pow(y, 4) ^ y) == slow_pow(x, 5)) ++count;
    CHECK(count == 64);
}

TEST_CASE("riemann-roch dimensions by monomial count") {
    CHECK(count_monomials(54) == 49);
    CHECK(count_monomials(49) == 44);
    CHECK(rr_basis(54).size() == 49);
    CHECK(rr_basis(49).size() == 44);
    // pole orders are distinct and sorted
    auto basis = rr_basis(54);
    for (std::size_t i = 1; i < basis.size(); ++i)
        CHECK(basis[i - 1].pole_order() < basis[i].pole_order());
}

TEST_CASE("code parameters") {
    AgCode c49 = build_code(49);
    CHECK(c49.k() == 49);
    CHECK(c49.m() == 54);
    CHECK(c49.designed_distance() == 10);
    CHECK(c49.t() == 1);
    CHECK(c49.info_positions().size() == 49);
    CHECK(c49.parity_positions().size() == 15);

    AgCode c44 = build_code(44);
    CHECK(c44.k() == 44);
    CHECK(c44.m() == 49);
    CHECK(c44.designed_distance() == 15);
    CHECK(c44.t() == 4);

    CHECK_THROWS_AS(build_code(50), std::invalid_argument);
}

TEST_CASE("systematic generator") {
    AgCode code = build_code(49);
    const int n = code.n(), k = code.k();
    // identity on the pivot columns
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            GfElem v = code.generator_systematic()[static_cast<std::size_t>(i) * n +
                                                   code.info_positions()[static_cast<std::size_t>(j)]];
            CHECK(v == (i == j ? 1 : 0));
        }
    // basis-vector encodes reproduce generator rows
    for (int i : {0, 7, 48}) {
        std::vector<GfElem> e(static_cast<std::size_t>(k), 0);
        e[static_cast<std::size_t>(i)] = 1;
        auto cw = code.encode(e);
        for (int l = 0; l < n; ++l)
            CHECK(cw[static_cast<std::size_t>(l)] ==
                  code.generator_systematic()[static_cast<std::size_t>(i) * n + l]);
    }
}

TEST_CASE("encode basics and systematic readback") {
    Rng rng(7);
    for (int ktarget : {49, 44}) {
        AgCode code = build_code(ktarget);
        std::vector<GfElem> zero(static_cast<std::size_t>(code.k()), 0);
        auto zcw = code.encode(zero);
        CHECK(weight(zcw) == 0);
        for (int trial = 0; trial < 200; ++trial) {
            auto info = random_info(code, rng);
            auto cw = code.encode(info);
            CHECK(code.is_codeword(cw));
            for (int i = 0; i < code.k(); ++i)
                CHECK(cw[static_cast<std::size_t>(code.info_positions()[static_cast<std::size_t>(i)])] ==
                      info[static_cast<std::size_t>(i)]);
        }
        std::vector<GfElem> bad(static_cast<std::size_t>(code.k() + 1), 0);
        CHECK_THROWS_AS(code.encode(bad), std::invalid_argument);
    }
}

TEST_CASE("goppa bound on sampled codewords") {
    Rng rng(11);
    for (int ktarget : {49, 44}) {
        AgCode code = build_code(ktarget);
        for (int trial = 0; trial < 500; ++trial) {
            auto info = random_info(code, rng);
            bool zero = true;
            for (GfElem s : info)
                if (s) zero = false;
            if (zero) info[0] = 1;
            CHECK(weight(code.encode(info)) >= code.designed_distance());
        }
    }
}

TEST_CASE("hard decode: zero errors") {
    Rng rng(13);
    for (int ktarget : {49, 44}) {
        AgCode code = build_code(ktarget);
        auto cw = code.encode(random_info(code, rng));
        auto dec = code.hard_decode(cw);
        REQUIRE(dec.has_value());
        CHECK(*dec == cw);
    }
}

TEST_CASE("hard decode: all single-symbol corruptions, ag64_49") {
    Rng rng(17);
    AgCode code = build_code(49);
    for (int trial = 0; trial < 5; ++trial) {
        auto cw = code.encode(random_info(code, rng));
        for (int pos = 0; pos < 64; ++pos) {
            for (int delta = 1; delta < 16; ++delta) {
                auto corrupted = cw;
                corrupted[static_cast<std::size_t>(pos)] ^= static_cast<GfElem>(delta);
                auto dec = code.hard_decode(corrupted);
                REQUIRE(dec.has_value());
                CHECK(*dec == cw);
            }
        }
    }
}

TEST_CASE("hard decode: random 4-error patterns, ag64_44") {
    Rng rng(19);
    AgCode code = build_code(44);
    for (int trial = 0; trial < 100; ++trial) {
        auto cw = code.encode(random_info(code, rng));
        auto corrupted = cw;
        std::set<int> positions;
        while (positions.size() < 4) positions.insert(static_cast<int>(rng.below(64)));
        for (int pos : positions)
            corrupted[static_cast<std::size_t>(pos)] ^= static_cast<GfElem>(1 + rng.below(15));
        auto dec = code.hard_decode(corrupted);
        REQUIRE(dec.has_value());
        CHECK(*dec == cw);
    }
}

TEST_CASE("hard decode never returns a non-codeword") {
    Rng rng(23);
    for (int ktarget : {49, 44}) {
        AgCode code = build_code(ktarget);
        int failures = 0;
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<GfElem> word(64);
            for (auto& s : word) s = static_cast<GfElem>(rng.below(16));
            auto dec = code.hard_decode(word);
            if (!dec) {
                ++failures;
                continue;
            }
            CHECK(code.is_codeword(*dec));
            // re-encode from its info positions and compare
            std::vector<GfElem> info(static_cast<std::size_t>(code.k()));
            for (int i = 0; i < code.k(); ++i)
                info[static_cast<std::size_t>(i)] =
                    (*dec)[static_cast<std::size_t>(code.info_positions()[static_cast<std::size_t>(i)])];
            CHECK(code.encode(info) == *dec);
        }
        // random 64-symbol words are essentially never decodable
        CHECK(failures > 250);
    }
}

TEST_CASE("syndromes: incremental updates match recomputation") {
    Rng rng(29);
    AgCode code = build_code(44);
    auto cw = code.encode(random_info(code, rng));
    Syndromes syn = code.compute_syndromes(cw);
    for (GfElem s : syn.single) CHECK(s == 0);
    auto modified = cw;
    for (int step = 0; step < 6; ++step) {
        int pos = static_cast<int>(rng.below(64));
        GfElem delta = static_cast<GfElem>(1 + rng.below(15));
        modified[static_cast<std::size_t>(pos)] ^= delta;
        code.update_syndromes(syn, pos, delta);
    }
    Syndromes fresh = code.compute_syndromes(modified);
    CHECK(syn.matrix == fresh.matrix);
    CHECK(syn.single == fresh.single);
}

} // TEST_SUITE

#ifndef AGFEC_GF16_H
#define AGFEC_GF16_H

#include <array>
#include <cstdint>

namespace agfec {

// 4-bit field element in polynomial basis: bit i = coefficient of alpha^i.
using GfElem = std::uint8_t;

// GF(2^4) under the primitive polynomial x^4 + x + 1. All arithmetic is
// table-driven; the tables are immutable after construction, so a single
// shared instance can be read from any number of threads.
class Gf16 {
public:
    static constexpr int kOrder = 16;
    static constexpr int kGroupOrder = 15;
    static constexpr unsigned kPrimitivePoly = 0b10011; // x^4 + x + 1

    Gf16();

    static const Gf16& instance();

    GfElem add(GfElem a, GfElem b) const { return static_cast<GfElem>(a ^ b); }
    GfElem mul(GfElem a, GfElem b) const { return mul_[a][b]; }

    // a != 0; a zero argument is a contract violation and throws
    GfElem inv(GfElem a) const;

    // pow(0, e) = 0 for e > 0, pow(a, 0) = 1; a negative exponent of zero throws
    GfElem pow(GfElem a, long e) const;

    // alpha^i for any integer i (reduced mod 15)
    GfElem exp(long i) const {
        long r = i % kGroupOrder;
        if (r < 0) r += kGroupOrder;
        return exp_[static_cast<std::size_t>(r)];
    }

    // discrete log base alpha, a != 0 (throws on 0)
    int log(GfElem a) const;

    const std::array<GfElem, 15>& exp_table() const { return exp_; }
    const std::array<int, 16>& log_table() const { return log_; }

private:
    std::array<GfElem, 15> exp_{};
    std::array<int, 16> log_{}; // log_[0] = -1 sentinel
    GfElem mul_[16][16] = {};
    std::array<GfElem, 16> inv_{};
};

} // namespace agfec

#endif

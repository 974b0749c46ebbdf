#include "agfec/gf16.h"

#include <stdexcept>

namespace agfec {

Gf16::Gf16() {
    // exp/log via repeated multiplication by alpha with reduction
    unsigned cur = 1;
    log_.fill(-1);
    for (int i = 0; i < kGroupOrder; ++i) {
        exp_[static_cast<std::size_t>(i)] = static_cast<GfElem>(cur);
        log_[cur] = i;
        cur <<= 1;
        if (cur & 0x10u) cur ^= kPrimitivePoly;
    }
    for (int a = 0; a < kOrder; ++a) {
        for (int b = 0; b < kOrder; ++b) {
            if (a == 0 || b == 0) {
                mul_[a][b] = 0;
            } else {
                mul_[a][b] = exp_[static_cast<std::size_t>((log_[a] + log_[b]) % kGroupOrder)];
            }
        }
    }
    inv_[0] = 0;
    for (int a = 1; a < kOrder; ++a) {
        inv_[static_cast<std::size_t>(a)] =
            exp_[static_cast<std::size_t>((kGroupOrder - log_[a]) % kGroupOrder)];
    }
}

const Gf16& Gf16::instance() {
    static const Gf16 ctx;
    return ctx;
}

GfElem Gf16::inv(GfElem a) const {
    if (a == 0) throw std::domain_error("Gf16::inv: zero has no inverse");
    return inv_[a];
}

int Gf16::log(GfElem a) const {
    if (a == 0) throw std::domain_error("Gf16::log: log of zero is undefined");
    return log_[a];
}

GfElem Gf16::pow(GfElem a, long e) const {
    if (a == 0) {
        if (e < 0) throw std::domain_error("Gf16::pow: negative power of zero");
        return e == 0 ? GfElem{1} : GfElem{0};
    }
    long r = (static_cast<long>(log_[a]) * (e % kGroupOrder)) % kGroupOrder;
    if (r < 0) r += kGroupOrder;
    return exp_[static_cast<std::size_t>(r)];
}

} // namespace agfec

#include "agfec/channel.h"

#include <cmath>
#include <stdexcept>

namespace agfec {

double ChannelParams::n0() const {
    if (code_rate <= 0.0 || code_rate > 1.0)
        throw std::invalid_argument("ChannelParams: code_rate must be in (0, 1]");
    if (bits_per_symbol < 1)
        throw std::invalid_argument("ChannelParams: bits_per_symbol must be >= 1");
    return 1.0 / (code_rate * bits_per_symbol * std::pow(10.0, ebn0_db / 10.0));
}

std::vector<FadedObservation> transmit(std::span<const std::complex<double>> x,
                                       double n0, Rng& rng) {
    const double hs = std::sqrt(0.5);
    const double ns = n0 > 0.0 ? std::sqrt(n0 / 2.0) : 0.0;
    std::vector<FadedObservation> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::complex<double> h{hs * rng.gaussian(), hs * rng.gaussian()};
        std::complex<double> y = h * x[i];
        if (ns > 0.0) y += std::complex<double>{ns * rng.gaussian(), ns * rng.gaussian()};
        out[i] = {y, h};
    }
    return out;
}

double rayleigh_bpsk_ber(double gamma) {
    return 0.5 * (1.0 - std::sqrt(gamma / (1.0 + gamma)));
}

} // namespace agfec

#ifndef AGFEC_CHANNEL_H
#define AGFEC_CHANNEL_H

#include <complex>
#include <span>
#include <vector>

#include "agfec/rng.h"

namespace agfec {

// Eb/N0 accounting: unit-energy symbols carry rate * bits_per_symbol
// information bits each, so N0 = 1 / (rate * bps * 10^(EbN0_dB/10)).
struct ChannelParams {
    double ebn0_db = 0.0;
    double code_rate = 1.0;
    int bits_per_symbol = 1;

    double n0() const; // throws std::invalid_argument on bad rate/bps
};

struct FadedObservation {
    std::complex<double> y;
    std::complex<double> h;
};

// Rayleigh fast fading with AWGN: per symbol, h is circularly-symmetric
// complex Gaussian with E|h|^2 = 1 (independent across symbols) and the
// noise has total variance n0. n0 = 0 yields y = h*x exactly.
std::vector<FadedObservation> transmit(std::span<const std::complex<double>> x,
                                       double n0, Rng& rng);

// analytic BER of uncoded coherent BPSK on this channel at average SNR
// per bit gamma (linear)
double rayleigh_bpsk_ber(double gamma);

} // namespace agfec

#endif

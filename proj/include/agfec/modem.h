#ifndef AGFEC_MODEM_H
#define AGFEC_MODEM_H

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "agfec/siso.h"

namespace agfec {

using Cplx = std::complex<double>;

enum class Modulation { Bpsk, Qpsk, Qam16, Qam64 };
enum class Demapper { Exact, MaxLog };

Modulation parse_modulation(const std::string& name); // bpsk|qpsk|16qam|64qam
std::string modulation_name(Modulation m);
Demapper parse_demapper(const std::string& name); // exact|maxlog
std::string demapper_name(Demapper d);

// Gray-labeled constellation with unit average energy. `points` is indexed
// by the bit pattern (first transmitted bit = MSB of the index); square QAM
// splits the pattern into an I half and a Q half, each reflected-Gray mapped
// onto the amplitude grid. BPSK sends bit 0 as +1.
class Constellation {
public:
    static const Constellation& get(Modulation scheme);

    Modulation scheme() const { return scheme_; }
    int bits_per_symbol() const { return bits_per_symbol_; }
    const std::vector<Cplx>& points() const { return points_; }

    // bits are zero-padded up to a multiple of bits_per_symbol
    std::vector<Cplx> modulate(std::span<const std::uint8_t> bits) const;

    // per-bit LLRs for one observation; positive means bit 0 more likely;
    // coherent detection with known h; output clamped to +-kLogClamp
    void demodulate(Cplx y, Cplx h, double n0, Demapper demapper,
                    std::span<double> llr_out) const;

private:
    Constellation(Modulation scheme, int bits_per_symbol);
    Modulation scheme_;
    int bits_per_symbol_;
    std::vector<Cplx> points_;
};

// loglik(v) = -sum of llr_i over the set bits of v, renormalized; assumes
// bit independence. Exactly 4 LLRs per GF(16) symbol, MSB first.
SymbolReliability bits_to_symbol_reliability(std::span<const double> llrs);

// 4 bits per field symbol, most significant first
std::vector<std::uint8_t> symbols_to_bits(std::span<const GfElem> symbols);
std::vector<GfElem> bits_to_symbols(std::span<const std::uint8_t> bits);

} // namespace agfec

#endif

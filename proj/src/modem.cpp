#include "agfec/modem.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace agfec {

namespace {

// reflected Gray sequence of length 2^bits: position i on the amplitude grid
// carries label gray(i) = i ^ (i >> 1)
std::vector<int> gray_label_to_level_index(int bits) {
    int levels = 1 << bits;
    std::vector<int> label_to_idx(static_cast<std::size_t>(levels));
    for (int i = 0; i < levels; ++i) {
        int label = i ^ (i >> 1);
        label_to_idx[static_cast<std::size_t>(label)] = i;
    }
    return label_to_idx;
}

double pam_level(int idx, int levels) {
    return static_cast<double>(2 * idx - (levels - 1));
}

} // namespace

Modulation parse_modulation(const std::string& name) {
    if (name == "bpsk") return Modulation::Bpsk;
    if (name == "qpsk") return Modulation::Qpsk;
    if (name == "16qam") return Modulation::Qam16;
    if (name == "64qam") return Modulation::Qam64;
    throw std::invalid_argument("unknown modulation: " + name);
}

std::string modulation_name(Modulation m) {
    switch (m) {
    case Modulation::Bpsk: return "bpsk";
    case Modulation::Qpsk: return "qpsk";
    case Modulation::Qam16: return "16qam";
    case Modulation::Qam64: return "64qam";
    }
    return "?";
}

Demapper parse_demapper(const std::string& name) {
    if (name == "exact") return Demapper::Exact;
    if (name == "maxlog") return Demapper::MaxLog;
    throw std::invalid_argument("unknown demapper: " + name);
}

std::string demapper_name(Demapper d) {
    return d == Demapper::Exact ? "exact" : "maxlog";
}

Constellation::Constellation(Modulation scheme, int bits_per_symbol)
    : scheme_(scheme), bits_per_symbol_(bits_per_symbol) {
    const int count = 1 << bits_per_symbol;
    points_.resize(static_cast<std::size_t>(count));
    if (scheme == Modulation::Bpsk) {
        points_[0] = {1.0, 0.0};
        points_[1] = {-1.0, 0.0};
        return;
    }
    // square QAM: first half of the pattern selects I, second half Q; the
    // axis grid is flipped so the all-zero label lands on the most positive
    // amplitude, matching the BPSK convention
    const int axis_bits = bits_per_symbol / 2;
    const int levels = 1 << axis_bits;
    const auto label_to_idx = gray_label_to_level_index(axis_bits);
    double energy = 0.0;
    for (int pat = 0; pat < count; ++pat) {
        int ilabel = pat >> axis_bits;
        int qlabel = pat & (levels - 1);
        double iv = -pam_level(label_to_idx[static_cast<std::size_t>(ilabel)], levels);
        double qv = -pam_level(label_to_idx[static_cast<std::size_t>(qlabel)], levels);
        points_[static_cast<std::size_t>(pat)] = {iv, qv};
        energy += iv * iv + qv * qv;
    }
    double scale = 1.0 / std::sqrt(energy / count);
    for (auto& pt : points_) pt *= scale;
}

const Constellation& Constellation::get(Modulation scheme) {
    static const Constellation bpsk(Modulation::Bpsk, 1);
    static const Constellation qpsk(Modulation::Qpsk, 2);
    static const Constellation qam16(Modulation::Qam16, 4);
    static const Constellation qam64(Modulation::Qam64, 6);
    switch (scheme) {
    case Modulation::Bpsk: return bpsk;
    case Modulation::Qpsk: return qpsk;
    case Modulation::Qam16: return qam16;
    case Modulation::Qam64: return qam64;
    }
    return bpsk;
}

std::vector<Cplx> Constellation::modulate(std::span<const std::uint8_t> bits) const {
    const int bps = bits_per_symbol_;
    const std::size_t nsym = (bits.size() + static_cast<std::size_t>(bps) - 1) / static_cast<std::size_t>(bps);
    std::vector<Cplx> out(nsym);
    for (std::size_t i = 0; i < nsym; ++i) {
        int pat = 0;
        for (int b = 0; b < bps; ++b) {
            std::size_t idx = i * static_cast<std::size_t>(bps) + static_cast<std::size_t>(b);
            int bit = idx < bits.size() ? bits[idx] : 0;
            pat = (pat << 1) | bit;
        }
        out[i] = points_[static_cast<std::size_t>(pat)];
    }
    return out;
}

void Constellation::demodulate(Cplx y, Cplx h, double n0, Demapper demapper,
                               std::span<double> llr_out) const {
    const int bps = bits_per_symbol_;
    if (static_cast<int>(llr_out.size()) != bps)
        throw std::invalid_argument("demodulate: llr_out size mismatch");
    const int count = 1 << bps;
    double metric[64];
    for (int pat = 0; pat < count; ++pat) {
        Cplx d = y - h * points_[static_cast<std::size_t>(pat)];
        metric[pat] = -std::norm(d) / n0;
    }
    for (int b = 0; b < bps; ++b) {
        const int bitmask = 1 << (bps - 1 - b);
        double m0 = -std::numeric_limits<double>::infinity();
        double m1 = m0;
        for (int pat = 0; pat < count; ++pat) {
            double& m = (pat & bitmask) ? m1 : m0;
            if (metric[pat] > m) m = metric[pat];
        }
        double llr;
        if (demapper == Demapper::MaxLog) {
            llr = m0 - m1;
        } else {
            double s0 = 0.0, s1 = 0.0;
            for (int pat = 0; pat < count; ++pat) {
                if (pat & bitmask)
                    s1 += std::exp(metric[pat] - m1);
                else
                    s0 += std::exp(metric[pat] - m0);
            }
            llr = (m0 + std::log(s0)) - (m1 + std::log(s1));
        }
        llr_out[static_cast<std::size_t>(b)] = std::clamp(llr, -kLogClamp, kLogClamp);
    }
}

SymbolReliability bits_to_symbol_reliability(std::span<const double> llrs) {
    if (llrs.size() != 4)
        throw std::invalid_argument("bits_to_symbol_reliability: expected 4 LLRs");
    SymbolReliability rel;
    for (int v = 0; v < 16; ++v) {
        double acc = 0.0;
        for (int b = 0; b < 4; ++b)
            if (v & (1 << (3 - b))) acc -= llrs[static_cast<std::size_t>(b)];
        rel.loglik[static_cast<std::size_t>(v)] = acc;
    }
    rel.normalize();
    return rel;
}

std::vector<std::uint8_t> symbols_to_bits(std::span<const GfElem> symbols) {
    std::vector<std::uint8_t> bits;
    bits.reserve(symbols.size() * 4);
    for (GfElem s : symbols)
        for (int b = 3; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((s >> b) & 1));
    return bits;
}

std::vector<GfElem> bits_to_symbols(std::span<const std::uint8_t> bits) {
    if (bits.size() % 4 != 0)
        throw std::invalid_argument("bits_to_symbols: length not a multiple of 4");
    std::vector<GfElem> out(bits.size() / 4);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int v = 0;
        for (int b = 0; b < 4; ++b) v = (v << 1) | bits[i * 4 + static_cast<std::size_t>(b)];
        out[i] = static_cast<GfElem>(v);
    }
    return out;
}

} // namespace agfec

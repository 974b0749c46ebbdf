#ifndef AGFEC_HERMITIAN_H
#define AGFEC_HERMITIAN_H

#include <optional>
#include <span>
#include <vector>

#include "agfec/gf16.h"

namespace agfec {

struct CurvePoint {
    GfElem x;
    GfElem y;
};

// Affine rational points of y^4 + y = x^5 over GF(16), in lexicographic
// (x, y) order. The curve has genus 6 and exactly 64 affine points.
struct HermitianCurve {
    static constexpr int kGenus = 6;
    std::vector<CurvePoint> points;
};

HermitianCurve enumerate_points();

// x^a y^b with b <= 3; pole order at the point at infinity is 4a + 5b.
struct Monomial {
    int x_exp = 0;
    int y_exp = 0;
    int pole_order() const { return 4 * x_exp + 5 * y_exp; }
};

// Monomial basis of L(m * Pinf), ordered by pole order ascending.
std::vector<Monomial> rr_basis(int m);

// Syndromes of a received word against the decoding bases of an AgCode.
// `matrix` is the loc_dim x chk_dim product-syndrome matrix, `single` the
// plain syndromes against the full dual basis.
struct Syndromes {
    std::vector<GfElem> matrix;
    std::vector<GfElem> single;
};

// One-point Hermitian evaluation code of length 64 over GF(16). Systematic
// generator obtained by Gaussian elimination; info positions are the pivot
// columns. Immutable after construction.
class AgCode {
public:
    static constexpr int kN = 64;

    int n() const { return kN; }
    int k() const { return k_; }
    int m() const { return m_; }
    int genus() const { return HermitianCurve::kGenus; }
    int designed_distance() const { return kN - m_; }
    // guaranteed hard-decoding radius of the basic algorithm
    int t() const { return t_; }

    const HermitianCurve& curve() const { return curve_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    const std::vector<int>& info_positions() const { return info_positions_; }
    const std::vector<int>& parity_positions() const { return parity_positions_; }
    // k x 64 systematic generator, row-major
    const std::vector<GfElem>& generator_systematic() const { return gen_sys_; }

    // info.size() == k; returns the codeword with info verbatim at the
    // info positions
    std::vector<GfElem> encode(std::span<const GfElem> info) const;

    // true iff all single syndromes vanish
    bool is_codeword(std::span<const GfElem> word) const;

    // Basic syndrome decoding: locate errors through the kernel of the
    // product-syndrome matrix, solve for error values against the full dual
    // basis, and fail explicitly whenever anything is inconsistent. Corrects
    // any pattern of weight <= t(); never returns a non-codeword.
    std::optional<std::vector<GfElem>> hard_decode(std::span<const GfElem> received) const;

    // Incremental interface for soft-decision wrappers: compute syndromes of
    // a base word once, then patch them per candidate.
    Syndromes compute_syndromes(std::span<const GfElem> word) const;
    // word[pos] changed by `delta` (old xor new)
    void update_syndromes(Syndromes& syn, int pos, GfElem delta) const;
    std::optional<std::vector<GfElem>> decode_from_syndromes(std::span<const GfElem> received,
                                                             const Syndromes& syn) const;

private:
    friend AgCode build_code(int k_target);

    int k_ = 0;
    int m_ = 0;
    int t_ = 0;
    HermitianCurve curve_;
    std::vector<Monomial> basis_;
    std::vector<GfElem> gen_sys_;        // k x 64
    std::vector<GfElem> gen_parity_;     // k x (64 - k), parity columns only
    std::vector<int> info_positions_;
    std::vector<int> parity_positions_;

    // decoding bases: locator L(a*Pinf), check L(b*Pinf), dual L((74-m)*Pinf)
    int loc_dim_ = 0;
    int chk_dim_ = 0;
    int dual_dim_ = 0;
    std::vector<GfElem> loc_eval_;   // 64 x loc_dim, point-major
    std::vector<GfElem> dual_eval_;  // 64 x dual_dim, point-major
    std::vector<GfElem> outer_;      // 64 x (loc_dim * chk_dim) product tensor
};

// k_target in {49, 44}; anything else throws std::invalid_argument.
AgCode build_code(int k_target);

} // namespace agfec

#endif

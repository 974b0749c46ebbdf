#include "agfec/hermitian.h"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace agfec {

namespace {

constexpr int kMaxLocDim = 8;
constexpr int kMaxChkDim = 16;
constexpr int kMaxDualDim = 20;
constexpr int kMaxErrors = 12; // locator pole order bound, <= 10 for both codes

// In-place reduced row echelon form over GF(16); returns the pivot columns.
std::vector<int> rref(std::vector<GfElem>& mat, int rows, int cols) {
    const Gf16& gf = Gf16::instance();
    std::vector<int> pivots;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (mat[static_cast<std::size_t>(r) * cols + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int c = 0; c < cols; ++c)
                std::swap(mat[static_cast<std::size_t>(pivot) * cols + c],
                          mat[static_cast<std::size_t>(rank) * cols + c]);
        }
        GfElem pinv = gf.inv(mat[static_cast<std::size_t>(rank) * cols + col]);
        for (int c = 0; c < cols; ++c) {
            GfElem& v = mat[static_cast<std::size_t>(rank) * cols + c];
            v = gf.mul(v, pinv);
        }
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            GfElem f = mat[static_cast<std::size_t>(r) * cols + col];
            if (f == 0) continue;
            for (int c = 0; c < cols; ++c) {
                mat[static_cast<std::size_t>(r) * cols + c] = gf.add(
                    mat[static_cast<std::size_t>(r) * cols + c],
                    gf.mul(f, mat[static_cast<std::size_t>(rank) * cols + c]));
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

} // namespace

HermitianCurve enumerate_points() {
    const Gf16& gf = Gf16::instance();
    HermitianCurve curve;
    for (int x = 0; x < 16; ++x) {
        for (int y = 0; y < 16; ++y) {
            GfElem gx = static_cast<GfElem>(x);
            GfElem gy = static_cast<GfElem>(y);
            GfElem lhs = gf.add(gf.pow(gy, 4), gy);
            GfElem rhs = gf.pow(gx, 5);
            if (lhs == rhs) curve.points.push_back({gx, gy});
        }
    }
    return curve;
}

std::vector<Monomial> rr_basis(int m) {
    std::vector<Monomial> basis;
    for (int b = 0; b <= 3; ++b) {
        for (int a = 0; 4 * a + 5 * b <= m; ++a) {
            basis.push_back({a, b});
        }
    }
    std::sort(basis.begin(), basis.end(), [](const Monomial& u, const Monomial& v) {
        return u.pole_order() < v.pole_order();
    });
    return basis;
}

AgCode build_code(int k_target) {
    if (k_target != 49 && k_target != 44)
        throw std::invalid_argument("build_code: k_target must be 49 or 44");

    const Gf16& gf = Gf16::instance();
    AgCode code;
    code.k_ = k_target;
    code.m_ = k_target + HermitianCurve::kGenus - 1;
    code.curve_ = enumerate_points();
    if (code.curve_.points.size() != AgCode::kN)
        throw std::runtime_error("build_code: curve point count is not 64");
    code.basis_ = rr_basis(code.m_);
    if (static_cast<int>(code.basis_.size()) != k_target)
        throw std::runtime_error("build_code: Riemann-Roch dimension mismatch");

    const int n = AgCode::kN;
    const int k = code.k_;

    // raw generator: basis function i evaluated at point l
    std::vector<GfElem> gen(static_cast<std::size_t>(k) * n);
    for (int i = 0; i < k; ++i) {
        const Monomial& mono = code.basis_[static_cast<std::size_t>(i)];
        for (int l = 0; l < n; ++l) {
            const CurvePoint& pt = code.curve_.points[static_cast<std::size_t>(l)];
            gen[static_cast<std::size_t>(i) * n + l] =
                gf.mul(gf.pow(pt.x, mono.x_exp), gf.pow(pt.y, mono.y_exp));
        }
    }

    code.info_positions_ = rref(gen, k, n);
    if (static_cast<int>(code.info_positions_.size()) != k)
        throw std::runtime_error("build_code: generator rank deficient");
    code.gen_sys_ = gen;

    std::array<bool, AgCode::kN> is_info{};
    for (int p : code.info_positions_) is_info[static_cast<std::size_t>(p)] = true;
    for (int l = 0; l < n; ++l)
        if (!is_info[static_cast<std::size_t>(l)]) code.parity_positions_.push_back(l);

    const int r = n - k;
    code.gen_parity_.resize(static_cast<std::size_t>(k) * r);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j)
            code.gen_parity_[static_cast<std::size_t>(i) * r + j] =
                code.gen_sys_[static_cast<std::size_t>(i) * n + code.parity_positions_[static_cast<std::size_t>(j)]];

    // decoding bases for the basic algorithm
    const int g = HermitianCurve::kGenus;
    const int dstar = n - code.m_;
    code.t_ = (dstar - 1 - g) / 2;
    const int m_dual = n + 2 * g - 2 - code.m_;
    const int a = code.t_ + g;
    const int b = m_dual - a;
    if (b < code.t_ + 2 * g - 1)
        throw std::runtime_error("build_code: check space too small for radius t");

    auto loc_basis = rr_basis(a);
    auto chk_basis = rr_basis(b);
    auto dual_basis = rr_basis(m_dual);
    code.loc_dim_ = static_cast<int>(loc_basis.size());
    code.chk_dim_ = static_cast<int>(chk_basis.size());
    code.dual_dim_ = static_cast<int>(dual_basis.size());
    if (code.loc_dim_ > kMaxLocDim || code.chk_dim_ > kMaxChkDim ||
        code.dual_dim_ > kMaxDualDim)
        throw std::runtime_error("build_code: decoding basis dimensions out of range");

    auto eval_at = [&gf](const Monomial& mono, const CurvePoint& pt) {
        return gf.mul(gf.pow(pt.x, mono.x_exp), gf.pow(pt.y, mono.y_exp));
    };

    code.loc_eval_.resize(static_cast<std::size_t>(n) * code.loc_dim_);
    code.dual_eval_.resize(static_cast<std::size_t>(n) * code.dual_dim_);
    code.outer_.resize(static_cast<std::size_t>(n) * code.loc_dim_ * code.chk_dim_);
    for (int l = 0; l < n; ++l) {
        const CurvePoint& pt = code.curve_.points[static_cast<std::size_t>(l)];
        for (int i = 0; i < code.loc_dim_; ++i)
            code.loc_eval_[static_cast<std::size_t>(l) * code.loc_dim_ + i] =
                eval_at(loc_basis[static_cast<std::size_t>(i)], pt);
        for (int j = 0; j < code.dual_dim_; ++j)
            code.dual_eval_[static_cast<std::size_t>(l) * code.dual_dim_ + j] =
                eval_at(dual_basis[static_cast<std::size_t>(j)], pt);
        for (int i = 0; i < code.loc_dim_; ++i) {
            GfElem fi = code.loc_eval_[static_cast<std::size_t>(l) * code.loc_dim_ + i];
            for (int j = 0; j < code.chk_dim_; ++j) {
                GfElem fj = eval_at(chk_basis[static_cast<std::size_t>(j)], pt);
                code.outer_[(static_cast<std::size_t>(l) * code.loc_dim_ + i) * code.chk_dim_ + j] =
                    gf.mul(fi, fj);
            }
        }
    }
    return code;
}

std::vector<GfElem> AgCode::encode(std::span<const GfElem> info) const {
    if (static_cast<int>(info.size()) != k_)
        throw std::invalid_argument("AgCode::encode: info length != k");
    const Gf16& gf = Gf16::instance();
    const int r = kN - k_;
    std::vector<GfElem> out(kN, 0);
    for (int i = 0; i < k_; ++i)
        out[static_cast<std::size_t>(info_positions_[static_cast<std::size_t>(i)])] = info[static_cast<std::size_t>(i)];
    for (int i = 0; i < k_; ++i) {
        GfElem u = info[static_cast<std::size_t>(i)];
        if (u == 0) continue;
        const GfElem* row = &gen_parity_[static_cast<std::size_t>(i) * r];
        for (int j = 0; j < r; ++j) {
            std::size_t pos = static_cast<std::size_t>(parity_positions_[static_cast<std::size_t>(j)]);
            out[pos] = gf.add(out[pos], gf.mul(u, row[j]));
        }
    }
    return out;
}

Syndromes AgCode::compute_syndromes(std::span<const GfElem> word) const {
    if (static_cast<int>(word.size()) != kN)
        throw std::invalid_argument("AgCode::compute_syndromes: word length != 64");
    Syndromes syn;
    syn.matrix.assign(static_cast<std::size_t>(loc_dim_) * chk_dim_, 0);
    syn.single.assign(static_cast<std::size_t>(dual_dim_), 0);
    for (int l = 0; l < kN; ++l) {
        if (word[static_cast<std::size_t>(l)] != 0)
            update_syndromes(syn, l, word[static_cast<std::size_t>(l)]);
    }
    return syn;
}

void AgCode::update_syndromes(Syndromes& syn, int pos, GfElem delta) const {
    if (delta == 0) return;
    const Gf16& gf = Gf16::instance();
    const GfElem* outer_row = &outer_[static_cast<std::size_t>(pos) * loc_dim_ * chk_dim_];
    const std::size_t cells = static_cast<std::size_t>(loc_dim_) * chk_dim_;
    for (std::size_t c = 0; c < cells; ++c)
        syn.matrix[c] = gf.add(syn.matrix[c], gf.mul(delta, outer_row[c]));
    const GfElem* dual_row = &dual_eval_[static_cast<std::size_t>(pos) * dual_dim_];
    for (int j = 0; j < dual_dim_; ++j)
        syn.single[static_cast<std::size_t>(j)] =
            gf.add(syn.single[static_cast<std::size_t>(j)], gf.mul(delta, dual_row[j]));
}

bool AgCode::is_codeword(std::span<const GfElem> word) const {
    const Gf16& gf = Gf16::instance();
    for (int j = 0; j < dual_dim_; ++j) {
        GfElem s = 0;
        for (int l = 0; l < kN; ++l)
            s = gf.add(s, gf.mul(word[static_cast<std::size_t>(l)],
                                 dual_eval_[static_cast<std::size_t>(l) * dual_dim_ + j]));
        if (s != 0) return false;
    }
    return true;
}

std::optional<std::vector<GfElem>> AgCode::decode_from_syndromes(
    std::span<const GfElem> received, const Syndromes& syn) const {
    const Gf16& gf = Gf16::instance();

    // Left kernel vector of the syndrome matrix: row-reduce S^T and read a
    // null-space vector off the first free column. Deterministic pivoting.
    GfElem tmat[kMaxChkDim][kMaxLocDim];
    for (int j = 0; j < chk_dim_; ++j)
        for (int i = 0; i < loc_dim_; ++i)
            tmat[j][i] = syn.matrix[static_cast<std::size_t>(i) * chk_dim_ + j];

    int pivot_row_of_col[kMaxLocDim];
    for (int i = 0; i < loc_dim_; ++i) pivot_row_of_col[i] = -1;
    int rank = 0;
    for (int col = 0; col < loc_dim_ && rank < chk_dim_; ++col) {
        int pivot = -1;
        for (int r = rank; r < chk_dim_; ++r) {
            if (tmat[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = 0; c < loc_dim_; ++c) std::swap(tmat[pivot][c], tmat[rank][c]);
        GfElem pinv = gf.inv(tmat[rank][col]);
        for (int c = 0; c < loc_dim_; ++c) tmat[rank][c] = gf.mul(tmat[rank][c], pinv);
        for (int r = 0; r < chk_dim_; ++r) {
            if (r == rank) continue;
            GfElem f = tmat[r][col];
            if (f == 0) continue;
            for (int c = 0; c < loc_dim_; ++c)
                tmat[r][c] = gf.add(tmat[r][c], gf.mul(f, tmat[rank][c]));
        }
        pivot_row_of_col[col] = rank;
        ++rank;
    }

    int free_col = -1;
    for (int c = 0; c < loc_dim_; ++c) {
        if (pivot_row_of_col[c] < 0) {
            free_col = c;
            break;
        }
    }
    if (free_col < 0) return std::nullopt; // no error locator exists

    GfElem lambda[kMaxLocDim] = {};
    lambda[free_col] = 1;
    for (int c = 0; c < loc_dim_; ++c)
        if (pivot_row_of_col[c] >= 0) lambda[c] = tmat[pivot_row_of_col[c]][free_col];

    // candidate error positions: zeros of the locator among the points
    int err_pos[kMaxErrors];
    int num_err = 0;
    for (int l = 0; l < kN; ++l) {
        GfElem v = 0;
        const GfElem* le = &loc_eval_[static_cast<std::size_t>(l) * loc_dim_];
        for (int i = 0; i < loc_dim_; ++i) v = gf.add(v, gf.mul(lambda[i], le[i]));
        if (v == 0) {
            if (num_err >= kMaxErrors) return std::nullopt;
            err_pos[num_err++] = l;
        }
    }

    // error values from the plain syndromes; the columns (point evaluations
    // of the dual basis) are linearly independent, so a consistent system has
    // a unique solution and consistency certifies the corrected word
    GfElem aug[kMaxDualDim][kMaxErrors + 1];
    for (int j = 0; j < dual_dim_; ++j) {
        for (int idx = 0; idx < num_err; ++idx)
            aug[j][idx] = dual_eval_[static_cast<std::size_t>(err_pos[idx]) * dual_dim_ + j];
        aug[j][num_err] = syn.single[static_cast<std::size_t>(j)];
    }

    int vrank = 0;
    int col_pivot_row[kMaxErrors];
    for (int col = 0; col < num_err; ++col) {
        int pivot = -1;
        for (int r = vrank; r < dual_dim_; ++r) {
            if (aug[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return std::nullopt; // dependent columns: cannot happen inside radius
        if (pivot != vrank)
            for (int c = 0; c <= num_err; ++c) std::swap(aug[pivot][c], aug[vrank][c]);
        GfElem pinv = gf.inv(aug[vrank][col]);
        for (int c = 0; c <= num_err; ++c) aug[vrank][c] = gf.mul(aug[vrank][c], pinv);
        for (int r = 0; r < dual_dim_; ++r) {
            if (r == vrank) continue;
            GfElem f = aug[r][col];
            if (f == 0) continue;
            for (int c = 0; c <= num_err; ++c)
                aug[r][c] = gf.add(aug[r][c], gf.mul(f, aug[vrank][c]));
        }
        col_pivot_row[col] = vrank;
        ++vrank;
    }
    // consistency: all rows below the pivot block must have zero rhs
    for (int r = vrank; r < dual_dim_; ++r)
        if (aug[r][num_err] != 0) return std::nullopt;

    std::vector<GfElem> corrected(received.begin(), received.end());
    for (int idx = 0; idx < num_err; ++idx) {
        GfElem val = aug[col_pivot_row[idx]][num_err];
        corrected[static_cast<std::size_t>(err_pos[idx])] =
            gf.add(corrected[static_cast<std::size_t>(err_pos[idx])], val);
    }
    return corrected;
}

std::optional<std::vector<GfElem>> AgCode::hard_decode(std::span<const GfElem> received) const {
    if (static_cast<int>(received.size()) != kN)
        throw std::invalid_argument("AgCode::hard_decode: word length != 64");
    Syndromes syn = compute_syndromes(received);
    return decode_from_syndromes(received, syn);
}

} // namespace agfec

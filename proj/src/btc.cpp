#include "agfec/btc.h"

#include <stdexcept>

namespace agfec {

ProductBlock encode_product(const AgCode& code, std::span<const GfElem> info) {
    const int n = code.n();
    const int k = code.k();
    if (static_cast<int>(info.size()) != k * k)
        throw std::invalid_argument("encode_product: info must be k*k symbols");

    // rows first: k codewords of the row code
    std::vector<std::vector<GfElem>> row_cw(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        row_cw[static_cast<std::size_t>(i)] =
            code.encode(info.subspan(static_cast<std::size_t>(i) * k, static_cast<std::size_t>(k)));

    // then every column of the k x n intermediate
    ProductBlock block;
    block.grid.assign(static_cast<std::size_t>(n) * n, 0);
    std::vector<GfElem> colv(static_cast<std::size_t>(k));
    for (int c = 0; c < n; ++c) {
        for (int i = 0; i < k; ++i) colv[static_cast<std::size_t>(i)] = row_cw[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
        std::vector<GfElem> col_cw = code.encode(colv);
        for (int r = 0; r < n; ++r)
            block.grid[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)] = col_cw[static_cast<std::size_t>(r)];
    }
    return block;
}

ProductDecodeResult decode_product(std::span<const SymbolReliability> soft,
                                   const AgCode& code, const ChaseConfig& cfg,
                                   int iterations) {
    const int n = code.n();
    const int k = code.k();
    if (static_cast<int>(soft.size()) != n * n)
        throw std::invalid_argument("decode_product: grid must be 64x64");
    if (iterations < 1) throw std::invalid_argument("decode_product: iterations must be >= 1");

    std::vector<SymbolReliability> ext_rows(static_cast<std::size_t>(n) * n);
    std::vector<SymbolReliability> ext_cols(static_cast<std::size_t>(n) * n);

    ProductDecodeResult res;
    SoftWord line(static_cast<std::size_t>(n));
    for (int it = 0; it < iterations; ++it) {
        std::uint32_t row_failures = 0;
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                SymbolReliability rel = soft[static_cast<std::size_t>(r) * n + c];
                rel.add(ext_cols[static_cast<std::size_t>(r) * n + c]);
                rel.normalize();
                line[static_cast<std::size_t>(c)] = rel;
            }
            ChaseResult cr = chase_decode(code, line, cfg, it);
            res.hard_decode_calls += cr.hard_decode_calls;
            if (cr.failed) {
                ++res.chase_failures;
                ++row_failures;
            }
            for (int c = 0; c < n; ++c)
                ext_rows[static_cast<std::size_t>(r) * n + c] = cr.extrinsic[static_cast<std::size_t>(c)];
        }
        res.per_iteration_row_failures.push_back(row_failures);

        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < n; ++r) {
                SymbolReliability rel = soft[static_cast<std::size_t>(r) * n + c];
                rel.add(ext_rows[static_cast<std::size_t>(r) * n + c]);
                rel.normalize();
                line[static_cast<std::size_t>(r)] = rel;
            }
            ChaseResult cr = chase_decode(code, line, cfg, it);
            res.hard_decode_calls += cr.hard_decode_calls;
            if (cr.failed) ++res.chase_failures;
            for (int r = 0; r < n; ++r)
                ext_cols[static_cast<std::size_t>(r) * n + c] = cr.extrinsic[static_cast<std::size_t>(r)];
        }
        res.iterations_run = it + 1;
    }

    res.info.resize(static_cast<std::size_t>(k) * k);
    const auto& ip = code.info_positions();
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            std::size_t cell = static_cast<std::size_t>(ip[static_cast<std::size_t>(i)]) * n +
                               static_cast<std::size_t>(ip[static_cast<std::size_t>(j)]);
            SymbolReliability acc = soft[cell];
            acc.add(ext_rows[cell]);
            acc.add(ext_cols[cell]);
            res.info[static_cast<std::size_t>(i) * k + j] = acc.argmax();
        }
    }
    return res;
}

} // namespace agfec

#include "agfec/siso.h"

#include <algorithm>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace agfec {

void SymbolReliability::normalize() {
    double mx = loglik[0];
    for (int v = 1; v < 16; ++v) mx = std::max(mx, loglik[static_cast<std::size_t>(v)]);
    for (int v = 0; v < 16; ++v) {
        double& e = loglik[static_cast<std::size_t>(v)];
        e -= mx;
        if (e < -kLogClamp) e = -kLogClamp;
    }
}

GfElem SymbolReliability::argmax() const {
    int best = 0;
    for (int v = 1; v < 16; ++v)
        if (loglik[static_cast<std::size_t>(v)] > loglik[static_cast<std::size_t>(best)]) best = v;
    return static_cast<GfElem>(best);
}

double SymbolReliability::margin() const {
    double best = -std::numeric_limits<double>::infinity();
    double second = -std::numeric_limits<double>::infinity();
    for (double e : loglik) {
        if (e > best) {
            second = best;
            best = e;
        } else if (e > second) {
            second = e;
        }
    }
    return best - second;
}

double ChaseConfig::alpha(int iteration) const {
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(std::max(iteration, 0)),
                                          alpha_schedule.size() - 1);
    return alpha_schedule[i];
}

double ChaseConfig::beta(int iteration) const {
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(std::max(iteration, 0)),
                                          beta_schedule.size() - 1);
    return beta_schedule[i];
}

void ChaseConfig::validate() const {
    if (p < 0 || p > AgCode::kN) throw std::invalid_argument("ChaseConfig: p out of range");
    if (s < 1 || s > 15) throw std::invalid_argument("ChaseConfig: s must be in [1, 15]");
    if (alpha_schedule.empty() || beta_schedule.empty())
        throw std::invalid_argument("ChaseConfig: schedules must be non-empty");
}

ChaseResult chase_decode(const AgCode& code, const SoftWord& input,
                         const ChaseConfig& cfg, int iteration) {
    cfg.validate();
    const int n = code.n();
    if (static_cast<int>(input.size()) != n)
        throw std::invalid_argument("chase_decode: input length mismatch");

    const double alpha = cfg.alpha(iteration);
    const double beta = cfg.beta(iteration);

    ChaseResult res;
    res.decision.resize(static_cast<std::size_t>(n));
    res.extrinsic.assign(static_cast<std::size_t>(n), SymbolReliability{});

    std::vector<GfElem> hard(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) hard[static_cast<std::size_t>(l)] = input[static_cast<std::size_t>(l)].argmax();

    // least reliable positions by (margin, index)
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> margins(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) margins[static_cast<std::size_t>(l)] = input[static_cast<std::size_t>(l)].margin();
    std::stable_sort(order.begin(), order.end(), [&](int u, int v) {
        return margins[static_cast<std::size_t>(u)] < margins[static_cast<std::size_t>(v)];
    });
    const int p = std::min(cfg.p, n);
    const int s = cfg.s;

    // fallback reliabilities ride on the word's own scale so the schedule
    // keeps its meaning across SNRs and modulations
    double scale = 0.0;
    for (double m : margins) scale += m;
    scale /= static_cast<double>(n);
    const double fallback = beta * scale;

    // per chosen position, the s best alternatives to the hard value,
    // ranked by loglik with ties toward the smaller value
    std::vector<std::array<GfElem, 15>> alts(static_cast<std::size_t>(p));
    for (int d = 0; d < p; ++d) {
        int pos = order[static_cast<std::size_t>(d)];
        const auto& ll = input[static_cast<std::size_t>(pos)].loglik;
        std::array<GfElem, 15> cand{};
        int cnt = 0;
        for (int v = 0; v < 16; ++v)
            if (v != hard[static_cast<std::size_t>(pos)]) cand[static_cast<std::size_t>(cnt++)] = static_cast<GfElem>(v);
        std::stable_sort(cand.begin(), cand.begin() + cnt, [&](GfElem u, GfElem v) {
            return ll[u] > ll[v];
        });
        alts[static_cast<std::size_t>(d)] = cand;
    }

    const Syndromes base_syn = code.compute_syndromes(hard);

    std::vector<std::vector<GfElem>> found;   // distinct decoded codewords
    std::vector<double> metrics;
    auto metric_of = [&](const std::vector<GfElem>& w) {
        double m = 0;
        for (int l = 0; l < n; ++l) m += input[static_cast<std::size_t>(l)].loglik[w[static_cast<std::size_t>(l)]];
        return m;
    };

    std::vector<GfElem> candidate(static_cast<std::size_t>(n));
    std::vector<int> digits(static_cast<std::size_t>(std::max(p, 1)), 0);
    Syndromes syn;
    bool done = (p == 0);
    for (;;) {
        candidate = hard;
        syn = base_syn;
        for (int d = 0; d < p; ++d) {
            int dig = digits[static_cast<std::size_t>(d)];
            if (dig == 0) continue;
            int pos = order[static_cast<std::size_t>(d)];
            GfElem nv = alts[static_cast<std::size_t>(d)][static_cast<std::size_t>(dig - 1)];
            GfElem delta = static_cast<GfElem>(candidate[static_cast<std::size_t>(pos)] ^ nv);
            candidate[static_cast<std::size_t>(pos)] = nv;
            code.update_syndromes(syn, pos, delta);
        }
        ++res.hard_decode_calls;
        if (auto cw = code.decode_from_syndromes(candidate, syn)) {
            bool dup = false;
            for (const auto& f : found) {
                if (std::memcmp(f.data(), cw->data(), static_cast<std::size_t>(n)) == 0) {
                    dup = true;
                    break;
                }
            }
            if (!dup) {
                metrics.push_back(metric_of(*cw));
                found.push_back(std::move(*cw));
            }
        }
        if (done) break;
        // mixed-radix increment over p digits, each in [0, s]
        int d = 0;
        while (d < p) {
            if (++digits[static_cast<std::size_t>(d)] <= s) break;
            digits[static_cast<std::size_t>(d)] = 0;
            ++d;
        }
        if (d == p) break;
    }
    res.candidates_decoded = static_cast<std::uint32_t>(found.size());

    if (found.empty()) {
        // nothing decoded: the search produced no evidence beyond the
        // channel, so the decision is the raw hard decision and the
        // extrinsic stays neutral (uniform)
        res.failed = true;
        res.decision = hard;
        return res;
    }

    // decision: best metric, ties to the lexicographically smallest codeword
    std::size_t best = 0;
    for (std::size_t i = 1; i < found.size(); ++i) {
        if (metrics[i] > metrics[best] ||
            (metrics[i] == metrics[best] && found[i] < found[best]))
            best = i;
    }
    res.decision = found[best];
    const double best_metric = metrics[best];

    // best competitor metric per (position, value)
    static constexpr double kNone = -std::numeric_limits<double>::infinity();
    std::vector<std::array<double, 16>> best_at(static_cast<std::size_t>(n));
    for (auto& row : best_at) row.fill(kNone);
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (int l = 0; l < n; ++l) {
            double& slot = best_at[static_cast<std::size_t>(l)][found[i][static_cast<std::size_t>(l)]];
            if (metrics[i] > slot) slot = metrics[i];
        }
    }

    for (int l = 0; l < n; ++l) {
        const auto& in_l = input[static_cast<std::size_t>(l)].loglik;
        const GfElem dec = res.decision[static_cast<std::size_t>(l)];
        const double dec_rest = best_metric - in_l[dec]; // metric without position l
        auto& ext = res.extrinsic[static_cast<std::size_t>(l)];
        for (int v = 0; v < 16; ++v) {
            if (v == dec) {
                ext.loglik[static_cast<std::size_t>(v)] = 0.0;
            } else if (best_at[static_cast<std::size_t>(l)][static_cast<std::size_t>(v)] != kNone) {
                double comp_rest = best_at[static_cast<std::size_t>(l)][static_cast<std::size_t>(v)] -
                                   in_l[static_cast<std::size_t>(v)];
                ext.loglik[static_cast<std::size_t>(v)] = alpha * (comp_rest - dec_rest);
            } else {
                ext.loglik[static_cast<std::size_t>(v)] = -fallback;
            }
        }
        ext.normalize();
    }
    return res;
}

} // namespace agfec

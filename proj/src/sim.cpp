#include "agfec/sim.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace agfec {

Scheme parse_scheme(const std::string& name) {
    if (name == "ibtc") return Scheme::Ibtc;
    if (name == "btc") return Scheme::Btc;
    if (name == "uncoded") return Scheme::Uncoded;
    throw std::invalid_argument("unknown scheme: " + name);
}

std::string scheme_name(Scheme s) {
    switch (s) {
    case Scheme::Ibtc: return "ibtc";
    case Scheme::Btc: return "btc";
    case Scheme::Uncoded: return "uncoded";
    }
    return "?";
}

void SimConfig::apply_defaults() {
    if (scheme == Scheme::Ibtc) {
        if (profile.empty()) {
            if (code_k == 49)
                profile = {{2, 0.85}, {3, 0.10}, {9, 0.05}};
            else
                profile = {{2, 0.90}, {4, 0.10}};
        }
        if (kt == 0) kt = code_k == 49 ? 980 : 440;
    } else if (scheme == Scheme::Uncoded) {
        if (kt == 0) kt = 980;
    }
}

void SimConfig::validate() const {
    if (code_k != 49 && code_k != 44)
        throw std::invalid_argument("config: code must be ag64_49 or ag64_44");
    if (ebn0_step <= 0) throw std::invalid_argument("config: ebn0.step must be > 0");
    if (ebn0_stop < ebn0_start)
        throw std::invalid_argument("config: ebn0.stop must be >= ebn0.start");
    if (iterations < 1) throw std::invalid_argument("config: iterations must be >= 1");
    if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    if (batch < 1) throw std::invalid_argument("config: batch must be >= 1");
    if (stop.max_frames == 0)
        throw std::invalid_argument("config: stop.max_frames must be >= 1");
    chase.validate();
}

std::vector<double> SimConfig::sweep_points() const {
    std::vector<double> pts;
    for (double x = ebn0_start; x <= ebn0_stop + 1e-9; x += ebn0_step) pts.push_back(x);
    return pts;
}

namespace {

struct FrameOutcome {
    std::uint64_t bit_errors = 0;
    bool frame_error = false;
    std::uint64_t iterations = 0;
    std::uint64_t chase_failures = 0;
    std::uint64_t hard_decode_calls = 0;
};

// seed stream purposes
constexpr std::uint64_t kPurposeInfo = 0;
constexpr std::uint64_t kPurposeChannel = 2;

struct PointContext {
    const SimConfig& cfg;
    const Constellation& con;
    double n0;
    AgCode code;
    ResolvedProfile rp; // ibtc only
    std::uint64_t info_bits_per_frame = 0;

    PointContext(const SimConfig& c, double ebn0_db)
        : cfg(c), con(Constellation::get(c.modulation)), n0(0), code(build_code(c.code_k)) {
        double rate = 1.0;
        if (cfg.scheme == Scheme::Ibtc) {
            rp = resolve_profile(cfg.profile, cfg.kt, code, cfg.strict_profile);
            rate = rp.layout.rate;
            info_bits_per_frame = static_cast<std::uint64_t>(rp.layout.kt) * 4;
        } else if (cfg.scheme == Scheme::Btc) {
            rate = static_cast<double>(code.k()) * code.k() / (64.0 * 64.0);
            info_bits_per_frame = static_cast<std::uint64_t>(code.k()) * code.k() * 4;
        } else {
            info_bits_per_frame = static_cast<std::uint64_t>(cfg.kt) * 4;
        }
        ChannelParams params{ebn0_db, rate, con.bits_per_symbol()};
        n0 = params.n0();
    }
};

std::vector<SymbolReliability> receive_symbol_reliabilities(const PointContext& ctx,
                                                            std::span<const GfElem> tx_symbols,
                                                            std::uint64_t frame) {
    std::vector<std::uint8_t> bits = symbols_to_bits(tx_symbols);
    std::vector<Cplx> mod = ctx.con.modulate(bits);
    Rng ch_rng(substream_seed(ctx.cfg.seed, frame, kPurposeChannel));
    std::vector<FadedObservation> obs = transmit(mod, ctx.n0, ch_rng);

    const int bps = ctx.con.bits_per_symbol();
    std::vector<double> llrs(mod.size() * static_cast<std::size_t>(bps));
    for (std::size_t i = 0; i < obs.size(); ++i) {
        ctx.con.demodulate(obs[i].y, obs[i].h, ctx.n0, ctx.cfg.demapper,
                           std::span<double>(llrs.data() + i * static_cast<std::size_t>(bps),
                                             static_cast<std::size_t>(bps)));
    }
    llrs.resize(bits.size()); // drop 64QAM padding

    std::vector<SymbolReliability> rels(tx_symbols.size());
    for (std::size_t s = 0; s < rels.size(); ++s)
        rels[s] = bits_to_symbol_reliability(
            std::span<const double>(llrs.data() + s * 4, 4));
    return rels;
}

std::uint64_t count_symbol_bit_errors(std::span<const GfElem> a, std::span<const GfElem> b) {
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        errors += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(a[i] ^ b[i])));
    return errors;
}

FrameOutcome run_frame(const PointContext& ctx, std::uint64_t frame) {
    const SimConfig& cfg = ctx.cfg;
    FrameOutcome out;

    if (cfg.scheme == Scheme::Uncoded) {
        Rng info_rng(substream_seed(cfg.seed, frame, kPurposeInfo));
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(cfg.kt) * 4);
        for (auto& b : bits) b = static_cast<std::uint8_t>(info_rng.below(2));
        std::vector<Cplx> mod = ctx.con.modulate(bits);
        Rng ch_rng(substream_seed(cfg.seed, frame, kPurposeChannel));
        std::vector<FadedObservation> obs = transmit(mod, ctx.n0, ch_rng);
        const int bps = ctx.con.bits_per_symbol();
        std::vector<double> llr(static_cast<std::size_t>(bps));
        for (std::size_t i = 0; i < obs.size(); ++i) {
            ctx.con.demodulate(obs[i].y, obs[i].h, ctx.n0, cfg.demapper, llr);
            for (int b = 0; b < bps; ++b) {
                std::size_t idx = i * static_cast<std::size_t>(bps) + static_cast<std::size_t>(b);
                if (idx >= bits.size()) break;
                int rx = llr[static_cast<std::size_t>(b)] < 0 ? 1 : 0;
                if (rx != bits[idx]) ++out.bit_errors;
            }
        }
        out.frame_error = out.bit_errors > 0;
        return out;
    }

    if (cfg.scheme == Scheme::Ibtc) {
        Rng info_rng(substream_seed(cfg.seed, frame, kPurposeInfo));
        std::vector<GfElem> info(static_cast<std::size_t>(ctx.rp.layout.kt));
        for (auto& s : info) s = static_cast<GfElem>(info_rng.below(16));
        auto interleaver = make_interleaver(cfg.seed, frame, ctx.rp);
        TxFrame tx = encode_frame(info, ctx.rp, ctx.code, interleaver);

        std::vector<GfElem> tx_symbols;
        tx_symbols.reserve(info.size() + tx.parity.size());
        tx_symbols.insert(tx_symbols.end(), tx.info.begin(), tx.info.end());
        tx_symbols.insert(tx_symbols.end(), tx.parity.begin(), tx.parity.end());
        auto rels = receive_symbol_reliabilities(ctx, tx_symbols, frame);

        FrameSoftInput in;
        in.info_rel.assign(rels.begin(), rels.begin() + ctx.rp.layout.kt);
        in.parity_rel.assign(rels.begin() + ctx.rp.layout.kt, rels.end());
        FrameDecodeResult dec = decode_frame(in, ctx.rp, ctx.code, interleaver, cfg.chase,
                                             cfg.iterations, cfg.early_exit);
        out.bit_errors = count_symbol_bit_errors(info, dec.info);
        out.frame_error = out.bit_errors > 0;
        out.iterations = static_cast<std::uint64_t>(dec.iterations_run);
        out.chase_failures = dec.chase_failures;
        out.hard_decode_calls = dec.hard_decode_calls;
        return out;
    }

    // btc
    const int k = ctx.code.k();
    Rng info_rng(substream_seed(cfg.seed, frame, kPurposeInfo));
    std::vector<GfElem> info(static_cast<std::size_t>(k) * k);
    for (auto& s : info) s = static_cast<GfElem>(info_rng.below(16));
    ProductBlock block = encode_product(ctx.code, info);
    auto rels = receive_symbol_reliabilities(ctx, block.grid, frame);
    ProductDecodeResult dec = decode_product(rels, ctx.code, cfg.chase, cfg.iterations);
    out.bit_errors = count_symbol_bit_errors(info, dec.info);
    out.frame_error = out.bit_errors > 0;
    out.iterations = static_cast<std::uint64_t>(dec.iterations_run);
    out.chase_failures = dec.chase_failures;
    out.hard_decode_calls = dec.hard_decode_calls;
    return out;
}

} // namespace

PointStats run_point(const SimConfig& cfg, double ebn0_db) {
    cfg.validate();
    PointContext ctx(cfg, ebn0_db);

    PointStats stats;
    stats.ebn0_db = ebn0_db;
    std::uint64_t iter_sum = 0;

    const auto start = std::chrono::steady_clock::now();
    std::uint64_t frames_done = 0;
    while (frames_done < cfg.stop.max_frames) {
        if (cfg.stop.min_bit_errors > 0 && stats.bit_errors >= cfg.stop.min_bit_errors) break;
        if (cfg.stop.max_seconds > 0) {
            double elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
            if (elapsed >= cfg.stop.max_seconds) break;
        }
        const std::uint64_t batch_end =
            std::min<std::uint64_t>(frames_done + static_cast<std::uint64_t>(cfg.batch),
                                    cfg.stop.max_frames);

        std::atomic<std::uint64_t> next{frames_done};
        std::mutex merge_mutex;
        auto worker = [&]() {
            FrameOutcome local;
            std::uint64_t local_frames = 0;
            for (;;) {
                std::uint64_t f = next.fetch_add(1);
                if (f >= batch_end) break;
                FrameOutcome o = run_frame(ctx, f);
                local.bit_errors += o.bit_errors;
                local.frame_error = false; // accumulated separately below
                local.iterations += o.iterations;
                local.chase_failures += o.chase_failures;
                local.hard_decode_calls += o.hard_decode_calls;
                if (o.frame_error) ++local_frames; // frame-error count
            }
            std::scoped_lock lk(merge_mutex);
            stats.bit_errors += local.bit_errors;
            stats.frame_errors += local_frames;
            iter_sum += local.iterations;
            stats.chase_failures += local.chase_failures;
            stats.complexity += local.hard_decode_calls;
        };

        const int nworkers = std::max(1, cfg.workers);
        if (nworkers == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(nworkers));
            for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        frames_done = batch_end;
    }

    stats.frames = frames_done;
    stats.info_bits = frames_done * ctx.info_bits_per_frame;
    stats.ber = stats.info_bits ? static_cast<double>(stats.bit_errors) / static_cast<double>(stats.info_bits) : 0.0;
    stats.fer = stats.frames ? static_cast<double>(stats.frame_errors) / static_cast<double>(stats.frames) : 0.0;
    stats.ci95 = stats.info_bits
                     ? 1.96 * std::sqrt(std::max(stats.ber * (1.0 - stats.ber), 0.0) /
                                        static_cast<double>(stats.info_bits))
                     : 0.0;
    stats.mean_iters = stats.frames ? static_cast<double>(iter_sum) / static_cast<double>(stats.frames) : 0.0;
    return stats;
}

SimResult run_sweep(const SimConfig& cfg, const ProgressFn& progress) {
    cfg.validate();
    SimResult result;
    for (double ebn0 : cfg.sweep_points()) {
        PointStats p = run_point(cfg, ebn0);
        if (progress) progress(p);
        result.points.push_back(p);
    }
    return result;
}

std::string csv_header() {
    return "ebn0_db,ber,fer,frames,info_bits,bit_errors,frame_errors,mean_iters,"
           "chase_failures,complexity";
}

std::string csv_row(const PointStats& p) {
    char buf[320];
    std::snprintf(buf, sizeof(buf), "%g,%.6e,%.6e,%llu,%llu,%llu,%llu,%.6g,%llu,%llu",
                  p.ebn0_db, p.ber, p.fer,
                  static_cast<unsigned long long>(p.frames),
                  static_cast<unsigned long long>(p.info_bits),
                  static_cast<unsigned long long>(p.bit_errors),
                  static_cast<unsigned long long>(p.frame_errors), p.mean_iters,
                  static_cast<unsigned long long>(p.chase_failures),
                  static_cast<unsigned long long>(p.complexity));
    return buf;
}

void write_csv(std::ostream& os, const SimResult& result) {
    os << csv_header() << '\n';
    for (const auto& p : result.points) os << csv_row(p) << '\n';
}

void write_manifest(std::ostream& os, const SimConfig& cfg, const SimResult& result,
                    const std::string& csv_path) {
    nlohmann::json j;
    j["artifact"] = "agfec";
    j["version"] = "1.0.0";
    j["csv_schema"] = csv_header();
    j["csv_path"] = csv_path;
    j["rng"] = "splitmix64-derived xoshiro256++ streams; Box-Muller gaussians";
    {
        auto now = std::chrono::system_clock::now().time_since_epoch();
        j["timestamp_unix"] =
            std::chrono::duration_cast<std::chrono::seconds>(now).count();
    }
    nlohmann::json c;
    c["scheme"] = scheme_name(cfg.scheme);
    c["code"] = cfg.code_k == 49 ? "ag64_49" : "ag64_44";
    if (cfg.scheme == Scheme::Ibtc) {
        std::string prof;
        for (std::size_t i = 0; i < cfg.profile.size(); ++i) {
            if (i) prof += ',';
            char buf[48];
            std::snprintf(buf, sizeof(buf), "%d:%g", cfg.profile[i].degree, cfg.profile[i].share);
            prof += buf;
        }
        c["profile"] = prof;
        c["kt"] = cfg.kt;
    }
    c["modulation"] = modulation_name(cfg.modulation);
    c["demapper"] = demapper_name(cfg.demapper);
    c["ebn0"] = {{"start", cfg.ebn0_start}, {"stop", cfg.ebn0_stop}, {"step", cfg.ebn0_step}};
    c["iterations"] = cfg.iterations;
    c["chase"] = {{"p", cfg.chase.p},
                  {"s", cfg.chase.s},
                  {"alpha", cfg.chase.alpha_schedule},
                  {"beta", cfg.chase.beta_schedule}};
    c["stop"] = {{"min_bit_errors", cfg.stop.min_bit_errors},
                 {"max_frames", cfg.stop.max_frames},
                 {"max_seconds", cfg.stop.max_seconds}};
    c["seed"] = cfg.seed;
    c["workers"] = cfg.workers;
    c["batch"] = cfg.batch;
    c["early_exit"] = cfg.early_exit;
    c["strict_profile"] = cfg.strict_profile;
    j["config"] = c;

    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : result.points) {
        nlohmann::json q;
        q["ebn0_db"] = p.ebn0_db;
        q["ber"] = p.ber;
        q["fer"] = p.fer;
        q["frames"] = p.frames;
        q["info_bits"] = p.info_bits;
        q["bit_errors"] = p.bit_errors;
        q["frame_errors"] = p.frame_errors;
        q["ci95"] = p.ci95;
        q["mean_iters"] = p.mean_iters;
        q["chase_failures"] = p.chase_failures;
        q["complexity"] = p.complexity;
        q["complexity_per_info_bit"] =
            p.info_bits ? static_cast<double>(p.complexity) / static_cast<double>(p.info_bits) : 0.0;
        pts.push_back(q);
    }
    j["points"] = pts;
    os << j.dump(2) << '\n';
}

double ebn0_at_ber(std::span<const BerPoint> curve, double target_ber) {
    if (target_ber <= 0) throw std::domain_error("ebn0_at_ber: target must be positive");
    std::vector<BerPoint> pts(curve.begin(), curve.end());
    std::sort(pts.begin(), pts.end(),
              [](const BerPoint& a, const BerPoint& b) { return a.ebn0_db < b.ebn0_db; });
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double b1 = pts[i].ber, b2 = pts[i + 1].ber;
        if (b1 <= 0 || b2 <= 0) continue;
        if (b1 >= target_ber && target_ber >= b2) {
            if (b1 == b2) return pts[i].ebn0_db;
            double t = (std::log(target_ber) - std::log(b1)) / (std::log(b2) - std::log(b1));
            return pts[i].ebn0_db + t * (pts[i + 1].ebn0_db - pts[i].ebn0_db);
        }
    }
    throw std::domain_error("ebn0_at_ber: target BER not bracketed by the curve");
}

double gain_at_ber(std::span<const BerPoint> a, std::span<const BerPoint> b,
                   double target_ber) {
    return ebn0_at_ber(b, target_ber) - ebn0_at_ber(a, target_ber);
}

} // namespace agfec

#ifndef AGFEC_SIM_H
#define AGFEC_SIM_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "agfec/btc.h"
#include "agfec/channel.h"
#include "agfec/ibtc.h"
#include "agfec/modem.h"

namespace agfec {

enum class Scheme { Ibtc, Btc, Uncoded };

Scheme parse_scheme(const std::string& name); // ibtc|btc|uncoded
std::string scheme_name(Scheme s);

struct StopRule {
    std::uint64_t min_bit_errors = 100; // 0 disables
    std::uint64_t max_frames = 100000;  // always enforced
    double max_seconds = 600.0;         // <= 0 disables; checked at batch edges
};

struct SimConfig {
    Scheme scheme = Scheme::Ibtc;
    int code_k = 49; // 49 or 44
    std::vector<ProfileEntry> profile; // empty -> default for the code
    int kt = 0;                        // 0 -> default for the code
    Modulation modulation = Modulation::Bpsk;
    Demapper demapper = Demapper::Exact;
    double ebn0_start = 0.0;
    double ebn0_stop = 10.0;
    double ebn0_step = 1.0;
    int iterations = 8;
    ChaseConfig chase;
    StopRule stop;
    std::uint64_t seed = 1;
    int workers = 1;
    int batch = 32; // stop-rule check granularity, worker-count independent
    bool early_exit = false;
    bool strict_profile = false;

    void apply_defaults(); // fills profile/kt from scheme and code
    void validate() const; // throws std::invalid_argument
    std::vector<double> sweep_points() const;
};

struct PointStats {
    double ebn0_db = 0;
    std::uint64_t frames = 0;
    std::uint64_t info_bits = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0;
    double fer = 0;
    double ci95 = 0; // normal-approximation half width on ber
    double mean_iters = 0;
    std::uint64_t chase_failures = 0;
    std::uint64_t complexity = 0; // component hard-decode invocations
};

struct SimResult {
    std::vector<PointStats> points;
};

using ProgressFn = std::function<void(const PointStats&)>;

// One Eb/N0 point. Frame f's randomness depends only on (seed, f), so the
// result is identical for any worker count and any execution order.
PointStats run_point(const SimConfig& cfg, double ebn0_db);

SimResult run_sweep(const SimConfig& cfg, const ProgressFn& progress = {});

// exact CSV schema, one row per sweep point
std::string csv_header();
std::string csv_row(const PointStats& p);
void write_csv(std::ostream& os, const SimResult& result);

void write_manifest(std::ostream& os, const SimConfig& cfg, const SimResult& result,
                    const std::string& csv_path);

struct BerPoint {
    double ebn0_db = 0;
    double ber = 0;
};

// Eb/N0 at which the curve crosses the target, by log-linear interpolation;
// throws std::domain_error if no segment brackets the target.
double ebn0_at_ber(std::span<const BerPoint> curve, double target_ber);

// gain of curve a over curve b: Eb/N0_b(target) - Eb/N0_a(target)
double gain_at_ber(std::span<const BerPoint> a, std::span<const BerPoint> b,
                   double target_ber);

} // namespace agfec

#endif

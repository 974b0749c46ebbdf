#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agfec/config.h"
#include "agfec/csvio.h"
#include "agfec/plot.h"

namespace {

using namespace agfec;

int parse_code_id(const std::string& id) {
    if (id == "ag64_49") return 49;
    if (id == "ag64_44") return 44;
    throw std::invalid_argument("unknown code id '" + id + "' (expected ag64_49 or ag64_44)");
}

std::vector<GfElem> read_hex_symbols(std::istream& is) {
    std::vector<GfElem> symbols;
    char c;
    while (is.get(c)) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = 10 + c - 'a';
        else if (c >= 'A' && c <= 'F') v = 10 + c - 'A';
        else throw std::invalid_argument(std::string("invalid hex symbol '") + c + "'");
        symbols.push_back(static_cast<GfElem>(v));
    }
    return symbols;
}

void write_hex_symbols(std::ostream& os, const std::vector<GfElem>& symbols) {
    static const char* digits = "0123456789abcdef";
    for (GfElem s : symbols) os << digits[s & 0xf];
    os << '\n';
}

int cmd_code_info(const std::string& id) {
    AgCode code = build_code(parse_code_id(id));
    std::printf("code          %s\n", id.c_str());
    std::printf("n             %d\n", code.n());
    std::printf("k             %d\n", code.k());
    std::printf("m             %d\n", code.m());
    std::printf("genus         %d\n", code.genus());
    std::printf("d*            %d\n", code.designed_distance());
    std::printf("t             %d\n", code.t());
    std::printf("rate          %.6f\n", static_cast<double>(code.k()) / code.n());
    std::printf("info positions");
    for (int p : code.info_positions()) std::printf(" %d", p);
    std::printf("\n");
    return 0;
}

std::vector<GfElem> read_symbols_arg(const std::string& in_path) {
    if (in_path.empty() || in_path == "-") return read_hex_symbols(std::cin);
    std::ifstream f(in_path);
    if (!f) throw std::invalid_argument("cannot open '" + in_path + "'");
    return read_hex_symbols(f);
}

void write_symbols_arg(const std::string& out_path, const std::vector<GfElem>& symbols) {
    if (out_path.empty() || out_path == "-") {
        write_hex_symbols(std::cout, symbols);
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open '" + out_path + "' for writing");
    write_hex_symbols(f, symbols);
}

int cmd_encode(const std::string& id, const std::string& in_path, const std::string& out_path) {
    AgCode code = build_code(parse_code_id(id));
    auto info = read_symbols_arg(in_path);
    if (static_cast<int>(info.size()) != code.k())
        throw std::invalid_argument("encode: expected " + std::to_string(code.k()) +
                                    " info symbols, got " + std::to_string(info.size()));
    write_symbols_arg(out_path, code.encode(info));
    return 0;
}

int cmd_decode(const std::string& id, const std::string& in_path, const std::string& out_path) {
    AgCode code = build_code(parse_code_id(id));
    auto received = read_symbols_arg(in_path);
    if (static_cast<int>(received.size()) != code.n())
        throw std::invalid_argument("decode: expected 64 symbols, got " +
                                    std::to_string(received.size()));
    auto cw = code.hard_decode(received);
    if (!cw) {
        std::cerr << "decode: failure (no codeword within the decoding radius)\n";
        return 2;
    }
    std::vector<GfElem> info(static_cast<std::size_t>(code.k()));
    for (int i = 0; i < code.k(); ++i)
        info[static_cast<std::size_t>(i)] =
            (*cw)[static_cast<std::size_t>(code.info_positions()[static_cast<std::size_t>(i)])];
    write_symbols_arg(out_path, info);
    return 0;
}

struct SimulateArgs {
    std::string config_path;
    std::string out_prefix;
    bool quiet = false;
    std::map<std::string, std::string> overrides;
};

int cmd_simulate(const SimulateArgs& args) {
    std::map<std::string, std::string> base;
    if (!args.config_path.empty()) base = parse_config_file(args.config_path);
    SimConfig cfg = make_sim_config(base, args.overrides);
    cfg.validate();

    ProgressFn progress;
    if (!args.quiet) {
        progress = [](const PointStats& p) {
            std::fprintf(stderr,
                         "point ebn0=%g dB: ber=%.3e fer=%.3e frames=%llu bit_errors=%llu\n",
                         p.ebn0_db, p.ber, p.fer, static_cast<unsigned long long>(p.frames),
                         static_cast<unsigned long long>(p.bit_errors));
        };
    }
    SimResult result = run_sweep(cfg, progress);

    const std::string csv_path = args.out_prefix + ".csv";
    const std::string manifest_path = args.out_prefix + ".manifest.json";
    {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
        write_csv(f, result);
    }
    {
        std::ofstream f(manifest_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open '" + manifest_path + "' for writing");
        write_manifest(f, cfg, result, csv_path);
    }
    if (!args.quiet)
        std::fprintf(stderr, "wrote %s and %s\n", csv_path.c_str(), manifest_path.c_str());
    return 0;
}

std::string file_stem(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

int cmd_plot(const std::vector<std::string>& csvs, const std::string& out_path,
             const std::string& labels_arg) {
    std::vector<std::string> labels;
    if (!labels_arg.empty()) {
        std::stringstream ss(labels_arg);
        std::string item;
        while (std::getline(ss, item, ',')) labels.push_back(item);
        if (labels.size() != csvs.size())
            throw std::invalid_argument("plot: number of labels must match number of CSVs");
    }
    std::vector<PlotSeries> series;
    for (std::size_t i = 0; i < csvs.size(); ++i) {
        PlotSeries s;
        s.label = labels.empty() ? file_stem(csvs[i]) : labels[i];
        s.data = read_csv(csvs[i]);
        series.push_back(std::move(s));
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    render_ber_svg(f, series);
    return 0;
}

int cmd_compare(const std::string& csv_a, const std::string& csv_b, double target_ber) {
    SimResult a = read_csv(csv_a);
    SimResult b = read_csv(csv_b);
    double xa = ebn0_at_ber(to_ber_curve(a), target_ber);
    double xb = ebn0_at_ber(to_ber_curve(b), target_ber);
    auto cpb = [](const SimResult& r) {
        std::uint64_t cx = 0, bits = 0;
        for (const auto& p : r.points) {
            cx += p.complexity;
            bits += p.info_bits;
        }
        return bits ? static_cast<double>(cx) / static_cast<double>(bits) : 0.0;
    };
    std::printf("ebn0(a) at ber %.3e: %.4f dB\n", target_ber, xa);
    std::printf("ebn0(b) at ber %.3e: %.4f dB\n", target_ber, xb);
    std::printf("gain a over b: %+.4f dB\n", xb - xa);
    std::printf("complexity per info bit: a=%.4f b=%.4f\n", cpb(a), cpb(b));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Irregular and regular AG block turbo code laboratory"};
    app.require_subcommand(1);

    // code-info
    std::string info_code;
    auto* sc_info = app.add_subcommand("code-info", "print component code parameters");
    sc_info->add_option("code", info_code, "ag64_49 or ag64_44")->required();

    // encode / decode
    std::string enc_code = "ag64_49", enc_in, enc_out;
    auto* sc_enc = app.add_subcommand("encode", "systematic-encode one block of hex symbols");
    sc_enc->add_option("--code", enc_code, "component code id");
    sc_enc->add_option("--in", enc_in, "input file of hex symbols (default stdin)");
    sc_enc->add_option("--out", enc_out, "output file (default stdout)");

    std::string dec_code = "ag64_49", dec_in, dec_out;
    auto* sc_dec = app.add_subcommand("decode", "hard-decode one received block of hex symbols");
    sc_dec->add_option("--code", dec_code, "component code id");
    sc_dec->add_option("--in", dec_in, "input file of 64 hex symbols (default stdin)");
    sc_dec->add_option("--out", dec_out, "output file (default stdout)");

    // simulate
    SimulateArgs sim;
    auto* sc_sim = app.add_subcommand("simulate", "run a Monte Carlo BER/FER sweep");
    sc_sim->add_option("--config", sim.config_path, "config file (section.key = value lines)");
    sc_sim->add_option("--out", sim.out_prefix, "output prefix (<prefix>.csv, <prefix>.manifest.json)")
        ->required();
    sc_sim->add_flag("--quiet", sim.quiet, "suppress progress output");
    // every config key is also a flag; values land in the override map
    std::map<std::string, std::string> flag_values;
    const std::vector<std::pair<std::string, std::string>> flag_keys = {
        {"--scheme", "scheme"},
        {"--code", "code"},
        {"--profile", "profile"},
        {"--kt", "kt"},
        {"--iterations", "iterations"},
        {"--early-exit", "early_exit"},
        {"--strict-profile", "strict_profile"},
        {"--chase-p", "chase.p"},
        {"--chase-s", "chase.s"},
        {"--chase-alpha", "chase.alpha"},
        {"--chase-beta", "chase.beta"},
        {"--modulation", "modulation"},
        {"--demapper", "demapper"},
        {"--ebn0-start", "ebn0.start"},
        {"--ebn0-stop", "ebn0.stop"},
        {"--ebn0-step", "ebn0.step"},
        {"--min-bit-errors", "stop.min_bit_errors"},
        {"--max-frames", "stop.max_frames"},
        {"--max-seconds", "stop.max_seconds"},
        {"--seed", "seed"},
        {"--workers", "workers"},
        {"--batch", "batch"},
    };
    for (const auto& [flag, key] : flag_keys)
        sc_sim->add_option(flag, flag_values[key], "override config key " + key);

    // plot
    std::vector<std::string> plot_csvs;
    std::string plot_out, plot_labels;
    auto* sc_plot = app.add_subcommand("plot", "render BER curves from CSVs as SVG");
    sc_plot->add_option("csv", plot_csvs, "input CSV files")->required()->expected(-1);
    sc_plot->add_option("--out", plot_out, "output SVG path")->required();
    sc_plot->add_option("--labels", plot_labels, "comma-separated curve labels");

    // compare
    std::string cmp_a, cmp_b;
    double cmp_target = 1e-3;
    auto* sc_cmp = app.add_subcommand("compare", "coding gain between two CSV curves");
    sc_cmp->add_option("csv_a", cmp_a, "first curve (gain reported for this one)")->required();
    sc_cmp->add_option("csv_b", cmp_b, "second curve (baseline)")->required();
    sc_cmp->add_option("--target-ber", cmp_target, "target BER for the gain measurement");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_info->parsed()) return cmd_code_info(info_code);
        if (sc_enc->parsed()) return cmd_encode(enc_code, enc_in, enc_out);
        if (sc_dec->parsed()) return cmd_decode(dec_code, dec_in, dec_out);
        if (sc_sim->parsed()) {
            for (const auto& [key, value] : flag_values)
                if (!value.empty()) sim.overrides[key] = value;
            return cmd_simulate(sim);
        }
        if (sc_plot->parsed()) return cmd_plot(plot_csvs, plot_out, plot_labels);
        if (sc_cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_target);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

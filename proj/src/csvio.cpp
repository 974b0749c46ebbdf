#include "agfec/csvio.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace agfec {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) fields.push_back(item);
    return fields;
}

} // namespace

SimResult read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("csv: '" + path + "' is empty");
    if (line != csv_header())
        throw std::runtime_error("csv: '" + path + "' header does not match schema");

    SimResult result;
    int row = 1;
    while (std::getline(f, line)) {
        ++row;
        if (line.empty()) continue;
        auto fields = split_row(line);
        if (fields.size() != 10)
            throw std::runtime_error("csv: '" + path + "' row " + std::to_string(row) +
                                     ": expected 10 fields, got " + std::to_string(fields.size()));
        PointStats p;
        try {
            p.ebn0_db = std::stod(fields[0]);
            p.ber = std::stod(fields[1]);
            p.fer = std::stod(fields[2]);
            p.frames = std::stoull(fields[3]);
            p.info_bits = std::stoull(fields[4]);
            p.bit_errors = std::stoull(fields[5]);
            p.frame_errors = std::stoull(fields[6]);
            p.mean_iters = std::stod(fields[7]);
            p.chase_failures = std::stoull(fields[8]);
            p.complexity = std::stoull(fields[9]);
        } catch (const std::exception&) {
            throw std::runtime_error("csv: '" + path + "' row " + std::to_string(row) +
                                     ": malformed numeric field");
        }
        if (p.info_bits)
            p.ci95 = 1.96 * std::sqrt(std::max(p.ber * (1.0 - p.ber), 0.0) /
                                      static_cast<double>(p.info_bits));
        result.points.push_back(p);
    }
    return result;
}

std::vector<BerPoint> to_ber_curve(const SimResult& result) {
    std::vector<BerPoint> curve;
    curve.reserve(result.points.size());
    for (const auto& p : result.points) curve.push_back({p.ebn0_db, p.ber});
    return curve;
}

} // namespace agfec

#ifndef AGFEC_CSVIO_H
#define AGFEC_CSVIO_H

#include <string>

#include "agfec/sim.h"

namespace agfec {

// Reads a simulate CSV back into a SimResult; malformed input throws
// std::runtime_error naming the offending row.
SimResult read_csv(const std::string& path);

std::vector<BerPoint> to_ber_curve(const SimResult& result);

} // namespace agfec

#endif

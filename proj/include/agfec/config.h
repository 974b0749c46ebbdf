#ifndef AGFEC_CONFIG_H
#define AGFEC_CONFIG_H

#include <map>
#include <string>
#include <vector>

#include "agfec/sim.h"

namespace agfec {

// Flat "section.key = value" config format; '#' starts a comment, blank
// lines are ignored. Errors carry the file name and line number.
std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& origin);
std::map<std::string, std::string> parse_config_file(const std::string& path);

// "2:0.85,3:0.10,9:0.05"
std::vector<ProfileEntry> parse_profile(const std::string& text);

// Builds a SimConfig; overrides win over base; unknown keys throw with the
// key name. Defaults for profile/kt are filled afterwards.
SimConfig make_sim_config(const std::map<std::string, std::string>& base,
                          const std::map<std::string, std::string>& overrides);

} // namespace agfec

#endif

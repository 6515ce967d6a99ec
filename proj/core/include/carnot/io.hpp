#pragma once

#include <filesystem>
#include <string>

#include "carnot/filling.hpp"
#include "carnot/group.hpp"

namespace carnot {

// Chain files are JSON lines, one cell per record:
//   {"scale":0,"dim":1,"axes":[0],"corner":[0,0,0],"coeff":1}
// Multiscale files add a per-part "anchor" array in base units. Scale and
// dimension homogeneity is validated on load.
void save_chain(const std::filesystem::path& path, const Chain& c, int n);
Chain load_chain(const std::filesystem::path& path, int expected_n);

void save_multiscale(const std::filesystem::path& path, const MultiscaleChain& m, int n);
MultiscaleChain load_multiscale(const std::filesystem::path& path, int expected_n);

// {"name":..., "m1":..., "m2":..., "beta":[[i,j,k,value],...], "k":[...]}
GroupSpec parse_group_spec(const std::string& json_text);
GroupSpec load_group_spec(const std::filesystem::path& path);
std::string group_spec_to_json(const GroupSpec& g);

std::string report_to_json(const GroupSpec& g, const FillingReport& rep);

}  // namespace carnot

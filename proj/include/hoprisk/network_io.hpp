#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hoprisk/network.hpp"

namespace hoprisk {

// {"nodes":[{"id":0,"type":0,"p":0.2},...],
//  "edges":[{"u":0,"v":1,"q_uv":0.1,"q_vu":0.1},...]}
std::string network_to_json(const NetworkModel& net);
NetworkModel network_from_json(std::string_view text);

NetworkModel load_json(const std::filesystem::path& path);
void save_json(const NetworkModel& net, const std::filesystem::path& path);

}  // namespace hoprisk

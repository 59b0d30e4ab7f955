#pragma once

#include <cstdint>

namespace netdiff {

using NodeId = std::uint32_t;
using Status = std::uint8_t;
using Timestamp = std::int64_t;

}  // namespace netdiff

#pragma once

#include <string>

#include "dyntda/dms.hpp"

namespace dyntda {

/// DMS file format: a JSON descriptor {labels, t_start, step, count, kind,
/// payload, torus_size?, data_file?|data} where kind is "distances" or
/// "positions2d". Binary payloads put the flat row-major tensor (little-
/// endian 64-bit floats) in a sidecar file next to the descriptor; inline
/// payloads embed it as a JSON array.
void save_dms(const DynamicMetricSpace& dms, const std::string& path, bool binary_payload = true);

DynamicMetricSpace load_dms(const std::string& path);

} // namespace dyntda

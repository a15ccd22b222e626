#pragma once

#include <string>

#include "gzk/field.hpp"

namespace gzk {

// Binary field snapshots. Little-endian layout:
//   magic "GZKF" | u32 version | f64 Lx | u32 nx | u32 ny | f64 time | nx*ny f64
// values row-major with x outer, y inner. Version 1 is a cylinder grid
// (y period 1), version 2 a square box (y in [-Lx, Lx), nx == ny). Doubles are
// stored bit-exactly; a write/read round trip reproduces the field verbatim.
void write_snapshot(const std::string& path, const Field& f, double time);

struct Snapshot {
    Field field;
    double time;
};

Snapshot read_snapshot(const std::string& path);

} // namespace gzk

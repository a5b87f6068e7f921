#pragma once

// Built-in codes. The five group-decodable fixtures carry hand-verified
// dispersion matrices and partitions; the remaining entries are classical
// comparison codes used by the simulator (decoded by the same generic
// maximum-likelihood machinery).

#include "gdstbc/code_model.hpp"

namespace gdstbc {

// Group-decodable fixtures:
//   un2          2 durations, 4 antennas, rate 5/4, groups {s1}, {s2..s5}
//   un2_reduced  column-trimmed un2 for 2 antennas
//   un4          4 durations, 4 antennas, rate 17/8, groups {s1}, {s2..s17}
//   gpp3         3 durations, 2 antennas, rate 3/2, groups {s1}, {s2..s9}
//   b4           4 durations, 4 antennas, rate 5/4, groups {s1..s5}, {s6..s10}
// Comparison codes:
//   alamouti     2x2 orthogonal design, four singleton groups
//   blast2       uncoded spatial multiplexing, 1 duration, 2 antennas
//   golden       full-rate 2x2 code (entries rounded to doubles), one group
GroupDecodableCode builtin_code(const std::string& name);

std::vector<std::string> builtin_code_names();

}  // namespace gdstbc

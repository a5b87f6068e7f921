#pragma once

// Code file format: line-oriented text, exact rational entries as integer
// quadruples so round-trips are bit-exact at any precision.
//
//   gdstbc-code v1
//   name <token>            (optional)
//   T <int>
//   N <int>
//   L <int>
//   groups <int>
//   group <i> <l1> <l2> ... (1-based symbol indices)
//   matrix <l>
//   <T lines of N entries, each entry "re_num re_den im_num im_den">
//
// Unknown keys are rejected; denominators must be positive.

#include "gdstbc/code_model.hpp"

#include <cstdint>
#include <string_view>

namespace gdstbc {

std::string serialize_code(const GroupDecodableCode& code);

// Throws std::runtime_error with a line-tagged message on malformed input.
GroupDecodableCode parse_code(const std::string& text);

GroupDecodableCode load_code_file(const std::string& path);
void save_code_file(const GroupDecodableCode& code, const std::string& path);

// Stable content hash of the serialized form (FNV-1a, 64-bit).
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace gdstbc

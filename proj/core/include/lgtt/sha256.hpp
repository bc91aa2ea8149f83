#pragma once

#include <string>

namespace lgtt {

// Hex digest (lowercase, 64 chars) of a byte buffer.
std::string sha256_hex(const std::string& data);

// Digest of a file's bytes. Throws std::runtime_error if the file cannot be read.
std::string sha256_file(const std::string& path);

}  // namespace lgtt

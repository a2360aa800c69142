#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>

namespace holeprobe {

/// Lower-case hex SHA-256.
std::string sha256_hex(std::span<const std::byte> data);
std::string sha256_hex(const std::string& data);

/// Digest of a file's bytes; throws InputError if it cannot be read.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace holeprobe

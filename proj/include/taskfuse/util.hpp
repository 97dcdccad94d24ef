#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace taskfuse {

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, const void* data, std::size_t size);

std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_hex(const std::string& text);
std::string sha256_file_hex(const std::filesystem::path& path);

/// Shortest decimal string that round-trips the exact double value.
std::string format_double(double value);

}  // namespace taskfuse

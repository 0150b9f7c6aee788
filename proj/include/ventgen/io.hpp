#pragma once

#include <string>

namespace ventgen {

std::string read_file(const std::string& path);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a truncated file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ventgen

#pragma once

#include <string>

namespace sparsestab {

// Write-temp-then-rename; never leaves a torn file at `path`.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace sparsestab

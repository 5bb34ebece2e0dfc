#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>

namespace rsec {

/// Writes through `fill` into a sibling temp file, then renames it over
/// `path`. A failed write never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fill);

}  // namespace rsec

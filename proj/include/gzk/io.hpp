#pragma once

#include <string>

namespace gzk::io {

// Write the whole payload to a temporary file next to `path` and rename it in
// place, so readers never observe a partly written artifact. Throws IoError.
void atomic_write(const std::string& path, const void* data, std::size_t size);
void atomic_write(const std::string& path, const std::string& text);

std::string read_text(const std::string& path);

} // namespace gzk::io

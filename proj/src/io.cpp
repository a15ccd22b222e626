#include "gzk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gzk/error.hpp"

namespace gzk::io {

void atomic_write(const std::string& path, const void* data, std::size_t size) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorClass::IoError, "cannot open " + tmp + " for writing");
        out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
        out.flush();
        if (!out) fail(ErrorClass::IoError, "short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        fail(ErrorClass::IoError, "cannot rename " + tmp + " to " + path);
}

void atomic_write(const std::string& path, const std::string& text) {
    atomic_write(path, text.data(), text.size());
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorClass::MissingArtifact, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (!in.good() && !in.eof()) fail(ErrorClass::IoError, "read failure on " + path);
    return ss.str();
}

} // namespace gzk::io

#include "gzk/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "gzk/error.hpp"
#include "gzk/io.hpp"

namespace gzk {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts need byte swaps");
static_assert(sizeof(double) == 8);

namespace {

constexpr char kMagic[4] = {'G', 'Z', 'K', 'F'};

template <class T>
void put(std::string& buf, T v) {
    char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    buf.append(b, sizeof(T));
}

template <class T>
T take(std::ifstream& in, const std::string& path) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) fail(ErrorClass::IoError, "truncated snapshot " + path);
    return v;
}

} // namespace

void write_snapshot(const std::string& path, const Field& f, double time) {
    const Grid& g = f.grid();
    std::uint32_t version;
    if (g.is_cylinder()) {
        version = 1;
    } else if (g.nx() == g.ny() && g.y_period() == 2.0 * g.Lx() && g.y_origin() == -g.Lx()) {
        version = 2;
    } else {
        fail(ErrorClass::ConfigError, "snapshot grids must be cylinder or square box");
    }
    std::string buf;
    buf.reserve(32 + sizeof(double) * g.size());
    buf.append(kMagic, 4);
    put(buf, version);
    put(buf, g.Lx());
    put(buf, static_cast<std::uint32_t>(g.nx()));
    put(buf, static_cast<std::uint32_t>(g.ny()));
    put(buf, time);
    const auto& v = f.values();
    buf.append(reinterpret_cast<const char*>(v.data()), sizeof(double) * v.size());
    io::atomic_write(path, buf);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorClass::MissingArtifact, "cannot open snapshot " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        fail(ErrorClass::IoError, "bad magic in " + path);
    const auto version = take<std::uint32_t>(in, path);
    const auto Lx = take<double>(in, path);
    const auto nx = take<std::uint32_t>(in, path);
    const auto ny = take<std::uint32_t>(in, path);
    const auto time = take<double>(in, path);
    if (version != 1 && version != 2)
        fail(ErrorClass::IoError, "unsupported snapshot version in " + path);
    if (nx < 4 || ny < 4 || nx > (1u << 20) || ny > (1u << 20))
        fail(ErrorClass::IoError, "implausible grid size in " + path);
    if (version == 2 && nx != ny) fail(ErrorClass::IoError, "square-box snapshot with nx != ny");

    Grid g = version == 1 ? Grid::cylinder(Lx, static_cast<int>(nx), static_cast<int>(ny))
                          : Grid::plane(Lx, static_cast<int>(nx));
    std::vector<double> v(g.size());
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(sizeof(double) * v.size()));
    if (!in) fail(ErrorClass::IoError, "truncated snapshot " + path);
    return Snapshot{Field::from_values(std::move(g), std::move(v)), time};
}

} // namespace gzk

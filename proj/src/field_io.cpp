#include "hermweb/field_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "hermweb/error.hpp"

namespace hermweb {

namespace {

static_assert(std::endian::native == std::endian::little,
              "field dumps are written on little-endian hosts only");

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t at) {
  T v;
  std::memcpy(&v, in.data() + at, sizeof(T));
  return v;
}

}  // namespace

void write_fields(const std::filesystem::path& path, const std::vector<ScalarField>& fields) {
  if (fields.empty()) throw InputError("nothing to write");
  const auto& grid = fields.front().grid();
  std::string out;
  out.reserve(32 + fields.size() * grid.size() * 16);
  out.append("HWFD");
  put<std::uint16_t>(out, kFieldDumpVersion);
  put<std::uint16_t>(out, static_cast<std::uint16_t>(grid.dim()));
  for (int a = 0; a < kMaxRealDim; ++a)
    put<std::uint32_t>(out, a < grid.real_dim() ? static_cast<std::uint32_t>(grid.axis_size(a)) : 0);
  for (const auto& f : fields) {
    if (!(f.grid() == grid)) throw InputError("fields in one dump must share a grid");
    for (auto v : f.values()) {
      put<double>(out, v.real());
      put<double>(out, v.imag());
    }
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw InputError("short write to " + path.string());
}

std::vector<ScalarField> read_fields(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open " + path.string());
  std::string in((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (in.size() < 32 || in.compare(0, 4, "HWFD") != 0)
    throw InputError(path.string() + ": not a field dump");
  if (get<std::uint16_t>(in, 4) != kFieldDumpVersion)
    throw InputError(path.string() + ": unsupported dump version");
  const int n = get<std::uint16_t>(in, 6);
  if (n < 1 || n > kMaxComplexDim) throw InputError(path.string() + ": bad dimension in header");
  std::vector<int> sizes;
  for (int a = 0; a < 2 * n; ++a)
    sizes.push_back(static_cast<int>(get<std::uint32_t>(in, 8 + 4 * static_cast<std::size_t>(a))));
  const PeriodicGrid grid(n, sizes);
  const std::size_t bytes = grid.size() * 16;
  const std::size_t payload = in.size() - 32;
  if (payload == 0 || payload % bytes != 0)
    throw InputError(path.string() + ": payload length does not match the header");
  std::vector<ScalarField> fields;
  for (std::size_t off = 32; off < in.size(); off += bytes) {
    std::vector<complex> v(grid.size());
    for (std::size_t k = 0; k < v.size(); ++k)
      v[k] = {get<double>(in, off + 16 * k), get<double>(in, off + 16 * k + 8)};
    fields.emplace_back(grid, std::move(v));
  }
  return fields;
}

}  // namespace hermweb

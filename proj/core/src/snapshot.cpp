#include "relwig/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace relwig {

namespace {

constexpr char kMagic[8] = {'W', 'I', 'G', 'G', 'R', 'I', 'D', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

void need(std::istream& is, char* dst, std::size_t n) {
  is.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(is.gcount()) != n) throw std::runtime_error("snapshot: truncated input");
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  need(is, reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  need(is, reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

}  // namespace

void write_snapshot(std::ostream& os, const SnapshotHeader& h, const std::vector<std::complex<double>>& values) {
  if (values.size() != static_cast<std::size_t>(h.n1) * h.n2 * h.components)
    throw std::invalid_argument("write_snapshot: value count does not match header");
  os.write(kMagic, 8);
  put_u32(os, h.n1);
  put_u32(os, h.n2);
  put_u32(os, h.components);
  for (double d : {h.d1, h.d2, h.kappa, h.k0, h.x0}) put_f64(os, d);
  for (const auto& v : values) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
  if (!os) throw std::runtime_error("write_snapshot: stream error");
}

Snapshot read_snapshot(std::istream& is) {
  char magic[8];
  need(is, magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("snapshot: bad magic (expected WIGGRID1)");
  Snapshot s;
  auto& h = s.header;
  h.n1 = get_u32(is);
  h.n2 = get_u32(is);
  h.components = get_u32(is);
  h.d1 = get_f64(is);
  h.d2 = get_f64(is);
  h.kappa = get_f64(is);
  h.k0 = get_f64(is);
  h.x0 = get_f64(is);
  const std::size_t n = static_cast<std::size_t>(h.n1) * h.n2 * h.components;
  if (n > (std::size_t{1} << 32)) throw std::runtime_error("snapshot: implausible size");
  s.values.resize(n);
  for (auto& v : s.values) {
    const double re = get_f64(is);
    v = {re, get_f64(is)};
  }
  return s;
}

void write_snapshot(std::ostream& os, const SpinorField& psi) {
  const auto& g = psi.grid();
  SnapshotHeader h;
  h.n1 = static_cast<std::uint32_t>(g.nx);
  h.n2 = static_cast<std::uint32_t>(g.ntheta);
  h.components = 4;
  h.d1 = g.dx();
  h.d2 = g.dtheta();
  h.kappa = psi.kappa;
  h.k0 = g.k0;
  h.x0 = psi.x0;
  write_snapshot(os, h, psi.data());
}

void write_snapshot_file(const std::string& path, const SpinorField& psi) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_snapshot(os, psi);
}

Snapshot read_snapshot_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_snapshot(is);
}

}  // namespace relwig

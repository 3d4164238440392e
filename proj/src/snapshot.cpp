#include "supwave/snapshot.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace supwave {

namespace {
constexpr char kMagic[5] = {'S', 'P', 'W', 'V', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 4);
}
void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}
void put_f64(std::ostream& os, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  put_u64(os, u);
}
std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}
std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}
double get_f64(std::istream& is) {
  const std::uint64_t u = get_u64(is);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}
}  // namespace

void write_snapshot(const FourierField& f, std::ostream& os) {
  os.write(kMagic, 5);
  put_u32(os, static_cast<std::uint32_t>(f.dim()));
  put_u32(os, static_cast<std::uint32_t>(f.cutoff()));
  put_u64(os, static_cast<std::uint64_t>(f.num_modes()));
  put_f64(os, f.mean());
  const auto b = f.cosc(), c = f.sinc();
  for (std::size_t i = 0; i < b.size(); ++i) {
    put_f64(os, b[i]);
    put_f64(os, c[i]);
  }
  if (!os) throw std::runtime_error("write_snapshot: stream write failed");
}

void write_snapshot(const FourierField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_snapshot: cannot open " + path);
  write_snapshot(f, os);
}

FourierField read_snapshot(std::istream& is) {
  char magic[5];
  is.read(magic, 5);
  if (!is || std::memcmp(magic, kMagic, 5) != 0)
    throw std::runtime_error("read_snapshot: bad magic");
  const int dim = static_cast<int>(get_u32(is));
  const int cutoff = static_cast<int>(get_u32(is));
  const std::uint64_t count = get_u64(is);
  FourierField f(dim, cutoff);
  if (count != static_cast<std::uint64_t>(f.num_modes()))
    throw std::runtime_error("read_snapshot: mode count does not match the header box");
  f.mean() = get_f64(is);
  auto b = f.cosc();
  auto c = f.sinc();
  for (std::size_t i = 0; i < b.size(); ++i) {
    b[i] = get_f64(is);
    c[i] = get_f64(is);
  }
  if (!is) throw std::runtime_error("read_snapshot: truncated payload");
  return f;
}

FourierField read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_snapshot: cannot open " + path);
  return read_snapshot(is);
}

void write_snapshot_text(const FourierField& f, std::ostream& os) {
  char buf[128];
  os << "SPWV1-TEXT " << f.dim() << ' ' << f.cutoff() << ' ' << f.num_modes() << '\n';
  std::snprintf(buf, sizeof buf, "mean %.17g\n", f.mean());
  os << buf;
  const auto& basis = f.basis();
  const auto b = f.cosc(), c = f.sinc();
  for (std::int64_t r = 0; r < basis.num_modes(); ++r) {
    const int* n = basis.mode(r);
    for (int j = 0; j < f.dim(); ++j) os << n[j] << ' ';
    const auto i = static_cast<std::size_t>(r);
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", b[i], c[i]);
    os << buf;
  }
}

FourierField read_snapshot_text(std::istream& is) {
  std::string tag;
  int dim, cutoff;
  std::int64_t count;
  is >> tag >> dim >> cutoff >> count;
  if (!is || tag != "SPWV1-TEXT") throw std::runtime_error("read_snapshot_text: bad header");
  FourierField f(dim, cutoff);
  if (count != f.num_modes()) throw std::runtime_error("read_snapshot_text: mode count mismatch");
  is >> tag;
  double mean;
  is >> mean;
  if (tag != "mean") throw std::runtime_error("read_snapshot_text: missing mean line");
  f.mean() = mean;
  std::vector<int> n(static_cast<std::size_t>(dim));
  for (std::int64_t r = 0; r < count; ++r) {
    for (int j = 0; j < dim; ++j) is >> n[static_cast<std::size_t>(j)];
    double bv, cv;
    is >> bv >> cv;
    if (!is) throw std::runtime_error("read_snapshot_text: truncated");
    f.set_coefficient(n, bv, cv);
  }
  return f;
}

}  // namespace supwave

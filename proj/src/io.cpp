#include "brauer/io.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace brauer {

namespace {

void put_u64_le(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64_le(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
    throw std::runtime_error("binary tensor: unexpected end of input");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

Dims checked_dims(std::uint64_t p, std::uint64_t q, std::uint64_t r) {
  if (p == 0 || q == 0 || r == 0) throw std::runtime_error("tensor file: extents must be positive");
  constexpr std::uint64_t limit = std::uint64_t{1} << 40;
  if (p > limit || q > limit || r > limit || p * q > limit || p * q * r > limit)
    throw std::runtime_error("tensor file: extents too large");
  return {static_cast<std::size_t>(p), static_cast<std::size_t>(q), static_cast<std::size_t>(r)};
}

}  // namespace

Tensor3 read_tensor_text(std::istream& in) {
  long long p = 0, q = 0, r = 0;
  if (!(in >> p >> q >> r) || p <= 0 || q <= 0 || r <= 0)
    throw std::runtime_error("text tensor: malformed header, expected \"p q r\"");
  const Dims dims = checked_dims(p, q, r);
  std::vector<double> data(dims.size());
  for (double& x : data)
    if (!(in >> x)) throw std::runtime_error("text tensor: fewer entries than p * q * r");
  double extra = 0.0;
  if (in >> extra) throw std::runtime_error("text tensor: more entries than p * q * r");
  return Tensor3(dims, std::move(data));
}

void write_tensor_text(std::ostream& out, const Tensor3& t) {
  const auto& d = t.dims();
  out << d.p << ' ' << d.q << ' ' << d.r << '\n';
  out << std::setprecision(17);
  const auto data = t.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << data[i] << ((i + 1) % d.p == 0 ? '\n' : ' ');
  }
}

Tensor3 read_tensor_binary(std::istream& in) {
  const std::uint64_t p = get_u64_le(in);
  const std::uint64_t q = get_u64_le(in);
  const std::uint64_t r = get_u64_le(in);
  const Dims dims = checked_dims(p, q, r);
  std::vector<double> data(dims.size());
  for (double& x : data) x = std::bit_cast<double>(get_u64_le(in));
  return Tensor3(dims, std::move(data));
}

void write_tensor_binary(std::ostream& out, const Tensor3& t) {
  const auto& d = t.dims();
  put_u64_le(out, d.p);
  put_u64_le(out, d.q);
  put_u64_le(out, d.r);
  for (double x : t.data()) put_u64_le(out, std::bit_cast<std::uint64_t>(x));
}

TensorFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".bin" ? TensorFormat::binary : TensorFormat::text;
}

Tensor3 load_tensor(const std::filesystem::path& path) {
  const auto fmt = format_for_path(path);
  std::ifstream in(path, fmt == TensorFormat::binary ? std::ios::binary : std::ios::in);
  if (!in) throw std::runtime_error("cannot open tensor file " + path.string());
  return fmt == TensorFormat::binary ? read_tensor_binary(in) : read_tensor_text(in);
}

void save_tensor(const std::filesystem::path& path, const Tensor3& t) {
  const auto fmt = format_for_path(path);
  std::ofstream out(path, fmt == TensorFormat::binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot write tensor file " + path.string());
  if (fmt == TensorFormat::binary)
    write_tensor_binary(out, t);
  else
    write_tensor_text(out, t);
  if (!out) throw std::runtime_error("failed writing tensor file " + path.string());
}

}  // namespace brauer

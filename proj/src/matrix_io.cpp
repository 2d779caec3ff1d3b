// SPDX-License-Identifier: Apache-2.0
#include "beamsim/matrix_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace beamsim {

namespace {
constexpr char kMagic[4] = {'B', 'S', 'M', 'X'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
}  // namespace

void save_matrix_stack(const std::string& path, const std::vector<CMat>& mats,
                       const std::vector<double>& meta) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_matrix_stack: cannot open " + path);
  const std::uint32_t rows = mats.empty() ? 0 : static_cast<std::uint32_t>(mats[0].rows());
  const std::uint32_t cols = mats.empty() ? 0 : static_cast<std::uint32_t>(mats[0].cols());
  for (const CMat& m : mats)
    if (static_cast<std::uint32_t>(m.rows()) != rows ||
        static_cast<std::uint32_t>(m.cols()) != cols)
      throw std::invalid_argument("save_matrix_stack: matrices must share one shape");
  os.write(kMagic, 4);
  write_u32(os, kVersion);
  write_u32(os, static_cast<std::uint32_t>(mats.size()));
  write_u32(os, rows);
  write_u32(os, cols);
  write_u32(os, static_cast<std::uint32_t>(meta.size()));
  for (const CMat& m : mats)
    os.write(reinterpret_cast<const char*>(m.data()),
             static_cast<std::streamsize>(sizeof(Complex) * rows * cols));
  os.write(reinterpret_cast<const char*>(meta.data()),
           static_cast<std::streamsize>(sizeof(double) * meta.size()));
  if (!os) throw std::runtime_error("save_matrix_stack: write failed for " + path);
}

MatrixStack load_matrix_stack(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_matrix_stack: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("load_matrix_stack: bad magic in " + path);
  if (read_u32(is) != kVersion)
    throw std::runtime_error("load_matrix_stack: unsupported version in " + path);
  const std::uint32_t n_mats = read_u32(is);
  const std::uint32_t rows = read_u32(is);
  const std::uint32_t cols = read_u32(is);
  const std::uint32_t n_meta = read_u32(is);
  MatrixStack out;
  out.mats.reserve(n_mats);
  for (std::uint32_t i = 0; i < n_mats; ++i) {
    CMat m(rows, cols);
    is.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(sizeof(Complex) * rows * cols));
    out.mats.push_back(std::move(m));
  }
  out.meta.resize(n_meta);
  is.read(reinterpret_cast<char*>(out.meta.data()),
          static_cast<std::streamsize>(sizeof(double) * n_meta));
  if (!is) throw std::runtime_error("load_matrix_stack: truncated file " + path);
  return out;
}

void save_channel(const std::string& path, const BeamspaceChannel& ch) {
  save_matrix_stack(path, ch.mats, ch.per_subcarrier_freq_hz);
}

BeamspaceChannel load_channel(const std::string& path) {
  MatrixStack s = load_matrix_stack(path);
  return BeamspaceChannel{std::move(s.mats), std::move(s.meta)};
}

}  // namespace beamsim

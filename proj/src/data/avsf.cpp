#include "avsum/data/avsf.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "AVSF payloads are little-endian; big-endian hosts need a swap pass");

namespace avsum::data {

namespace {

constexpr char kMagic[4] = {'A', 'V', 'S', 'F'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ostream& out, uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

uint32_t get_u32(std::istream& in, const std::string& what) {
  uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw ValidationError("AVSF: truncated header while reading " + what);
  return v;
}

}  // namespace

void write_avsf(const MatF& m, const std::filesystem::path& path) {
  require(m.rows() >= 1 && m.cols() >= 1, "AVSF: matrix must be at least 1x1");
  require(all_finite(m), "AVSF: refusing to write non-finite values");

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("AVSF: cannot open for writing: " + path.string());

  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<uint32_t>(m.rows()));
  put_u32(out, static_cast<uint32_t>(m.cols()));

  // row-major payload
  std::vector<float> row(static_cast<size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[static_cast<size_t>(j)] = m(i, j);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw ValidationError("AVSF: write failed: " + path.string());
}

MatF read_avsf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("AVSF: cannot open: " + path.string());

  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ValidationError("AVSF: bad magic in " + path.string());

  const uint32_t version = get_u32(in, "version");
  if (version != kVersion)
    throw ValidationError("AVSF: unsupported version " + std::to_string(version));

  const uint32_t n = get_u32(in, "n_frames");
  const uint32_t d = get_u32(in, "dim");
  require(n >= 1 && d >= 1, "AVSF: declared shape must be at least 1x1");

  MatF m(n, d);
  std::vector<float> row(d);
  for (uint32_t i = 0; i < n; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!in)
      throw ValidationError("AVSF: truncated payload in " + path.string() + " (declared " +
                            std::to_string(n) + "x" + std::to_string(d) + ")");
    for (uint32_t j = 0; j < d; ++j) m(i, j) = row[j];
  }
  // trailing bytes mean the header lied about the shape
  in.peek();
  if (!in.eof())
    throw ValidationError("AVSF: trailing bytes after declared payload in " + path.string());
  if (!all_finite(m))
    throw ValidationError("AVSF: non-finite value in " + path.string());
  return m;
}

void write_feature_file(const FeatureSequence& seq, const std::filesystem::path& path) {
  write_avsf(seq.data, path);
}

FeatureSequence read_feature_file(const std::filesystem::path& path, double fps) {
  FeatureSequence seq;
  seq.data = read_avsf(path);
  seq.video_id = path.stem().string();
  seq.fps = fps;
  return seq;
}

}  // namespace avsum::data

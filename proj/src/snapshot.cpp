#include "tmscatter/snapshot.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <vector>

namespace tmscatter {

namespace {
constexpr char kMagic[4] = {'T', 'M', 'S', 'B'};
constexpr std::uint32_t kVersion = 1;

struct Header {
  char magic[4];
  std::uint32_t version;
  std::int32_t n;
  std::int32_t n_osc;
  std::int32_t osc_only;
  std::int32_t pad;
  double k;
  double p_max;
};
}  // namespace

void save_blocks(const std::string& path, const BlockOperator& op,
                 double p_max) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ConfigError("save_blocks: cannot open " + path);
  Header h{};
  std::memcpy(h.magic, kMagic, 4);
  h.version = kVersion;
  h.n = op.n;
  h.n_osc = op.n_osc;
  h.osc_only = op.osc_only ? 1 : 0;
  h.k = op.k;
  h.p_max = p_max;
  std::fwrite(&h, sizeof h, 1, f);
  std::vector<double> buf(2 * op.n);
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj)
      for (int r = 0; r < op.n; ++r) {
        for (int c = 0; c < op.n; ++c) {
          buf[2 * c] = op.b[bi][bj](r, c).real();
          buf[2 * c + 1] = op.b[bi][bj](r, c).imag();
        }
        std::fwrite(buf.data(), sizeof(double), buf.size(), f);
      }
  std::fclose(f);
}

BlockSnapshot load_blocks(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw ConfigError("load_blocks: cannot open " + path);
  Header h{};
  if (std::fread(&h, sizeof h, 1, f) != 1 ||
      std::memcmp(h.magic, kMagic, 4) != 0 || h.version != kVersion) {
    std::fclose(f);
    throw ConfigError("load_blocks: bad header in " + path);
  }
  BlockSnapshot snap;
  snap.p_max = h.p_max;
  snap.op.n = h.n;
  snap.op.n_osc = h.n_osc;
  snap.op.k = h.k;
  snap.op.osc_only = h.osc_only != 0;
  std::vector<double> buf(2 * h.n);
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj) {
      snap.op.b[bi][bj].resize(h.n, h.n);
      for (int r = 0; r < h.n; ++r) {
        if (std::fread(buf.data(), sizeof(double), buf.size(), f) !=
            buf.size()) {
          std::fclose(f);
          throw ConfigError("load_blocks: truncated file " + path);
        }
        for (int c = 0; c < h.n; ++c)
          snap.op.b[bi][bj](r, c) = Complex(buf[2 * c], buf[2 * c + 1]);
      }
    }
  std::fclose(f);
  return snap;
}

}  // namespace tmscatter

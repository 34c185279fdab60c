#pragma once

#include <string>

#include "tmscatter/block_operator.hpp"

namespace tmscatter {

/// Binary regression snapshot of transfer-matrix blocks: a small header
/// with the grid parameters followed by the four blocks as row-major
/// (re, im) double pairs.
void save_blocks(const std::string& path, const BlockOperator& op,
                 double p_max);

struct BlockSnapshot {
  BlockOperator op;
  double p_max = 0.0;
};

BlockSnapshot load_blocks(const std::string& path);

}  // namespace tmscatter

#ifndef DCTCODEC_CODEC_HPP
#define DCTCODEC_CODEC_HPP

#include <span>
#include <vector>

#include "dctcodec/core.hpp"
#include "dctcodec/entropy.hpp"
#include "dctcodec/image_io.hpp"
#include "dctcodec/quantize.hpp"

namespace dctcodec {

enum class Subsampling { k444, k420 };

struct EncodeParams {
  int quality = 50;
  Subsampling subsampling = Subsampling::k444;
  /// Worker threads for the block stages; 0 picks the hardware concurrency.
  /// Output bytes do not depend on this value.
  int threads = 1;

  void validate() const;
};

/// A plane tiled into 8x8 blocks, row-major. The source size is kept so the
/// padding can be cropped off again.
template <typename Scalar>
struct BlockGrid {
  Index blocks_per_row = 0;
  Index blocks_per_col = 0;
  Index width = 0;
  Index height = 0;
  std::vector<Block<Scalar>> blocks;

  Block<Scalar>& at(Index block_row, Index block_col) { return blocks[block_row * blocks_per_row + block_col]; }
  const Block<Scalar>& at(Index block_row, Index block_col) const {
    return blocks[block_row * blocks_per_row + block_col];
  }
};

/// Tiles plane into 8x8 blocks, padding right and bottom by repeating the last
/// column and row. The grid is at least min_blocks_per_row x min_blocks_per_col.
template <typename Scalar>
BlockGrid<Scalar> split_into_blocks(const Plane<Scalar>& plane, Index min_blocks_per_row = 0,
                                    Index min_blocks_per_col = 0) {
  if (plane.rows() < 1 || plane.cols() < 1) throw CodecError("cannot split an empty plane");
  BlockGrid<Scalar> grid;
  grid.width = plane.cols();
  grid.height = plane.rows();
  grid.blocks_per_row = std::max((plane.cols() + kBlockSize - 1) / kBlockSize, min_blocks_per_row);
  grid.blocks_per_col = std::max((plane.rows() + kBlockSize - 1) / kBlockSize, min_blocks_per_col);
  grid.blocks.resize(static_cast<std::size_t>(grid.blocks_per_row * grid.blocks_per_col));
  for (Index br = 0; br < grid.blocks_per_col; ++br) {
    for (Index bc = 0; bc < grid.blocks_per_row; ++bc) {
      Block<Scalar>& block = grid.at(br, bc);
      for (int r = 0; r < kBlockSize; ++r) {
        const Index src_row = std::min(br * kBlockSize + r, plane.rows() - 1);
        for (int c = 0; c < kBlockSize; ++c) {
          block(r, c) = plane(src_row, std::min(bc * kBlockSize + c, plane.cols() - 1));
        }
      }
    }
  }
  return grid;
}

/// Reassembles the tiles and crops to the grid's recorded width and height.
template <typename Scalar>
Plane<Scalar> merge_blocks(const BlockGrid<Scalar>& grid) {
  Plane<Scalar> full(grid.blocks_per_col * kBlockSize, grid.blocks_per_row * kBlockSize);
  for (Index br = 0; br < grid.blocks_per_col; ++br) {
    for (Index bc = 0; bc < grid.blocks_per_row; ++bc) {
      full.template block<kBlockSize, kBlockSize>(br * kBlockSize, bc * kBlockSize) = grid.at(br, bc);
    }
  }
  return full.topLeftCorner(grid.height, grid.width);
}

enum class Resample { kDown, kUp };

/// Down: 2x2 box average (odd edges repeat the last row/column), rounded
/// half away from zero, giving ceil(w/2) x ceil(h/2). Up: 2x2 replication.
SamplePlane chroma_resample(const SamplePlane& plane, Resample factor);

/// Compresses a 1- or 3-channel raster to a baseline JFIF byte stream.
Bytes encode_image(const RasterImage& image, const EncodeParams& params = {});

/// Component planes reconstructed from a stream, upsampled to full size and
/// cropped to the frame dimensions, before any color conversion.
struct DecodedPlanes {
  Index width = 0;
  Index height = 0;
  std::vector<SamplePlane> components;
};

DecodedPlanes decode_planes(std::span<const std::uint8_t> bytes);

/// Full decode: 1 component -> grayscale, 3 components -> RGB.
RasterImage decode_image(std::span<const std::uint8_t> bytes);

/// Every intermediate of the forward pipeline for one luminance block.
struct BlockStages {
  Block<int> samples;
  Block<int> shifted;
  CoeffBlock dct;
  QuantizedBlock quantized;
  ZigzagSequence zigzag;
};

/// Runs the forward stages on block (block_row, block_col) of the first
/// component (luminance for color input).
BlockStages inspect_block(const RasterImage& image, Index block_row, Index block_col, int quality = 50);

}  // namespace dctcodec

#endif  // DCTCODEC_CODEC_HPP

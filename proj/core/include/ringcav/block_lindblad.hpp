// Copyright 2026 The ringcav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include "ringcav/hilbert.hpp"
#include "ringcav/model.hpp"

namespace ringcav {

/// Partition of the basis into blocks such that a density matrix that is
/// block diagonal stays block diagonal under a given Lindblad generator.
///
/// The finest such partition is found by union-find: basis states coupled by
/// H, by any L^dag L, or by the initial state share a block, and the images of
/// one block under every jump operator are merged until nothing changes. With
/// the cavity model this recovers the translation-charge sectors; for a
/// generic dense initial state it degenerates to a single block.
class BlockPartition {
 public:
  static BlockPartition single(Index dim);
  static BlockPartition invariant(const Operator& h, const std::vector<Jump>& jumps,
                                  const DenseMatrix& rho0);

  std::size_t size() const { return blocks_.size(); }
  Index dimension() const { return static_cast<Index>(block_of_.size()); }
  const std::vector<Index>& block(std::size_t b) const { return blocks_[b]; }
  std::size_t block_of(Index i) const { return block_of_[static_cast<std::size_t>(i)]; }
  Index position(Index i) const { return position_[static_cast<std::size_t>(i)]; }
  /// Sum of squared block sizes, i.e. stored complex entries.
  std::size_t stored_entries() const;

 private:
  explicit BlockPartition(std::vector<std::vector<Index>> blocks, Index dim);
  std::vector<std::vector<Index>> blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<Index> position_;
};

/// Block-diagonal Hermitian matrix laid out by a BlockPartition.
struct BlockDensity {
  std::vector<DenseMatrix> blocks;

  cplx trace() const;
  void hermitize();
  double max_abs() const;
};

BlockDensity gather(const BlockPartition& p, const DenseMatrix& full);
DenseMatrix scatter(const BlockPartition& p, const BlockDensity& rho);
BlockDensity zeros_like(const BlockDensity& rho);
void set_zero(BlockDensity& rho);

/// y += a * x
void axpy(BlockDensity& y, double a, const BlockDensity& x);
/// max_ij |err_ij| / (atol + rtol * max(|y0_ij|, |y1_ij|))
double scaled_error(const BlockDensity& err, const BlockDensity& y0, const BlockDensity& y1,
                    double atol, double rtol);
double max_abs_difference(const BlockDensity& a, const BlockDensity& b);

/// Lindblad generator restricted to a block partition. Inputs are assumed
/// Hermitian; the output is Hermitian by construction.
class BlockLindblad {
 public:
  BlockLindblad(BlockPartition partition, const Operator& h, const std::vector<Jump>& jumps);

  const BlockPartition& partition() const { return partition_; }
  void apply(const BlockDensity& rho, BlockDensity& out) const;
  BlockDensity apply(const BlockDensity& rho) const;

 private:
  struct Transfer {
    std::size_t src;
    std::size_t dst;
    double weight;  // 2 * rate
    SparseMatrix op;
  };
  BlockPartition partition_;
  std::vector<SparseMatrix> heff_;  // H - i sum rate L^dag L, per block
  std::vector<Transfer> transfers_;
};

}  // namespace ringcav

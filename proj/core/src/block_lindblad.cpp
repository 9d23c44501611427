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

#include "ringcav/block_lindblad.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ringcav {

namespace {

class UnionFind {
 public:
  explicit UnionFind(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index i) {
    auto k = static_cast<std::size_t>(i);
    while (parent_[k] != static_cast<Index>(k)) {
      parent_[k] = parent_[static_cast<std::size_t>(parent_[k])];
      k = static_cast<std::size_t>(parent_[k]);
    }
    return static_cast<Index>(k);
  }
  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[static_cast<std::size_t>(a)] = b;
    return true;
  }

 private:
  std::vector<Index> parent_;
};

void unite_pattern(UnionFind& uf, const SparseMatrix& m) {
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      if (it.value() != cplx(0.0)) uf.unite(it.row(), it.col());
}

}  // namespace

BlockPartition::BlockPartition(std::vector<std::vector<Index>> blocks, Index dim)
    : blocks_(std::move(blocks)),
      block_of_(static_cast<std::size_t>(dim)),
      position_(static_cast<std::size_t>(dim)) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (std::size_t p = 0; p < blocks_[b].size(); ++p) {
      const auto i = static_cast<std::size_t>(blocks_[b][p]);
      block_of_[i] = b;
      position_[i] = static_cast<Index>(p);
    }
  }
}

BlockPartition BlockPartition::single(Index dim) {
  std::vector<Index> all(static_cast<std::size_t>(dim));
  std::iota(all.begin(), all.end(), Index{0});
  return BlockPartition({std::move(all)}, dim);
}

BlockPartition BlockPartition::invariant(const Operator& h, const std::vector<Jump>& jumps,
                                         const DenseMatrix& rho0) {
  const Index dim = h.dimension();
  if (rho0.rows() != dim || rho0.cols() != dim)
    throw std::invalid_argument("BlockPartition: initial state dimension mismatch");
  UnionFind uf(dim);
  unite_pattern(uf, h.data);
  for (const Jump& j : jumps) {
    if (j.op.dimension() != dim)
      throw std::invalid_argument("BlockPartition: jump dimension mismatch");
    unite_pattern(uf, SparseMatrix(j.op.data.adjoint() * j.op.data));
  }
  for (Index c = 0; c < dim; ++c)
    for (Index r = c + 1; r < dim; ++r)
      if (rho0(r, c) != cplx(0.0) || rho0(c, r) != cplx(0.0)) uf.unite(r, c);

  // Close the partition under the jump maps: everything one block is mapped
  // to must land in a single block.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Jump& j : jumps) {
      std::map<Index, Index> image_of_root;
      for (Index c = 0; c < j.op.data.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(j.op.data, c); it; ++it) {
          if (it.value() == cplx(0.0)) continue;
          const Index root = uf.find(it.col());
          auto [pos, inserted] = image_of_root.try_emplace(root, it.row());
          if (!inserted && uf.unite(pos->second, it.row())) changed = true;
        }
      }
    }
  }

  std::map<Index, std::vector<Index>> by_root;
  for (Index i = 0; i < dim; ++i) by_root[uf.find(i)].push_back(i);
  std::vector<std::vector<Index>> blocks;
  blocks.reserve(by_root.size());
  for (auto& [root, members] : by_root) blocks.push_back(std::move(members));
  return BlockPartition(std::move(blocks), dim);
}

std::size_t BlockPartition::stored_entries() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.size() * b.size();
  return n;
}

cplx BlockDensity::trace() const {
  cplx t = 0.0;
  for (const auto& b : blocks) t += b.trace();
  return t;
}

void BlockDensity::hermitize() {
  for (auto& b : blocks) {
    DenseMatrix sym = 0.5 * (b + b.adjoint());
    b = std::move(sym);
  }
}

double BlockDensity::max_abs() const {
  double m = 0.0;
  for (const auto& b : blocks)
    if (b.size() > 0) m = std::max(m, b.cwiseAbs().maxCoeff());
  return m;
}

BlockDensity gather(const BlockPartition& p, const DenseMatrix& full) {
  BlockDensity out;
  out.blocks.resize(p.size());
  for (std::size_t b = 0; b < p.size(); ++b) {
    const auto& idx = p.block(b);
    const auto n = static_cast<Index>(idx.size());
    DenseMatrix m(n, n);
    for (Index c = 0; c < n; ++c)
      for (Index r = 0; r < n; ++r) m(r, c) = full(idx[static_cast<std::size_t>(r)],
                                                   idx[static_cast<std::size_t>(c)]);
    out.blocks[b] = std::move(m);
  }
  return out;
}

DenseMatrix scatter(const BlockPartition& p, const BlockDensity& rho) {
  DenseMatrix full = DenseMatrix::Zero(p.dimension(), p.dimension());
  for (std::size_t b = 0; b < p.size(); ++b) {
    const auto& idx = p.block(b);
    const auto n = static_cast<Index>(idx.size());
    for (Index c = 0; c < n; ++c)
      for (Index r = 0; r < n; ++r)
        full(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]) =
            rho.blocks[b](r, c);
  }
  return full;
}

BlockDensity zeros_like(const BlockDensity& rho) {
  BlockDensity out;
  out.blocks.reserve(rho.blocks.size());
  for (const auto& b : rho.blocks) out.blocks.push_back(DenseMatrix::Zero(b.rows(), b.cols()));
  return out;
}

void set_zero(BlockDensity& rho) {
  for (auto& b : rho.blocks) b.setZero();
}

void axpy(BlockDensity& y, double a, const BlockDensity& x) {
  for (std::size_t b = 0; b < y.blocks.size(); ++b) y.blocks[b] += a * x.blocks[b];
}

double scaled_error(const BlockDensity& err, const BlockDensity& y0, const BlockDensity& y1,
                    double atol, double rtol) {
  double worst = 0.0;
  for (std::size_t b = 0; b < err.blocks.size(); ++b) {
    const auto& e = err.blocks[b];
    const auto& a = y0.blocks[b];
    const auto& c = y1.blocks[b];
    for (Index k = 0; k < e.size(); ++k) {
      const double scale =
          atol + rtol * std::max(std::abs(a.data()[k]), std::abs(c.data()[k]));
      worst = std::max(worst, std::abs(e.data()[k]) / scale);
    }
  }
  return worst;
}

double max_abs_difference(const BlockDensity& a, const BlockDensity& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k)
    if (a.blocks[k].size() > 0)
      m = std::max(m, (a.blocks[k] - b.blocks[k]).cwiseAbs().maxCoeff());
  return m;
}

BlockLindblad::BlockLindblad(BlockPartition partition, const Operator& h,
                             const std::vector<Jump>& jumps)
    : partition_(std::move(partition)) {
  const std::size_t nb = partition_.size();
  std::vector<std::vector<Triplet>> heff_t(nb);

  auto add_in_block = [&](Index r, Index c, cplx v, const char* what) {
    const std::size_t b = partition_.block_of(r);
    if (partition_.block_of(c) != b)
      throw std::logic_error(std::string("BlockLindblad: ") + what + " couples two blocks");
    heff_t[b].emplace_back(partition_.position(r), partition_.position(c), v);
  };

  for (Index k = 0; k < h.data.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(h.data, k); it; ++it)
      if (it.value() != cplx(0.0)) add_in_block(it.row(), it.col(), it.value(), "H");

  const cplx i(0.0, 1.0);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Triplet>> transfer_t;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> transfer_dst;
  for (std::size_t jn = 0; jn < jumps.size(); ++jn) {
    const Jump& j = jumps[jn];
    const SparseMatrix ldl = j.op.data.adjoint() * j.op.data;
    for (Index k = 0; k < ldl.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(ldl, k); it; ++it)
        if (it.value() != cplx(0.0))
          add_in_block(it.row(), it.col(), -i * j.rate * it.value(), "L^dag L");
    for (Index c = 0; c < j.op.data.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(j.op.data, c); it; ++it) {
        if (it.value() == cplx(0.0)) continue;
        const std::size_t src = partition_.block_of(it.col());
        const std::size_t dst = partition_.block_of(it.row());
        const auto key = std::make_pair(jn, src);
        auto [pos, inserted] = transfer_dst.try_emplace(key, dst);
        if (!inserted && pos->second != dst)
          throw std::logic_error("BlockLindblad: jump splits a block");
        transfer_t[key].emplace_back(partition_.position(it.row()),
                                     partition_.position(it.col()), it.value());
      }
    }
  }

  heff_.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const auto n = static_cast<Index>(partition_.block(b).size());
    heff_[b].resize(n, n);
    heff_[b].setFromTriplets(heff_t[b].begin(), heff_t[b].end());
  }
  for (auto& [key, trips] : transfer_t) {
    const std::size_t src = key.second;
    const std::size_t dst = transfer_dst.at(key);
    SparseMatrix op(static_cast<Index>(partition_.block(dst).size()),
                    static_cast<Index>(partition_.block(src).size()));
    op.setFromTriplets(trips.begin(), trips.end());
    transfers_.push_back(Transfer{src, dst, 2.0 * jumps[key.first].rate, std::move(op)});
  }
}

void BlockLindblad::apply(const BlockDensity& rho, BlockDensity& out) const {
  const cplx i(0.0, 1.0);
  if (out.blocks.size() != rho.blocks.size()) out = zeros_like(rho);
  for (std::size_t b = 0; b < heff_.size(); ++b) {
    // -i Heff rho + i rho Heff^dag = X + X^dag with X = -i Heff rho.
    DenseMatrix x = -i * (heff_[b] * rho.blocks[b]);
    out.blocks[b] = x + x.adjoint();
  }
  for (const Transfer& t : transfers_) {
    const DenseMatrix lr = t.op * rho.blocks[t.src];
    // L rho L^dag = L (L rho)^dag for Hermitian rho.
    DenseMatrix lrl = t.op * lr.adjoint();
    out.blocks[t.dst] += (0.5 * t.weight) * (lrl + lrl.adjoint());
  }
}

BlockDensity BlockLindblad::apply(const BlockDensity& rho) const {
  BlockDensity out;
  apply(rho, out);
  return out;
}

}  // namespace ringcav

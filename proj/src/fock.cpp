// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/fock.hpp"

#include <array>
#include <mutex>
#include <string>

#include "fc/errors.hpp"

namespace fc {

namespace {

using BinomialTable = std::array<std::array<std::uint64_t, kMaxOrbitals + 1>, kMaxOrbitals + 1>;

const BinomialTable& binomials() {
  static const BinomialTable table = [] {
    BinomialTable t{};
    for (int n = 0; n <= kMaxOrbitals; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

constexpr std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Mask of orbitals strictly between a and b.
constexpr std::uint64_t between_mask(int a, int b) {
  if (a > b) std::swap(a, b);
  if (b - a < 2) return 0;
  return low_mask(b) & ~low_mask(a + 1);
}

// Colex rank of a k-subset of [0, n) given as a bit word.
std::uint64_t subset_rank(std::uint64_t bits) {
  const auto& c = binomials();
  std::uint64_t r = 0;
  int k = 1;
  while (bits) {
    const int pos = std::countr_zero(bits);
    r += c[pos][k];
    bits &= bits - 1;
    ++k;
  }
  return r;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > kMaxOrbitals || k < 0 || k > n) return 0;
  return binomials()[n][k];
}

int hop_sign(Occupation occ, int create, int annihilate) {
  if (!occ.occupied(annihilate)) return 0;
  if (create == annihilate) return 1;
  if (occ.occupied(create)) return 0;
  return (std::popcount(occ.bits & between_mask(create, annihilate)) & 1) ? -1 : 1;
}

namespace detail {

struct SectorData {
  std::vector<OrbitalBlock> blocks;
  std::vector<std::size_t> strides;  // mixed-radix weights, block 0 fastest
  int n_orbitals = 0;
  int n_particles = 0;
  std::size_t dimension = 1;
  std::vector<Occupation> occupations;

  mutable std::once_flag hop_once;
  mutable HopTable hops;
};

}  // namespace detail

namespace {

std::vector<Occupation> enumerate_block(const OrbitalBlock& b) {
  // Gosper's hack walks k-subsets in ascending numeric order, which matches
  // the colex rank order.
  std::vector<Occupation> out;
  out.reserve(binomial(b.size, b.particles));
  if (b.particles == 0) {
    out.push_back({0});
    return out;
  }
  std::uint64_t v = low_mask(b.particles);
  const std::uint64_t limit = low_mask(b.size);
  while (true) {
    out.push_back({v << b.first});
    if (v == (limit & ~low_mask(b.size - b.particles))) break;
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

}  // namespace

FockSector::FockSector(std::vector<OrbitalBlock> blocks) {
  if (blocks.empty()) throw InvalidArgument("sector needs at least one orbital block");
  auto data = std::make_shared<detail::SectorData>();
  int next = 0;
  long double dim = 1;
  for (const auto& b : blocks) {
    if (b.first != next) throw InvalidArgument("orbital blocks must be contiguous from orbital 0");
    if (b.size < 0 || b.particles < 0 || b.particles > b.size)
      throw InvalidArgument("invalid orbital block (size " + std::to_string(b.size) +
                            ", particles " + std::to_string(b.particles) + ")");
    next += b.size;
    if (next > kMaxOrbitals)
      throw CapacityError("sector exceeds " + std::to_string(kMaxOrbitals) + " orbitals");
    dim *= static_cast<long double>(binomial(b.size, b.particles));
    data->n_particles += b.particles;
  }
  if (next == 0) throw InvalidArgument("sector needs at least one orbital");
  if (dim > static_cast<long double>(kMaxSectorDimension))
    throw CapacityError("sector dimension exceeds the supported maximum");
  data->n_orbitals = next;
  data->blocks = std::move(blocks);

  std::size_t stride = 1;
  std::vector<std::vector<Occupation>> per_block;
  for (const auto& b : data->blocks) {
    data->strides.push_back(stride);
    per_block.push_back(enumerate_block(b));
    stride *= per_block.back().size();
  }
  data->dimension = stride;

  // Mixed radix with block 0 fastest equals ascending order of the full word
  // because later blocks occupy more significant bits.
  data->occupations.resize(data->dimension);
  for (std::size_t k = 0; k < data->dimension; ++k) {
    std::uint64_t bits = 0;
    std::size_t rem = k;
    for (const auto& list : per_block) {
      bits |= list[rem % list.size()].bits;
      rem /= list.size();
    }
    data->occupations[k] = {bits};
  }
  data_ = std::move(data);
}

FockSector enumerate_sector(int n_orbitals, int n_particles) {
  if (n_orbitals > kMaxOrbitals)
    throw CapacityError("at most " + std::to_string(kMaxOrbitals) + " orbitals are supported");
  if (n_orbitals < 1 || n_particles < 0 || n_particles > n_orbitals)
    throw InvalidArgument("require 0 <= n_particles <= n_orbitals and n_orbitals >= 1");
  return FockSector({OrbitalBlock{0, n_orbitals, n_particles}});
}

int FockSector::n_orbitals() const { return data_->n_orbitals; }
int FockSector::n_particles() const { return data_->n_particles; }
std::size_t FockSector::dimension() const { return data_->dimension; }
std::span<const OrbitalBlock> FockSector::blocks() const { return data_->blocks; }
std::span<const Occupation> FockSector::occupations() const { return data_->occupations; }

Occupation FockSector::unrank(std::size_t rank) const {
  if (rank >= data_->dimension) throw InvalidArgument("rank out of range");
  return data_->occupations[rank];
}

bool FockSector::contains(Occupation occ) const {
  if (data_->n_orbitals < 64 && (occ.bits >> data_->n_orbitals) != 0) return false;
  for (const auto& b : data_->blocks) {
    if (std::popcount((occ.bits >> b.first) & low_mask(b.size)) != b.particles) return false;
  }
  return true;
}

std::size_t FockSector::rank(Occupation occ) const {
  if (!contains(occ)) throw SectorMismatch("occupation is not in this sector");
  std::size_t r = 0;
  for (std::size_t i = 0; i < data_->blocks.size(); ++i) {
    const auto& b = data_->blocks[i];
    r += data_->strides[i] * subset_rank((occ.bits >> b.first) & low_mask(b.size));
  }
  return r;
}

int FockSector::block_of(int orbital) const {
  for (std::size_t i = 0; i < data_->blocks.size(); ++i) {
    const auto& b = data_->blocks[i];
    if (orbital >= b.first && orbital < b.first + b.size) return static_cast<int>(i);
  }
  throw InvalidArgument("orbital index out of range");
}

namespace {

template <typename Fn>
void for_each_hop(const FockSector& sector, Occupation target, Fn&& fn) {
  // Gather form: enumerate sources S with c†_i c_j S = target, i.e. i in
  // target, j empty in target, both in one block.
  for (const auto& b : sector.blocks()) {
    for (int i = b.first; i < b.first + b.size; ++i) {
      if (!target.occupied(i)) continue;
      for (int j = b.first; j < b.first + b.size; ++j) {
        if (target.occupied(j)) continue;
        const Occupation source{(target.bits & ~(std::uint64_t{1} << i)) | (std::uint64_t{1} << j)};
        const int sign = (std::popcount(target.bits & between_mask(i, j)) & 1) ? -1 : 1;
        fn(source, i, j, sign);
      }
    }
  }
}

std::size_t hops_per_row(const FockSector& sector) {
  std::size_t n = 0;
  for (const auto& b : sector.blocks()) n += static_cast<std::size_t>(b.particles) * (b.size - b.particles);
  return n;
}

}  // namespace

const HopTable& FockSector::hop_table() const {
  std::call_once(data_->hop_once, [this] {
    auto& t = data_->hops;
    t.hops_per_row = hops_per_row(*this);
    t.entries.reserve(t.hops_per_row * data_->dimension);
    for (std::size_t r = 0; r < data_->dimension; ++r) {
      for_each_hop(*this, data_->occupations[r], [&](Occupation src, int i, int j, int sign) {
        t.entries.push_back({static_cast<std::uint32_t>(rank(src)), static_cast<std::uint8_t>(i),
                             static_cast<std::uint8_t>(j), static_cast<std::int8_t>(sign)});
      });
    }
  });
  return data_->hops;
}

bool operator==(const FockSector& a, const FockSector& b) {
  return a.data_ == b.data_ || a.data_->blocks == b.data_->blocks;
}

// ---------------------------------------------------------------------------

ManyBodyState::ManyBodyState(FockSector sector, Vector amplitudes)
    : sector_(std::move(sector)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != sector_.dimension())
    throw SectorMismatch("amplitude vector length does not match sector dimension");
}

ManyBodyState ManyBodyState::basis_state(FockSector sector, std::size_t rank) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(sector.dimension()));
  if (rank >= sector.dimension()) throw InvalidArgument("rank out of range");
  v[static_cast<Eigen::Index>(rank)] = 1.0;
  return {std::move(sector), std::move(v)};
}

ManyBodyState ManyBodyState::from_occupation(FockSector sector, Occupation occ) {
  const std::size_t r = sector.rank(occ);
  return basis_state(std::move(sector), r);
}

ManyBodyState ManyBodyState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
  return {sector_, amplitudes_ / n};
}

ManyBodyState apply_hop(const ManyBodyState& state, int i, int j, Complex amplitude) {
  const auto& sector = state.sector();
  const int no = sector.n_orbitals();
  if (i < 0 || j < 0 || i >= no || j >= no) throw InvalidArgument("orbital index out of range");
  Vector out = Vector::Zero(state.amplitudes().size());
  const auto occs = sector.occupations();
  const bool same_block = sector.block_of(i) == sector.block_of(j);
  for (std::size_t r = 0; r < occs.size(); ++r) {
    const Complex a = state.amplitudes()[static_cast<Eigen::Index>(r)];
    if (a == Complex{}) continue;
    const int sign = hop_sign(occs[r], i, j);
    if (sign == 0) continue;
    if (!same_block) throw SectorMismatch("hop between blocks leaves the sector");
    const Occupation target{(occs[r].bits & ~(std::uint64_t{1} << j)) | (std::uint64_t{1} << i)};
    out[static_cast<Eigen::Index>(sector.rank(target))] += amplitude * static_cast<double>(sign) * a;
  }
  return {sector, std::move(out)};
}

// ---------------------------------------------------------------------------

SparseOperator::SparseOperator(FockSector sector, Csr matrix, bool hermitian)
    : sector_(std::move(sector)), matrix_(std::move(matrix)), hermitian_(hermitian) {
  const auto q = static_cast<Eigen::Index>(sector_.dimension());
  if (matrix_.rows() != q || matrix_.cols() != q)
    throw SectorMismatch("operator shape does not match sector dimension");
  matrix_.makeCompressed();
}

SparseOperator SparseOperator::from_triplets(FockSector sector,
                                             const std::vector<Eigen::Triplet<Complex>>& triplets,
                                             bool hermitian) {
  const auto q = static_cast<Eigen::Index>(sector.dimension());
  Csr m(q, q);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return {std::move(sector), std::move(m), hermitian};
}

SparseOperator SparseOperator::identity(FockSector sector) {
  const auto q = static_cast<Eigen::Index>(sector.dimension());
  Csr m(q, q);
  m.setIdentity();
  return {std::move(sector), std::move(m), true};
}

void SparseOperator::apply(const Vector& in, Vector& out) const {
  if (in.size() != matrix_.cols()) throw SectorMismatch("vector length does not match operator");
  out.noalias() = matrix_ * in;
}

Matrix SparseOperator::to_dense() const { return Matrix(matrix_); }

// ---------------------------------------------------------------------------

OneBodyOperator::OneBodyOperator(FockSector sector, const Matrix& a, double shift, Storage storage)
    : sector_(std::move(sector)), a_(a), shift_(shift) {
  const int no = sector_.n_orbitals();
  if (a.rows() != no || a.cols() != no)
    throw SectorMismatch("one-body matrix dimension does not match the sector's orbital count");
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j)
      if (a(i, j) != Complex{} && sector_.block_of(i) != sector_.block_of(j))
        throw SectorMismatch("one-body matrix mixes orbital blocks whose particle numbers are conserved");

  switch (storage) {
    case Storage::table: use_table_ = true; break;
    case Storage::on_the_fly: use_table_ = false; break;
    case Storage::automatic: use_table_ = sector_.dimension() <= kHopTableThreshold; break;
  }

  const auto occs = sector_.occupations();
  diagonal_.resize(static_cast<Eigen::Index>(occs.size()));
  for (std::size_t r = 0; r < occs.size(); ++r) {
    Complex d = -shift_;
    for (std::uint64_t bits = occs[r].bits; bits; bits &= bits - 1) {
      const int i = std::countr_zero(bits);
      d += a_(i, i);
    }
    diagonal_[static_cast<Eigen::Index>(r)] = d;
  }

  if (use_table_) {
    const auto& table = sector_.hop_table();
    coefficients_.resize(table.entries.size());
    for (std::size_t e = 0; e < table.entries.size(); ++e) {
      const auto& h = table.entries[e];
      coefficients_[e] = static_cast<double>(h.sign) * a_(h.create, h.annihilate);
    }
  }
}

void OneBodyOperator::apply(const Vector& in, Vector& out) const {
  const auto q = static_cast<Eigen::Index>(sector_.dimension());
  if (in.size() != q) throw SectorMismatch("vector length does not match operator");
  out.resize(q);
  if (use_table_) {
    const auto& table = sector_.hop_table();
    const std::size_t per_row = table.hops_per_row;
    const HopEntry* entry = table.entries.data();
    const Complex* coef = coefficients_.data();
    for (Eigen::Index r = 0; r < q; ++r) {
      Complex acc = diagonal_[r] * in[r];
      for (std::size_t k = 0; k < per_row; ++k, ++entry, ++coef) acc += *coef * in[entry->column];
      out[r] = acc;
    }
    return;
  }
  const auto occs = sector_.occupations();
  for (Eigen::Index r = 0; r < q; ++r) {
    Complex acc = diagonal_[r] * in[r];
    for_each_hop(sector_, occs[static_cast<std::size_t>(r)], [&](Occupation src, int i, int j, int sign) {
      const Complex aij = a_(i, j);
      if (aij != Complex{})
        acc += static_cast<double>(sign) * aij * in[static_cast<Eigen::Index>(sector_.rank(src))];
    });
    out[r] = acc;
  }
}

SparseOperator OneBodyOperator::to_sparse() const {
  std::vector<Eigen::Triplet<Complex>> triplets;
  const auto occs = sector_.occupations();
  for (std::size_t r = 0; r < occs.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    triplets.emplace_back(row, row, diagonal_[row]);
    for_each_hop(sector_, occs[r], [&](Occupation src, int i, int j, int sign) {
      const Complex aij = a_(i, j);
      if (aij != Complex{})
        triplets.emplace_back(row, static_cast<Eigen::Index>(sector_.rank(src)),
                              static_cast<double>(sign) * aij);
    });
  }
  const bool hermitian = (a_ - a_.adjoint()).cwiseAbs().maxCoeff() < 1e-12;
  return SparseOperator::from_triplets(sector_, triplets, hermitian);
}

ManyBodyState matvec(const SparseOperator& op, const ManyBodyState& state) {
  if (!(op.sector() == state.sector())) throw SectorMismatch("operator and state sectors differ");
  Vector out;
  op.apply(state.amplitudes(), out);
  return {state.sector(), std::move(out)};
}

ManyBodyState matvec(const OneBodyOperator& op, const ManyBodyState& state) {
  if (!(op.sector() == state.sector())) throw SectorMismatch("operator and state sectors differ");
  Vector out;
  op.apply(state.amplitudes(), out);
  return {state.sector(), std::move(out)};
}

Matrix one_body_transition(const FockSector& sector, const Vector& bra, const Vector& ket) {
  const auto q = static_cast<Eigen::Index>(sector.dimension());
  if (bra.size() != q || ket.size() != q) throw SectorMismatch("vector length does not match sector");
  const int no = sector.n_orbitals();
  Matrix m = Matrix::Zero(no, no);
  const auto occs = sector.occupations();

  for (Eigen::Index r = 0; r < q; ++r) {
    const Complex w = std::conj(bra[r]) * ket[r];
    if (w == Complex{}) continue;
    for (std::uint64_t bits = occs[static_cast<std::size_t>(r)].bits; bits; bits &= bits - 1)
      m(std::countr_zero(bits), std::countr_zero(bits)) += w;
  }

  if (sector.dimension() <= kHopTableThreshold) {
    const auto& table = sector.hop_table();
    for (Eigen::Index r = 0; r < q; ++r) {
      const Complex b = std::conj(bra[r]);
      if (b == Complex{}) continue;
      for (const auto& h : table.row(static_cast<std::size_t>(r)))
        m(h.create, h.annihilate) += b * static_cast<double>(h.sign) * ket[h.column];
    }
  } else {
    for (Eigen::Index r = 0; r < q; ++r) {
      const Complex b = std::conj(bra[r]);
      if (b == Complex{}) continue;
      for_each_hop(sector, occs[static_cast<std::size_t>(r)], [&](Occupation src, int i, int j, int sign) {
        m(i, j) += b * static_cast<double>(sign) * ket[static_cast<Eigen::Index>(sector.rank(src))];
      });
    }
  }
  return m;
}

ManyBodyState embed_in_plain_sector(const ManyBodyState& state) {
  const auto& src = state.sector();
  if (src.is_plain()) return state;
  FockSector plain = enumerate_sector(src.n_orbitals(), src.n_particles());
  Vector out = Vector::Zero(static_cast<Eigen::Index>(plain.dimension()));
  const auto occs = src.occupations();
  for (std::size_t r = 0; r < occs.size(); ++r)
    out[static_cast<Eigen::Index>(plain.rank(occs[r]))] = state.amplitudes()[static_cast<Eigen::Index>(r)];
  return {std::move(plain), std::move(out)};
}

}  // namespace fc

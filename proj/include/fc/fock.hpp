// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// Fixed-particle-number Fock sectors, many-body states over them, and the
// elementary number-conserving operators acting on those states.
//
// Conventions used throughout the library:
//  * Orbital 0 is the least-significant bit of an occupation word.
//  * A basis state |S> with occupied orbitals s_1 < s_2 < ... < s_k is
//    c†_{s_k} ... c†_{s_2} c†_{s_1} |0>, i.e. creation operators in
//    descending orbital order from the left.
//  * With that ordering the sign of c†_i c_j acting on |S> is the parity of
//    the number of occupied orbitals strictly between i and j.

#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace fc {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxOrbitals = 64;
inline constexpr std::size_t kMaxSectorDimension = std::size_t{1} << 30;
/// Above this dimension one-body operators generate their matrix elements on
/// the fly instead of reading a stored hop table.
inline constexpr std::size_t kHopTableThreshold = 100000;

/// Occupation bitstring; orbital i is occupied iff bit i is set.
struct Occupation {
  std::uint64_t bits = 0;

  constexpr bool occupied(int orbital) const { return (bits >> orbital) & 1U; }
  constexpr int count() const { return std::popcount(bits); }
  friend constexpr auto operator<=>(const Occupation&, const Occupation&) = default;
};

/// Contiguous range of orbitals holding a separately conserved particle
/// number (e.g. one spin species).
struct OrbitalBlock {
  int first = 0;
  int size = 0;
  int particles = 0;

  friend bool operator==(const OrbitalBlock&, const OrbitalBlock&) = default;
};

/// One gathered matrix element of c†_create c_annihilate: the target row
/// receives sign * in[column].
struct HopEntry {
  std::uint32_t column;
  std::uint8_t create;
  std::uint8_t annihilate;
  std::int8_t sign;
};

/// Every basis row of a sector has the same number of single hops, so the
/// table is a dense Q x hops_per_row array.
struct HopTable {
  std::size_t hops_per_row = 0;
  std::vector<HopEntry> entries;

  std::span<const HopEntry> row(std::size_t r) const {
    return {entries.data() + r * hops_per_row, hops_per_row};
  }
};

namespace detail {
struct SectorData;
}

/// A fixed-particle-number sector of Fock space, optionally a product of
/// blocks with separately fixed particle numbers. Basis states are ordered
/// by ascending occupation word; within a block the rank is given by the
/// combinatorial number system. Immutable and cheap to copy.
class FockSector {
 public:
  explicit FockSector(std::vector<OrbitalBlock> blocks);

  int n_orbitals() const;
  int n_particles() const;
  std::size_t dimension() const;
  std::span<const OrbitalBlock> blocks() const;
  bool is_plain() const { return blocks().size() == 1; }

  std::span<const Occupation> occupations() const;
  Occupation unrank(std::size_t rank) const;
  /// Throws SectorMismatch when the occupation is not part of the sector.
  std::size_t rank(Occupation occ) const;
  bool contains(Occupation occ) const;

  /// Index of the block owning an orbital.
  int block_of(int orbital) const;

  /// Single-hop table, built on first use (thread-safe).
  const HopTable& hop_table() const;

  friend bool operator==(const FockSector& a, const FockSector& b);

 private:
  std::shared_ptr<const detail::SectorData> data_;
};

/// Plain sector of n_particles fermions in n_orbitals orbitals.
FockSector enumerate_sector(int n_orbitals, int n_particles);

std::uint64_t binomial(int n, int k);

/// Sign of c†_create c_annihilate on `occ`; 0 when the result vanishes.
int hop_sign(Occupation occ, int create, int annihilate);

/// Complex amplitude vector over a sector, indexed by basis rank.
class ManyBodyState {
 public:
  ManyBodyState(FockSector sector, Vector amplitudes);

  static ManyBodyState basis_state(FockSector sector, std::size_t rank);
  static ManyBodyState from_occupation(FockSector sector, Occupation occ);

  const FockSector& sector() const { return sector_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Vector& amplitudes() { return amplitudes_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }

  double norm() const { return amplitudes_.norm(); }
  ManyBodyState normalized() const;

 private:
  FockSector sector_;
  Vector amplitudes_;
};

/// amplitude * c†_i c_j |state>, unnormalized.
ManyBodyState apply_hop(const ManyBodyState& state, int i, int j, Complex amplitude = 1.0);

/// Materialized sparse operator on a sector.
class SparseOperator {
 public:
  using Csr = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

  SparseOperator(FockSector sector, Csr matrix, bool hermitian);
  static SparseOperator from_triplets(FockSector sector,
                                      const std::vector<Eigen::Triplet<Complex>>& triplets,
                                      bool hermitian);
  static SparseOperator identity(FockSector sector);

  const FockSector& sector() const { return sector_; }
  const Csr& matrix() const { return matrix_; }
  bool is_hermitian() const { return hermitian_; }
  std::size_t dimension() const { return sector_.dimension(); }

  void apply(const Vector& in, Vector& out) const;
  Matrix to_dense() const;

 private:
  FockSector sector_;
  Csr matrix_;
  bool hermitian_;
};

/// The many-body image  Σ_ij A_ij c†_i c_j - shift  of a single-particle
/// matrix A. Only entries of A inside one sector block may be nonzero.
class OneBodyOperator {
 public:
  enum class Storage { automatic, table, on_the_fly };

  OneBodyOperator(FockSector sector, const Matrix& a, double shift = 0.0,
                  Storage storage = Storage::automatic);

  const FockSector& sector() const { return sector_; }
  bool uses_table() const { return use_table_; }
  void apply(const Vector& in, Vector& out) const;
  /// Materializes the operator (for tests and small sectors).
  SparseOperator to_sparse() const;

 private:
  FockSector sector_;
  Matrix a_;
  double shift_;
  bool use_table_;
  Eigen::VectorXcd diagonal_;
  std::vector<Complex> coefficients_;  // per hop-table entry, when tabulated
};

ManyBodyState matvec(const SparseOperator& op, const ManyBodyState& state);
ManyBodyState matvec(const OneBodyOperator& op, const ManyBodyState& state);

/// M_ij = <bra| c†_i c_j |ket> for two vectors over the same sector.
Matrix one_body_transition(const FockSector& sector, const Vector& bra, const Vector& ket);

/// Re-expresses a state of a product sector in the plain sector with the
/// same total particle number.
ManyBodyState embed_in_plain_sector(const ManyBodyState& state);

}  // namespace fc

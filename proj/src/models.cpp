// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/models.hpp"

#include <string>

#include "fc/errors.hpp"

namespace fc {

ModelSpec ModelSpec::hubbard(int length, double hopping, double u, int n_up, int n_dn,
                             Boundary boundary) {
  ModelSpec s;
  s.kind = ModelKind::hubbard;
  s.length = length;
  s.hopping = hopping;
  s.interaction = u;
  s.n_up = n_up;
  s.n_dn = n_dn;
  s.boundary = boundary;
  s.validate();
  return s;
}

ModelSpec ModelSpec::tv(int length, double hopping, double v, int n_particles, Boundary boundary) {
  ModelSpec s;
  s.kind = ModelKind::tv;
  s.length = length;
  s.hopping = hopping;
  s.interaction = v;
  s.n_particles = n_particles;
  s.boundary = boundary;
  s.validate();
  return s;
}

int ModelSpec::n_orbitals() const { return kind == ModelKind::hubbard ? 2 * length : length; }

int ModelSpec::total_particles() const {
  return kind == ModelKind::hubbard ? n_up + n_dn : n_particles;
}

void ModelSpec::validate() const {
  if (length < 2) throw InvalidArgument("lattice length must be at least 2");
  // A periodic two-site ring would count its single bond twice.
  if (boundary == Boundary::periodic && length < 3)
    throw InvalidArgument("periodic boundaries need at least 3 sites; use open boundaries for L = 2");
  if (n_orbitals() > kMaxOrbitals) throw CapacityError("model exceeds 64 orbitals");
  if (kind == ModelKind::hubbard) {
    if (n_up < 0 || n_up > length || n_dn < 0 || n_dn > length)
      throw InvalidArgument("invalid Hubbard filling");
  } else if (n_particles < 0 || n_particles > length) {
    throw InvalidArgument("invalid t-V filling");
  }
}

FockSector ModelSpec::sector() const {
  validate();
  if (kind == ModelKind::hubbard)
    return FockSector({OrbitalBlock{0, length, n_up}, OrbitalBlock{length, length, n_dn}});
  return enumerate_sector(length, n_particles);
}

std::vector<std::pair<int, int>> ModelSpec::bonds() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i + 1 < length; ++i) out.emplace_back(i, i + 1);
  if (boundary == Boundary::periodic) out.emplace_back(length - 1, 0);
  return out;
}

std::string to_string(ModelKind kind) { return kind == ModelKind::hubbard ? "hubbard" : "tv"; }

std::string ModelSpec::name() const { return to_string(kind); }

namespace {

void check_sector(const ModelSpec& spec, const FockSector& sector) {
  spec.validate();
  if (sector.n_orbitals() != spec.n_orbitals() || sector.n_particles() != spec.total_particles())
    throw InvalidArgument("sector does not match the model's orbitals and filling");
  if (!sector.is_plain() && !(sector == spec.sector()))
    throw InvalidArgument("product sector does not match the model's spin filling");
}

int species(const ModelSpec& spec) { return spec.kind == ModelKind::hubbard ? 2 : 1; }

}  // namespace

SparseOperator build_hamiltonian(const ModelSpec& spec, const FockSector& sector) {
  check_sector(spec, sector);
  const int l = spec.length;
  const auto bonds = spec.bonds();
  const auto occs = sector.occupations();
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(occs.size() * (1 + 2 * bonds.size() * species(spec)));

  for (std::size_t c = 0; c < occs.size(); ++c) {
    const Occupation s = occs[c];
    const auto col = static_cast<Eigen::Index>(c);

    double diag = 0.0;
    if (spec.kind == ModelKind::hubbard) {
      for (int site = 0; site < l; ++site)
        if (s.occupied(site) && s.occupied(site + l)) diag += spec.interaction;
    } else {
      for (auto [a, b] : bonds)
        if (s.occupied(a) && s.occupied(b)) diag += spec.interaction;
    }
    if (diag != 0.0) triplets.emplace_back(col, col, diag);

    for (int sigma = 0; sigma < species(spec); ++sigma) {
      for (auto [a, b] : bonds) {
        const int i = a + l * sigma;
        const int j = b + l * sigma;
        // t (c†_i c_j + c†_j c_i)
        for (auto [cr, an] : {std::pair{i, j}, std::pair{j, i}}) {
          const int sign = hop_sign(s, cr, an);
          if (sign == 0 || cr == an) continue;
          const Occupation t{(s.bits & ~(std::uint64_t{1} << an)) | (std::uint64_t{1} << cr)};
          triplets.emplace_back(static_cast<Eigen::Index>(sector.rank(t)), col, spec.hopping * sign);
        }
      }
    }
  }
  return SparseOperator::from_triplets(sector, triplets, true);
}

SparseOperator site_permutation_operator(const ModelSpec& spec, const FockSector& sector,
                                         const std::vector<int>& site_map) {
  check_sector(spec, sector);
  const int l = spec.length;
  if (static_cast<int>(site_map.size()) != l) throw InvalidArgument("site map has wrong length");
  const int no = spec.n_orbitals();
  std::vector<int> orbital_map(no);
  for (int o = 0; o < no; ++o) orbital_map[o] = site_map[o % l] + l * (o / l);

  const auto occs = sector.occupations();
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(occs.size());
  std::vector<int> occupied;
  for (std::size_t c = 0; c < occs.size(); ++c) {
    occupied.clear();
    std::uint64_t image = 0;
    for (std::uint64_t bits = occs[c].bits; bits; bits &= bits - 1) {
      const int o = std::countr_zero(bits);
      occupied.push_back(o);
      image |= std::uint64_t{1} << orbital_map[o];
    }
    // Reordering c†_{π(s_k)}...c†_{π(s_1)} into descending order costs one
    // sign per pair whose relative order π reverses.
    int inversions = 0;
    for (std::size_t a = 0; a < occupied.size(); ++a)
      for (std::size_t b = a + 1; b < occupied.size(); ++b)
        if (orbital_map[occupied[a]] > orbital_map[occupied[b]]) ++inversions;
    const double sign = (inversions & 1) ? -1.0 : 1.0;
    triplets.emplace_back(static_cast<Eigen::Index>(sector.rank({image})), static_cast<Eigen::Index>(c), sign);
  }
  // A signed permutation is Hermitian only when it is an involution; callers
  // that need that property use the parity operator.
  return SparseOperator::from_triplets(sector, triplets, false);
}

SparseOperator translation_operator(const ModelSpec& spec, const FockSector& sector) {
  if (spec.boundary != Boundary::periodic) throw InvalidArgument("translation needs periodic boundaries");
  std::vector<int> map(spec.length);
  for (int s = 0; s < spec.length; ++s) map[s] = (s + 1) % spec.length;
  return site_permutation_operator(spec, sector, map);
}

SparseOperator parity_operator(const ModelSpec& spec, const FockSector& sector) {
  if (spec.boundary != Boundary::periodic) throw InvalidArgument("reflection labels need periodic boundaries");
  std::vector<int> map(spec.length);
  for (int s = 0; s < spec.length; ++s) map[s] = (spec.length - s) % spec.length;
  auto op = site_permutation_operator(spec, sector, map);
  return SparseOperator(op.sector(), op.matrix(), true);
}

}  // namespace fc

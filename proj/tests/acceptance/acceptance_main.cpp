// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, each followed by the
// measured quantities. Exit status is nonzero when any criterion fails.
//
//   fc_acceptance [--only N] [--workdir DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fc/analysis.hpp"
#include "fc/complexity.hpp"
#include "fc/config.hpp"
#include "fc/experiments.hpp"
#include "fc/generic.hpp"
#include "fc/models.hpp"
#include "fc/onebody.hpp"
#include "fc/rotation.hpp"
#include "fc/spectra.hpp"
#include "oracle/dense_fock.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace fc;
using testing_support::max_abs;
using testing_support::random_hermitian;
using testing_support::random_state;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, std::string note) {
    pass = pass && ok;
    notes.push_back((ok ? "ok   " : "FAIL ") + std::move(note));
  }
};

fs::path g_workdir;

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool nondegenerate(const SpectrumResult& r, std::size_t k) {
  return (k == 0 || r.group[k - 1] != r.group[k]) && (k + 1 == r.size() || r.group[k + 1] != r.group[k]);
}

// 1. Renyi-2 in any basis is bounded below by S_c.
Outcome lower_bound() {
  Outcome o;
  const std::vector<std::pair<int, int>> sectors{{4, 2}, {6, 2}, {6, 3}, {8, 3}, {8, 4}, {10, 3}, {10, 5}, {12, 4}, {12, 6}, {12, 9}};
  double worst = std::numeric_limits<double>::infinity();
  int instances = 0;
  RotateOptions tight;
  tight.tolerance = 1e-14;
  for (int k = 0; k < 200; ++k) {
    const auto [no, np] = sectors[static_cast<std::size_t>(k) % sectors.size()];
    const ManyBodyState psi = random_state(enumerate_sector(no, np), 1000 + static_cast<std::uint64_t>(k));
    const double s_c = correlation_entropies(correlation_matrix(psi)).s_c;
    // 19 random bases and the natural-orbital basis, where the bound is tightest.
    for (int b = 0; b < 20; ++b) {
      const double scale = 0.05 + std::numbers::pi * ((b * 37) % 20) / 20.0;
      const RotationGenerator g = b == 19 ? natural_generator(psi, {})
                                          : RotationGenerator(random_hermitian(no, 5000 + static_cast<std::uint64_t>(k * 20 + b), scale));
      worst = std::min(worst, renyi2_entropy(rotate(psi, g, tight)) - s_c);
      ++instances;
    }
  }
  o.check(worst >= -1e-10, fmt::format("{} instances, min(S_PB - S_c) = {:.3e}", instances, worst));
  return o;
}

// 2. GHZ-like n-set states saturate the bound.
Outcome saturation() {
  Outcome o;
  for (int n : {2, 3, 4}) {
    const FockSector s = enumerate_sector(2 * n, 2);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(s.dimension()));
    for (int k = 0; k < n; ++k) v[static_cast<Eigen::Index>(s.rank(Occupation{std::uint64_t{0b11} << (2 * k)}))] = 1.0;
    const ComplexityReport r = optimize_basis(ManyBodyState(s, v.normalized()));
    const double ln = std::log(static_cast<double>(n));
    o.check(std::abs(*r.s_opt - ln) < 1e-8 && std::abs(r.s_c - ln) < 1e-8,
            fmt::format("n = {}: S_opt - ln n = {:.2e}, S_c - ln n = {:.2e}", n, *r.s_opt - ln, r.s_c - ln));
  }
  return o;
}

// 3. Nondegenerate eigenstates of free chains are momentum Slater states.
Outcome noninteracting() {
  Outcome o;
  const std::vector<ModelSpec> models{ModelSpec::hubbard(4, 1.0, 0.0, 2, 2), ModelSpec::hubbard(5, 1.0, 0.0, 2, 3),
                                      ModelSpec::hubbard(6, 1.0, 0.0, 3, 3), ModelSpec::hubbard(6, 1.0, 0.0, 2, 2),
                                      ModelSpec::tv(8, 1.0, 0.0, 3),         ModelSpec::tv(8, 1.0, 0.0, 4),
                                      ModelSpec::tv(9, 1.0, 0.0, 3),         ModelSpec::tv(10, 1.0, 0.0, 5)};
  int total = 0;
  for (const ModelSpec& m : models) {
    const SpectrumResult r = full_spectrum(build_hamiltonian(m, m.sector()));
    double worst = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (!nondegenerate(r, k)) continue;
      worst = std::max(worst, baseline_complexities(r.state(k), m).s_pb.at(BasisKind::momentum));
      ++count;
    }
    total += count;
    o.check(worst < 1e-9, fmt::format("{} L = {}, N_p = {}: {} nondegenerate states, max S_mom = {:.2e}", m.name(),
                                      m.length, m.total_particles(), count, worst));
  }
  o.check(total > 0, fmt::format("{} nondegenerate states checked in total", total));
  return o;
}

// 4. Sector code against the 2^N_o Jordan-Wigner oracle.
Outcome oracle_equivalence() {
  Outcome o;
  const int n = 6;
  const oracle::DenseFock jw(n);
  double corr = 0.0, hop = 0.0, ham = 0.0, rot = 0.0;
  for (int p = 0; p <= n; ++p) {
    const FockSector s = enumerate_sector(n, p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Matrix op = jw.restrict(s, Matrix(jw.cdag(i) * jw.c(j)));
        Matrix mine = Matrix::Zero(op.rows(), op.cols());
        const auto occ = s.occupations();
        for (std::size_t k = 0; k < occ.size(); ++k) {
          const int sign = hop_sign(occ[k], i, j);
          if (!sign) continue;
          const std::uint64_t target = (occ[k].bits & ~(1ULL << j)) | (1ULL << i);
          mine(static_cast<Eigen::Index>(s.rank(Occupation{target})), static_cast<Eigen::Index>(k)) = sign;
        }
        hop = std::max(hop, max_abs(mine - op));
      }
    if (p == 0 || p == n) continue;
    const ManyBodyState psi = random_state(s, 70 + static_cast<std::uint64_t>(p));
    corr = std::max(corr, max_abs(correlation_matrix(psi).entries() - jw.correlation(jw.embed(psi))));
    const Matrix a = random_hermitian(n, 80 + static_cast<std::uint64_t>(p), 2.5);
    rot = std::max(rot, max_abs(jw.embed(rotate(psi, RotationGenerator(a))) -
                                oracle::expi_hermitian(jw.one_body(a)) * jw.embed(psi)));
  }
  // Hamiltonians: Hubbard L = 3 (N_o = 6) and t-V L = 6.
  auto oracle_h = [&](const ModelSpec& m) {
    Matrix h = Matrix::Zero(jw.dim(), jw.dim());
    const int l = m.length, species = m.kind == ModelKind::hubbard ? 2 : 1;
    for (auto [i, j] : m.bonds())
      for (int sp = 0; sp < species; ++sp)
        h += m.hopping * (jw.cdag(i + l * sp) * jw.c(j + l * sp) + jw.cdag(j + l * sp) * jw.c(i + l * sp));
    if (m.kind == ModelKind::hubbard)
      for (int i = 0; i < l; ++i) h += m.interaction * jw.number(i) * jw.number(i + l);
    else
      for (auto [i, j] : m.bonds()) h += m.interaction * jw.number(i) * jw.number(j);
    return h;
  };
  for (const ModelSpec& m : {ModelSpec::hubbard(3, 1.0, 4.0, 2, 1), ModelSpec::hubbard(3, 0.5, 7.0, 1, 1),
                             ModelSpec::tv(6, 1.0, 2.0, 3), ModelSpec::tv(6, 1.0, 2.0, 2)}) {
    const FockSector s = m.sector();
    ham = std::max(ham, max_abs(build_hamiltonian(m, s).to_dense() - jw.restrict(s, oracle_h(m))));
  }
  o.check(hop < 1e-9, fmt::format("hop signs: max deviation {:.2e}", hop));
  o.check(corr < 1e-9, fmt::format("correlation matrix: max deviation {:.2e}", corr));
  o.check(ham < 1e-9, fmt::format("Hamiltonians: max deviation {:.2e}", ham));
  o.check(rot < 1e-9, fmt::format("rotation action: max deviation {:.2e}", rot));
  return o;
}

// 5. Haar states against the closed-form generic complexity.
Outcome generic_baseline() {
  Outcome o;
  const FockSector s4900({{0, 8, 4}, {8, 8, 4}});  // Q = 4900
  const double q = static_cast<double>(s4900.dimension());
  double mean = 0.0, worst_sc = 0.0;
  const int samples = 5;
  for (int k = 0; k < samples; ++k) {
    const ManyBodyState st = sample_haar_state(s4900, 1 + static_cast<std::uint64_t>(k)).state;
    mean += renyi2_entropy(st) / samples;
  }
  const double rel = std::abs(mean - std::log(q / 2.0)) / std::log(q / 2.0);
  o.check(rel < 0.03, fmt::format("Q = {}: mean S = {:.4f}, ln(Q/2) = {:.4f}, rel. dev. {:.4f}", q, mean,
                                  std::log(q / 2.0), rel));
  for (auto [no, np] : {std::pair{16, 4}, std::pair{16, 8}, std::pair{14, 5}}) {
    const ManyBodyState st = sample_haar_state(enumerate_sector(no, np), 11).state;
    const double nu = static_cast<double>(np) / no;
    const double target = -std::log(std::min(nu, 1.0 - nu));
    const double sc = correlation_entropies(correlation_matrix(st)).s_c;
    worst_sc = std::max(worst_sc, std::abs(sc - target) / target);
  }
  o.check(worst_sc < 0.05, fmt::format("S_c vs -ln(nu) for N_p >= 4: max rel. dev. {:.4f}", worst_sc));
  o.check(alpha_generic(0.5) == 2.0, fmt::format("alpha_g(1/2) = {:.17g}", alpha_generic(0.5)));
  return o;
}

// 6. Ground-state scaling of the half-filled Hubbard chain at U = 10.
Outcome ground_scaling() {
  Outcome o;
  const fs::path out = g_workdir / "ground_u10";
  const Config c = Config::parse(fmt::format("model = hubbard\nsizes = 4, 6, 8\ncouplings = 10\noutput = {}\n",
                                             out.string()));
  run_ground_sweep(c);
  const nlohmann::json rows = read_json(out / "ground.json");
  std::vector<ScalingPoint> pts;
  double worst_sc = 0.0;
  std::string alphas;
  bool in_range = true;
  for (const auto& r : rows) {
    const double sc = r["S_c"].get<double>(), alpha = r["alpha"].get<double>();
    worst_sc = std::max(worst_sc, std::abs(sc - std::log(2.0)) / std::log(2.0));
    pts.push_back({r["N_i"].get<double>(), alpha});
    in_range = in_range && alpha >= 0.5 && alpha <= 0.9;
    alphas += fmt::format(" L={}: S_opt={:.4f} S_c={:.4f} alpha={:.4f} conv={};", r["L"].get<int>(),
                          r["S_opt"].get<double>(), sc, alpha, r["optimizer"]["converged"].get<bool>());
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < pts.size(); ++k) decreasing = decreasing && pts[k].alpha < pts[k - 1].alpha;
  const ScalingFit fit = fit_alpha_scaling(pts);
  o.notes.push_back("     " + alphas);
  o.check(worst_sc < 0.05, fmt::format("S_c within 5% of ln 2: max rel. dev. {:.4f}", worst_sc));
  o.check(decreasing, "alpha decreasing in L");
  o.check(in_range, "alpha within [0.5, 0.9]");
  o.check(fit.extrapolated >= 0.35 && fit.extrapolated <= 0.65,
          fmt::format("quadratic extrapolation in 1/N_i: {:.4f}", fit.extrapolated));
  return o;
}

// 7. Excited states in the ground-state symmetry sector, L = 8, U = 6 and 10.
Outcome excited_hierarchy() {
  Outcome o;
  const fs::path out = g_workdir / "excited_l8";
  const Config c = Config::parse(fmt::format("model = hubbard\nL = 8\ncouplings = 6, 10\noutput = {}\n", out.string()));
  run_excited_sweep(c);
  const nlohmann::json bins = read_json(out / "excited_bins.json");
  double mean6 = NAN, mean10 = NAN, ground10 = NAN;
  std::size_t count10 = 0;
  for (const auto& b : bins) {
    if (b["label"] != "ground_sector") continue;
    if (b["coupling"].get<double>() == 6.0) mean6 = b["mean"].get<double>();
    if (b["coupling"].get<double>() == 10.0) {
      mean10 = b["mean"].get<double>();
      ground10 = b["ground_alpha"].get<double>();
      count10 = b["count"].get<std::size_t>();
    }
  }
  o.check(mean10 > 1.0 && mean10 < 2.0,
          fmt::format("U = 10 ground-sector mean ratio {:.4f} over {} states, want in (1, 2)", mean10, count10));
  o.check(mean10 - ground10 >= 0.2,
          fmt::format("mean ratio - ground alpha = {:.4f} - {:.4f} = {:.4f}, want >= 0.2", mean10, ground10,
                      mean10 - ground10));
  const double change = std::abs(mean10 - mean6) / mean6;
  o.check(change < 0.1, fmt::format("U = 6 -> 10 mean ratio {:.4f} -> {:.4f}, rel. change {:.4f}", mean6, mean10, change));
  return o;
}

// 8. Ranked distribution of the strong-coupling ground state.
Outcome distribution() {
  Outcome o;
  const fs::path out = g_workdir / "distribution_u10";
  run_distribution(Config::parse(fmt::format("model = hubbard\nL = 8\ncoupling = 10\noutput = {}\n", out.string())));
  const nlohmann::json d = read_json(out / "distribution.json");
  const double cum = d["cumulative_at_complexity"].get<double>();
  o.check(cum >= 0.35 && cum <= 0.65,
          fmt::format("cumulative at C = {:.3f}: {:.4f} (S_P = {:.4f}, beta = {:.3f})", d["complexity"].get<double>(),
                      cum, d["S_P"].get<double>(), d["beta"].get<double>()));
  bool box = true;
  for (int m : {1, 3, 10, 37}) {
    Vector v = Vector::Zero(100);
    v.head(m).setConstant(1.0 / std::sqrt(static_cast<double>(m)));
    const DistributionStats st = distribution_stats(v);
    box = box && std::abs(st.complexity - m) < 1e-9 && st.coverage_index(1.0) == static_cast<std::size_t>(m) &&
          std::abs(st.sigma_n - std::sqrt((m * m - 1) / 12.0)) < 1e-9 && std::abs(st.cumulative_at_complexity - 1.0) < 1e-9;
  }
  o.check(box, "uniform box distributions: C = m, full coverage at m, sigma of a discrete uniform");
  return o;
}

// 9. Rotation contract on random pairs.
Outcome rotation_contract() {
  Outcome o;
  const std::vector<std::pair<int, int>> sectors{{6, 3}, {8, 4}, {10, 3}, {12, 5}, {9, 4}};
  double norm = 0.0, inverse = 0.0, cov = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto [no, np] = sectors[static_cast<std::size_t>(k) % sectors.size()];
    const ManyBodyState psi = random_state(enumerate_sector(no, np), 300 + static_cast<std::uint64_t>(k));
    const RotationGenerator g(random_hermitian(no, 400 + static_cast<std::uint64_t>(k), std::numbers::pi * (k % 10 + 1) / 10.0));
    const ManyBodyState out = rotate(psi, g);
    norm = std::max(norm, std::abs(out.norm() - 1.0));
    inverse = std::max(inverse, max_abs(rotate(out, -g).amplitudes() - psi.amplitudes()));
    const Matrix u = g.unitary();
    cov = std::max(cov, max_abs(correlation_matrix(out).entries() - u * correlation_matrix(psi).entries() * u.adjoint()));
  }
  o.check(norm < 1e-10, fmt::format("norm preservation: {:.2e}", norm));
  o.check(inverse < 1e-9, fmt::format("inverse composition: {:.2e}", inverse));
  o.check(cov < 1e-9, fmt::format("covariance C -> U C U^dagger: {:.2e}", cov));
  return o;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

// 10. Identical config and seed give identical CSV.
Outcome determinism() {
  Outcome o;
  std::vector<std::uint64_t> hashes;
  for (const char* run : {"run_a", "run_b"}) {
    const fs::path out = g_workdir / "determinism" / run;
    run_ground_sweep(Config::parse(fmt::format(
        "model = hubbard\nsizes = 4, 6\ncouplings = 2, 8\nrestarts = 2\nmax_iterations = 60\nseed = 42\noutput = {}\n",
        out.string())));
    hashes.push_back(fnv1a(read_file(out / "ground.csv")));
  }
  o.check(hashes[0] == hashes[1], fmt::format("ground.csv FNV-1a: {:016x} vs {:016x}", hashes[0], hashes[1]));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  g_workdir = fs::temp_directory_path() / "fc_acceptance";
  for (int k = 1; k < argc; ++k) {
    const std::string a = argv[k];
    if (a == "--only" && k + 1 < argc) only = std::atoi(argv[++k]);
    else if (a == "--workdir" && k + 1 < argc) g_workdir = argv[++k];
    else {
      std::cerr << "usage: fc_acceptance [--only N] [--workdir DIR]\n";
      return 2;
    }
  }
  fs::create_directories(g_workdir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"lower bound S_PB >= S_c", lower_bound},
      {"GHZ-like states saturate the bound", saturation},
      {"noninteracting eigenstates have S_mom = 0", noninteracting},
      {"dense Jordan-Wigner oracle equivalence", oracle_equivalence},
      {"generic (Haar) baseline", generic_baseline},
      {"ground-state scaling, Hubbard U = 10", ground_scaling},
      {"excited-state hierarchy, L = 8", excited_hierarchy},
      {"distribution diagnostics", distribution},
      {"rotation contract", rotation_contract},
      {"determinism", determinism}};

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (only && only != id) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << fmt::format("{} criterion {}: {} ({:.1f} s)\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first, secs);
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
    failed += o.pass ? 0 : 1;
  }
  std::cout << fmt::format("{} criterion(s) failed\n", failed);
  return failed ? 1 : 0;
}

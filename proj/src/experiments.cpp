// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fc/analysis.hpp"
#include "fc/complexity.hpp"
#include "fc/errors.hpp"
#include "fc/generic.hpp"
#include "fc/models.hpp"
#include "fc/rng.hpp"
#include "fc/spectra.hpp"
#include "fc/svg.hpp"

namespace fc {

using json = nlohmann::ordered_json;

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::ground: return "ground";
    case ExperimentKind::excited: return "excited";
    case ExperimentKind::generic: return "generic";
    case ExperimentKind::distribution: return "distribution";
    case ExperimentKind::analyze: return "analyze";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
  for (auto k : {ExperimentKind::ground, ExperimentKind::excited, ExperimentKind::generic,
                 ExperimentKind::distribution, ExperimentKind::analyze})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

int worker_count() {
  if (const char* env = std::getenv("FC_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(std::min(n, 256L));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

// Runs f(i) for i in [0, n) on the worker pool. Results are written by index,
// so the merge order never depends on scheduling; the lowest-index failure is
// rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index) {
  return Rng::splitmix64(seed ^ Rng::splitmix64(static_cast<std::uint64_t>(index) + 1));
}

std::string num(double x) { return fmt::format("{:.12g}", x); }

const std::set<std::string> kModelKeys{"output", "model", "t", "boundary", "filling",
                                       "n_up", "n_dn", "n_particles", "seed"};
const std::set<std::string> kOptimizerKeys{"optimize", "restarts", "max_iterations", "gradient",
                                           "gradient_tolerance", "full_mixing"};

std::set<std::string> keys(std::initializer_list<const std::set<std::string>*> groups,
                           std::initializer_list<const char*> extra) {
  std::set<std::string> out;
  for (const auto* g : groups) out.insert(g->begin(), g->end());
  for (const char* e : extra) out.insert(e);
  return out;
}

struct ModelTemplate {
  ModelKind kind = ModelKind::hubbard;
  double hopping = 1.0;
  Boundary boundary = Boundary::periodic;
  double filling = 0.5;
  std::optional<int> n_up, n_dn, n_particles;

  ModelSpec make(int length, double coupling) const {
    auto count = [&](std::optional<int> fixed) {
      if (fixed) return *fixed;
      const double x = filling * length;
      if (std::abs(x - std::round(x)) > 1e-9)
        throw ConfigError(fmt::format("filling {} gives a non-integer particle number at L = {}", filling, length));
      return static_cast<int>(std::round(x));
    };
    try {
      if (kind == ModelKind::hubbard)
        return ModelSpec::hubbard(length, hopping, coupling, count(n_up), count(n_dn), boundary);
      return ModelSpec::tv(length, hopping, coupling, count(n_particles), boundary);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("invalid model: ") + e.what());
    }
  }
};

ModelTemplate read_model(const Config& c) {
  ModelTemplate m;
  m.kind = c.get_choice("model", "hubbard", {"hubbard", "tv"}) == "hubbard" ? ModelKind::hubbard : ModelKind::tv;
  m.hopping = c.get_double("t", 1.0);
  m.boundary = c.get_choice("boundary", "periodic", {"periodic", "open"}) == "periodic" ? Boundary::periodic
                                                                                       : Boundary::open;
  m.filling = c.get_double("filling", 0.5);
  if (!(m.filling > 0 && m.filling < 1)) throw ConfigError("filling must lie strictly between 0 and 1");
  if (m.kind == ModelKind::hubbard) {
    if (c.has("n_up")) m.n_up = c.get_int("n_up", 0);
    if (c.has("n_dn")) m.n_dn = c.get_int("n_dn", 0);
  } else if (c.has("n_particles")) {
    m.n_particles = c.get_int("n_particles", 0);
  }
  return m;
}

OptimizerOptions read_optimizer(const Config& c) {
  OptimizerOptions o;
  o.random_starts = c.get_int("restarts", 3);
  o.max_iterations = c.get_int("max_iterations", 500);
  o.gradient_tolerance = c.get_double("gradient_tolerance", 1e-6);
  o.gradient = c.get_choice("gradient", "analytic", {"analytic", "fd"}) == "analytic"
                   ? OptimizerOptions::Gradient::analytic
                   : OptimizerOptions::Gradient::finite_difference;
  o.full_mixing = c.get_bool("full_mixing", false);
  if (o.random_starts < 0 || o.max_iterations < 0 || !(o.gradient_tolerance > 0))
    throw ConfigError("optimizer settings out of range");
  return o;
}

std::filesystem::path prepare_output(const Config& c, ExperimentKind kind) {
  const std::filesystem::path dir = c.get_string("output", "fc_output/" + to_string(kind));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void text(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir_ / name).string());
    out << content;
    files_.push_back(name);
  }
  void svg(const std::string& name, const Plot& plot) { text(name, render_svg(plot)); }

  RunResult finish(const Config& c, ExperimentKind kind) {
    text("config.resolved", "# experiment = " + to_string(kind) + "\n" + c.resolved());
    text("VERSION", fmt::format("fcomplexity {}\n", kVersion));
    std::string manifest;
    for (const auto& f : files_) manifest += f + "\n";
    manifest += "manifest.txt\n";
    text("manifest.txt", manifest);
    return {dir_, files_};
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

// Lowest eigenvector: dense below `dense_limit`, Krylov otherwise.
ManyBodyState lowest_state(const ModelSpec& model, std::size_t dense_limit, std::uint64_t seed) {
  const FockSector sector = model.sector();
  const SparseOperator h = build_hamiltonian(model, sector);
  if (sector.dimension() <= dense_limit) return full_spectrum(h).state(0);
  LanczosOptions opts;
  opts.seed = seed;
  return ground_state(h, 1, opts).state(0);
}

std::string metadata(const Config& c, ExperimentKind kind) {
  return fmt::format("fcomplexity {} experiment={}\n{}", kVersion, to_string(kind), c.resolved());
}

double value_or_nan(const std::optional<double>& x) {
  return x.value_or(std::numeric_limits<double>::quiet_NaN());
}

json diagnostics_json(const OptimizerDiagnostics& d) {
  json starts = json::array();
  for (const auto& s : d.per_start)
    starts.push_back({{"name", s.name}, {"initial", s.initial}, {"final", s.final}, {"iterations", s.iterations},
                      {"converged", s.converged}, {"line_search_failed", s.line_search_failed},
                      {"gradient_norm", s.gradient_norm}});
  return {{"iterations", d.iterations}, {"starts", d.starts},        {"evaluations", d.evaluations},
          {"gradient_norm", d.gradient_norm}, {"converged", d.converged}, {"best_start", d.best_start},
          {"per_start", starts}};
}

// ---------------------------------------------------------------- ground

struct GroundRow {
  ModelSpec model;
  std::uint64_t seed = 0;
  ComplexityReport report;
};

}  // namespace

RunResult run_ground_sweep(const Config& c) {
  c.require_known(keys({&kModelKeys, &kOptimizerKeys}, {"sizes", "couplings", "dense_limit"}));
  const auto dir = prepare_output(c, ExperimentKind::ground);
  const ModelTemplate tmpl = read_model(c);
  const std::vector<int> sizes = c.get_ints("sizes", {4, 6, 8});
  const std::vector<double> couplings = c.get_doubles("couplings", {0.5, 1, 2, 4, 6, 8, 10});
  const std::uint64_t seed = c.get_u64("seed", 1);
  const bool optimize = c.get_bool("optimize", true);
  const OptimizerOptions base = read_optimizer(c);
  const auto dense_limit = static_cast<std::size_t>(c.get_int("dense_limit", 2000));
  if (sizes.empty() || couplings.empty()) throw ConfigError("sizes and couplings must be non-empty");

  std::vector<GroundRow> rows;
  for (int l : sizes)
    for (double u : couplings) rows.push_back({tmpl.make(l, u), 0, {}});
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].seed = point_seed(seed, i);

  parallel_for(rows.size(), [&](std::size_t i) {
    GroundRow& r = rows[i];
    const ManyBodyState psi = lowest_state(r.model, dense_limit, r.seed);
    if (optimize) {
      OptimizerOptions o = base;
      o.seed = r.seed;
      r.report = optimize_basis(psi, r.model, o);
    } else {
      r.report = baseline_complexities(psi, r.model);
    }
  });

  std::string csv = "model,L,N_o,N_p,coupling,S_pos,S_mom,S_nat,S_min,S_opt,S_c_p,S_c_h,S_c,alpha,opt_converged,seed\n";
  json out = json::array();
  for (const auto& r : rows) {
    const auto& rep = r.report;
    const double s_pos = rep.s_pb.at(BasisKind::position), s_mom = rep.s_pb.at(BasisKind::momentum),
                 s_nat = rep.s_pb.at(BasisKind::natural);
    csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.model.kind), r.model.length,
                       r.model.n_orbitals(), r.model.total_particles(), num(r.model.interaction), num(s_pos),
                       num(s_mom), num(s_nat), num(rep.s_min), num(value_or_nan(rep.s_opt)),
                       num(value_or_nan(rep.entropies.particle)), num(value_or_nan(rep.entropies.hole)),
                       num(rep.s_c), num(rep.alpha), optimize ? (rep.optimizer.converged ? "true" : "false") : "",
                       r.seed);
    json row = {{"model", to_string(r.model.kind)}, {"L", r.model.length}, {"N_o", r.model.n_orbitals()},
                {"N_p", r.model.total_particles()}, {"N_i", rep.n_i}, {"coupling", r.model.interaction},
                {"S_pos", s_pos}, {"S_mom", s_mom}, {"S_nat", s_nat}, {"S_min", rep.s_min},
                {"S_opt", rep.s_opt ? json(*rep.s_opt) : json()}, {"S_c", rep.s_c}, {"alpha", rep.alpha},
                {"k_max", rep.k_max}, {"seed", r.seed}};
    if (optimize) row["optimizer"] = diagnostics_json(rep.optimizer);
    out.push_back(row);
  }

  OutputSet files(dir);
  files.text("ground.csv", csv);
  files.text("ground.json", out.dump(2) + "\n");

  Plot entropy{"Ground-state entropies, L = " + std::to_string(sizes.back()), "coupling", "entropy (nats)", {}, metadata(c, ExperimentKind::ground)};
  std::map<std::string, PlotSeries> series;
  for (const auto& r : rows) {
    if (r.model.length != sizes.back()) continue;
    auto add = [&](const std::string& name, double y) {
      auto& s = series[name];
      s.name = name;
      s.x.push_back(r.model.interaction);
      s.y.push_back(y);
    };
    add("S_pos", r.report.s_pb.at(BasisKind::position));
    add("S_mom", r.report.s_pb.at(BasisKind::momentum));
    add("S_nat", r.report.s_pb.at(BasisKind::natural));
    if (r.report.s_opt) add("S_opt", *r.report.s_opt);
    add("S_c", r.report.s_c);
  }
  for (const char* name : {"S_pos", "S_mom", "S_nat", "S_opt", "S_c"})
    if (series.count(name)) entropy.series.push_back(series[name]);
  files.svg("ground_entropy.svg", entropy);

  Plot alpha{"alpha versus 1/N_i", "1/N_i", "alpha", {}, metadata(c, ExperimentKind::ground)};
  for (double u : couplings) {
    PlotSeries s{"coupling " + num(u), {}, {}, false};
    for (const auto& r : rows)
      if (r.model.interaction == u) {
        s.x.push_back(1.0 / r.report.n_i);
        s.y.push_back(r.report.alpha);
      }
    alpha.series.push_back(s);
  }
  files.svg("ground_alpha.svg", alpha);
  return files.finish(c, ExperimentKind::ground);
}

// ---------------------------------------------------------------- excited

namespace {

std::string label_name(const SymmetryLabel& l) {
  if (l.momentum < 0) return "unlabeled";
  return l.parity == 0 ? fmt::format("k{}", l.momentum) : fmt::format("k{}p{}", l.momentum, l.parity > 0 ? "+" : "-");
}

struct ExcitedRow {
  double coupling;
  std::size_t index;
  double energy;
  int group;
  SymmetryLabel label;
  bool ground_sector;
  ComplexityReport report;
};

}  // namespace

RunResult run_excited_sweep(const Config& c) {
  c.require_known(keys({&kModelKeys, &kOptimizerKeys}, {"L", "couplings", "states", "min_bin", "bin_width"}));
  const auto dir = prepare_output(c, ExperimentKind::excited);
  const ModelTemplate tmpl = read_model(c);
  const int length = c.get_int("L", 8);
  const std::vector<double> couplings = c.get_doubles("couplings", {1, 4, 6, 10});
  const std::uint64_t seed = c.get_u64("seed", 1);
  const bool all_states = c.get_choice("states", "ground_sector", {"ground_sector", "all"}) == "all";
  const bool optimize = c.get_bool("optimize", false);
  const OptimizerOptions base = read_optimizer(c);
  const auto min_bin = static_cast<std::size_t>(c.get_int("min_bin", 10));
  std::optional<double> bin_width;
  if (c.has("bin_width")) bin_width = c.get_double("bin_width", 0.0);
  if (couplings.empty()) throw ConfigError("couplings must be non-empty");

  std::vector<ExcitedRow> rows;
  std::vector<double> ground_alpha;
  for (std::size_t ci = 0; ci < couplings.size(); ++ci) {
    const ModelSpec model = tmpl.make(length, couplings[ci]);
    const FockSector sector = model.sector();
    SpectrumResult spectrum = full_spectrum(build_hamiltonian(model, sector));
    if (model.boundary == Boundary::periodic && model.length >= 3)
      spectrum = label_symmetry(std::move(spectrum), translation_operator(model, sector),
                                parity_operator(model, sector), model.length);
    else
      spectrum.labels.assign(spectrum.size(), SymmetryLabel{});

    const SymmetryLabel g = spectrum.labels[0];
    const std::size_t first = rows.size();
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      const bool in_ground = spectrum.labels[k].momentum == g.momentum && spectrum.labels[k].parity == g.parity;
      if (!all_states && !in_ground) continue;
      rows.push_back({couplings[ci], k, spectrum.energies[static_cast<Eigen::Index>(k)], spectrum.group[k],
                      spectrum.labels[k], in_ground, {}});
    }
    parallel_for(rows.size() - first, [&](std::size_t i) {
      ExcitedRow& r = rows[first + i];
      const ManyBodyState psi = spectrum.state(r.index);
      if (optimize) {
        OptimizerOptions o = base;
        o.seed = point_seed(seed, ci * 1000003 + r.index);
        r.report = optimize_basis(psi, model, o);
      } else {
        r.report = baseline_complexities(psi, model);
      }
    });
    ground_alpha.push_back(rows[first].report.alpha);
  }

  std::string csv = "coupling,index,energy,group,momentum,parity,ground_sector,S_pos,S_mom,S_nat,S_min,S_opt,S_c,ratio\n";
  std::vector<RatioSample> samples;
  for (const auto& r : rows) {
    const auto& rep = r.report;
    csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(r.coupling), r.index, num(r.energy), r.group,
                       r.label.momentum, r.label.parity, r.ground_sector ? 1 : 0,
                       num(rep.s_pb.at(BasisKind::position)), num(rep.s_pb.at(BasisKind::momentum)),
                       num(rep.s_pb.at(BasisKind::natural)), num(rep.s_min), num(value_or_nan(rep.s_opt)),
                       num(rep.s_c), num(rep.alpha));
    samples.push_back({r.ground_sector ? "ground_sector" : label_name(r.label), r.coupling, rep.alpha});
  }

  // Bins with too few finite ratios are reported as skipped, not as errors.
  std::map<std::pair<std::string, double>, std::size_t> counts;
  for (const auto& s : samples)
    if (std::isfinite(s.ratio)) ++counts[{s.label, s.coupling}];
  std::vector<RatioSample> kept;
  for (const auto& s : samples)
    if (counts[{s.label, s.coupling}] >= std::max<std::size_t>(min_bin, 1)) kept.push_back(s);
  const std::vector<BinStatistics> bins =
      kept.empty() ? std::vector<BinStatistics>{} : excited_state_statistics(kept, min_bin, bin_width);

  std::string bins_csv = "label,coupling,count,mean,std,ground_alpha,alpha_g\n";
  const ModelSpec reference = tmpl.make(length, couplings.front());
  const double alpha_g =
      alpha_generic(static_cast<double>(reference.total_particles()) / reference.n_orbitals());
  json bins_json = json::array();
  for (const auto& b : bins) {
    const auto ci = static_cast<std::size_t>(std::find(couplings.begin(), couplings.end(), b.coupling) - couplings.begin());
    bins_csv += fmt::format("{},{},{},{},{},{},{}\n", b.label, num(b.coupling), b.count, num(b.mean), num(b.std),
                            num(ground_alpha[ci]), num(alpha_g));
    bins_json.push_back({{"label", b.label}, {"coupling", b.coupling}, {"count", b.count}, {"mean", b.mean},
                         {"std", b.std}, {"ground_alpha", ground_alpha[ci]},
                         {"histogram", {{"lower", b.histogram.lower}, {"width", b.histogram.width},
                                        {"counts", b.histogram.counts}}}});
  }

  OutputSet files(dir);
  files.text("excited.csv", csv);
  files.text("excited_bins.csv", bins_csv);
  files.text("excited_bins.json", bins_json.dump(2) + "\n");

  Plot plot{"Complexity ratio, L = " + std::to_string(length), "coupling", "S/(N_i S_c)", {}, metadata(c, ExperimentKind::excited)};
  PlotSeries mean{"ground-sector mean", {}, {}, false}, ground{"ground state", {}, {}, false},
      generic{"alpha_g", {}, {}, false};
  for (const auto& b : bins)
    if (b.label == "ground_sector") mean.x.push_back(b.coupling), mean.y.push_back(b.mean);
  for (std::size_t ci = 0; ci < couplings.size(); ++ci) {
    ground.x.push_back(couplings[ci]);
    ground.y.push_back(ground_alpha[ci]);
    generic.x.push_back(couplings[ci]);
    generic.y.push_back(alpha_g);
  }
  plot.series = {mean, ground, generic};
  files.svg("excited_ratio.svg", plot);
  return files.finish(c, ExperimentKind::excited);
}

// ---------------------------------------------------------------- generic

RunResult run_generic_baseline(const Config& c) {
  c.require_known(keys({&kModelKeys}, {"sizes", "samples"}));
  const auto dir = prepare_output(c, ExperimentKind::generic);
  const ModelTemplate tmpl = read_model(c);
  const std::vector<int> sizes = c.get_ints("sizes", {4, 6, 8});
  const int n_samples = c.get_int("samples", 5);
  const std::uint64_t seed = c.get_u64("seed", 1);
  if (sizes.empty() || n_samples < 1) throw ConfigError("generic baseline needs sizes and samples >= 1");

  struct Sample {
    ModelSpec model;
    std::uint64_t seed;
    double s_pos = 0, s_nat = 0, s_c = 0;
  };
  std::vector<Sample> samples;
  for (int l : sizes)
    for (int k = 0; k < n_samples; ++k) samples.push_back({tmpl.make(l, 0.0), 0});
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i].seed = point_seed(seed, i);

  parallel_for(samples.size(), [&](std::size_t i) {
    Sample& s = samples[i];
    const ManyBodyState psi = sample_haar_state(s.model.sector(), s.seed).state;
    s.s_pos = renyi2_entropy(psi);
    s.s_nat = renyi2_entropy(rotate(psi, natural_generator(psi, conserved_blocks(psi.sector()))));
    s.s_c = correlation_entropies(correlation_matrix(psi)).s_c;
  });

  auto stats = [](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::pair{m, v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0};
  };

  std::string csv =
      "model,L,N_o,N_p,Q,samples,S_pos_mean,S_pos_std,S_nat_mean,S_nat_std,S_c_mean,S_cue,S_leading,neg_ln_nu,alpha_g,seed\n";
  json out = json::array();
  PlotSeries pos{"S_pos (mean)", {}, {}, false}, nat{"S_nat (mean)", {}, {}, false}, cue{"S_CUE", {}, {}, false};
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    std::vector<double> sp, sn, sc;
    for (int k = 0; k < n_samples; ++k) {
      const auto& s = samples[b * static_cast<std::size_t>(n_samples) + static_cast<std::size_t>(k)];
      sp.push_back(s.s_pos);
      sn.push_back(s.s_nat);
      sc.push_back(s.s_c);
    }
    const ModelSpec& m = samples[b * static_cast<std::size_t>(n_samples)].model;
    const auto q = static_cast<double>(m.sector().dimension());
    const double nu = static_cast<double>(m.total_particles()) / m.n_orbitals();
    const auto [pm, ps] = stats(sp);
    const auto [nm, ns] = stats(sn);
    const double cm = stats(sc).first;
    const GenericAnalytics an = generic_complexity_analytics(m.n_orbitals(), m.total_particles());
    const double s_cue = cue_entropy(q);
    const double neg_ln_nu = -std::log(std::min(nu, 1.0 - nu));
    csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(m.kind), m.length,
                       m.n_orbitals(), m.total_particles(), static_cast<std::size_t>(q), n_samples, num(pm), num(ps),
                       num(nm), num(ns), num(cm), num(s_cue), num(an.s_leading), num(neg_ln_nu), num(an.alpha_g), seed);
    out.push_back({{"model", to_string(m.kind)}, {"L", m.length}, {"Q", static_cast<std::size_t>(q)},
                   {"S_pos", sp}, {"S_nat", sn}, {"S_c", sc}, {"S_cue", s_cue}, {"S_leading", an.s_leading},
                   {"alpha_g", an.alpha_g}, {"seed", seed}});
    pos.x.push_back(std::log(q));
    pos.y.push_back(pm);
    nat.x.push_back(std::log(q));
    nat.y.push_back(nm);
    cue.x.push_back(std::log(q));
    cue.y.push_back(s_cue);
  }

  OutputSet files(dir);
  files.text("generic.csv", csv);
  files.text("generic.json", out.dump(2) + "\n");
  files.svg("generic.svg", Plot{"Haar-random states", "ln Q", "entropy (nats)", {pos, nat, cue},
                                metadata(c, ExperimentKind::generic)});
  return files.finish(c, ExperimentKind::generic);
}

// ---------------------------------------------------------------- distribution

RunResult run_distribution(const Config& c) {
  c.require_known(keys({&kModelKeys, &kOptimizerKeys}, {"L", "coupling", "source", "uniform_count", "max_rows"}));
  const auto dir = prepare_output(c, ExperimentKind::distribution);
  const ModelTemplate tmpl = read_model(c);
  const int length = c.get_int("L", 8);
  const double coupling = c.get_double("coupling", 10.0);
  const std::uint64_t seed = c.get_u64("seed", 1);
  const bool uniform = c.get_choice("source", "ground", {"ground", "uniform"}) == "uniform";
  const int max_rows = c.get_int("max_rows", 0);
  const ModelSpec model = tmpl.make(length, coupling);

  DistributionStats stats;
  json info;
  if (uniform) {
    const FockSector sector = model.sector();
    const int count = c.get_int("uniform_count", 16);
    if (count < 1 || static_cast<std::size_t>(count) > sector.dimension())
      throw ConfigError("uniform_count must lie between 1 and the sector dimension");
    Vector a = Vector::Zero(static_cast<Eigen::Index>(sector.dimension()));
    a.head(count).setConstant(1.0 / std::sqrt(static_cast<double>(count)));
    stats = distribution_stats(a);
    info["source"] = "uniform";
    info["uniform_count"] = count;
  } else {
    const bool optimize = c.get_bool("optimize", true);
    const OptimizerOptions base = read_optimizer(c);
    const ManyBodyState psi = lowest_state(model, 2000, point_seed(seed, 0));
    if (optimize) {
      OptimizerOptions o = base;
      o.seed = point_seed(seed, 0);
      const ComplexityReport rep = optimize_basis(psi, model, o);
      const ManyBodyState work = o.full_mixing ? embed_in_plain_sector(psi) : psi;
      stats = distribution_stats(rotate(work, *rep.best_generator));
      info["optimizer"] = diagnostics_json(rep.optimizer);
      info["S_c"] = rep.s_c;
    } else {
      const ComplexityReport rep = baseline_complexities(psi, model);
      const BasisKind best = std::min_element(rep.s_pb.begin(), rep.s_pb.end(), [](auto& a, auto& b) {
                               return a.second < b.second;
                             })->first;
      stats = distribution_stats(in_basis(psi, {best, {}}, lattice_blocks(model)));
      info["basis"] = to_string(best);
      info["S_c"] = rep.s_c;
    }
    info["source"] = "ground";
  }

  const double l = static_cast<double>(length);
  info["model"] = model.name();
  info["S_P"] = stats.s_p;
  info["complexity"] = stats.complexity;
  info["sigma_n"] = stats.sigma_n;
  info["beta"] = stats.beta;
  info["cumulative_at_complexity"] = stats.cumulative_at_complexity;
  info["coverage"] = {{"0.5", stats.coverage[0]}, {"0.9", stats.coverage[1]}, {"0.99", stats.coverage[2]}};
  info["S_P_over_L"] = stats.s_p / l;
  info["ln_sigma_over_L"] = stats.sigma_n > 0 ? std::log(stats.sigma_n) / l : std::numeric_limits<double>::quiet_NaN();
  info["seed"] = seed;

  std::string csv = "rank,probability,cumulative\n";
  const std::size_t rows = max_rows > 0 ? std::min<std::size_t>(static_cast<std::size_t>(max_rows), stats.probabilities.size())
                                        : stats.probabilities.size();
  PlotSeries curve{"cumulative", {}, {}, false};
  for (std::size_t n = 0; n < rows; ++n) {
    csv += fmt::format("{},{},{}\n", n + 1, num(stats.probabilities[n]), num(stats.cumulative[n]));
    curve.x.push_back(std::log(static_cast<double>(n + 1)) / l);
    curve.y.push_back(stats.cumulative[n]);
  }

  OutputSet files(dir);
  files.text("distribution.csv", csv);
  files.text("distribution.json", info.dump(2) + "\n");
  PlotSeries sp{"S_P/L", {stats.s_p / l, stats.s_p / l}, {0.0, 1.0}, false};
  PlotSeries sigma{"ln sigma/L", {}, {}, false};
  if (stats.sigma_n > 0) sigma.x = {std::log(stats.sigma_n) / l, std::log(stats.sigma_n) / l}, sigma.y = {0.0, 1.0};
  files.svg("distribution.svg", Plot{"Cumulative probability", "ln(n)/L", "cumulative", {curve, sp, sigma},
                                     metadata(c, ExperimentKind::distribution)});
  return files.finish(c, ExperimentKind::distribution);
}

// ---------------------------------------------------------------- analyze

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

RunResult run_scaling_fit(const Config& c) {
  c.require_known({"output", "input", "abscissa", "column"});
  const auto dir = prepare_output(c, ExperimentKind::analyze);
  const std::string input = c.get_string("input", "fc_output/ground/ground.csv");
  const FitAbscissa abscissa = c.get_choice("abscissa", "inverse_active", {"inverse_active", "inverse_length"}) ==
                                       "inverse_active"
                                   ? FitAbscissa::inverse_active
                                   : FitAbscissa::inverse_length;
  const std::string column = c.get_string("column", "alpha");

  std::ifstream in(input);
  if (!in) throw ConfigError("cannot read input table " + input);
  std::string line;
  std::getline(in, line);
  const auto header = split_csv_line(line);
  auto find = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("input table has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t i_model = find("model"), i_l = find("L"), i_no = find("N_o"), i_np = find("N_p"),
                    i_u = find("coupling"), i_y = find(column);

  std::map<std::pair<std::string, double>, std::vector<ScalingPoint>> groups;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw ConfigError("malformed row in " + input);
    try {
      const double y = std::stod(cells[i_y]);
      const double size = abscissa == FitAbscissa::inverse_length
                              ? std::stod(cells[i_l])
                              : active_count(std::stoi(cells[i_no]), std::stoi(cells[i_np]));
      if (std::isfinite(y)) groups[{cells[i_model], std::stod(cells[i_u])}].push_back({size, y});
    } catch (const std::logic_error&) {
      throw ConfigError("non-numeric entry in " + input);
    }
  }

  std::string csv = "model,coupling,abscissa,points,a,b,c,extrapolated,residual_norm\n";
  Plot plot{"Finite-size fit of " + column, abscissa == FitAbscissa::inverse_active ? "1/N_i" : "1/L", column, {},
            metadata(c, ExperimentKind::analyze)};
  json out = json::array();
  for (const auto& [key, points] : groups) {
    std::set<double> distinct;
    for (const auto& p : points) distinct.insert(p.size);
    if (distinct.size() < 3) continue;
    const ScalingFit fit = fit_alpha_scaling(points, abscissa);
    csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", key.first, num(key.second), to_string(abscissa), points.size(),
                       num(fit.a), num(fit.b), num(fit.c), num(fit.extrapolated), num(fit.residual_norm));
    out.push_back({{"model", key.first}, {"coupling", key.second}, {"a", fit.a}, {"b", fit.b}, {"c", fit.c},
                   {"extrapolated", fit.extrapolated}, {"residuals", fit.residuals}});
    PlotSeries data{fmt::format("{} {}", key.first, num(key.second)), {}, {}, true};
    for (const auto& p : points) data.x.push_back(1.0 / p.size), data.y.push_back(p.alpha);
    PlotSeries curve{"fit " + num(key.second), {}, {}, false};
    const double xmax = 1.0 / *distinct.begin();
    for (int k = 0; k <= 40; ++k) {
      const double x = xmax * k / 40.0;
      curve.x.push_back(x);
      curve.y.push_back(fit.a + x * (fit.b + x * fit.c));
    }
    plot.series.push_back(data);
    plot.series.push_back(curve);
  }
  if (out.empty()) throw ConfigError("no group in " + input + " has three distinct sizes to fit");

  OutputSet files(dir);
  files.text("fit.csv", csv);
  files.text("fit.json", out.dump(2) + "\n");
  files.svg("fit.svg", plot);
  return files.finish(c, ExperimentKind::analyze);
}

RunResult run_experiment(ExperimentKind kind, const Config& config) {
  switch (kind) {
    case ExperimentKind::ground: return run_ground_sweep(config);
    case ExperimentKind::excited: return run_excited_sweep(config);
    case ExperimentKind::generic: return run_generic_baseline(config);
    case ExperimentKind::distribution: return run_distribution(config);
    case ExperimentKind::analyze: return run_scaling_fit(config);
  }
  throw InvalidArgument("unknown experiment kind");
}

}  // namespace fc

#include "grand/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace grand {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  void reset() { t0 = std::chrono::steady_clock::now(); }
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void validate(const PipelineConfig& cfg) {
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0))
    throw error(errc::contract, "threshold must lie in (0, 1)");
  if (cfg.alpha && *cfg.alpha < 0.0) throw error(errc::contract, "alpha must be non-negative");
  if (cfg.beta && *cfg.beta < 0.0) throw error(errc::contract, "beta must be non-negative");
  if (cfg.cosquare_budget < 0 || cfg.cosquare_budget > 62)
    throw error(errc::contract, "cosquare budget must lie in [0, 62]");
  if (cfg.spectral_rounds < 1) throw error(errc::contract, "spectral_rounds must be at least 1");
  if (cfg.max_combination_degree < 0)
    throw error(errc::contract, "max_combination_degree must be non-negative");
  if (cfg.fill == Cell::Unknown) throw error(errc::contract, "fill must be Zero or One");
}

bool square_matches(const TriStateAdjacency& state, const CommonNeighborsMatrix& g2) {
  return square(finalize(state, Cell::Zero)) == g2;
}

struct ComponentAttempt {
  TriStateAdjacency state;
  std::vector<ComponentReport> reports;
  bool certified = false;
};

/// Spec step 6: instantiate each ambiguous component independently
/// (over-budget or unsatisfiable components stay Unknown and are reported).
ComponentAttempt attempt_components(TriStateAdjacency state, const CommonNeighborsMatrix& g2,
                                    int budget) {
  ComponentAttempt out{std::move(state), {}, false};
  auto comps = find_ambiguous_components(out.state);
  for (auto& comp : comps) {
    ComponentReport r;
    r.cells = static_cast<int>(comp.cells.size());
    r.vertices = static_cast<int>(comp.vertices.size());
    if (r.cells > budget) {
      r.over_budget = true;
    } else {
      try {
        TriStateAdjacency next = instantiate_cosquare(out.state, g2, comp, budget);
        out.state = std::move(next);
        r.solutions_found = comp.solutions_found;
        r.resolved = true;
      } catch (const error& e) {
        if (e.kind() != errc::inconsistent) throw;
        r.solutions_found = 0;
      }
    }
    out.reports.push_back(r);
  }
  out.certified = square_matches(out.state, g2);
  return out;
}

/// Retry with every residual Unknown cell searched as one joint component.
std::optional<ComponentAttempt> attempt_joint(const TriStateAdjacency& base,
                                              const CommonNeighborsMatrix& g2, int budget) {
  AmbiguousComponent whole;
  whole.cells = base.unknown_cells();
  if (whole.cells.empty() || static_cast<int>(whole.cells.size()) > budget) return std::nullopt;
  for (const auto& [u, v] : whole.cells) {
    whole.vertices.push_back(u);
    whole.vertices.push_back(v);
  }
  std::sort(whole.vertices.begin(), whole.vertices.end());
  whole.vertices.erase(std::unique(whole.vertices.begin(), whole.vertices.end()),
                       whole.vertices.end());
  try {
    ComponentAttempt out{instantiate_cosquare(base, g2, whole, budget), {}, false};
    out.reports.push_back({static_cast<int>(whole.cells.size()),
                           static_cast<int>(whole.vertices.size()), whole.solutions_found, true,
                           false});
    out.certified = square_matches(out.state, g2);
    if (!out.certified) return std::nullopt;
    return out;
  } catch (const error& e) {
    if (e.kind() != errc::inconsistent) throw;
    return std::nullopt;
  }
}

}  // namespace

std::pair<BinaryGraph, PipelineTrace> run_grand(const CommonNeighborsMatrix& g2,
                                                const KnowledgeSet& knowledge,
                                                const PipelineConfig& cfg) {
  validate(cfg);
  const int n = g2.size();
  PipelineTrace trace;
  trace.disconnected_or_bipartite = bipartite_or_disconnected_check(g2);

  Timer t;
  TriStateAdjacency gstar = init_partial(n, knowledge);
  trace.stages.push_back({"init", t.ms(), gstar.determined_pairs()});

  t.reset();
  FixpointOptions fopt;
  fopt.max_combination_degree = cfg.max_combination_degree;
  FixpointStats fs;
  gstar = run_attacks_to_fixpoint(std::move(gstar), g2, fopt, &fs);
  for (int i = 0; i < kAttackCount; ++i) trace.topo_changes[i] += fs.changes_by_attack[i];
  trace.stages.push_back({"topological", t.ms(), fs.total_changes});

  // Anchor of cells proven from true knowledge; later heuristic stages may
  // not contradict these.
  const TriStateAdjacency sound = gstar;

  EigenSystem es;
  bool have_es = false;
  for (int round = 0; round < cfg.spectral_rounds; ++round) {
    const TriStateAdjacency round_base = gstar;

    t.reset();
    if (!have_es) {
      es = eigendecompose(g2, cfg.eigenvalue_floor);
      have_es = true;
    }
    double beta = cfg.beta ? *cfg.beta
                           : (cfg.beta_convention == BetaConvention::paper_formula
                                  ? default_beta(gstar)
                                  : default_beta_pair_fraction(gstar));
    double alpha = cfg.alpha ? *cfg.alpha : std::max(0.0, 1.0 - beta);
    trace.alpha_used = alpha;
    trace.beta_used = beta;
    const SpectralConfig scfg{alpha, beta, cfg.threshold, cfg.eigenvalue_floor};
    const long long unknown_before = gstar.unknown_pair_count();
    const BinaryGraph spec = spectral_attack(gstar, es, scfg);
    trace.stages.push_back({"spectral", t.ms(), unknown_before});

    t.reset();
    gstar = targeted_error_forgetting(spec, round_base, g2);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const Cell s = sound.at(u, v);
        if (s != Cell::Unknown && gstar.at(u, v) != s) gstar.write(u, v, s);
      }
    trace.stages.push_back({"forgetting", t.ms(), gstar.unknown_pair_count()});

    t.reset();
    FixpointOptions repair = fopt;
    repair.tolerate_conflicts = true;
    FixpointStats fs2;
    gstar = run_attacks_to_fixpoint(std::move(gstar), g2, repair, &fs2);
    for (int i = 0; i < kAttackCount; ++i) trace.topo_changes[i] += fs2.changes_by_attack[i];
    trace.tolerated_conflicts.insert(trace.tolerated_conflicts.end(), fs2.conflicts.begin(),
                                     fs2.conflicts.end());
    trace.stages.push_back({"topological_repair", t.ms(), fs2.total_changes});
  }

  t.reset();
  const long long unknown_before_cosquare = gstar.unknown_pair_count();
  ComponentAttempt chosen = attempt_components(gstar, g2, cfg.cosquare_budget);
  if (!chosen.certified) {
    // The per-component pass could not reach an exactly matching square;
    // retry jointly, then from the sound state with the spectral residue
    // discarded. Never runs when the first attempt certifies.
    if (auto joint = attempt_joint(gstar, g2, cfg.cosquare_budget)) {
      chosen = std::move(*joint);
      trace.used_joint_completion = true;
    } else if (!(sound == gstar)) {
      ComponentAttempt from_sound = attempt_components(sound, g2, cfg.cosquare_budget);
      if (from_sound.certified) {
        chosen = std::move(from_sound);
        trace.used_sound_state_fallback = true;
      } else if (auto joint_sound = attempt_joint(sound, g2, cfg.cosquare_budget)) {
        chosen = std::move(*joint_sound);
        trace.used_joint_completion = true;
        trace.used_sound_state_fallback = true;
      }
    }
  }
  trace.components = chosen.reports;
  trace.stages.push_back(
      {"cosquare", t.ms(), unknown_before_cosquare - chosen.state.unknown_pair_count()});

  // Ambiguity summary relative to what the knowledge actually pins down:
  // count the completions of every component the sound fixpoint left open.
  for (auto& comp : find_ambiguous_components(sound)) {
    ComponentReport r;
    r.cells = static_cast<int>(comp.cells.size());
    r.vertices = static_cast<int>(comp.vertices.size());
    if (r.cells > cfg.cosquare_budget) {
      r.over_budget = true;
    } else {
      try {
        instantiate_cosquare(sound, g2, comp, cfg.cosquare_budget);
        r.solutions_found = comp.solutions_found;
        r.resolved = true;
      } catch (const error& e) {
        if (e.kind() != errc::inconsistent) throw;
      }
    }
    trace.ambiguity_audit.push_back(r);
  }

  trace.unresolved_cells = chosen.state.unknown_pair_count();
  BinaryGraph out = finalize(chosen.state, cfg.fill);
  trace.square_certified = square(out) == g2;
  trace.final_state = std::move(chosen.state);
  return {std::move(out), std::move(trace)};
}

BinaryGraph run_knowledgeable_erdos(const CommonNeighborsMatrix& g2, const KnowledgeSet& knowledge,
                                    const PipelineConfig& cfg) {
  validate(cfg);
  const int n = g2.size();
  init_partial(n, knowledge);  // validates consistency and ranges

  const EigenSystem es = eigendecompose(g2, cfg.eigenvalue_floor);
  const SpectralConfig scfg{1.0, 0.0, cfg.threshold, cfg.eigenvalue_floor};
  BinaryGraph ghat = spectral_attack(TriStateAdjacency(n), es, scfg);
  for (const auto& [u, v] : knowledge.known_non_edges) ghat.remove_edge(u, v);
  for (const auto& [u, v] : knowledge.known_edges) ghat.add_edge(u, v);
  return ghat;
}

std::vector<SweepRow> sweep(const BinaryGraph& g, const std::vector<double>& rhos,
                            const std::vector<std::uint64_t>& seeds, const PipelineConfig& cfg,
                            int threads) {
  validate(cfg);
  for (double r : rhos)
    if (r < 0.0 || r > 1.0) throw error(errc::contract, "rho values must lie in [0, 1]");

  const CommonNeighborsMatrix g2 = square(g);
  const std::size_t cells = rhos.size() * seeds.size();
  std::vector<SweepRow> rows(cells * 2);

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells) return;
      try {
        const std::size_t ri = idx / seeds.size();
        const std::size_t si = idx % seeds.size();
        const KnowledgeSet ks = sample_knowledge(g, rhos[ri], seeds[si]);

        Timer t;
        auto [recon, trace] = run_grand(g2, ks, cfg);
        rows[idx * 2] = {"grand",     rhos[ri], seeds[si], evaluate(g, recon),
                         t.ms(),      trace.unresolved_cells};

        t.reset();
        const BinaryGraph base = run_knowledgeable_erdos(g2, ks, cfg);
        rows[idx * 2 + 1] = {"erdos", rhos[ri], seeds[si], evaluate(g, base), t.ms(), 0};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(cells)));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows) {
  std::vector<SweepSummary> out;
  auto find = [&](const std::string& method, double rho) -> SweepSummary& {
    for (auto& s : out)
      if (s.method == method && s.rho == rho) return s;
    out.push_back({method, rho, 0, {}, {}, {}});
    return out.back();
  };
  for (const auto& row : rows) {
    SweepSummary& s = find(row.method, row.rho);
    auto acc = [&](double MetricsReport::*field) {
      const double v = row.metrics.*field;
      s.mean.*field += v;
      if (s.runs == 0) {
        s.min.*field = v;
        s.max.*field = v;
      } else {
        s.min.*field = std::min(s.min.*field, v);
        s.max.*field = std::max(s.max.*field, v);
      }
    };
    acc(&MetricsReport::fpr);
    acc(&MetricsReport::fnr);
    acc(&MetricsReport::rae);
    acc(&MetricsReport::cne);
    ++s.runs;
  }
  for (auto& s : out) {
    if (s.runs == 0) continue;
    s.mean.fpr /= s.runs;
    s.mean.fnr /= s.runs;
    s.mean.rae /= s.runs;
    s.mean.cne /= s.runs;
  }
  return out;
}

}  // namespace grand

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grand/cosquare.hpp"
#include "grand/graph.hpp"
#include "grand/metrics.hpp"
#include "grand/spectral.hpp"
#include "grand/topo_attacks.hpp"

namespace grand {

enum class BetaConvention { paper_formula, pair_fraction };

struct PipelineConfig {
  std::optional<double> alpha;  // empty: 1 - beta
  std::optional<double> beta;   // empty: derived from the post-topology state
  BetaConvention beta_convention = BetaConvention::paper_formula;
  double threshold = 0.5;
  double eigenvalue_floor = 1e-9;
  int max_combination_degree = 2;
  int cosquare_budget = 20;
  int spectral_rounds = 1;  // repetitions of the spectral/forgetting/topology block
  Cell fill = Cell::Zero;   // value for residual Unknowns
};

struct StageTiming {
  std::string stage;
  double ms = 0.0;
  long long changes = 0;
};

struct ComponentReport {
  int cells = 0;
  int vertices = 0;
  long long solutions_found = 0;
  bool resolved = false;
  bool over_budget = false;
};

struct PipelineTrace {
  std::vector<StageTiming> stages;
  std::array<long long, kAttackCount> topo_changes{};  // both topological stages combined
  std::vector<Conflict> tolerated_conflicts;           // stage-5 conflicts, recorded not fatal
  std::vector<ComponentReport> components;             // instantiated in step 6
  /// Ambiguity of the knowledge-derived state: every component the sound
  /// fixpoint left open, with its completion count (budget permitting),
  /// whether or not the heuristic stages ended up filling it.
  std::vector<ComponentReport> ambiguity_audit;
  long long unresolved_cells = 0;   // Unknown cells filled by `fill` at the end
  bool square_certified = false;    // square(output) == g2, integer-exact
  bool used_joint_completion = false;
  bool used_sound_state_fallback = false;
  bool disconnected_or_bipartite = false;
  double alpha_used = 0.0;
  double beta_used = 0.0;
  TriStateAdjacency final_state;  // before residual Unknowns are filled
};

/// The full attack: init, topological fixpoint, spectral attack, targeted
/// error forgetting, second topological pass, co-square instantiation.
std::pair<BinaryGraph, PipelineTrace> run_grand(const CommonNeighborsMatrix& g2,
                                                const KnowledgeSet& knowledge,
                                                const PipelineConfig& cfg = {});

/// Baseline: spectral attack with beta = 0 (no knowledge term), then known
/// edges/non-edges overwritten onto the result.
BinaryGraph run_knowledgeable_erdos(const CommonNeighborsMatrix& g2, const KnowledgeSet& knowledge,
                                    const PipelineConfig& cfg = {});

struct SweepRow {
  std::string method;  // "grand" or "erdos"
  double rho = 0.0;
  std::uint64_t seed = 0;
  MetricsReport metrics;
  double runtime_ms = 0.0;
  long long unresolved_cells = 0;
};

struct SweepSummary {
  std::string method;
  double rho = 0.0;
  int runs = 0;
  MetricsReport mean, min, max;
};

/// Runs both methods for every (rho, seed) cell. Cells execute in parallel;
/// row order is deterministic (rho-major, then seed, grand before erdos).
std::vector<SweepRow> sweep(const BinaryGraph& g, const std::vector<double>& rhos,
                            const std::vector<std::uint64_t>& seeds, const PipelineConfig& cfg = {},
                            int threads = 0);

std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows);

}  // namespace grand

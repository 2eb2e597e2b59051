#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grand/graph.hpp"
#include "grand/metrics.hpp"
#include "grand/pipeline.hpp"

namespace grand::io {

inline constexpr int kSchemaVersion = 1;

struct EdgeListOptions {
  bool remap = false;                 // densify arbitrary ids in first-seen order
  std::optional<int> vertex_count;    // override n (ids must stay below it)
};

struct LoadedGraph {
  BinaryGraph graph;
  std::vector<std::int64_t> original_ids;  // nonempty only when remapped
};

/// Edge-list text: one "u v" pair per line, '#'/'%' lines ignored.
/// Self-loops and duplicate edges are rejected with line numbers.
LoadedGraph read_edge_list(const std::filesystem::path& path, const EdgeListOptions& opt = {});
LoadedGraph parse_edge_list(std::istream& in, const std::string& name,
                            const EdgeListOptions& opt = {});
void write_edge_list(const std::filesystem::path& path, const BinaryGraph& g);

/// MatrixMarket coordinate integer symmetric.
void write_matrix_market(const std::filesystem::path& path, const CommonNeighborsMatrix& m);
std::string matrix_market_string(const CommonNeighborsMatrix& m);
CommonNeighborsMatrix read_matrix_market(const std::filesystem::path& path);
CommonNeighborsMatrix parse_matrix_market(std::istream& in, const std::string& name);

/// Adjacency matrices ride the same container with 0/1 entries.
void write_graph_matrix_market(const std::filesystem::path& path, const BinaryGraph& g);
BinaryGraph graph_from_matrix(const CommonNeighborsMatrix& m);

/// Reads a graph from either format, sniffing the MatrixMarket banner.
LoadedGraph read_graph_auto(const std::filesystem::path& path, const EdgeListOptions& opt = {});

/// KnowledgeSet JSON: {schema_version, known_edges, known_non_edges, rho, seed}.
void write_knowledge(const std::filesystem::path& path, const KnowledgeSet& k);
KnowledgeSet read_knowledge(const std::filesystem::path& path);

void write_id_map(const std::filesystem::path& path, const std::vector<std::int64_t>& ids);

struct RunManifest {
  std::string tool_version;
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // name -> path
  std::vector<std::pair<std::string, std::string>> config;  // flag -> value
  std::optional<std::uint64_t> seed;
  std::string timestamp_utc;  // empty under --stable-output
};

std::string current_timestamp_utc();

/// JSON report fragments (assembled by the CLI).
std::string manifest_json(const RunManifest& m);
std::string metrics_json(const MetricsReport& r);
std::string trace_json(const PipelineTrace& t, bool stable);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows,
                     bool stable);

}  // namespace grand::io

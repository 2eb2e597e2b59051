#include "grand/io.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace grand::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Dense matrices cap the practical size; refuse absurd vertex counts early.
constexpr std::int64_t kMaxVertices = 20000;

[[noreturn]] void parse_fail(const std::string& name, std::size_t line, const std::string& what) {
  throw error(errc::parse, name + ":" + std::to_string(line) + ": " + what);
}

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw error(errc::parse, "cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::parse, "cannot open " + path.string());
  return in;
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in, const std::string& name,
                            const EdgeListOptions& opt) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trimmed(line);
    if (body.empty() || body[0] == '#' || body[0] == '%') continue;
    std::istringstream ss(body);
    std::int64_t u = 0, v = 0;
    std::string extra;
    if (!(ss >> u >> v)) parse_fail(name, lineno, "expected two integers");
    if (ss >> extra) parse_fail(name, lineno, "unexpected trailing token '" + extra + "'");
    if (u < 0 || v < 0) parse_fail(name, lineno, "vertex ids must be non-negative");
    if (u == v) parse_fail(name, lineno, "self-loop on vertex " + std::to_string(u));
    raw.emplace_back(u, v);
    lines.push_back(lineno);
  }

  LoadedGraph out;
  std::vector<std::pair<int, int>> mapped(raw.size());
  std::int64_t max_id = -1;
  if (opt.remap) {
    std::map<std::int64_t, int> dense;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      for (int side = 0; side < 2; ++side) {
        const std::int64_t id = side == 0 ? raw[i].first : raw[i].second;
        auto [it, fresh] = dense.emplace(id, static_cast<int>(out.original_ids.size()));
        if (fresh) out.original_ids.push_back(id);
        (side == 0 ? mapped[i].first : mapped[i].second) = it->second;
      }
    }
    max_id = static_cast<std::int64_t>(out.original_ids.size()) - 1;
  } else {
    for (std::size_t i = 0; i < raw.size(); ++i) {
      max_id = std::max({max_id, raw[i].first, raw[i].second});
      mapped[i] = {static_cast<int>(raw[i].first), static_cast<int>(raw[i].second)};
    }
  }

  std::int64_t n = max_id + 1;
  if (opt.vertex_count) {
    if (n > *opt.vertex_count)
      throw error(errc::parse, name + ": vertex id " + std::to_string(max_id) +
                                   " exceeds the requested vertex count");
    n = *opt.vertex_count;
  }
  if (n > kMaxVertices)
    throw error(errc::parse, name + ": vertex count " + std::to_string(n) +
                                 " is too large for dense matrices (try --remap)");

  out.graph = BinaryGraph(static_cast<int>(n));
  std::set<VertexPair> seen;
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    const VertexPair p = ordered(mapped[i].first, mapped[i].second);
    if (!seen.insert(p).second)
      parse_fail(name, lines[i],
                 "duplicate edge (" + std::to_string(raw[i].first) + ", " +
                     std::to_string(raw[i].second) + ")");
    out.graph.add_edge(p.first, p.second);
  }
  return out;
}

LoadedGraph read_edge_list(const std::filesystem::path& path, const EdgeListOptions& opt) {
  auto in = open_in(path);
  return parse_edge_list(in, path.string(), opt);
}

void write_edge_list(const std::filesystem::path& path, const BinaryGraph& g) {
  auto out = open_out(path);
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string matrix_market_string(const CommonNeighborsMatrix& m) {
  const int n = m.size();
  std::size_t nnz = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v <= u; ++v)
      if (m.at(u, v) != 0) ++nnz;

  std::ostringstream out;
  out << "%%MatrixMarket matrix coordinate integer symmetric\n";
  out << n << ' ' << n << ' ' << nnz << '\n';
  for (int u = 0; u < n; ++u)
    for (int v = 0; v <= u; ++v)
      if (m.at(u, v) != 0) out << u + 1 << ' ' << v + 1 << ' ' << m.at(u, v) << '\n';
  return out.str();
}

void write_matrix_market(const std::filesystem::path& path, const CommonNeighborsMatrix& m) {
  auto out = open_out(path);
  out << matrix_market_string(m);
}

CommonNeighborsMatrix parse_matrix_market(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) parse_fail(name, 1, "empty file");
  ++lineno;
  {
    std::istringstream ss(line);
    std::string banner, object, format, field, symmetry;
    ss >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
      parse_fail(name, lineno, "expected a MatrixMarket coordinate header");
    if (field != "integer" && field != "pattern")
      parse_fail(name, lineno, "expected integer or pattern entries, got '" + field + "'");
    if (symmetry != "symmetric")
      parse_fail(name, lineno, "expected a symmetric matrix, got '" + symmetry + "'");
    const bool pattern = field == "pattern";

    std::int64_t rows = 0, cols = 0, nnz = 0;
    for (;;) {
      if (!std::getline(in, line)) parse_fail(name, lineno, "missing size line");
      ++lineno;
      const std::string body = trimmed(line);
      if (body.empty() || body[0] == '%') continue;
      std::istringstream sz(body);
      if (!(sz >> rows >> cols >> nnz)) parse_fail(name, lineno, "malformed size line");
      break;
    }
    if (rows != cols) parse_fail(name, lineno, "matrix must be square");
    if (rows > kMaxVertices) parse_fail(name, lineno, "matrix too large for dense storage");

    CommonNeighborsMatrix m(static_cast<int>(rows));
    std::set<VertexPair> seen;
    for (std::int64_t k = 0; k < nnz;) {
      if (!std::getline(in, line)) parse_fail(name, lineno, "unexpected end of file");
      ++lineno;
      const std::string body = trimmed(line);
      if (body.empty() || body[0] == '%') continue;
      std::istringstream es(body);
      std::int64_t i = 0, j = 0, value = 1;
      if (!(es >> i >> j)) parse_fail(name, lineno, "malformed entry");
      if (!pattern && !(es >> value)) parse_fail(name, lineno, "missing entry value");
      if (i < 1 || i > rows || j < 1 || j > rows) parse_fail(name, lineno, "index out of range");
      if (value < 0) parse_fail(name, lineno, "negative entry");
      const int u = static_cast<int>(i - 1), v = static_cast<int>(j - 1);
      if (u != v && !seen.insert(ordered(u, v)).second)
        parse_fail(name, lineno, "duplicate entry");
      m.set(u, v, static_cast<std::int32_t>(value));
      ++k;
    }
    return m;
  }
}

CommonNeighborsMatrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_matrix_market(in, path.string());
}

void write_graph_matrix_market(const std::filesystem::path& path, const BinaryGraph& g) {
  CommonNeighborsMatrix m(g.size());
  for (const auto& [u, v] : g.edges()) m.set(u, v, 1);
  write_matrix_market(path, m);
}

BinaryGraph graph_from_matrix(const CommonNeighborsMatrix& m) {
  const int n = m.size();
  BinaryGraph g(n);
  for (int u = 0; u < n; ++u) {
    if (m.at(u, u) != 0)
      throw error(errc::parse, "adjacency matrix has a self-loop on vertex " + std::to_string(u));
    for (int v = u + 1; v < n; ++v) {
      const std::int32_t x = m.at(u, v);
      if (x != 0 && x != 1)
        throw error(errc::parse, "adjacency entries must be 0 or 1, found " + std::to_string(x));
      if (x == 1) g.add_edge(u, v);
    }
  }
  return g;
}

LoadedGraph read_graph_auto(const std::filesystem::path& path, const EdgeListOptions& opt) {
  {
    auto probe = open_in(path);
    std::string first;
    std::getline(probe, first);
    if (first.rfind("%%MatrixMarket", 0) == 0) {
      auto in = open_in(path);
      return {graph_from_matrix(parse_matrix_market(in, path.string())), {}};
    }
  }
  return read_edge_list(path, opt);
}

void write_knowledge(const std::filesystem::path& path, const KnowledgeSet& k) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["rho"] = k.rho;
  j["seed"] = k.seed;
  j["known_edges"] = json::array();
  for (const auto& [u, v] : k.known_edges) j["known_edges"].push_back({u, v});
  j["known_non_edges"] = json::array();
  for (const auto& [u, v] : k.known_non_edges) j["known_non_edges"].push_back({u, v});
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

KnowledgeSet read_knowledge(const std::filesystem::path& path) {
  auto in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw error(errc::parse, path.string() + ": " + e.what());
  }
  try {
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
      throw error(errc::parse, path.string() + ": unsupported schema_version");
    KnowledgeSet k;
    k.rho = j.value("rho", 0.0);
    k.seed = j.value("seed", std::uint64_t{0});
    auto read_pairs = [&](const char* key, std::vector<VertexPair>& into) {
      for (const auto& e : j.at(key)) {
        if (!e.is_array() || e.size() != 2)
          throw error(errc::parse, path.string() + ": pairs must be [u, v] arrays");
        into.push_back(ordered(e[0].get<int>(), e[1].get<int>()));
      }
    };
    read_pairs("known_edges", k.known_edges);
    read_pairs("known_non_edges", k.known_non_edges);
    return k;
  } catch (const json::exception& e) {
    throw error(errc::parse, path.string() + ": " + e.what());
  }
}

void write_id_map(const std::filesystem::path& path, const std::vector<std::int64_t>& ids) {
  auto out = open_out(path);
  out << "# dense_id original_id\n";
  for (std::size_t i = 0; i < ids.size(); ++i) out << i << ' ' << ids[i] << '\n';
}

std::string current_timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  ordered_json j;
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  j["inputs"] = ordered_json::object();
  for (const auto& [k, v] : m.inputs) j["inputs"][k] = v;
  j["config"] = ordered_json::object();
  for (const auto& [k, v] : m.config) j["config"][k] = v;
  if (m.seed) j["seed"] = *m.seed;
  j["timestamp_utc"] = m.timestamp_utc;
  return j.dump(2);
}

std::string metrics_json(const MetricsReport& r) {
  ordered_json j;
  j["fpr"] = r.fpr;
  j["fnr"] = r.fnr;
  j["rae"] = r.rae;
  j["cne"] = r.cne;
  j["true_positives"] = r.true_positives;
  j["false_positives"] = r.false_positives;
  j["true_negatives"] = r.true_negatives;
  j["false_negatives"] = r.false_negatives;
  return j.dump(2);
}

std::string trace_json(const PipelineTrace& t, bool stable) {
  ordered_json j;
  j["stages"] = ordered_json::array();
  for (const auto& s : t.stages)
    j["stages"].push_back({{"stage", s.stage}, {"ms", stable ? 0.0 : s.ms}, {"changes", s.changes}});
  j["topological_changes"] = ordered_json::object();
  for (int i = 0; i < kAttackCount; ++i)
    j["topological_changes"][attack_name(static_cast<Attack>(i))] = t.topo_changes[i];
  j["tolerated_conflicts"] = t.tolerated_conflicts.size();
  j["cosquare"] = ordered_json::object();
  auto component_array = [](const std::vector<ComponentReport>& comps) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : comps)
      arr.push_back({{"cells", c.cells},
                     {"vertices", c.vertices},
                     {"solutions_found", c.solutions_found},
                     {"resolved", c.resolved},
                     {"over_budget", c.over_budget}});
    return arr;
  };
  j["cosquare"]["components"] = component_array(t.components);
  j["cosquare"]["ambiguity_audit"] = component_array(t.ambiguity_audit);
  j["cosquare"]["used_joint_completion"] = t.used_joint_completion;
  j["cosquare"]["used_sound_state_fallback"] = t.used_sound_state_fallback;
  j["unresolved_cells"] = t.unresolved_cells;
  j["square_certified"] = t.square_certified;
  j["disconnected_or_bipartite"] = t.disconnected_or_bipartite;
  j["alpha_used"] = t.alpha_used;
  j["beta_used"] = t.beta_used;
  return j.dump(2);
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows,
                     bool stable) {
  auto out = open_out(path);
  out << "method,rho,seed,fpr,fnr,rae,cne,runtime_ms,unresolved_cells\n";
  for (const auto& r : rows) {
    out << r.method << ',' << fmt(r.rho) << ',' << r.seed << ',' << fmt(r.metrics.fpr) << ','
        << fmt(r.metrics.fnr) << ',' << fmt(r.metrics.rae) << ',' << fmt(r.metrics.cne) << ','
        << fmt(stable ? 0.0 : r.runtime_ms) << ',' << r.unresolved_cells << '\n';
  }
}

}  // namespace grand::io

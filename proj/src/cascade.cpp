#include "ksub/objectives/cascade.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ksub/objectives/sensor.hpp"  // ParseError
#include "ksub/rng.hpp"

namespace ksub {

namespace {

// Live-edge draw for (sample, topic, edge): pure function of the sample seed.
bool edge_alive(uint64_t sample_seed, int sample, int topic, int edge,
                double p) {
  uint8_t key[12];
  for (int b = 0; b < 4; ++b) {
    key[b] = static_cast<uint8_t>((sample >> (8 * b)) & 0xff);
    key[4 + b] = static_cast<uint8_t>((topic >> (8 * b)) & 0xff);
    key[8 + b] = static_cast<uint8_t>((edge >> (8 * b)) & 0xff);
  }
  return unit_from_bits(hash_bytes(sample_seed, key, sizeof(key))) < p;
}

}  // namespace

SpreadObjective::SpreadObjective(CascadeModel model)
    : Objective(GroundSet(model.graph.node_count, model.topics)),
      model_(std::move(model)) {
  int n = model_.graph.node_count;
  if (static_cast<int>(model_.edge_probs.size()) !=
      static_cast<int>(model_.graph.edges.size())) {
    throw std::invalid_argument("cascade needs one probability row per edge");
  }
  for (const auto& row : model_.edge_probs) {
    if (static_cast<int>(row.size()) != model_.topics) {
      throw std::invalid_argument("cascade needs one probability per topic");
    }
    for (double p : row) {
      if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("edge probability outside [0, 1]");
      }
    }
  }
  if (model_.samples < 1) {
    throw std::invalid_argument("cascade needs at least one live-edge sample");
  }

  reach_.resize(static_cast<size_t>(model_.samples));
  std::vector<std::vector<int>> adjacency(static_cast<size_t>(n));
  for (int r = 0; r < model_.samples; ++r) {
    reach_[static_cast<size_t>(r)].resize(static_cast<size_t>(model_.topics));
    for (int i = 1; i <= model_.topics; ++i) {
      for (auto& a : adjacency) a.clear();
      for (size_t m = 0; m < model_.graph.edges.size(); ++m) {
        double p = model_.edge_probs[m][static_cast<size_t>(i - 1)];
        if (edge_alive(model_.sample_seed, r, i, static_cast<int>(m), p)) {
          auto [u, v] = model_.graph.edges[m];
          adjacency[static_cast<size_t>(u)].push_back(v);
        }
      }
      auto& masks = reach_[static_cast<size_t>(r)][static_cast<size_t>(i - 1)];
      masks.assign(static_cast<size_t>(n), Bits(n));
      std::vector<int> stack;
      std::vector<char> seen(static_cast<size_t>(n));
      for (int s = 0; s < n; ++s) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, s);
        seen[static_cast<size_t>(s)] = 1;
        Bits& mask = masks[static_cast<size_t>(s)];
        while (!stack.empty()) {
          int u = stack.back();
          stack.pop_back();
          mask.set(u);
          for (int v : adjacency[static_cast<size_t>(u)]) {
            if (!seen[static_cast<size_t>(v)]) {
              seen[static_cast<size_t>(v)] = 1;
              stack.push_back(v);
            }
          }
        }
      }
    }
  }
}

double SpreadObjective::value_of(const Assignment& x) const {
  int n = model_.graph.node_count;
  long total = 0;
  Bits influenced(n);
  for (int r = 0; r < model_.samples; ++r) {
    influenced.clear();
    for (int u = 0; u < x.n(); ++u) {
      int i = x.label(u);
      if (i != 0) {
        influenced |=
            reach_[static_cast<size_t>(r)][static_cast<size_t>(i - 1)]
                  [static_cast<size_t>(u)];
      }
    }
    total += influenced.count();
  }
  return static_cast<double>(total) / static_cast<double>(model_.samples);
}

double spread_eval(const CascadeModel& model, const Assignment& x) {
  return SpreadObjective(model).eval(x);
}

CascadeModel gen_cascade(int nodes, int topics, double edge_density,
                         int samples, uint64_t seed, double p_lo, double p_hi) {
  Rng rng(seed);
  CascadeModel model;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < nodes; ++u) {
    for (int v = 0; v < nodes; ++v) {
      if (u != v && rng.next_unit() < edge_density) edges.emplace_back(u, v);
    }
  }
  model.graph = DirectedGraph(nodes, std::move(edges));
  model.topics = topics;
  model.samples = samples;
  model.sample_seed = derive_seed(seed, "live-edges");
  model.edge_probs.resize(model.graph.edges.size());
  for (auto& row : model.edge_probs) {
    row.resize(static_cast<size_t>(topics));
    for (double& p : row) {
      // 8-point grid keeps the drawn probabilities readable in dumps.
      p = p_lo + (p_hi - p_lo) * static_cast<double>(rng.next_int(0, 7)) / 7.0;
    }
  }
  return model;
}

std::shared_ptr<SpreadObjective> gen_cascade_objective(int nodes, int topics,
                                                       double edge_density,
                                                       int samples,
                                                       uint64_t seed) {
  return std::make_shared<SpreadObjective>(
      gen_cascade(nodes, topics, edge_density, samples, seed));
}

void write_edge_list(const CascadeModel& model, std::ostream& out) {
  char buf[64];
  for (size_t m = 0; m < model.graph.edges.size(); ++m) {
    auto [u, v] = model.graph.edges[m];
    out << u << " " << v;
    for (double p : model.edge_probs[m]) {
      snprintf(buf, sizeof(buf), "%.9g", p);
      out << " " << buf;
    }
    out << "\n";
  }
}

CascadeModel read_edge_list(std::istream& in, int topics, int samples,
                            uint64_t sample_seed, double default_prob) {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<double>> probs;
  int max_node = -1;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (fields >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (tokens.size() != 2 && tokens.size() != 2 + static_cast<size_t>(topics)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'src dst' or 'src dst p_1 ... p_" +
                       std::to_string(topics) + "'");
    }
    long u, v;
    {
      const char* b = tokens[0].data();
      auto [p1, e1] = std::from_chars(b, b + tokens[0].size(), u);
      const char* b2 = tokens[1].data();
      auto [p2, e2] = std::from_chars(b2, b2 + tokens[1].size(), v);
      if (e1 != std::errc() || p1 != b + tokens[0].size() ||
          e2 != std::errc() || p2 != b2 + tokens[1].size() || u < 0 || v < 0) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed edge endpoints");
      }
    }
    std::vector<double> row(static_cast<size_t>(topics), default_prob);
    for (size_t t = 2; t < tokens.size(); ++t) {
      const char* b = tokens[t].data();
      double p;
      auto [ptr, ec] = std::from_chars(b, b + tokens[t].size(), p);
      if (ec != std::errc() || ptr != b + tokens[t].size() || p < 0.0 || p > 1.0) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed probability '" + tokens[t] + "'");
      }
      row[t - 2] = p;
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    probs.push_back(std::move(row));
    max_node = std::max(max_node, static_cast<int>(std::max(u, v)));
  }
  if (edges.empty()) {
    throw ParseError("edge list has no edges");
  }

  CascadeModel model;
  model.graph = DirectedGraph(max_node + 1, std::move(edges));
  model.topics = topics;
  model.edge_probs = std::move(probs);
  model.samples = samples;
  model.sample_seed = sample_seed;
  return model;
}

CascadeModel load_edge_list(const std::string& path, int topics, int samples,
                            uint64_t sample_seed, double default_prob) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list: " + path);
  return read_edge_list(in, topics, samples, sample_seed, default_prob);
}

}  // namespace ksub

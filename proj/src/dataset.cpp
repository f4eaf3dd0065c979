#include "gconj/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gconj/random.hpp"
#include "parallel.hpp"

namespace gconj {

namespace {

constexpr std::uint64_t kErTag = 0xE2;
constexpr std::uint64_t kWsTag = 0x3A;
constexpr std::uint64_t kBaTag = 0xBA;

}  // namespace

std::vector<Graph> gen_erdos_renyi(int n, double p, int count, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ER probability must be in [0, 1]");
  if (count < 0) throw std::invalid_argument("count must be non-negative");
  Rng rng(seed);
  std::vector<Graph> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.bernoulli(p)) g.add_edge(i, j);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Graph> gen_watts_strogatz(int n, int k, double beta, int count, std::uint64_t seed) {
  if (k < 2 || k % 2 != 0 || k >= n) {
    throw std::invalid_argument("Watts-Strogatz needs an even k with 2 <= k < n, got k=" +
                                std::to_string(k) + " n=" + std::to_string(n));
  }
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must be in [0, 1]");
  if (count < 0) throw std::invalid_argument("count must be non-negative");
  Rng rng(seed);
  std::vector<Graph> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    Graph g(n);
    for (int j = 1; j <= k / 2; ++j)
      for (int u = 0; u < n; ++u) g.add_edge(u, (u + j) % n);
    for (int j = 1; j <= k / 2; ++j) {
      for (int u = 0; u < n; ++u) {
        if (!rng.bernoulli(beta)) continue;
        if (g.degree(u) >= n - 1) continue;
        int w = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        while (w == u || g.has_edge(u, w)) w = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        g.remove_edge(u, (u + j) % n);
        g.add_edge(u, w);
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Graph> gen_barabasi_albert(int target_n, int m, const Graph& seed_graph, int count,
                                       std::uint64_t seed) {
  const int start = seed_graph.node_count();
  if (m < 1 || m >= start) {
    throw std::invalid_argument("Barabasi-Albert needs 1 <= m < seed nodes (m=" +
                                std::to_string(m) + ", seed nodes=" + std::to_string(start) + ")");
  }
  if (start > target_n) throw std::invalid_argument("seed graph is larger than the target");
  if (seed_graph.has_self_loops()) throw std::invalid_argument("seed graph has self-loops");
  if (count < 0) throw std::invalid_argument("count must be non-negative");
  Rng rng(seed);
  std::vector<Graph> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    Graph g(target_n);
    std::vector<int> repeated;  // node v appears degree(v) times
    for (const auto& [i, j] : seed_graph.edges()) {
      g.add_edge(i, j);
      repeated.push_back(i);
      repeated.push_back(j);
    }
    for (int source = start; source < target_n; ++source) {
      const std::set<int> distinct(repeated.begin(), repeated.end());
      std::set<int> targets;
      while (static_cast<int>(targets.size()) < m) {
        if (static_cast<int>(distinct.size()) >= m) {
          targets.insert(repeated[rng.below(repeated.size())]);
        } else {
          targets.insert(static_cast<int>(rng.below(static_cast<std::uint64_t>(source))));
        }
      }
      for (const int t : targets) {
        g.add_edge(source, t);
        repeated.push_back(t);
        repeated.push_back(source);
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

// One refinement round over a set of graphs sharing a color dictionary.
// New colors are ranks of sorted signatures, so they do not depend on the
// order in which nodes are visited.
struct Refiner {
  const std::vector<const Graph*>& graphs;
  std::vector<std::vector<int>> colors;

  explicit Refiner(const std::vector<const Graph*>& gs) : graphs(gs) {
    for (const Graph* g : graphs) colors.emplace_back(static_cast<std::size_t>(g->node_count()), 0);
  }

  std::size_t round() {
    std::map<std::vector<int>, int> dictionary;
    std::vector<std::vector<std::vector<int>>> signatures(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const Graph& g = *graphs[gi];
      for (int v = 0; v < g.node_count(); ++v) {
        std::vector<int> sig;
        sig.push_back(colors[gi][v]);
        sig.push_back(g.has_edge(v, v) ? 1 : 0);
        for (int u = 0; u < g.node_count(); ++u)
          if (u != v && g.has_edge(u, v)) sig.push_back(colors[gi][u]);
        std::sort(sig.begin() + 2, sig.end());
        dictionary.emplace(sig, 0);
        signatures[gi].push_back(std::move(sig));
      }
    }
    int next = 0;
    for (auto& [sig, id] : dictionary) id = next++;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi)
      for (std::size_t v = 0; v < signatures[gi].size(); ++v)
        colors[gi][v] = dictionary.at(signatures[gi][v]);
    return dictionary.size();
  }

  std::vector<int> histogram(std::size_t gi) const {
    std::vector<int> h = colors[gi];
    std::sort(h.begin(), h.end());
    return h;
  }
};

}  // namespace

WlVerdict wl1_test(const Graph& a, const Graph& b, int rounds) {
  if (a.node_count() != b.node_count()) {
    throw std::invalid_argument("wl1_test: graphs have different node counts");
  }
  const std::vector<const Graph*> pair = {&a, &b};
  Refiner refiner(pair);
  std::size_t classes = 1;
  for (int r = 0; rounds < 0 || r < rounds; ++r) {
    const std::size_t now = refiner.round();
    if (refiner.histogram(0) != refiner.histogram(1)) return WlVerdict::negative;
    if (now == classes) break;
    classes = now;
  }
  return WlVerdict::positive;
}

std::vector<std::pair<std::size_t, std::size_t>> wl1_screen(const std::vector<Graph>& graphs) {
  std::vector<const Graph*> ptrs;
  for (const Graph& g : graphs) ptrs.push_back(&g);
  Refiner refiner(ptrs);
  std::size_t classes = graphs.empty() ? 0 : 1;
  while (!graphs.empty()) {
    const std::size_t now = refiner.round();
    if (now == classes) break;
    classes = now;
  }
  std::map<std::vector<int>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < graphs.size(); ++i) buckets[refiner.histogram(i)].push_back(i);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [hist, members] : buckets)
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y) pairs.emplace_back(members[x], members[y]);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<Graph> synthetic_ba_seeds(int min_nodes, int max_nodes) {
  std::vector<Graph> seeds;
  for (int s = std::max(min_nodes, 2); s <= max_nodes; ++s) {
    seeds.push_back(Graph::complete(s));
    Graph cycle(s), star(s), path(s);
    for (int v = 0; v + 1 < s; ++v) {
      path.add_edge(v, v + 1);
      cycle.add_edge(v, v + 1);
      star.add_edge(0, v + 1);
    }
    if (s >= 3) cycle.add_edge(s - 1, 0);
    seeds.push_back(std::move(cycle));
    seeds.push_back(std::move(star));
    seeds.push_back(std::move(path));
  }
  return seeds;
}

Dataset build_dataset(const DatasetRecipe& r) {
  std::vector<Graph> graphs;
  Dataset ds;

  if (r.erdos_renyi) {
    for (int i = 0; i <= r.er_p_steps; ++i) {
      const double p = static_cast<double>(i) / r.er_p_steps;
      auto batch = gen_erdos_renyi(r.n, p, r.er_per_p, derive_seed(r.seed, kErTag, i));
      for (auto& g : batch) graphs.push_back(std::move(g));
    }
    ds.counts.erdos_renyi = graphs.size();
  }

  if (r.watts_strogatz) {
    std::uint64_t model = 0;
    const std::size_t before = graphs.size();
    for (const int k : r.ws_k) {
      for (const double beta : r.ws_beta) {
        auto batch = gen_watts_strogatz(r.n, k, beta, r.ws_per_model, derive_seed(r.seed, kWsTag, model++));
        for (auto& g : batch) graphs.push_back(std::move(g));
      }
    }
    ds.counts.watts_strogatz = graphs.size() - before;
  }

  if (r.house_of_graphs && r.hog_graphs) {
    for (const Graph& g : *r.hog_graphs) {
      if (g.node_count() == r.n && !g.has_self_loops()) {
        graphs.push_back(g);
        ++ds.counts.house_of_graphs;
      }
    }
  }

  if (r.barabasi_albert) {
    std::vector<Graph> seeds;
    int per = r.ba_per_seed_and_m;
    if (r.hog_graphs) {
      for (const Graph& g : *r.hog_graphs) {
        if (g.node_count() >= r.ba_seed_min_nodes && g.node_count() <= r.ba_seed_max_nodes &&
            g.node_count() <= r.n && !g.has_self_loops()) {
          seeds.push_back(g);
        }
      }
    } else {
      seeds = synthetic_ba_seeds(r.ba_seed_min_nodes, std::min(r.ba_seed_max_nodes, r.n));
      per = r.ba_per_synthetic_seed_and_m;
      ds.counts.synthetic_ba_seeds = true;
    }
    const std::size_t before = graphs.size();
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      for (int m = r.ba_m_min; m <= r.ba_m_max && m < seeds[s].node_count(); ++m) {
        auto batch = gen_barabasi_albert(r.n, m, seeds[s], per,
                                         derive_seed(r.seed, kBaTag, s * 64 + static_cast<std::uint64_t>(m)));
        for (auto& g : batch) graphs.push_back(std::move(g));
      }
    }
    ds.counts.barabasi_albert = graphs.size() - before;
  }

  std::vector<Spectrum> spectra(graphs.size());
  detail::parallel_for(graphs.size(), r.threads,
                       [&](std::size_t i) { spectra[i] = laplacian_spectrum(graphs[i]); });
  ds.wl_positive_pairs = wl1_screen(graphs);
  ds.records.reserve(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i)
    ds.records.push_back({std::move(graphs[i]), std::move(spectra[i])});
  return ds;
}

std::string format_spectrum_line(const Spectrum& s) {
  std::string line;
  char buf[64];
  for (std::size_t i = 0; i < s.size(); ++i) {
    double v = s[i];
    if (std::abs(v) < 5e-12) v = 0.0;
    std::snprintf(buf, sizeof buf, "%.12g", v);
    if (i) line.push_back(' ');
    line += buf;
  }
  return line;
}

Spectrum parse_spectrum_line(const std::string& line) {
  std::istringstream in(line);
  Spectrum s;
  double v = 0.0;
  while (in >> v) s.values.push_back(v);
  if (!in.eof()) throw std::invalid_argument("malformed spectrum line: " + line);
  return s;
}

DatasetFiles write_dataset(const Dataset& dataset, int n, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  const std::string prefix = "n" + std::to_string(n);
  DatasetFiles files{dir / (prefix + "_graphs.g6"), dir / (prefix + "_laplacian_spectra.txt"),
                     dir / "weisfeiler_leman_results.txt"};

  auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
    return out;
  };
  std::ofstream graphs = open(files.graphs);
  std::ofstream labels = open(files.labels);
  for (const LabeledGraph& rec : dataset.records) {
    graphs << encode_g6(rec.graph) << '\n';
    labels << format_spectrum_line(rec.spectrum) << '\n';
  }
  std::ofstream wl = open(files.wl_report);
  for (const auto& [a, b] : dataset.wl_positive_pairs) wl << a << ' ' << b << '\n';
  graphs.close();
  labels.close();
  wl.close();
  if (!graphs || !labels || !wl) throw std::runtime_error("write failed in " + dir.string());
  return files;
}

}  // namespace gconj

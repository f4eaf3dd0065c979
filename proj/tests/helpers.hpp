#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gconj/graph.hpp"
#include "gconj/random.hpp"

namespace testing {

inline std::string data_path(const std::string& name) {
  return std::string(GCONJ_TEST_DATA) + "/" + name;
}

/// Non-comment lines of a data file split on tabs.
inline std::vector<std::vector<std::string>> read_rows(const std::string& name) {
  std::ifstream f(data_path(name));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, '\t')) cols.push_back(c);
    if (!line.empty() && line.back() == '\t') cols.emplace_back();
    rows.push_back(cols);
  }
  return rows;
}

inline std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  double v;
  while (in >> v) out.push_back(v);
  return out;
}

inline gconj::Graph random_graph(gconj::Rng& rng, int n, double p, bool loops = false) {
  gconj::Graph g(n, loops);
  for (int i = 0; i < n; ++i)
    for (int j = loops ? i : i + 1; j < n; ++j)
      if (rng.uniform() < p) g.add_edge(i, j);
  return g;
}

inline gconj::Graph star(int n) {
  gconj::Graph g(n);
  for (int j = 1; j < n; ++j) g.add_edge(0, j);
  return g;
}

inline gconj::Graph path(int n) {
  gconj::Graph g(n);
  for (int j = 1; j < n; ++j) g.add_edge(j - 1, j);
  return g;
}

inline gconj::Graph cycle(int n) {
  gconj::Graph g = path(n);
  g.add_edge(n - 1, 0);
  return g;
}

/// Graph on n nodes from the bits of `mask` over lexicographic i<j slots.
inline gconj::Graph graph_from_mask(int n, std::uint64_t mask) {
  gconj::Graph g(n);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k)
      if (mask >> k & 1) g.add_edge(i, j);
  return g;
}

}  // namespace testing

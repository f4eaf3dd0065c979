#include <set>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

using namespace gconj;

TEST_CASE("edge slots are a bijection onto pairs in both orders") {
  for (bool loops : {false, true}) {
    for (EdgeOrder order : {EdgeOrder::lexicographic, EdgeOrder::clique}) {
      for (int n = 1; n <= 12; ++n) {
        const std::size_t m = edge_slot_count(n, loops);
        CHECK(m == static_cast<std::size_t>(loops ? n * (n + 1) / 2 : n * (n - 1) / 2));
        std::set<NodePair> seen;
        for (std::size_t k = 0; k < m; ++k) {
          const NodePair p = edge_index_to_pair(EdgeIndex{k}, n, loops, order);
          CHECK(p.i <= p.j);
          CHECK((loops || p.i < p.j));
          CHECK(pair_to_edge_index(p.i, p.j, n, loops, order).value == k);
          CHECK(pair_to_edge_index(p.j, p.i, n, loops, order).value == k);
          seen.insert(p);
        }
        CHECK(seen.size() == m);
        CHECK_THROWS_AS(edge_index_to_pair(EdgeIndex{m}, n, loops, order), std::out_of_range);
      }
    }
  }
}

TEST_CASE("slot orders on four nodes") {
  std::vector<NodePair> lex, clique, lex_loops, clique_loops;
  for (std::size_t k = 0; k < 6; ++k) {
    lex.push_back(edge_index_to_pair(EdgeIndex{k}, 4, false));
    clique.push_back(edge_index_to_pair(EdgeIndex{k}, 4, false, EdgeOrder::clique));
  }
  for (std::size_t k = 0; k < 10; ++k) {
    lex_loops.push_back(edge_index_to_pair(EdgeIndex{k}, 4, true));
    clique_loops.push_back(edge_index_to_pair(EdgeIndex{k}, 4, true, EdgeOrder::clique));
  }
  CHECK(lex == std::vector<NodePair>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(clique == std::vector<NodePair>{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}});
  CHECK(lex_loops == std::vector<NodePair>{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2},
                                           {1, 3}, {2, 2}, {2, 3}, {3, 3}});
  CHECK(clique_loops == std::vector<NodePair>{{0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {2, 2},
                                              {0, 3}, {1, 3}, {2, 3}, {3, 3}});
}

TEST_CASE("graph basics") {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(3, 1);
  CHECK(g.has_edge(1, 3));
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
  g.flip_edge(0, 1);
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK_THROWS_AS(g.add_edge(2, 2), SelfLoopError);
  CHECK_THROWS_AS(g.add_edge(0, 5), std::out_of_range);
  CHECK(Graph::complete(6).edge_count() == 15);
  CHECK(Graph::complete(6, true).self_loop_count() == 0);

  Graph h(3, true);
  h.add_edge(1, 1);
  h.add_edge(0, 1);
  CHECK(h.degree(1) == 1);
  CHECK(h.edge_count() == 2);
  CHECK(h.row(1) == 0b011);
  CHECK(h.without_self_loops().edge_count() == 1);
  CHECK(h.adjacency_matrix()[1][1] == 1);
}

TEST_CASE("flip is an involution and refuses self-loops without permission") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(12));
    const bool loops = rng.bernoulli(0.5);
    const Graph g = testing::random_graph(rng, n, 0.5, loops);
    const EdgeIndex e{rng.below(edge_slot_count(n, loops))};
    const Graph once = flip_edge(g, e);
    CHECK(once != g);
    CHECK(flip_edge(once, e) == g);
  }
  Graph plain(3);
  CHECK_THROWS_AS(flip_edge(plain, pair_to_edge_index(1, 1, 3, true)), std::out_of_range);
  Graph looped(3, true);
  CHECK(flip_edge(looped, pair_to_edge_index(1, 1, 3, true)).has_edge(1, 1));
}

TEST_CASE("connectivity") {
  CHECK(is_connected(Graph(1)));
  CHECK_FALSE(is_connected(Graph(2)));
  CHECK(is_connected(testing::star(7)));
  CHECK(component_count(Graph(5)) == 5);
  Graph two_triangles(6);
  for (int base : {0, 3}) {
    two_triangles.add_edge(base, base + 1);
    two_triangles.add_edge(base + 1, base + 2);
    two_triangles.add_edge(base, base + 2);
  }
  CHECK(component_count(two_triangles) == 2);
  CHECK(is_connected(testing::cycle(6)));
}

TEST_CASE("graph6 known strings") {
  CHECK(encode_g6(Graph::complete(4)) == "C~");
  CHECK(encode_g6(Graph(4)) == "C?");
  CHECK(encode_g6(Graph(1)) == "@");
  CHECK(encode_g6(testing::path(5)) == "DhC");
  CHECK(decode_g6("C~") == Graph::complete(4));
  CHECK(decode_g6(">>graph6<<C~\r\n") == Graph::complete(4));
}

TEST_CASE("graph6 matches the frozen networkx encoder") {
  const auto rows = testing::read_rows("g6_reference.txt");
  REQUIRE(rows.size() >= 100);
  int big = 0;
  for (const auto& row : rows) {
    REQUIRE(row.size() == 3);
    const int n = std::stoi(row[0]);
    Graph g(n);
    std::stringstream ss(row[1]);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
      const auto dash = pair.find('-');
      g.add_edge(std::stoi(pair.substr(0, dash)), std::stoi(pair.substr(dash + 1)));
    }
    CHECK(encode_g6(g) == row[2]);
    CHECK(decode_g6(row[2]) == g);
    if (n > 62) ++big;
  }
  CHECK(big >= 2);
}

TEST_CASE("graph6 round trip on random graphs") {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(64));
    const Graph g = testing::random_graph(rng, n, rng.uniform());
    CHECK(decode_g6(encode_g6(g)) == g);
  }
}

TEST_CASE("graph6 rejects malformed input") {
  CHECK_THROWS_AS(decode_g6(""), G6Error);
  CHECK_THROWS_AS(decode_g6("?"), G6Error);                 // n = 0
  CHECK_THROWS_AS(decode_g6("C~~"), G6Error);               // too long
  CHECK_THROWS_AS(decode_g6("D"), G6Error);                 // too short
  CHECK_THROWS_AS(decode_g6("C\x7f"), G6Error);             // bad char
  CHECK_THROWS_AS(decode_g6(":Bc"), G6Error);               // sparse6
  CHECK_THROWS_AS(decode_g6("&C~"), G6Error);               // digraph6
  CHECK_THROWS_AS(decode_g6("B@"), G6Error);                // nonzero padding
  CHECK_THROWS_AS(decode_g6("~?@A"), G6Error);              // n = 65
  Graph looped(3, true);
  looped.add_edge(0, 0);
  CHECK_THROWS_AS(encode_g6(looped), G6Error);
  CHECK_THROWS_AS(new_graph_from_g6(5, "C~"), std::invalid_argument);
}

TEST_CASE("graph6 stream errors name the line") {
  std::istringstream in("C~\n\nC?\nC!\n");
  try {
    read_g6_stream(in);
    FAIL("expected an error");
  } catch (const G6Error& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  std::istringstream ok("C~\n\nC?\n");
  CHECK(read_g6_stream(ok).size() == 2);
}

#pragma once

#include <cstdint>

#include "selfsim/element.hpp"

namespace selfsim {

inline constexpr long long kUnreachable = -1;

/// Radius-N portion of the self-similarity graph of the group generated by
/// an automaton: vertices are all words of length <= N; a horizontal edge
/// joins u and s(u) for each state s (equal lengths, self-loops dropped),
/// and a vertical edge joins v and xv for each letter x (lengths differ by
/// one). The distance from the empty word to u is always |u|.
struct GraphBall {
  struct Neighbor {
    std::uint32_t v;
    bool horizontal;
    friend bool operator==(const Neighbor&, const Neighbor&) = default;
  };

  MachinePtr machine;
  int depth = 0;
  int k = 2;
  std::vector<std::uint64_t> level_offset;  // first vertex id of each length
  std::vector<std::vector<Neighbor>> adj;   // sorted per vertex

  std::uint64_t vertex_count() const { return adj.size(); }
  std::uint64_t edge_count() const;
  std::uint32_t vertex_of(const Letters& w) const;
  Letters word_of(std::uint32_t v) const;
  int length_of(std::uint32_t v) const;
  std::size_t max_degree() const;
};

GraphBall build_ball(const MachinePtr& machine, int depth,
                     std::uint64_t vertex_budget = std::uint64_t(1) << 22,
                     bool parallel = true);

// Reference construction without OpenMP or shared-prefix threading; kept for
// testing against build_ball.
GraphBall build_ball_serial(const MachinePtr& machine, int depth,
                            std::uint64_t vertex_budget = std::uint64_t(1)
                                                          << 22);

// Breadth-first distance inside the ball (a lower bound for the distance in
// the full graph, since geodesics may leave any finite ball).
long long ball_distance(const GraphBall& ball, const Letters& u,
                        const Letters& v);

// Distance in the subgraph induced on vertices of length >= radius. Valid as
// an "outside the ball of the empty word" distance because distance from the
// empty word equals word length. Preconditions: |u|, |v| >= radius.
long long outside_ball_distance(const GraphBall& ball, const Letters& u,
                                const Letters& v, int radius);

struct DivergenceRow {
  int k = 0;
  std::uint64_t radius = 0;    // |v^k w|
  std::uint64_t corridor = 0;  // n * |g|
  long long measured = 0;      // outside-ball distance v^k w -> v^k g^n(w)
};

/// Rows of the divergence probe: for k = 1..k_max the vertices v^k w and
/// v^k g^n(w) stay connected by a horizontal corridor of constant length
/// n*|g| lying outside the open ball of radius |v^k w|, while the radius
/// grows with k. A bounded measured distance under growing radius rules out
/// any increasing divergence function for the graph.
struct DivergenceReport {
  GroupElement g;
  Letters v;
  Letters w;
  int exponent = 1;  // n
  int k_max = 1;
  std::vector<DivergenceRow> rows;
  bool bounded_while_radius_grows = false;
};

// Preconditions: g(v) = v, g|v = g, and g^n displaces w. Throws Error when a
// premise fails and BudgetError when the required ball is too large.
DivergenceReport divergence_experiment(const GroupElement& g, const Letters& v,
                                       const Letters& w, int n, int k_max,
                                       std::uint64_t vertex_budget =
                                           std::uint64_t(1) << 22);

// Graphviz export: horizontal edges solid (labelled by generating state),
// vertical edges dashed.
std::string render_dot(const GraphBall& ball);

std::string to_csv(const DivergenceReport& r);
std::string to_key_values(const DivergenceReport& r);

}  // namespace selfsim

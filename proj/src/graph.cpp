#include "selfsim/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace selfsim {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<std::uint64_t> make_offsets(int k, int depth, std::uint64_t budget) {
  std::vector<std::uint64_t> off(depth + 2, 0);
  for (int l = 0; l <= depth; ++l) {
    std::uint64_t count = pow_u64(k, l);
    off[l + 1] = off[l] + count;
    if (off[l + 1] > budget)
      throw BudgetError("ball vertex budget exceeded at depth " + std::to_string(depth));
  }
  return off;
}

}  // namespace

std::uint64_t GraphBall::edge_count() const {
  std::uint64_t twice = 0;
  for (const auto& nbrs : adj) twice += nbrs.size();
  return twice / 2;
}

std::uint32_t GraphBall::vertex_of(const Letters& w) const {
  if (static_cast<int>(w.size()) > depth) throw Error("vertex absent: word longer than ball depth");
  std::uint64_t val = 0;
  for (int x : w) {
    if (x < 0 || x >= k) throw Error("letter out of range");
    val = val * k + x;
  }
  return static_cast<std::uint32_t>(level_offset[w.size()] + val);
}

Letters GraphBall::word_of(std::uint32_t v) const {
  int len = length_of(v);
  std::uint64_t val = v - level_offset[len];
  Letters w(len);
  for (int i = len - 1; i >= 0; --i) {
    w[i] = static_cast<int>(val % k);
    val /= k;
  }
  return w;
}

int GraphBall::length_of(std::uint32_t v) const {
  for (int l = 0; l <= depth; ++l)
    if (v < level_offset[l + 1]) return l;
  throw Error("vertex id out of range");
}

std::size_t GraphBall::max_degree() const {
  std::size_t best = 0;
  for (const auto& nbrs : adj) best = std::max(best, nbrs.size());
  return best;
}

namespace {

GraphBall build_ball_impl(const MachinePtr& machine, int depth,
                          std::uint64_t vertex_budget, bool parallel,
                          bool naive) {
  if (depth < 0) throw Error("negative depth");
  const MealyAutomaton& a = *machine;
  GraphBall ball;
  ball.machine = machine;
  ball.depth = depth;
  ball.k = a.alphabet_size;
  ball.level_offset = make_offsets(ball.k, depth, vertex_budget);
  const std::uint64_t total = ball.level_offset[depth + 1];
  ball.adj.assign(total, {});

  const int k = ball.k;
  const int n_states = a.state_count();

  // Vertical edges: v -- xv. The shorter endpoint is the word with its first
  // letter removed.
  for (int l = 1; l <= depth; ++l) {
    const std::uint64_t lo = ball.level_offset[l];
    const std::uint64_t count = pow_u64(k, l);
    const std::uint64_t below = count / k;
    for (std::uint64_t val = 0; val < count; ++val) {
      std::uint32_t u = static_cast<std::uint32_t>(lo + val);
      std::uint32_t p = static_cast<std::uint32_t>(ball.level_offset[l - 1] + (val % below));
      ball.adj[u].push_back({p, false});
      ball.adj[p].push_back({u, false});
    }
  }

  // Horizontal edges: u -- s(u) for every state s, self-loops dropped.
  for (int l = 1; l <= depth; ++l) {
    const std::uint64_t lo = ball.level_offset[l];
    const std::uint64_t count = pow_u64(k, l);
    for (int s = 0; s < n_states; ++s) {
      std::vector<std::uint64_t> image(count);
      if (naive) {
        GroupElement gen{machine, {SignedState{s, +1}}};
        Letters u(l);
        for (std::uint64_t val = 0; val < count; ++val) {
          std::uint64_t rem = val;
          for (int i = l - 1; i >= 0; --i) {
            u[i] = static_cast<int>(rem % k);
            rem /= k;
          }
          Letters img = act(gen, u);
          std::uint64_t iv = 0;
          for (int i = 0; i < l; ++i) iv = iv * k + img[i];
          image[val] = iv;
        }
      } else {
        // Walk all words of length l depth-first, threading the state.
        struct Frame {
          int state;
          int depth;
          std::uint64_t in_val, img_val;
        };
        const int split = std::min(l, 6);
        std::vector<Frame> starts;
        std::vector<Frame> stack{{s, 0, 0, 0}};
        while (!stack.empty()) {
          Frame f = stack.back();
          stack.pop_back();
          if (f.depth == split) {
            starts.push_back(f);
            continue;
          }
          for (int x = k - 1; x >= 0; --x) {
            const Transition& t = a.step[f.state][x];
            stack.push_back({t.next, f.depth + 1, f.in_val * k + x, f.img_val * k + t.out});
          }
        }
#pragma omp parallel for schedule(dynamic) if (parallel && l > 8)
        for (long long i = 0; i < static_cast<long long>(starts.size()); ++i) {
          std::vector<Frame> local{starts[i]};
          while (!local.empty()) {
            Frame f = local.back();
            local.pop_back();
            if (f.depth == l) {
              image[f.in_val] = f.img_val;
              continue;
            }
            for (int x = k - 1; x >= 0; --x) {
              const Transition& t = a.step[f.state][x];
              local.push_back({t.next, f.depth + 1, f.in_val * k + x, f.img_val * k + t.out});
            }
          }
        }
      }
      for (std::uint64_t val = 0; val < count; ++val) {
        if (image[val] == val) continue;  // self-loop
        std::uint32_t u = static_cast<std::uint32_t>(lo + val);
        std::uint32_t v = static_cast<std::uint32_t>(lo + image[val]);
        ball.adj[u].push_back({v, true});
        ball.adj[v].push_back({u, true});
      }
    }
  }

  // Collapse parallel edges; horizontal wins over vertical (cannot clash,
  // the endpoints have different lengths anyway).
  for (auto& nbrs : ball.adj) {
    std::sort(nbrs.begin(), nbrs.end(), [](const GraphBall::Neighbor& x, const GraphBall::Neighbor& y) {
      return x.v != y.v ? x.v < y.v : x.horizontal < y.horizontal;
    });
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end(),
                           [](const GraphBall::Neighbor& x, const GraphBall::Neighbor& y) {
                             return x.v == y.v;
                           }),
               nbrs.end());
  }
  return ball;
}

}  // namespace

GraphBall build_ball(const MachinePtr& machine, int depth,
                     std::uint64_t vertex_budget, bool parallel) {
  return build_ball_impl(machine, depth, vertex_budget, parallel, false);
}

GraphBall build_ball_serial(const MachinePtr& machine, int depth,
                            std::uint64_t vertex_budget) {
  return build_ball_impl(machine, depth, vertex_budget, false, true);
}

namespace {

long long bfs_distance(const GraphBall& ball, std::uint32_t from, std::uint32_t to,
                       int min_length) {
  if (from == to) return 0;
  std::vector<std::int32_t> dist(ball.vertex_count(), -1);
  std::deque<std::uint32_t> frontier;
  dist[from] = 0;
  frontier.push_back(from);
  while (!frontier.empty()) {
    std::uint32_t u = frontier.front();
    frontier.pop_front();
    for (const auto& nb : ball.adj[u]) {
      if (dist[nb.v] >= 0) continue;
      if (min_length > 0 && ball.length_of(nb.v) < min_length) continue;
      dist[nb.v] = dist[u] + 1;
      if (nb.v == to) return dist[nb.v];
      frontier.push_back(nb.v);
    }
  }
  return kUnreachable;
}

}  // namespace

long long ball_distance(const GraphBall& ball, const Letters& u, const Letters& v) {
  return bfs_distance(ball, ball.vertex_of(u), ball.vertex_of(v), 0);
}

long long outside_ball_distance(const GraphBall& ball, const Letters& u,
                                const Letters& v, int radius) {
  if (static_cast<int>(u.size()) < radius || static_cast<int>(v.size()) < radius)
    throw Error("outside-ball endpoints must have length at least the radius");
  return bfs_distance(ball, ball.vertex_of(u), ball.vertex_of(v), radius);
}

DivergenceReport divergence_experiment(const GroupElement& g, const Letters& v,
                                       const Letters& w, int n, int k_max,
                                       std::uint64_t vertex_budget) {
  if (n < 1 || k_max < 1) throw Error("exponent and k_max must be at least 1");
  if (v.empty()) throw Error("fixed word must be nonempty");
  if (act(g, v) != v) throw Error("premise failure: g does not fix v");
  if (!equal(section(g, v), g)) throw Error("premise failure: g|v differs from g");

  GroupElement gn = power(g, n);
  Letters w_img = act(gn, w);
  if (w_img == w) throw Error("premise failure: g^n does not displace w");

  DivergenceReport report;
  report.g = g;
  report.v = v;
  report.w = w;
  report.exponent = n;
  report.k_max = k_max;

  const int depth = static_cast<int>(v.size()) * k_max + static_cast<int>(w.size());
  GraphBall ball = build_ball(g.machine, depth, vertex_budget);

  const std::uint64_t corridor = static_cast<std::uint64_t>(n) * g.word.size();
  Letters prefix;
  for (int k = 1; k <= k_max; ++k) {
    prefix.insert(prefix.end(), v.begin(), v.end());
    Letters u1 = prefix;
    u1.insert(u1.end(), w.begin(), w.end());
    Letters u2 = prefix;
    u2.insert(u2.end(), w_img.begin(), w_img.end());
    DivergenceRow row;
    row.k = k;
    row.radius = u1.size();
    row.corridor = corridor;
    row.measured = outside_ball_distance(ball, u1, u2, static_cast<int>(u1.size()));
    report.rows.push_back(row);
  }

  bool radius_grows = report.rows.size() > 1 &&
                      report.rows.back().radius > report.rows.front().radius;
  long long max_measured = 0;
  for (const auto& row : report.rows) max_measured = std::max(max_measured, row.measured);
  report.bounded_while_radius_grows =
      radius_grows && max_measured >= 0 &&
      static_cast<std::uint64_t>(max_measured) <= corridor;
  return report;
}

std::string render_dot(const GraphBall& ball) {
  std::ostringstream os;
  os << "graph ball {\n";
  os << "  node [shape=circle, fontsize=10];\n";
  auto name = [&](std::uint32_t v) {
    Letters w = ball.word_of(v);
    return w.empty() ? std::string("e") : format_letters(w);
  };
  for (std::uint32_t v = 0; v < ball.vertex_count(); ++v)
    os << "  \"" << name(v) << "\";\n";
  for (std::uint32_t u = 0; u < ball.vertex_count(); ++u)
    for (const auto& nb : ball.adj[u]) {
      if (nb.v < u) continue;  // one line per undirected edge
      os << "  \"" << name(u) << "\" -- \"" << name(nb.v) << "\"";
      if (!nb.horizontal) os << " [style=dashed]";
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

std::string to_csv(const DivergenceReport& r) {
  std::ostringstream os;
  os << "k,radius,corridor,measured\n";
  for (const auto& row : r.rows)
    os << row.k << "," << row.radius << "," << row.corridor << "," << row.measured << "\n";
  return os.str();
}

std::string to_key_values(const DivergenceReport& r) {
  std::ostringstream os;
  os << "g=" << format_element(r.g) << "\n";
  os << "v=" << format_letters(r.v) << "\n";
  os << "w=" << format_letters(r.w) << "\n";
  os << "n=" << r.exponent << "\n";
  os << "k_max=" << r.k_max << "\n";
  for (const auto& row : r.rows)
    os << "row." << row.k << "=radius:" << row.radius << " corridor:" << row.corridor
       << " measured:" << row.measured << "\n";
  os << "bounded_while_radius_grows=" << (r.bounded_while_radius_grows ? "true" : "false")
     << "\n";
  return os.str();
}

}  // namespace selfsim

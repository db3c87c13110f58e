#include "selfsim/levels.hpp"

#include <numeric>
#include <sstream>


namespace selfsim {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::uint64_t lcm_saturating(std::uint64_t a, std::uint64_t b) {
  if (a >= kOrderSaturated || b >= kOrderSaturated) return kOrderSaturated;
  std::uint64_t g = std::gcd(a, b);
  std::uint64_t a1 = a / g;
  if (a1 > kOrderSaturated / b) return kOrderSaturated;
  return a1 * b;
}

void check_level_budget(const GroupElement& g, int depth, std::uint64_t budget) {
  if (depth < 0) throw Error("negative depth");
  const std::uint64_t k = g.machine->alphabet_size;
  std::uint64_t total = 1;
  for (int i = 0; i < depth; ++i) {
    total *= k;
    if (total > budget)
      throw BudgetError("level permutation budget exceeded at depth " +
                        std::to_string(depth));
  }
}

// Fills images[in_prefix*k^n .. ) for the subtree below a threaded word.
void fill_subtree(const MealyAutomaton& a, const Word& w, int n,
                  std::uint64_t in_prefix, std::uint64_t img_prefix,
                  std::vector<std::uint32_t>& images) {
  if (n == 0) {
    images[in_prefix] = static_cast<std::uint32_t>(img_prefix);
    return;
  }
  const int k = a.alphabet_size;
  for (int x = 0; x < k; ++x) {
    Word next = w;
    int y = thread_letter(a, next, x);
    fill_subtree(a, next, n - 1, in_prefix * k + x, img_prefix * k + y, images);
  }
}

}  // namespace

std::uint64_t LevelPermutation::order() const {
  std::vector<bool> visited(images.size(), false);
  std::uint64_t ord = 1;
  for (std::uint64_t start = 0; start < images.size(); ++start) {
    if (visited[start]) continue;
    std::uint64_t len = 0, cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      cur = images[cur];
      ++len;
    }
    ord = lcm_saturating(ord, len);
  }
  return ord;
}

std::map<std::uint64_t, std::uint64_t> LevelPermutation::cycle_histogram() const {
  std::vector<bool> visited(images.size(), false);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint64_t start = 0; start < images.size(); ++start) {
    if (visited[start]) continue;
    std::uint64_t len = 0, cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      cur = images[cur];
      ++len;
    }
    ++hist[len];
  }
  return hist;
}

std::vector<std::uint32_t> level_images_serial(const GroupElement& g, int depth,
                                               std::uint64_t budget) {
  check_level_budget(g, depth, budget);
  const MealyAutomaton& a = *g.machine;
  const std::uint64_t k = a.alphabet_size;
  const std::uint64_t total = pow_u64(k, depth);
  std::vector<std::uint32_t> images(total);
  Letters u(depth);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rem = idx;
    for (int i = depth - 1; i >= 0; --i) {
      u[i] = static_cast<int>(rem % k);
      rem /= k;
    }
    Letters img = act(g, u);
    std::uint64_t val = 0;
    for (int i = 0; i < depth; ++i) val = val * k + img[i];
    images[idx] = static_cast<std::uint32_t>(val);
  }
  return images;
}

std::vector<std::uint32_t> level_images(const GroupElement& g, int depth,
                                        std::uint64_t budget, bool parallel) {
  check_level_budget(g, depth, budget);
  const MealyAutomaton& a = *g.machine;
  const int k = a.alphabet_size;
  const std::uint64_t total = pow_u64(k, depth);
  std::vector<std::uint32_t> images(total);

  if (!parallel || depth <= 6) {
    fill_subtree(a, g.word, depth, 0, 0, images);
    return images;
  }

  // Split at a fixed shallow depth and hand each subtree to a worker.
  const int split = std::min(depth, 6);
  struct Job {
    Word w;
    std::uint64_t in_prefix;
    std::uint64_t img_prefix;
  };
  std::vector<Job> jobs;
  jobs.reserve(pow_u64(k, split));
  {
    std::vector<Job> stack{{g.word, 0, 0}};
    std::vector<int> depths{0};
    while (!stack.empty()) {
      Job j = std::move(stack.back());
      stack.pop_back();
      int d = depths.back();
      depths.pop_back();
      if (d == split) {
        jobs.push_back(std::move(j));
        continue;
      }
      for (int x = k - 1; x >= 0; --x) {
        Word next = j.w;
        int y = thread_letter(a, next, x);
        stack.push_back({std::move(next), j.in_prefix * k + x, j.img_prefix * k + y});
        depths.push_back(d + 1);
      }
    }
  }

  const int rest = depth - split;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(jobs.size()); ++i)
    fill_subtree(a, jobs[i].w, rest, jobs[i].in_prefix, jobs[i].img_prefix, images);
  return images;
}

LevelPermutation level_permutation(const GroupElement& g, int depth,
                                   std::uint64_t budget, bool parallel) {
  LevelPermutation p;
  p.depth = depth;
  p.alphabet = g.machine->alphabet_size;
  p.images = level_images(g, depth, budget, parallel);
  return p;
}

OrderStatus order_status(const GroupElement& g, const OrderBudgets& b) {
  OrderStatus st;
  bool threshold_exceeded = false;

  for (int n = 1; n <= b.max_depth; ++n) {
    std::uint64_t ord;
    try {
      ord = level_permutation(g, n, b.level_budget).order();
    } catch (const BudgetError&) {
      st.note = "level budget exhausted at depth " + std::to_string(n);
      break;
    }
    st.ord_sequence.push_back(ord);
    if (ord > b.ord_threshold) {
      threshold_exceeded = true;
      break;
    }
  }

  // Certification. Only a flat tail can belong to a finite order (the level
  // orders of a finite element stabilize at the true order), and g^m = 1 is
  // refuted without a closure run when a deeper level order exceeds m.
  const std::size_t len = st.ord_sequence.size();
  bool flat_tail = !threshold_exceeded && len >= 1 &&
                   (len == 1 || st.ord_sequence[len - 1] == st.ord_sequence[len - 2]);
  if (flat_tail) {
    const std::uint64_t m = st.ord_sequence.back();
    bool refuted = false;
    for (int d = static_cast<int>(len) + 1; d <= static_cast<int>(len) + 2; ++d) {
      try {
        if (level_permutation(g, d, b.level_budget).order() > m) {
          refuted = true;
          break;
        }
      } catch (const BudgetError&) {
        break;
      }
    }
    if (!refuted) {
      bool id = false;
      try {
        id = is_identity(power(g, static_cast<long long>(m)), b.closure_cap);
      } catch (const BudgetError&) {
        id = false;
      }
      if (id) {
        st.kind = OrderStatus::Kind::Finite;
        st.order = m;
        return st;
      }
    }
  }

  int growth_depths = 0;
  for (std::size_t i = 1; i < len; ++i)
    if (st.ord_sequence[i] > st.ord_sequence[i - 1]) ++growth_depths;
  if (growth_depths >= b.min_growth_depths &&
      (threshold_exceeded || static_cast<int>(len) >= b.max_depth)) {
    st.kind = OrderStatus::Kind::InfiniteEvidence;
    st.note = threshold_exceeded ? "order threshold exceeded" : "depth budget exhausted";
    return st;
  }
  st.kind = OrderStatus::Kind::Unknown;
  if (st.note.empty())
    st.note = "budgets exhausted without certificate (max_depth " +
              std::to_string(b.max_depth) + ", threshold " +
              std::to_string(b.ord_threshold) + ")";
  return st;
}

std::string format_ord_sequence(const std::vector<std::uint64_t>& seq) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) os << ",";
    if (seq[i] >= kOrderSaturated)
      os << "inf";
    else
      os << seq[i];
  }
  os << "]";
  return os.str();
}

}  // namespace selfsim

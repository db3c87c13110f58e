#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "selfsim/element.hpp"

namespace selfsim {

// Orders larger than this are reported saturated; comparisons against the
// order threshold still work.
inline constexpr std::uint64_t kOrderSaturated = std::uint64_t(1) << 62;

inline constexpr std::uint64_t kDefaultLevelBudget = std::uint64_t(1) << 22;

/// The bijection a group element induces on all words of a fixed length,
/// stored as an image table indexed by the word read as a base-k number
/// (first letter most significant).
struct LevelPermutation {
  int depth = 0;
  int alphabet = 2;
  std::vector<std::uint32_t> images;

  std::uint64_t size() const { return images.size(); }
  // lcm of cycle lengths, saturating at kOrderSaturated.
  std::uint64_t order() const;
  std::map<std::uint64_t, std::uint64_t> cycle_histogram() const;
};

// Reference kernel: applies g to every word independently, no sharing of
// prefix work. Kept as the oracle for the fast kernel below.
std::vector<std::uint32_t> level_images_serial(
    const GroupElement& g, int depth,
    std::uint64_t budget = kDefaultLevelBudget);

// Fast kernel: depth-first threading that shares section work across common
// prefixes, parallelized over subtrees with OpenMP.
std::vector<std::uint32_t> level_images(
    const GroupElement& g, int depth,
    std::uint64_t budget = kDefaultLevelBudget, bool parallel = true);

LevelPermutation level_permutation(const GroupElement& g, int depth,
                                   std::uint64_t budget = kDefaultLevelBudget,
                                   bool parallel = true);

struct OrderBudgets {
  int max_depth = 16;
  std::uint64_t ord_threshold = std::uint64_t(1) << 12;
  // An infinite-order verdict requires a strict increase at this many of the
  // recorded depths.
  int min_growth_depths = 4;
  std::uint64_t level_budget = kDefaultLevelBudget;
  std::size_t closure_cap = kDefaultClosureCap;
};

struct OrderStatus {
  enum class Kind { Finite, InfiniteEvidence, Unknown };
  Kind kind = Kind::Unknown;
  std::uint64_t order = 0;                  // set for Finite
  std::vector<std::uint64_t> ord_sequence;  // level-permutation orders
  std::string note;

  bool finite() const { return kind == Kind::Finite; }
  bool infinite_evidence() const { return kind == Kind::InfiniteEvidence; }
};

// Order semi-decision. For n = 1,2,... the order of the level-n permutation
// is recorded; ord_n divides ord_{n+1} and divides the true order. When
// g^{ord_n} is verified to be the identity the order is exactly ord_n and
// Finite is returned. When the sequence outgrows ord_threshold (or the depth
// budget) while strictly increasing, InfiniteEvidence is returned with the
// recorded sequence. Total on finite-order elements, evidence-only on
// infinite-order ones.
OrderStatus order_status(const GroupElement& g, const OrderBudgets& b = {});

std::string format_ord_sequence(const std::vector<std::uint64_t>& seq);

}  // namespace selfsim

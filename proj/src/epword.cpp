#include "selfsim/epword.hpp"

#include <algorithm>
#include <unordered_map>

namespace selfsim {

namespace {

// Smallest d dividing |w| with w = root^(|w|/d).
std::size_t primitive_root_length(const Letters& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

EPWord canonical_ep(Letters u, Letters w) {
  if (w.empty()) throw Error("empty period");
  w.resize(primitive_root_length(w));
  // Absorb any trailing alignment of the period into the tail: while the
  // preperiod ends with the period's last letter, rotate the period right and
  // drop that letter. The infinite word is unchanged at every step.
  while (!u.empty() && u.back() == w.back()) {
    u.pop_back();
    std::rotate(w.rbegin(), w.rbegin() + 1, w.rend());
  }
  return {std::move(u), std::move(w)};
}

EPWord parse_epword(std::string_view text, int alphabet_size) {
  constexpr std::string_view kInf = "^inf";
  std::string trimmed;
  for (char c : text)
    if (c != ' ') trimmed += c;
  if (trimmed.size() < kInf.size() ||
      std::string_view(trimmed).substr(trimmed.size() - kInf.size()) != kInf)
    throw ParseError("eventually periodic word must end in \"^inf\"", 1,
                     static_cast<int>(trimmed.size()) + 1);
  std::string body = trimmed.substr(0, trimmed.size() - kInf.size());
  if (body.empty()) throw ParseError("missing word before \"^inf\"", 1, 1);

  std::string pre, per;
  if (body.back() == ')') {
    auto open = body.find('(');
    if (open == std::string::npos || body.find('(', open + 1) != std::string::npos)
      throw ParseError("malformed parenthesized period", 1, 1);
    pre = body.substr(0, open);
    per = body.substr(open + 1, body.size() - open - 2);
  } else {
    pre = body.substr(0, body.size() - 1);
    per = body.substr(body.size() - 1);
  }
  return canonical_ep(parse_letters(pre, alphabet_size),
                      parse_letters(per, alphabet_size));
}

std::string format_epword(const EPWord& x) {
  return format_letters(x.preperiod) + "(" + format_letters(x.period) + ")^inf";
}

Letters ep_prefix(const EPWord& x, std::size_t n) {
  Letters out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < x.preperiod.size())
      out.push_back(x.preperiod[i]);
    else
      out.push_back(x.period[(i - x.preperiod.size()) % x.period.size()]);
  }
  return out;
}

EPWord act_ep(const GroupElement& g, const EPWord& x, std::size_t iteration_cap) {
  Letters head = act(g, x.preperiod);
  GroupElement h = section(g, x.preperiod);

  // Iterate sections along the periodic tail. Reduced sections never exceed
  // |g|, so the sequence of reduced words is eventually periodic.
  std::unordered_map<std::string, std::size_t> first_seen;
  std::vector<Letters> blocks;
  std::size_t cycle_start;
  while (true) {
    auto [it, inserted] = first_seen.try_emplace(word_key(h.word), blocks.size());
    if (!inserted) {
      cycle_start = it->second;
      break;
    }
    if (blocks.size() >= iteration_cap)
      throw BudgetError("eventually periodic action exceeded iteration cap");
    blocks.push_back(act(h, x.period));
    h = section(h, x.period);
  }

  Letters pre = std::move(head);
  for (std::size_t i = 0; i < cycle_start; ++i)
    pre.insert(pre.end(), blocks[i].begin(), blocks[i].end());
  Letters per;
  for (std::size_t i = cycle_start; i < blocks.size(); ++i)
    per.insert(per.end(), blocks[i].begin(), blocks[i].end());
  return canonical_ep(std::move(pre), std::move(per));
}

bool shift_equivalent(const EPWord& x, const EPWord& y) {
  // Every suffix of a canonical EP word is, after a finite prefix, a rotation
  // of its primitive period repeated; two words share a suffix exactly when
  // the periods are rotations of each other.
  if (x.period.size() != y.period.size()) return false;
  Letters doubled = x.period;
  doubled.insert(doubled.end(), x.period.begin(), x.period.end());
  return std::search(doubled.begin(), doubled.end(), y.period.begin(),
                     y.period.end()) != doubled.end();
}

}  // namespace selfsim

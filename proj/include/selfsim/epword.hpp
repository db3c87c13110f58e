#pragma once

#include "selfsim/element.hpp"

namespace selfsim {

/// An eventually periodic infinite word u w w w ... in canonical form:
/// the period is primitive (not a proper power) and the preperiod does not
/// end with the last letter of the period (so the same infinite word has a
/// unique representation). Two EPWords are equal as infinite words exactly
/// when their canonical fields coincide.
struct EPWord {
  Letters preperiod;
  Letters period;
  friend bool operator==(const EPWord&, const EPWord&) = default;
};

// Canonicalizes u (w)^inf: replaces w by its primitive root and strips any
// trailing alignment of the period from u. Throws Error on empty period.
EPWord canonical_ep(Letters u, Letters w);

// Text form: letters, optionally one parenthesized group, ending in "^inf";
// "^inf" binds to the parenthesized group when present, otherwise to the
// single letter before it. "001(101)^inf", "0^inf", "110^inf" (= 11 0^inf).
EPWord parse_epword(std::string_view text, int alphabet_size);
std::string format_epword(const EPWord& x);

// First n letters of the infinite word.
Letters ep_prefix(const EPWord& x, std::size_t n);

// Image of an eventually periodic word under g, in canonical form. The
// preperiod image is emitted directly; the tail is found by iterating
// h_{i+1} = h_i | period and detecting the cycle of reduced section words
// (sections never grow, so the iteration is eventually periodic).
EPWord act_ep(const GroupElement& g, const EPWord& x,
              std::size_t iteration_cap = kDefaultClosureCap);

// Left shift equivalence: true when the two words share a common suffix,
// i.e. when their primitive periods agree up to rotation.
bool shift_equivalent(const EPWord& x, const EPWord& y);

}  // namespace selfsim

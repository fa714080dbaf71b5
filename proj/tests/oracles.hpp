#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "entropylab/alphabet.hpp"

namespace oracle {

using entropylab::Symbol;
using entropylab::Word;

/// Dyck membership by repeated deletion of adjacent matched pairs.
inline bool dyck_by_reduction(Word w, Symbol pairs) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] < pairs && w[i + 1] == w[i] + pairs) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w.empty();
}

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Plausibility straight from the definition: some prime p ≤ n has A mod p
/// covering every residue.
inline bool plausible_naive(std::uint64_t mask, std::size_t n) {
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (!is_prime_trial(p)) continue;
    std::set<std::uint64_t> residues;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) residues.insert(i % p);
    }
    if (residues.size() == p) return false;
  }
  return true;
}

inline std::uint64_t count_plausible_naive(std::size_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) count += plausible_naive(mask, n);
  return count;
}

/// All words over `size` symbols of length ≤ n, built by a different route
/// than the library enumerator (odometer per length).
inline std::vector<Word> all_words(std::size_t size, std::size_t n) {
  std::vector<Word> out;
  for (std::size_t len = 0; len <= n; ++len) {
    Word w(len, 0);
    for (;;) {
      out.push_back(w);
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == size) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
  }
  return out;
}

/// The finite set L ∩ Σ^(n) of a predicate.
inline std::set<Word> finite_set(std::size_t size, std::size_t n, const std::function<bool(const Word&)>& pred) {
  std::set<Word> out;
  for (const auto& w : all_words(size, n)) {
    if (pred(w)) out.insert(w);
  }
  return out;
}

/// Number of classes of words in `probes` under "same positive witnesses among
/// `witnesses`", computed with plain sets.
inline std::size_t count_classes(const std::vector<Word>& probes, const std::vector<Word>& witnesses,
                                 const std::function<bool(const Word&)>& member) {
  std::set<std::vector<bool>> seen;
  for (const auto& u : probes) {
    std::vector<bool> sig;
    for (const auto& w : witnesses) {
      Word uw = u;
      uw.insert(uw.end(), w.begin(), w.end());
      sig.push_back(member(uw));
    }
    seen.insert(sig);
  }
  return seen.size();
}

}  // namespace oracle

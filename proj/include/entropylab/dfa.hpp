#pragma once

#include <deque>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "entropylab/language.hpp"

namespace entropylab {

/// Total deterministic finite automaton over a named alphabet.
struct Dfa {
  Alphabet alphabet;
  std::vector<std::string> state_names;
  std::vector<std::size_t> delta;  // delta[q * |Σ| + a]
  std::size_t initial = 0;
  std::vector<bool> finals;

  std::size_t num_states() const noexcept { return state_names.size(); }

  std::size_t step(std::size_t q, Symbol a) const { return delta[q * alphabet.size() + a]; }

  std::size_t run(std::size_t q, WordView w) const {
    for (Symbol a : w) q = step(q, a);
    return q;
  }

  bool accepts(WordView w) const { return finals[run(initial, w)]; }

  void validate() const {
    const auto n = num_states();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "dfa: no states");
    if (delta.size() != n * alphabet.size()) throw Error(ErrorKind::InvalidArgument, "dfa: transition table not total");
    if (finals.size() != n) throw Error(ErrorKind::InvalidArgument, "dfa: final-set size mismatch");
    if (initial >= n) throw Error(ErrorKind::InvalidArgument, "dfa: bad initial state");
    for (auto t : delta) {
      if (t >= n) throw Error(ErrorKind::InvalidArgument, "dfa: transition to unknown state");
    }
  }

  /// Length-lex-least access word of every reachable state (nullopt-free:
  /// unreachable states are absent from the map).
  std::map<std::size_t, Word> access_words() const {
    std::map<std::size_t, Word> out;
    std::deque<std::size_t> queue{initial};
    out.emplace(initial, Word{});
    while (!queue.empty()) {
      const auto q = queue.front();
      queue.pop_front();
      for (Symbol a = 0; a < alphabet.size(); ++a) {
        const auto p = step(q, a);
        if (out.count(p)) continue;
        Word w = out[q];
        w.push_back(a);
        out.emplace(p, std::move(w));
        queue.push_back(p);
      }
    }
    return out;
  }
};

inline Language dfa_language(const Dfa& dfa, std::string descriptor = "dfa") {
  return Language(dfa.alphabet, [dfa](WordView w) { return dfa.accepts(w); }, std::move(descriptor));
}

/// Uniformly random total DFA with `states` states; state 0 is initial.
template <typename Rng>
Dfa random_dfa(const Alphabet& alphabet, std::size_t states, Rng& rng) {
  Dfa dfa;
  dfa.alphabet = alphabet;
  for (std::size_t q = 0; q < states; ++q) dfa.state_names.push_back("q" + std::to_string(q));
  std::uniform_int_distribution<std::size_t> pick(0, states - 1);
  std::bernoulli_distribution coin(0.5);
  dfa.delta.resize(states * alphabet.size());
  for (auto& t : dfa.delta) t = pick(rng);
  dfa.finals.resize(states);
  for (std::size_t q = 0; q < states; ++q) dfa.finals[q] = coin(rng);
  return dfa;
}

/// Bounded Moore refinement: after `rounds` rounds two states share a block
/// iff no input of length ≤ rounds separates them. Returns the block id of
/// every state (ids are dense, in order of first appearance).
inline std::vector<std::size_t> moore_blocks(const Dfa& dfa, std::size_t rounds) {
  const auto n = dfa.num_states();
  std::vector<std::size_t> block(n);
  std::size_t block_count = 0;
  {
    std::map<bool, std::size_t> ids;
    for (std::size_t q = 0; q < n; ++q) block[q] = ids.emplace(dfa.finals[q], ids.size()).first->second;
    block_count = ids.size();
  }
  for (std::size_t r = 0; r < rounds; ++r) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<std::size_t> key{block[q]};
      for (Symbol a = 0; a < dfa.alphabet.size(); ++a) key.push_back(block[dfa.step(q, a)]);
      next[q] = ids.emplace(std::move(key), ids.size()).first->second;
    }
    block = std::move(next);
    // a refinement with the same number of blocks is the same partition
    if (ids.size() == block_count) break;
    block_count = ids.size();
  }
  return block;
}

}  // namespace entropylab

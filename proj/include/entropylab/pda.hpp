#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "entropylab/dfa.hpp"
#include "entropylab/language.hpp"
#include "entropylab/nerode.hpp"

namespace entropylab {

/// Top-of-stack value in a transition key; `kEmptyTop` matches an empty stack.
inline constexpr int kEmptyTop = -1;
/// Input value of an ε-transition.
inline constexpr int kEpsilon = -1;

struct PdaKey {
  std::vector<int> tops;  // one entry per stack: symbol index or kEmptyTop
  std::size_t state = 0;
  int input = kEpsilon;

  friend auto operator<=>(const PdaKey&, const PdaKey&) = default;
};

struct PdaAction {
  std::size_t to = 0;
  std::vector<Word> push;  // replacement r_i; new stack i = r_i · tail(old stack i)
};

/// Configuration of a k-stack PDA. Stacks are written top first.
struct PdaConfig {
  std::size_t state = 0;
  std::vector<Word> stacks;

  friend auto operator<=>(const PdaConfig&, const PdaConfig&) = default;
};

/// Deterministic k-stack PDA. Missing transitions lead to an implicit
/// non-final sink state with index `states.size()`.
struct MultiStackPda {
  std::vector<std::string> states;
  Alphabet input;
  std::vector<Alphabet> stacks;
  std::size_t initial = 0;
  std::vector<bool> finals;
  bool epsilon_free = true;
  std::map<PdaKey, PdaAction> transitions;

  std::size_t sink() const noexcept { return states.size(); }
  std::size_t stack_count() const noexcept { return stacks.size(); }

  bool is_final(std::size_t q) const { return q < finals.size() && finals[q]; }

  PdaConfig initial_config() const { return {initial, std::vector<Word>(stacks.size())}; }

  /// True when every (state, tops, input) combination has a transition.
  bool is_total() const {
    std::uint64_t combos = states.size() * input.size();
    for (const auto& g : stacks) combos *= g.size() + 1;
    std::uint64_t present = 0;
    for (const auto& [key, action] : transitions) present += key.input != kEpsilon;
    return present == combos;
  }

  /// Adds a transition, rejecting duplicates and malformed symbols.
  void add(PdaKey key, PdaAction action) {
    if (key.state >= states.size() || action.to >= states.size()) {
      throw Error(ErrorKind::BadSymbol, "transition references an unknown state");
    }
    if (key.tops.size() != stacks.size() || action.push.size() != stacks.size()) {
      throw Error(ErrorKind::BadSymbol, "transition must name one top and one push word per stack");
    }
    if (key.input != kEpsilon && (key.input < 0 || static_cast<std::size_t>(key.input) >= input.size())) {
      throw Error(ErrorKind::BadSymbol, "transition input symbol out of range");
    }
    for (std::size_t i = 0; i < stacks.size(); ++i) {
      if (key.tops[i] != kEmptyTop && (key.tops[i] < 0 || static_cast<std::size_t>(key.tops[i]) >= stacks[i].size())) {
        throw Error(ErrorKind::BadSymbol, "stack top out of range");
      }
      if (!stacks[i].valid(action.push[i])) throw Error(ErrorKind::BadSymbol, "push word over foreign stack alphabet");
    }
    if (key.input == kEpsilon && epsilon_free) {
      throw Error(ErrorKind::EpsilonInEpsilonFree, "ε-transition in state '" + states[key.state] + "'");
    }
    if (transitions.count(key)) {
      throw Error(ErrorKind::NondeterministicKey, "two transitions from state '" + states[key.state] + "'");
    }
    transitions.emplace(std::move(key), std::move(action));
  }

  /// Re-checks determinism and ε-freeness of the whole table.
  void validate() const {
    if (initial >= states.size()) throw Error(ErrorKind::BadSymbol, "bad initial state");
    if (finals.size() != states.size()) throw Error(ErrorKind::BadSymbol, "final flags size mismatch");
    for (const auto& [key, action] : transitions) {
      if (key.input == kEpsilon) {
        if (epsilon_free) throw Error(ErrorKind::EpsilonInEpsilonFree, "ε-transition in state '" + states[key.state] + "'");
        // an ε-move must not compete with an input move on the same tops
        for (int a = 0; a < static_cast<int>(input.size()); ++a) {
          if (transitions.count(PdaKey{key.tops, key.state, a})) {
            throw Error(ErrorKind::NondeterministicKey, "ε-move competes with input move in state '" +
                                                             states[key.state] + "'");
          }
        }
      }
    }
  }

  std::vector<int> tops_of(const PdaConfig& c) const {
    std::vector<int> tops(c.stacks.size());
    for (std::size_t i = 0; i < c.stacks.size(); ++i) {
      tops[i] = c.stacks[i].empty() ? kEmptyTop : static_cast<int>(c.stacks[i].front());
    }
    return tops;
  }

  /// One ⊢ step on input symbol a; the sink absorbs everything.
  PdaConfig step(const PdaConfig& c, Symbol a) const {
    if (c.state == sink()) return c;
    auto it = transitions.find(PdaKey{tops_of(c), c.state, static_cast<int>(a)});
    if (it == transitions.end()) return {sink(), c.stacks};
    PdaConfig next{it->second.to, {}};
    next.stacks.reserve(c.stacks.size());
    for (std::size_t i = 0; i < c.stacks.size(); ++i) {
      Word s = it->second.push[i];
      if (!c.stacks[i].empty()) s.insert(s.end(), c.stacks[i].begin() + 1, c.stacks[i].end());
      next.stacks.push_back(std::move(s));
    }
    return next;
  }

  PdaConfig run(PdaConfig c, WordView w) const {
    for (Symbol a : w) c = step(c, a);
    return c;
  }
};

struct PdaRunResult {
  bool accepted = false;
  PdaConfig final_config;
};

inline PdaRunResult pda_run(const MultiStackPda& pda, WordView w) {
  if (!pda.epsilon_free) throw Error(ErrorKind::InvalidArgument, "pda_run needs an ε-free automaton");
  if (!pda.input.valid(w)) throw ContractViolation("pda_run: word over foreign alphabet");
  auto c = pda.run(pda.initial_config(), w);
  return {pda.is_final(c.state), std::move(c)};
}

inline Language pda_oracle(const MultiStackPda& pda, std::string descriptor = "pda") {
  pda.validate();
  if (!pda.epsilon_free) throw Error(ErrorKind::InvalidArgument, "pda_oracle needs an ε-free automaton");
  return Language(
      pda.input, [pda](WordView w) { return pda.is_final(pda.run(pda.initial_config(), w).state); },
      std::move(descriptor));
}

/// A DFA as a 0-stack PDA.
inline MultiStackPda pda_from_dfa(const Dfa& dfa) {
  MultiStackPda pda;
  pda.states = dfa.state_names;
  pda.input = dfa.alphabet;
  pda.initial = dfa.initial;
  pda.finals = dfa.finals;
  for (std::size_t q = 0; q < dfa.num_states(); ++q) {
    for (Symbol a = 0; a < dfa.alphabet.size(); ++a) {
      pda.add(PdaKey{{}, q, static_cast<int>(a)}, PdaAction{dfa.step(q, a), {}});
    }
  }
  return pda;
}

/// π_n applied to every stack.
inline PdaConfig truncate(const PdaConfig& c, std::size_t n) {
  PdaConfig t{c.state, {}};
  for (const auto& s : c.stacks) t.stacks.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(std::min(n, s.size())));
  return t;
}

/// Acceptance of every witness in `witnesses`, started from `c`.
inline WitnessSignature config_signature(const MultiStackPda& pda, const PdaConfig& c,
                                         const std::vector<Word>& witnesses, std::size_t n) {
  WitnessSignature sig(n, witnesses.size());
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (pda.is_final(pda.run(c, witnesses[i]).state)) sig.set(i);
  }
  return sig;
}

struct PdaLimits {
  std::size_t max_configs = 2'000'000;
};

/// All configurations reachable from the initial one by inputs of length ≤
/// `explore_len` (the sink included when reachable).
inline std::set<PdaConfig> reachable_configs(const MultiStackPda& pda, std::size_t explore_len,
                                             const PdaLimits& limits = {}) {
  std::set<PdaConfig> seen{pda.initial_config()};
  std::vector<PdaConfig> frontier{pda.initial_config()};
  for (std::size_t len = 0; len < explore_len && !frontier.empty(); ++len) {
    std::vector<PdaConfig> next;
    for (const auto& c : frontier) {
      for (Symbol a = 0; a < pda.input.size(); ++a) {
        auto d = pda.step(c, a);
        if (seen.insert(d).second) {
          if (seen.size() > limits.max_configs) {
            throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(limits.max_configs) +
                                                       " reachable configurations");
          }
          next.push_back(std::move(d));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

struct LambdaResult {
  std::size_t count = 0;                     // distinct Λ_n signatures among reachable configurations
  boost::multiprecision::cpp_int bound;      // |Q| · ∏ |Γ_i^(n)|, Q counting the sink if used
  std::size_t reachable = 0;
  std::size_t truncated = 0;
};

/// Counts Λ_n classes of reachable configurations: explores exact
/// configurations, truncates stacks to depth n, and groups the truncated
/// configurations by acceptance signature over Σ^(n).
inline LambdaResult lambda_index(const MultiStackPda& pda, std::size_t n, std::size_t explore_len,
                                 const PdaLimits& limits = {}) {
  pda.validate();
  if (!pda.epsilon_free) throw Error(ErrorKind::InvalidArgument, "lambda_index needs an ε-free automaton");
  if (explore_len < n) throw Error(ErrorKind::InvalidArgument, "explore_len must be at least n");
  const auto configs = reachable_configs(pda, explore_len, limits);
  std::set<PdaConfig> truncated;
  for (const auto& c : configs) truncated.insert(truncate(c, n));
  const auto witnesses = enumerate_words(pda.input, n);
  std::unordered_set<WitnessSignature, WitnessSignature::Hash> classes;
  for (const auto& t : truncated) classes.insert(config_signature(pda, t, witnesses, n));

  LambdaResult r;
  r.count = classes.size();
  r.reachable = configs.size();
  r.truncated = truncated.size();
  r.bound = pda.states.size() + (pda.is_total() ? 0 : 1);
  for (const auto& g : pda.stacks) r.bound *= count_words_upto(g.size(), n);
  return r;
}

struct TruncationReport {
  std::size_t groups = 0;      // distinct truncated configurations
  std::size_t violations = 0;  // groups whose members disagree on some witness
};

/// Checks that configurations agreeing on state and top-n stack symbols accept
/// exactly the same witnesses of length ≤ n.
inline TruncationReport truncation_check(const MultiStackPda& pda, std::size_t n, std::size_t explore_len,
                                         const PdaLimits& limits = {}) {
  const auto configs = reachable_configs(pda, explore_len, limits);
  const auto witnesses = enumerate_words(pda.input, n);
  std::map<PdaConfig, WitnessSignature> first;
  TruncationReport report;
  std::set<PdaConfig> bad;
  for (const auto& c : configs) {
    auto sig = config_signature(pda, c, witnesses, n);
    auto key = truncate(c, n);
    auto [it, inserted] = first.emplace(key, sig);
    if (!inserted && !(it->second == sig)) bad.insert(key);
  }
  report.groups = first.size();
  report.violations = bad.size();
  return report;
}

}  // namespace entropylab

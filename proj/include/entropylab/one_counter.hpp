#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "entropylab/language.hpp"
#include "entropylab/nerode.hpp"

namespace entropylab {

struct OcKey {
  bool zero = false;
  std::size_t state = 0;
  int input = -1;  // -1 is ε

  friend auto operator<=>(const OcKey&, const OcKey&) = default;
};

struct OcMove {
  std::size_t to = 0;
  std::int64_t delta = 0;
};

/// (state, counter). The diverged state p_∞ carries counter -1, read as ∞.
struct OcValue {
  std::size_t state = 0;
  std::int64_t counter = 0;

  friend auto operator<=>(const OcValue&, const OcValue&) = default;
};

struct OcLimits {
  std::uint64_t max_steps = 10'000;
  std::int64_t max_counter = 10'000;
};

/// Deterministic 1-counter automaton with ε-moves. Missing moves lead to a
/// non-final sink (index |Q|); divergent runs end in p_∞ (index |Q|+1).
struct OneCounterEps {
  std::vector<std::string> states;
  Alphabet input;
  std::size_t initial = 0;
  std::vector<bool> finals;
  std::map<OcKey, OcMove> moves;
  OcLimits limits;

  std::size_t sink() const noexcept { return states.size(); }
  std::size_t diverged() const noexcept { return states.size() + 1; }
  bool is_final(std::size_t q) const { return q < finals.size() && finals[q]; }

  std::string state_name(std::size_t q) const {
    if (q == sink()) return "sink";
    if (q == diverged()) return "p_inf";
    return states.at(q);
  }

  void add(OcKey key, OcMove move) {
    if (key.state >= states.size() || move.to >= states.size()) {
      throw Error(ErrorKind::BadSymbol, "move references an unknown state");
    }
    if (key.input != -1 && (key.input < 0 || static_cast<std::size_t>(key.input) >= input.size())) {
      throw Error(ErrorKind::BadSymbol, "move input symbol out of range");
    }
    if (move.delta < (key.zero ? 0 : -1)) {
      throw Error(ErrorKind::BadSymbol, "counter delta below what the top allows in state '" + states[key.state] + "'");
    }
    if (!moves.emplace(key, move).second) {
      throw Error(ErrorKind::NondeterministicKey, "two moves from state '" + states[key.state] + "'");
    }
  }

  void validate() const {
    if (initial >= states.size()) throw Error(ErrorKind::BadSymbol, "bad initial state");
    if (finals.size() != states.size()) throw Error(ErrorKind::BadSymbol, "final flags size mismatch");
    for (const auto& [key, move] : moves) {
      if (key.input != -1) continue;
      for (int a = 0; a < static_cast<int>(input.size()); ++a) {
        if (moves.count(OcKey{key.zero, key.state, a})) {
          throw Error(ErrorKind::NondeterministicKey,
                      "ε-move competes with input move in state '" + states[key.state] + "'");
        }
      }
    }
  }

  const OcMove* find(bool zero, std::size_t q, int a) const {
    auto it = moves.find(OcKey{zero, q, a});
    return it == moves.end() ? nullptr : &it->second;
  }

  /// Runs from (q, c): consumes `a` when given, then ε-moves to quiescence.
  OcValue run(std::size_t q, std::int64_t c, std::optional<Symbol> a) const {
    if (q == sink()) return {q, c};
    if (q == diverged()) return {q, -1};
    bool consumed = !a.has_value();
    std::set<std::tuple<std::size_t, std::int64_t, bool>> seen;
    std::map<std::pair<std::size_t, bool>, std::int64_t> since_zero;
    for (std::uint64_t step = 0;; ++step) {
      if (step > limits.max_steps || c > limits.max_counter) {
        throw Error(ErrorKind::StepBudgetExceeded, "ε-run from state '" + states[q] + "' exceeded the step budget");
      }
      const bool zero = c == 0;
      if (zero) {
        since_zero.clear();
      } else {
        auto [it, inserted] = since_zero.try_emplace({q, consumed}, c);
        if (!inserted) {
          // same state without a zero test in between and no lower counter
          if (it->second <= c) return {diverged(), -1};
          it->second = c;
        }
      }
      if (!seen.emplace(q, c, consumed).second) return {diverged(), -1};
      if (const auto* eps = find(zero, q, -1)) {
        q = eps->to;
        c += eps->delta;
        continue;
      }
      if (!consumed) {
        consumed = true;
        const auto* mv = find(zero, q, static_cast<int>(*a));
        if (!mv) return {sink(), c};
        q = mv->to;
        c += mv->delta;
        continue;
      }
      return {q, c};
    }
  }

  OcValue start() const { return run(initial, 0, std::nullopt); }

  OcValue run_word(OcValue v, WordView w) const {
    for (Symbol a : w) v = run(v.state, v.counter, a);
    return v;
  }
};

/// α((q,c),a).
inline OcValue oc_alpha(const OneCounterEps& oc, std::size_t q, std::int64_t c, Symbol a) {
  return oc.run(q, c, a);
}

inline Language oc_oracle(const OneCounterEps& oc, std::string descriptor = "onecounter") {
  oc.validate();
  return Language(
      oc.input, [oc](WordView w) { return oc.is_final(oc.run_word(oc.start(), w).state); },
      std::move(descriptor));
}

struct AffineTail {
  std::int64_t C = 0;
  std::int64_t m = 0;
  std::size_t target = 0;
};

struct PeriodicTail {
  std::int64_t C = 0;
  std::int64_t k = 1;
  std::vector<OcValue> table;  // indexed by c mod k
};

struct DivergentTail {
  std::int64_t C = 0;
};

struct ClosureBehavior {
  std::size_t state = 0;
  Symbol input = 0;
  std::vector<OcValue> exceptional;  // values for c < C
  std::variant<AffineTail, PeriodicTail, DivergentTail> tail;

  std::int64_t threshold() const {
    return std::visit([](const auto& t) { return t.C; }, tail);
  }

  OcValue at(const OneCounterEps& oc, std::int64_t c) const {
    if (c < threshold()) return exceptional.at(static_cast<std::size_t>(c));
    if (const auto* a = std::get_if<AffineTail>(&tail)) return {a->target, c + a->m};
    if (const auto* p = std::get_if<PeriodicTail>(&tail)) return p->table[static_cast<std::size_t>(c % p->k)];
    return {oc.diverged(), -1};
  }
};

/// Classifies α((q,·),a) by following the ε-path taken for all large
/// counters symbolically, then fixing the threshold by direct simulation.
inline ClosureBehavior oc_closure(const OneCounterEps& oc, std::size_t q, Symbol a) {
  std::size_t s = q;
  bool consumed = false;
  std::int64_t d = 0;
  std::int64_t min_d = 0;
  std::map<std::pair<std::size_t, bool>, std::int64_t> visited;
  enum class End { Quiescent, Sink, Cycle } end;
  std::int64_t gain = 0;
  for (;;) {
    auto [it, inserted] = visited.try_emplace({s, consumed}, d);
    if (!inserted) {
      end = End::Cycle;
      gain = d - it->second;
      break;
    }
    min_d = std::min(min_d, d);
    if (const auto* eps = oc.find(false, s, -1)) {
      s = eps->to;
      d += eps->delta;
      continue;
    }
    if (!consumed) {
      consumed = true;
      const auto* mv = oc.find(false, s, static_cast<int>(a));
      if (!mv) {
        end = End::Sink;
        break;
      }
      s = mv->to;
      d += mv->delta;
      continue;
    }
    end = End::Quiescent;
    break;
  }
  std::int64_t C = 1 - min_d;  // every visited counter c + d stays ≥ 1
  auto direct = [&](std::int64_t c) { return oc_alpha(oc, q, c, a); };

  ClosureBehavior b;
  b.state = q;
  b.input = a;
  if (end != End::Cycle) {
    AffineTail t{C, d, end == End::Sink ? oc.sink() : s};
    while (t.C > 0 && direct(t.C - 1) == OcValue{t.target, t.C - 1 + t.m}) --t.C;
    b.tail = t;
  } else if (gain >= 0) {
    DivergentTail t{C};
    while (t.C > 0 && direct(t.C - 1).state == oc.diverged()) --t.C;
    b.tail = t;
  } else {
    std::int64_t k = -gain;
    const std::int64_t base = (C + k - 1) / k * k;
    std::vector<OcValue> table;
    for (std::int64_t r = 0; r < k; ++r) table.push_back(direct(base + r));
    for (std::int64_t r = 0; r < k; ++r) {
      if (!(direct(base + k + r) == table[static_cast<std::size_t>(r)])) {
        throw std::logic_error("oc_closure: residue table is not periodic");
      }
    }
    // shrink to the least period dividing k
    for (std::int64_t p = 1; p < k; ++p) {
      if (k % p) continue;
      bool ok = true;
      for (std::int64_t r = 0; r < k && ok; ++r) ok = table[static_cast<std::size_t>(r)] == table[static_cast<std::size_t>(r % p)];
      if (ok) {
        table.resize(static_cast<std::size_t>(p));
        k = p;
        break;
      }
    }
    // table is indexed by (base + r) mod k = r since k divides base
    PeriodicTail t{C, k, std::move(table)};
    while (t.C > 0 && direct(t.C - 1) == t.table[static_cast<std::size_t>((t.C - 1) % t.k)]) --t.C;
    b.tail = std::move(t);
  }
  for (std::int64_t c = 0; c < b.threshold(); ++c) b.exceptional.push_back(direct(c));
  return b;
}

struct OneCounterParams {
  std::int64_t C = 0;  // largest threshold over all closures
  std::int64_t M = 1;
  std::set<std::int64_t> K;
  std::vector<ClosureBehavior> closures;

  std::int64_t lcm_k() const {
    std::int64_t l = 1;
    for (auto k : K) l = std::lcm(l, k);
    return l;
  }
};

inline OneCounterParams oc_params(const OneCounterEps& oc) {
  oc.validate();
  OneCounterParams p;
  for (std::size_t q = 0; q < oc.states.size(); ++q) {
    for (Symbol a = 0; a < oc.input.size(); ++a) {
      auto b = oc_closure(oc, q, a);
      p.C = std::max(p.C, b.threshold());
      if (const auto* t = std::get_if<AffineTail>(&b.tail)) p.M = std::max(p.M, -t->m);
      if (const auto* t = std::get_if<PeriodicTail>(&b.tail)) p.K.insert(t->k);
      p.closures.push_back(std::move(b));
    }
  }
  return p;
}

struct OcViolation {
  std::size_t state = 0;
  std::int64_t c = 0;
  std::int64_t c2 = 0;
  Word witness;
};

struct OcLambdaReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::int64_t floor = 0;  // sampled counters are strictly above this
  std::vector<OcViolation> violations;
};

/// Samples pairs (q,c),(q,c') with c ≡ c' mod lcm K and c, c' > 𝑴·n + 𝑪,
/// and compares acceptance over Σ^(n).
inline OcLambdaReport oc_lambda_check(const OneCounterEps& oc, std::size_t n, std::size_t samples,
                                      std::uint64_t seed = 0) {
  const auto params = oc_params(oc);
  const std::int64_t L = params.lcm_k();
  OcLambdaReport report;
  report.n = n;
  report.samples = samples;
  report.floor = params.M * static_cast<std::int64_t>(n) + params.C;
  const auto witnesses = enumerate_words(oc.input, n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_state(0, oc.states.size());  // last index is p_∞
  std::uniform_int_distribution<std::int64_t> pick_offset(1, 4 * L + 8);
  std::uniform_int_distribution<std::int64_t> pick_shift(1, 4);
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t q = pick_state(rng);
    if (q == oc.states.size()) q = oc.diverged();
    const std::int64_t c = report.floor + pick_offset(rng);
    const std::int64_t c2 = c + L * pick_shift(rng);
    for (const auto& w : witnesses) {
      bool x = oc.is_final(oc.run_word({q, c}, w).state);
      bool y = oc.is_final(oc.run_word({q, c2}, w).state);
      if (x != y) {
        report.violations.push_back({q, c, c2, w});
        break;
      }
    }
  }
  return report;
}

}  // namespace entropylab

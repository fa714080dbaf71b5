#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "entropylab/dfa.hpp"
#include "entropylab/language.hpp"

namespace entropylab {

/// P_u^(n) as a bit vector over the canonical enumeration of Σ^(n)
/// (for unary languages: witness lengths 0…n).
class WitnessSignature {
 public:
  WitnessSignature() = default;
  WitnessSignature(std::size_t n, std::size_t bit_count)
      : n_(n), bit_count_(bit_count), blocks_((bit_count + 63) / 64, 0) {}

  std::size_t horizon() const noexcept { return n_; }
  std::size_t size() const noexcept { return bit_count_; }

  bool test(std::size_t i) const { return (blocks_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { blocks_[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(__builtin_popcountll(b));
    return c;
  }

  std::string bits() const {
    std::string out(bit_count_, '0');
    for (std::size_t i = 0; i < bit_count_; ++i) out[i] = test(i) ? '1' : '0';
    return out;
  }

  friend bool operator==(const WitnessSignature&, const WitnessSignature&) = default;

  struct Hash {
    std::size_t operator()(const WitnessSignature& s) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.bit_count_;
      for (auto b : s.blocks_) {
        h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

 private:
  std::size_t n_ = 0;
  std::size_t bit_count_ = 0;
  std::vector<std::uint64_t> blocks_;
};

template <typename Rep>
struct ClassEntry {
  Rep representative;  // length-lex (or numerically) least probe with this signature
  std::size_t probe_count = 0;
  WitnessSignature signature;
};

/// Distinct horizon-n witness signatures found among a probe set. Without
/// `certified` the size is only a lower bound on ind Θ_n.
template <typename Rep>
struct BasicClassTable {
  std::size_t n = 0;
  std::vector<ClassEntry<Rep>> entries;
  bool certified = false;

  std::size_t index() const noexcept { return entries.size(); }
};

using ClassTable = BasicClassTable<Word>;
using UnaryClassTable = BasicClassTable<Natural>;

struct ExhaustiveUpTo {
  std::size_t max_length = 0;
};

/// Finite set of prefixes to classify; duplicates are ignored.
using ProbeSet = std::variant<ExhaustiveUpTo, std::vector<Word>>;

/// Membership-query cap for a single class-table computation.
struct QueryBudget {
  std::uint64_t max_queries = 100'000'000;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

inline void charge(std::uint64_t queries, const QueryBudget& budget, const std::string& what) {
  if (queries > budget.max_queries) {
    throw Error(ErrorKind::BudgetExceeded, what + " needs " + std::to_string(queries) +
                                               " membership queries, budget is " +
                                               std::to_string(budget.max_queries));
  }
}

template <typename Rep, typename Less>
BasicClassTable<Rep> group_by_signature(std::size_t n, std::vector<std::pair<Rep, WitnessSignature>> rows,
                                        Less less) {
  std::unordered_map<WitnessSignature, std::size_t, WitnessSignature::Hash> slot;
  BasicClassTable<Rep> table;
  table.n = n;
  for (auto& [rep, sig] : rows) {
    auto [it, inserted] = slot.emplace(sig, table.entries.size());
    if (inserted) {
      table.entries.push_back({std::move(rep), 1, std::move(sig)});
    } else {
      auto& e = table.entries[it->second];
      ++e.probe_count;
      if (less(rep, e.representative)) e.representative = std::move(rep);
    }
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [&](const auto& a, const auto& b) { return less(a.representative, b.representative); });
  return table;
}

}  // namespace detail

/// Bit i set iff u·w_i ∈ L, w_i the i-th word of Σ^(n).
inline WitnessSignature witness_signature(const Language& lang, WordView u,
                                          const std::vector<Word>& witnesses, std::size_t n) {
  WitnessSignature sig(n, witnesses.size());
  Word buffer(u.begin(), u.end());
  const auto base = buffer.size();
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    buffer.resize(base);
    buffer.insert(buffer.end(), witnesses[i].begin(), witnesses[i].end());
    if (lang.contains(buffer)) sig.set(i);
  }
  return sig;
}

inline WitnessSignature witness_signature(const Language& lang, WordView u, std::size_t n) {
  return witness_signature(lang, u, enumerate_words(lang.alphabet(), n), n);
}

inline WitnessSignature witness_signature_unary(const UnaryLanguage& lang, const Natural& u, std::size_t n) {
  WitnessSignature sig(n, n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    if (lang.contains(u + j)) sig.set(j);
  }
  return sig;
}

inline std::vector<Word> materialize(const Alphabet& alphabet, const ProbeSet& probes) {
  if (const auto* ex = std::get_if<ExhaustiveUpTo>(&probes)) return enumerate_words(alphabet, ex->max_length);
  auto words = std::get<std::vector<Word>>(probes);
  for (const auto& w : words) {
    if (!alphabet.valid(w)) throw ContractViolation("probe over foreign alphabet");
  }
  std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) { return length_lex_less(a, b); });
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

inline std::uint64_t probe_count(const Alphabet& alphabet, const ProbeSet& probes) {
  if (const auto* ex = std::get_if<ExhaustiveUpTo>(&probes)) return count_words_upto(alphabet.size(), ex->max_length);
  return std::get<std::vector<Word>>(probes).size();
}

/// Groups the probes by horizon-n witness signature. The entry count is a
/// lower bound on ind Θ_n(L) and never decreases as probes are added.
inline ClassTable theta_index(const Language& lang, std::size_t n, const ProbeSet& probes,
                              const QueryBudget& budget = {}) {
  const auto& alphabet = lang.alphabet();
  const auto witness_count = count_words_upto(alphabet.size(), n);
  detail::charge(detail::saturating_mul(probe_count(alphabet, probes), witness_count), budget,
                 "theta_index(" + lang.descriptor() + ", n=" + std::to_string(n) + ")");
  const auto witnesses = enumerate_words(alphabet, n);
  const auto words = materialize(alphabet, probes);
  std::vector<std::pair<Word, WitnessSignature>> rows;
  rows.reserve(words.size());
  for (const auto& u : words) rows.emplace_back(u, witness_signature(lang, u, witnesses, n));
  return detail::group_by_signature(n, std::move(rows),
                                    [](const Word& a, const Word& b) { return length_lex_less(a, b); });
}

/// Unary counterpart; signatures over witness lengths 0…n, so the entry count
/// never exceeds 2^(n+1).
inline UnaryClassTable theta_index_unary(const UnaryLanguage& lang, std::size_t n, std::vector<Natural> probes,
                                         const QueryBudget& budget = {}) {
  detail::charge(detail::saturating_mul(probes.size(), n + 1), budget,
                 "theta_index_unary(" + lang.descriptor() + ", n=" + std::to_string(n) + ")");
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  std::vector<std::pair<Natural, WitnessSignature>> rows;
  rows.reserve(probes.size());
  for (auto& u : probes) {
    auto sig = witness_signature_unary(lang, u, n);
    rows.emplace_back(std::move(u), std::move(sig));
  }
  return detail::group_by_signature(n, std::move(rows), std::less<Natural>{});
}

inline std::vector<Natural> unary_range(std::uint64_t max_inclusive) {
  std::vector<Natural> out;
  out.reserve(max_inclusive + 1);
  for (std::uint64_t i = 0; i <= max_inclusive; ++i) out.emplace_back(i);
  return out;
}

/// Exact ind Θ_n for a DFA language: reachable states grouped by bounded
/// Moore refinement with n rounds.
inline ClassTable dfa_theta_index(const Dfa& dfa, std::size_t n) {
  dfa.validate();
  const auto access = dfa.access_words();
  const auto blocks = moore_blocks(dfa, n);
  const auto witnesses = enumerate_words(dfa.alphabet, n);
  std::unordered_map<std::size_t, std::size_t> slot;
  ClassTable table;
  table.n = n;
  table.certified = true;
  for (const auto& [q, word] : access) {
    auto [it, inserted] = slot.emplace(blocks[q], table.entries.size());
    if (inserted) {
      WitnessSignature sig(n, witnesses.size());
      for (std::size_t i = 0; i < witnesses.size(); ++i) {
        if (dfa.finals[dfa.run(q, witnesses[i])]) sig.set(i);
      }
      table.entries.push_back({word, 1, std::move(sig)});
    } else {
      auto& e = table.entries[it->second];
      ++e.probe_count;
      if (length_lex_less(word, e.representative)) e.representative = word;
    }
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const auto& a, const auto& b) { return length_lex_less(a.representative, b.representative); });
  return table;
}

// ---------------------------------------------------------------------------
// Entropy sequences
// ---------------------------------------------------------------------------

/// One row of the finite h_n = log2(ind)/n sequence (a limsup proxy only).
struct EntropyRow {
  std::size_t n = 0;
  std::uint64_t index = 1;
  bool certified = false;
  double h = 0.0;

  friend bool operator==(const EntropyRow&, const EntropyRow&) = default;
};

inline EntropyRow make_row(std::size_t n, std::uint64_t index, bool certified) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "h_0 is undefined");
  if (index == 0) throw Error(ErrorKind::InvalidArgument, "index must be positive");
  return {n, index, certified, std::log2(static_cast<double>(index)) / static_cast<double>(n)};
}

using ProbePolicy = std::function<ProbeSet(std::size_t n)>;

inline ProbePolicy default_probe_policy(std::size_t extra = 2) {
  return [extra](std::size_t n) -> ProbeSet { return ExhaustiveUpTo{n + extra}; };
}

inline std::vector<EntropyRow> entropy_sequence(const Language& lang, std::size_t n_max, const ProbePolicy& policy,
                                                const QueryBudget& budget = {}) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be at least 1");
  std::vector<EntropyRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto table = theta_index(lang, n, policy(n), budget);
    rows.push_back(make_row(n, table.index(), table.certified));
  }
  return rows;
}

using UnaryProbePolicy = std::function<std::vector<Natural>(std::size_t n)>;

inline std::vector<EntropyRow> entropy_sequence_unary(const UnaryLanguage& lang, std::size_t n_max,
                                                      const UnaryProbePolicy& policy, const QueryBudget& budget = {}) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be at least 1");
  std::vector<EntropyRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto table = theta_index_unary(lang, n, policy(n), budget);
    rows.push_back(make_row(n, table.index(), false));
  }
  return rows;
}

inline std::vector<EntropyRow> entropy_sequence_dfa(const Dfa& dfa, std::size_t n_max) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be at least 1");
  std::vector<EntropyRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) rows.push_back(make_row(n, dfa_theta_index(dfa, n).index(), true));
  return rows;
}

/// True when the exhaustive-probe index at horizon n does not change if the
/// probe length grows from M to M+2.
inline bool plateau(const Language& lang, std::size_t n, std::size_t max_length, const QueryBudget& budget = {}) {
  return theta_index(lang, n, ExhaustiveUpTo{max_length}, budget).index() ==
         theta_index(lang, n, ExhaustiveUpTo{max_length + 2}, budget).index();
}

}  // namespace entropylab

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "entropylab/language.hpp"

namespace entropylab {

// ---------------------------------------------------------------------------
// Dyck languages
// ---------------------------------------------------------------------------

/// Dyck_Γ over Γ ∪ Γ̄. `open[i]` and `close[i]` form the i-th pair; the
/// alphabet lists all opening symbols first.
inline Language dyck(const std::vector<std::string>& open, const std::vector<std::string>& close,
                     std::string descriptor = {}) {
  if (open.empty() || open.size() != close.size()) {
    throw Error(ErrorKind::InvalidArgument, "dyck: need matching nonempty open/close lists");
  }
  std::vector<std::string> names = open;
  names.insert(names.end(), close.begin(), close.end());
  if (descriptor.empty()) {
    descriptor = "dyck:";
    for (const auto& s : open) descriptor += s;
  }
  const auto pairs = static_cast<Symbol>(open.size());
  return Language(
      Alphabet(std::move(names)),
      [pairs](WordView w) {
        std::vector<Symbol> stack;
        for (Symbol s : w) {
          if (s < pairs) {
            stack.push_back(s);
          } else {
            if (stack.empty() || stack.back() != s - pairs) return false;
            stack.pop_back();
          }
        }
        return stack.empty();
      },
      std::move(descriptor));
}

/// Single-character pairs; barred symbols are spelled as uppercase twins.
inline Language dyck(std::string_view chars) {
  std::vector<std::string> open, close;
  for (char c : chars) {
    open.emplace_back(1, c);
    close.emplace_back(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return dyck(open, close);
}

/// Γ^(n) ∪ {ā}: one representative per Θ_n class of Dyck_Γ.
inline std::vector<Word> dyck_representatives(std::size_t pairs, std::size_t n) {
  std::vector<Word> out = enumerate_words(pairs, n);
  out.push_back(Word{static_cast<Symbol>(pairs)});
  return out;
}

// ---------------------------------------------------------------------------
// Palindromes
// ---------------------------------------------------------------------------

/// Pali_Σ = { u u^R }.
inline Language pali(const Alphabet& sigma, std::string descriptor = "pali") {
  return Language(
      sigma,
      [](WordView w) {
        if (w.size() % 2 != 0) return false;
        return std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2), w.rbegin());
      },
      std::move(descriptor));
}

/// DPali_Σ = { u # u^R } over Σ ∪ {#}; '#' is appended last.
inline Language dpali(const Alphabet& sigma, std::string descriptor = "dpali", const std::string& hash = "#") {
  if (sigma.contains(hash)) throw Error(ErrorKind::AlphabetMismatch, "dpali: '#' is not fresh");
  auto names = sigma.names();
  names.push_back(hash);
  const auto hash_sym = static_cast<Symbol>(names.size() - 1);
  return Language(
      Alphabet(std::move(names)),
      [hash_sym](WordView w) {
        if (w.size() % 2 == 0) return false;
        const auto mid = w.size() / 2;
        if (w[mid] != hash_sym) return false;
        for (std::size_t i = 0; i < mid; ++i) {
          if (w[i] == hash_sym || w[i] != w[w.size() - 1 - i]) return false;
        }
        return true;
      },
      std::move(descriptor));
}

/// Product alphabet Γ1 × … × Γk; each tuple is named by concatenating the
/// component names.
inline Alphabet product_alphabet(const std::vector<Alphabet>& factors) {
  std::vector<std::string> names{""};
  for (const auto& f : factors) {
    std::vector<std::string> next;
    for (const auto& prefix : names) {
      for (const auto& s : f.names()) next.push_back(prefix + s);
    }
    names = std::move(next);
  }
  return Alphabet(std::move(names));
}

inline Language product_dpali(const std::vector<Alphabet>& factors, std::string descriptor = "pdpali") {
  return dpali(product_alphabet(factors), std::move(descriptor));
}

// ---------------------------------------------------------------------------
// Surjectivity construction
// ---------------------------------------------------------------------------

/// Suitable sequence: k_0 = 1, monotone, k_n ≤ 2 k_{n-1}. Built either from an
/// exact rational x via k_n = max{min{⌈n x⌉, 2^n}, 1} or from explicit values.
class SuitableSequence {
 public:
  static SuitableSequence from_rational(std::uint64_t num, std::uint64_t den) {
    if (num == 0 || den == 0) throw Error(ErrorKind::InvalidArgument, "suitable sequence needs x = p/q > 0");
    const auto g = std::gcd(num, den);
    SuitableSequence s;
    s.num_ = num / g;
    s.den_ = den / g;
    return s;
  }

  static SuitableSequence from_values(std::vector<std::uint64_t> values) {
    if (values.empty() || values[0] != 1) throw Error(ErrorKind::InvalidArgument, "suitable sequence needs k_0 = 1");
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] < values[i - 1] || values[i] > 2 * values[i - 1]) {
        throw Error(ErrorKind::InvalidArgument, "sequence is not suitable at n=" + std::to_string(i));
      }
    }
    SuitableSequence s;
    s.explicit_ = std::move(values);
    return s;
  }

  std::uint64_t k(std::size_t n) const {
    if (!explicit_.empty()) {
      if (n >= explicit_.size()) throw Error(ErrorKind::InvalidArgument, "explicit sequence too short");
      return explicit_[n];
    }
    using u128 = unsigned __int128;
    const u128 prod = static_cast<u128>(n) * num_;
    const u128 ceil = (prod + den_ - 1) / den_;
    const u128 pow = n >= 100 ? ~u128{0} : (u128{1} << n);
    u128 v = std::min(ceil, pow);
    if (v < 1) v = 1;
    if (v > UINT64_MAX) throw Error(ErrorKind::BudgetExceeded, "k_n overflows 64 bits");
    return static_cast<std::uint64_t>(v);
  }

  bool is_rational() const noexcept { return explicit_.empty(); }
  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }

 private:
  std::uint64_t num_ = 1;
  std::uint64_t den_ = 1;
  std::vector<std::uint64_t> explicit_;
};

inline std::uint64_t suitable_ks(std::uint64_t num, std::uint64_t den, std::size_t n) {
  return SuitableSequence::from_rational(num, den).k(n);
}

/// f_n : {0,1}^n → {1,…,k_n}; `w` holds symbols 0/1. The leading letter is
/// applied last: f_{t+1}(a u) is computed from f_t(u).
inline std::uint64_t f_eval(const SuitableSequence& ks, WordView w) {
  std::uint64_t value = 1;
  const auto n = w.size();
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t level = n - i;  // value becomes f_level(w[i..])
    if (w[i] == 1) {
      const auto grown = value + ks.k(level - 1);
      if (grown <= ks.k(level)) value = grown;
    } else if (w[i] != 0) {
      throw ContractViolation("f_eval: word over {0,1} expected");
    }
  }
  return value;
}

/// φ_n(w) = { i ∈ 1..k_n | w_i = 1 } for |w| = 2^n.
inline std::vector<std::uint64_t> phi_eval(const SuitableSequence& ks, std::size_t n, WordView w) {
  if (n >= 63 || w.size() != (std::size_t{1} << n)) {
    throw Error(ErrorKind::InvalidArgument, "phi_eval: word length must be 2^n");
  }
  std::vector<std::uint64_t> out;
  const auto kn = ks.k(n);
  for (std::uint64_t i = 1; i <= kn; ++i) {
    if (w[i - 1] == 1) out.push_back(i);
  }
  return out;
}

/// Words x·w with |x| = 2^t, |w| = t; member iff f_t(w) ∈ φ_t(x).
inline Language surj_language(const SuitableSequence& ks, std::string descriptor) {
  return Language(
      Alphabet::from_chars("01"),
      [ks](WordView word) {
        const auto len = word.size();
        for (std::size_t t = 0; t < 63; ++t) {
          const std::size_t total = (std::size_t{1} << t) + t;
          if (total > len) return false;
          if (total == len) {
            const auto f = f_eval(ks, word.subspan(std::size_t{1} << t));
            return f <= ks.k(t) && word[f - 1] == 1;
          }
        }
        return false;
      },
      std::move(descriptor));
}

inline Language surj_oracle(std::uint64_t num, std::uint64_t den) {
  return surj_language(SuitableSequence::from_rational(num, den),
                       "surj:x=" + std::to_string(num) + "/" + std::to_string(den));
}

// ---------------------------------------------------------------------------
// UInf
// ---------------------------------------------------------------------------

struct UinfParts {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  friend bool operator==(const UinfParts&, const UinfParts&) = default;
};

/// Splits N = 2^(n + 2^(n+m)) + k with m ≤ 2^(n+1) − 1. Returns nullopt
/// (NotInForm) when no split exists or when k > n.
inline std::optional<UinfParts> uinf_decode(const Natural& N) {
  if (N < 1) return std::nullopt;
  const std::uint64_t e = boost::multiprecision::msb(N);
  Natural k = N;
  boost::multiprecision::bit_unset(k, static_cast<unsigned>(e));
  std::optional<UinfParts> found;
  // e - n must be a power of two 2^s with s = n + m
  for (std::uint64_t s = 0; s < 64 && (std::uint64_t{1} << s) <= e; ++s) {
    const std::uint64_t n = e - (std::uint64_t{1} << s);
    if (s < n) continue;
    const std::uint64_t m = s - n;
    if (n + 1 < 64 && m > (std::uint64_t{1} << (n + 1)) - 1) continue;
    if (found) throw Error(ErrorKind::AmbiguousDecode, "UInf decode of a " + std::to_string(e) + "-bit number");
    found = UinfParts{n, m, 0};
  }
  if (!found) return std::nullopt;
  if (k > found->n) return std::nullopt;
  found->k = k.convert_to<std::uint64_t>();
  return found;
}

/// Canonical φ_n for UInf: bit j of m (0-indexed) ⇔ j ∈ φ_n(m).
inline bool uinf_phi_contains(std::uint64_t m, std::uint64_t j) { return j < 64 && ((m >> j) & 1U); }

inline UnaryLanguage uinf_oracle() {
  return UnaryLanguage(
      [](const Natural& N) {
        const auto parts = uinf_decode(N);
        return parts && uinf_phi_contains(parts->m, parts->k);
      },
      "uinf");
}

/// w_{n,m} = 2^(n + 2^(n+m)) for m = 0 … 2^(n+1) − 1.
inline std::vector<Natural> uinf_probes(std::size_t n, std::uint64_t max_exponent_bits = 1U << 20) {
  if (n >= 16) throw Error(ErrorKind::BudgetExceeded, "uinf_probes: n too large");
  std::vector<Natural> out;
  const std::uint64_t count = std::uint64_t{1} << (n + 1);
  for (std::uint64_t m = 0; m < count; ++m) {
    if (n + m >= 62 || n + (std::uint64_t{1} << (n + m)) > max_exponent_bits) {
      throw Error(ErrorKind::BudgetExceeded,
                  "uinf_probes(" + std::to_string(n) + "): w_{n,m} exceeds the bit budget");
    }
    Natural w = 0;
    boost::multiprecision::bit_set(w, static_cast<unsigned>(n + (std::uint64_t{1} << (n + m))));
    out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Prime
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace detail

/// Deterministic: trial division below 2^20, Miller–Rabin with the first 12
/// prime bases (exact for all 64-bit inputs) above.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n < (1U << 20)) {
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
      if (n % d == 0) return false;
    }
    return true;
  }
  if (n % 2 == 0) return false;
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline UnaryLanguage prime_oracle() {
  return UnaryLanguage(
      [](const Natural& n) {
        if (n > std::numeric_limits<std::uint64_t>::max()) {
          throw Error(ErrorKind::BudgetExceeded, "prime oracle is limited to 64-bit values");
        }
        return is_prime_u64(n.convert_to<std::uint64_t>());
      },
      "prime");
}

// ---------------------------------------------------------------------------
// T∞ and T'_k
// ---------------------------------------------------------------------------

/// T∞ over {a,#,b}: a^{n1}#…#a^{nk} b^l a^m with 1 ≤ l ≤ k and n_l = m.
inline Language tinf_oracle() {
  return Language(
      Alphabet::from_chars("a#b"),
      [](WordView w) {
        constexpr Symbol A = 0, HASH = 1, B = 2;
        std::vector<std::size_t> blocks{0};
        std::size_t i = 0;
        for (; i < w.size() && w[i] != B; ++i) {
          if (w[i] == A) ++blocks.back();
          else blocks.push_back(0);  // HASH
        }
        std::size_t l = 0;
        for (; i < w.size() && w[i] == B; ++i) ++l;
        std::size_t m = 0;
        for (; i < w.size() && w[i] == A; ++i) ++m;
        if (i != w.size()) return false;
        (void)HASH;
        return l >= 1 && l <= blocks.size() && blocks[l - 1] == m;
      },
      "tinf");
}

/// Names of the block letters a_1 … a_k of T'_k: "a", "c", "d", … ('b' and
/// '#' are reserved).
inline std::vector<std::string> tprime_letters(std::size_t k) {
  static constexpr std::string_view pool = "acdefghijklmnopqrstuvwxyz";
  if (k == 0 || k > pool.size()) throw Error(ErrorKind::InvalidArgument, "tprime: k out of range");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(1, pool[i]);
  return out;
}

/// T'_k over {a_1,…,a_k,#,b}: groups of a_i-blocks in letter order, then
/// b a_j^m (m ≥ 1) with m equal to the length of some a_j-block.
inline Language tprime_oracle(std::size_t k) {
  auto names = tprime_letters(k);
  names.emplace_back("#");
  names.emplace_back("b");
  const auto hash = static_cast<Symbol>(k);
  const auto b = static_cast<Symbol>(k + 1);
  return Language(
      Alphabet(std::move(names)),
      [k, hash, b](WordView w) {
        std::vector<std::set<std::size_t>> blocks(k);
        Symbol current = 0;  // highest letter seen so far
        std::size_t run = 0;
        Symbol run_letter = 0;
        std::size_t i = 0;
        auto close_run = [&] {
          if (run > 0) blocks[run_letter].insert(run);
          run = 0;
        };
        for (; i < w.size() && w[i] != b; ++i) {
          const Symbol s = w[i];
          if (s == hash) {
            close_run();
            continue;
          }
          if (s < current) return false;
          if (run > 0 && s != run_letter) close_run();
          current = s;
          run_letter = s;
          ++run;
        }
        close_run();
        if (i == w.size()) return false;
        ++i;  // b
        if (i == w.size()) return false;
        const Symbol j = w[i];
        if (j >= k) return false;
        std::size_t m = 0;
        for (; i < w.size() && w[i] == j; ++i) ++m;
        return i == w.size() && blocks[j].count(m) > 0;
      },
      "tprime:k=" + std::to_string(k));
}

/// Block-subset probes: for every choice of subsets S_1,…,S_k ⊆ {1..n}, the
/// word whose a_i-group lists the lengths of S_i in increasing order.
inline std::vector<Word> tprime_probes(std::size_t k, std::size_t n) {
  const auto hash = static_cast<Symbol>(k);
  std::vector<Word> groups_for_letter;
  std::vector<Word> out{Word{}};
  for (Symbol letter = 0; letter < k; ++letter) {
    std::vector<Word> next;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Word group;
      bool first = true;
      for (std::size_t len = 1; len <= n; ++len) {
        if (!((mask >> (len - 1)) & 1U)) continue;
        if (!first) group.push_back(hash);
        group.insert(group.end(), len, letter);
        first = false;
      }
      for (const auto& prefix : out) next.push_back(concat(prefix, group));
    }
    out = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// SAT
// ---------------------------------------------------------------------------

/// Propositional formula; variables are identified by their binary index.
struct SatFormula {
  enum class Kind { Var, Not, And, Or };
  Kind kind = Kind::Var;
  std::string var;  // canonical binary digits, no leading zeros (Var only)
  std::vector<SatFormula> children;

  static SatFormula variable(std::string bits) { return {Kind::Var, std::move(bits), {}}; }
  static SatFormula negation(SatFormula f) { return {Kind::Not, {}, {std::move(f)}}; }
  static SatFormula conjunction(SatFormula a, SatFormula b) { return {Kind::And, {}, {std::move(a), std::move(b)}}; }
  static SatFormula disjunction(SatFormula a, SatFormula b) { return {Kind::Or, {}, {std::move(a), std::move(b)}}; }

  void collect(std::set<std::string>& vars) const {
    if (kind == Kind::Var) vars.insert(var);
    for (const auto& c : children) c.collect(vars);
  }

  bool eval(const std::map<std::string, bool>& assignment) const {
    switch (kind) {
      case Kind::Var: return assignment.at(var);
      case Kind::Not: return !children[0].eval(assignment);
      case Kind::And: return children[0].eval(assignment) && children[1].eval(assignment);
      case Kind::Or: return children[0].eval(assignment) || children[1].eval(assignment);
    }
    return false;
  }
};

inline Alphabet sat_alphabet() { return Alphabet({"(", ")", "∧", "∨", "¬", "0", "1"}); }

namespace detail {

/// Recursive descent over symbol indices of `sat_alphabet()`:
///   expr := term ('∨' term)*   term := factor ('∧' factor)*
///   factor := '¬' factor | '(' expr ')' | digit+
class SatParser {
 public:
  static constexpr Symbol LPAREN = 0, RPAREN = 1, AND = 2, OR = 3, NOT = 4, ZERO = 5, ONE = 6;

  explicit SatParser(WordView w) : w_(w) {}

  std::optional<SatFormula> parse() {
    auto f = expr();
    if (!f || pos_ != w_.size()) return std::nullopt;
    return f;
  }

 private:
  bool at(Symbol s) const { return pos_ < w_.size() && w_[pos_] == s; }

  std::optional<SatFormula> expr() {
    auto lhs = term();
    while (lhs && at(OR)) {
      ++pos_;
      auto rhs = term();
      if (!rhs) return std::nullopt;
      lhs = SatFormula::disjunction(std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<SatFormula> term() {
    auto lhs = factor();
    while (lhs && at(AND)) {
      ++pos_;
      auto rhs = factor();
      if (!rhs) return std::nullopt;
      lhs = SatFormula::conjunction(std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<SatFormula> factor() {
    if (depth_ > 512) return std::nullopt;
    if (at(NOT)) {
      ++pos_;
      ++depth_;
      auto f = factor();
      --depth_;
      if (!f) return std::nullopt;
      return SatFormula::negation(std::move(*f));
    }
    if (at(LPAREN)) {
      ++pos_;
      ++depth_;
      auto f = expr();
      --depth_;
      if (!f || !at(RPAREN)) return std::nullopt;
      ++pos_;
      return f;
    }
    std::string digits;
    while (at(ZERO) || at(ONE)) digits += w_[pos_++] == ONE ? '1' : '0';
    const auto first_one = digits.find('1');
    if (first_one == std::string::npos) return std::nullopt;  // empty or value 0
    return SatFormula::variable(digits.substr(first_one));
  }

  WordView w_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace detail

inline std::optional<SatFormula> parse_sat(WordView w) { return detail::SatParser(w).parse(); }

inline bool satisfiable(const SatFormula& f, std::size_t max_vars = 20) {
  std::set<std::string> var_set;
  f.collect(var_set);
  if (var_set.size() > max_vars) {
    throw Error(ErrorKind::BudgetExceeded, "SAT brute force over " + std::to_string(var_set.size()) + " variables");
  }
  const std::vector<std::string> vars(var_set.begin(), var_set.end());
  std::map<std::string, bool> assignment;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()); ++bits) {
    for (std::size_t i = 0; i < vars.size(); ++i) assignment[vars[i]] = (bits >> i) & 1U;
    if (f.eval(assignment)) return true;
  }
  return false;
}

inline Language sat_oracle(std::size_t max_vars = 20) {
  return Language(
      sat_alphabet(),
      [max_vars](WordView w) {
        auto f = parse_sat(w);
        return f && satisfiable(*f, max_vars);
      },
      "sat");
}

/// bin(i) as symbols of `sat_alphabet()`.
inline Word sat_variable(std::uint64_t index) {
  Word out;
  for (int bit = 63; bit >= 0; --bit) {
    const bool one = (index >> bit) & 1U;
    if (out.empty() && !one) continue;
    out.push_back(one ? detail::SatParser::ONE : detail::SatParser::ZERO);
  }
  return out;
}

/// ⟨L_1 ∧ … ∧ L_{2^n}⟩ with L_i ∈ {x_i, ¬x_i}: 2^(2^n) words.
inline std::vector<Word> sat_probes(std::size_t n) {
  if (n > 4) throw Error(ErrorKind::BudgetExceeded, "sat_probes: 2^(2^n) probes is too many");
  const std::uint64_t literals = std::uint64_t{1} << n;
  std::vector<Word> out;
  for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << literals); ++signs) {
    Word w;
    for (std::uint64_t i = 1; i <= literals; ++i) {
      if (i > 1) w.push_back(detail::SatParser::AND);
      if ((signs >> (i - 1)) & 1U) w.push_back(detail::SatParser::NOT);
      const auto v = sat_variable(i);
      w.insert(w.end(), v.begin(), v.end());
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace entropylab

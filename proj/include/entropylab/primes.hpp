#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "entropylab/error.hpp"

namespace entropylab {

/// Sieve of Eratosthenes over 0…limit.
class SieveTable {
 public:
  explicit SieveTable(std::uint64_t limit) : limit_(limit) {
    if (limit > 4'000'000'000ULL) throw Error(ErrorKind::BudgetExceeded, "sieve limit too large");
    composite_.assign(limit + 1, false);
    composite_[0] = true;
    if (limit >= 1) composite_[1] = true;
    for (std::uint64_t p = 2; p * p <= limit; ++p) {
      if (composite_[p]) continue;
      for (std::uint64_t q = p * p; q <= limit; q += p) composite_[q] = true;
    }
  }

  std::uint64_t limit() const noexcept { return limit_; }
  bool is_prime(std::uint64_t n) const { return n <= limit_ && !composite_[n]; }

 private:
  std::uint64_t limit_;
  std::vector<bool> composite_;
};

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  SieveTable sieve(n);
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (sieve.is_prime(p)) out.push_back(p);
  }
  return out;
}

inline std::vector<std::uint64_t> first_primes(std::size_t k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 2; out.size() < k; ++c) {
    bool prime = true;
    for (auto p : out) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

/// A ⊆ {0,…,n−1} as a bit mask (bit l ⇔ l ∈ A).
using PatternMask = std::uint64_t;

/// Plausible: for every prime p ≤ n the residues A mod p miss some class.
inline bool is_plausible(PatternMask a, std::size_t n) {
  if (n > 63) throw Error(ErrorKind::BudgetExceeded, "patterns are limited to length 63");
  if (n < 64 && (a >> n) != 0) throw ContractViolation("is_plausible: A exceeds {0,…,n-1}");
  for (auto p : primes_up_to(n)) {
    std::uint64_t residues = 0;
    for (std::size_t l = 0; l < n; ++l) {
      if ((a >> l) & 1U) residues |= std::uint64_t{1} << (l % p);
    }
    if (residues == (std::uint64_t{1} << p) - 1) return false;
  }
  return true;
}

inline PatternMask pattern_mask(const std::vector<std::size_t>& elements) {
  PatternMask m = 0;
  for (auto e : elements) {
    if (e >= 64) throw ContractViolation("pattern element out of range");
    m |= PatternMask{1} << e;
  }
  return m;
}

namespace detail {

/// Depth-first enumeration of plausible sequences with per-prime residue
/// coverage pruning. `visit` is called with each plausible mask.
template <typename Visit>
void enumerate_plausible_impl(std::size_t n, Visit&& visit) {
  const auto primes = primes_up_to(n);
  std::vector<std::uint64_t> full;
  for (auto p : primes) full.push_back((std::uint64_t{1} << p) - 1);
  std::vector<std::uint64_t> covered(primes.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, PatternMask mask) -> void {
    if (pos == n) {
      visit(mask);
      return;
    }
    self(self, pos + 1, mask);
    std::vector<std::uint64_t> saved = covered;
    bool ok = true;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      covered[i] |= std::uint64_t{1} << (pos % primes[i]);
      if (covered[i] == full[i]) {
        ok = false;
        break;
      }
    }
    if (ok) self(self, pos + 1, mask | (PatternMask{1} << pos));
    covered = std::move(saved);
  };
  rec(rec, 0, 0);
}

}  // namespace detail

struct PlausibleLimits {
  std::size_t max_n = 24;
};

inline std::vector<PatternMask> enumerate_plausible(std::size_t n, const PlausibleLimits& limits = {}) {
  if (n > limits.max_n || n > 63) {
    throw Error(ErrorKind::BudgetExceeded, "plausible sequences of length " + std::to_string(n) +
                                               " exceed the cap " + std::to_string(limits.max_n));
  }
  std::vector<PatternMask> out;
  detail::enumerate_plausible_impl(n, [&](PatternMask m) { out.push_back(m); });
  std::sort(out.begin(), out.end());
  return out;
}

/// s_n.
inline std::uint64_t count_plausible(std::size_t n, const PlausibleLimits& limits = {}) {
  if (n > limits.max_n || n > 63) {
    throw Error(ErrorKind::BudgetExceeded, "s_" + std::to_string(n) + " exceeds the cap " +
                                               std::to_string(limits.max_n));
  }
  std::uint64_t count = 0;
  detail::enumerate_plausible_impl(n, [&](PatternMask) { ++count; });
  return count;
}

/// Window pattern at k: bit l ⇔ k + l is prime.
inline PatternMask window_pattern(const SieveTable& sieve, std::uint64_t k, std::size_t n) {
  PatternMask m = 0;
  for (std::size_t l = 0; l < n; ++l) {
    if (sieve.is_prime(k + l)) m |= PatternMask{1} << l;
  }
  return m;
}

/// Smallest k ≥ 1 with { l | k + l prime } = A, or nullopt if none ≤ k_max.
inline std::optional<std::uint64_t> occurrence_search(PatternMask a, std::size_t n, std::uint64_t k_max) {
  if (n > 63) throw Error(ErrorKind::BudgetExceeded, "patterns are limited to length 63");
  if ((a >> n) != 0) throw ContractViolation("occurrence_search: A exceeds {0,…,n-1}");
  const SieveTable sieve(k_max + n);
  PatternMask window = window_pattern(sieve, 1, n);
  const PatternMask top = n == 0 ? 0 : PatternMask{1} << (n - 1);
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    if (window == a) return k;
    window >>= 1U;
    if (n > 0 && sieve.is_prime(k + n)) window |= top;
  }
  return std::nullopt;
}

struct OccurrenceReport {
  std::size_t n = 0;
  std::uint64_t k_max = 0;
  std::size_t checked = 0;  // number of plausible sequences of length n
  std::vector<PatternMask> missing;
};

/// Checks every plausible sequence of length n against the patterns observed
/// in windows k = 1…k_max. A nonempty `missing` only means "not found up to
/// k_max".
inline OccurrenceReport verify_occurrence_conjecture(std::size_t n, std::uint64_t k_max,
                                                     const PlausibleLimits& limits = {}) {
  const auto plausible = enumerate_plausible(n, limits);
  if (n > 26) throw Error(ErrorKind::BudgetExceeded, "pattern table for n > 26 is too large");
  std::vector<bool> seen(std::size_t{1} << n, false);
  const SieveTable sieve(k_max + n);
  PatternMask window = window_pattern(sieve, 1, n);
  const PatternMask top = n == 0 ? 0 : PatternMask{1} << (n - 1);
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    seen[window] = true;
    window >>= 1U;
    if (n > 0 && sieve.is_prime(k + n)) window |= top;
  }
  OccurrenceReport report{n, k_max, plausible.size(), {}};
  for (auto a : plausible) {
    if (!seen[a]) report.missing.push_back(a);
  }
  return report;
}

/// Same report for every length 1…n_max from a single sieve pass.
inline std::vector<OccurrenceReport> verify_occurrence_conjecture_upto(std::size_t n_max, std::uint64_t k_max,
                                                                       const PlausibleLimits& limits = {}) {
  if (n_max > 26) throw Error(ErrorKind::BudgetExceeded, "pattern table for n > 26 is too large");
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > limits.max_n) throw Error(ErrorKind::BudgetExceeded, "n exceeds the plausible-sequence cap");
  }
  std::vector<bool> seen(std::size_t{1} << n_max, false);
  const SieveTable sieve(k_max + n_max);
  PatternMask window = window_pattern(sieve, 1, n_max);
  const PatternMask top = n_max == 0 ? 0 : PatternMask{1} << (n_max - 1);
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    seen[window] = true;
    window >>= 1U;
    if (n_max > 0 && sieve.is_prime(k + n_max)) window |= top;
  }
  std::vector<OccurrenceReport> reports;
  for (std::size_t n = 1; n <= n_max; ++n) {
    // a length-n pattern occurs at k iff some length-n_max window at k extends it
    std::vector<bool> seen_n(std::size_t{1} << n, false);
    const PatternMask low = (PatternMask{1} << n) - 1;
    for (std::size_t w = 0; w < seen.size(); ++w) {
      if (seen[w]) seen_n[w & low] = true;
    }
    const auto plausible = enumerate_plausible(n, limits);
    OccurrenceReport report{n, k_max, plausible.size(), {}};
    for (auto a : plausible) {
      if (!seen_n[a]) report.missing.push_back(a);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Mertens products and the s_n bound
// ---------------------------------------------------------------------------

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// ∏_{i≤k} (p_i − 1)/p_i over the first k primes, exactly.
inline Rational mertens_product(std::size_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "mertens_product needs k >= 1");
  Rational r = 1;
  for (auto p : first_primes(k)) r *= Rational(BigInt(p - 1), BigInt(p));
  return r;
}

struct PrimeBoundCheck {
  std::size_t n = 0;
  std::uint64_t s_n = 0;
  BigInt bound;
  bool ok = false;
};

/// s_n ≤ (∏ p_i) · 2^(n ∏ (p_i−1)/p_i) for n = n'·∏_{i≤k} p_i. The exponent
/// equals n'·∏(p_i − 1), an integer.
inline PrimeBoundCheck prime_bound_check(std::size_t n_factor, std::size_t k, const PlausibleLimits& limits = {}) {
  if (n_factor < 1 || k < 1) throw Error(ErrorKind::InvalidArgument, "prime_bound_check needs n' >= 1, k >= 1");
  std::uint64_t primorial = 1;
  std::uint64_t exponent = n_factor;
  for (auto p : first_primes(k)) {
    primorial *= p;
    exponent *= p - 1;
    if (primorial > 64) throw Error(ErrorKind::BudgetExceeded, "primorial too large for the s_n cap");
  }
  PrimeBoundCheck out;
  out.n = n_factor * primorial;
  out.s_n = count_plausible(out.n, limits);
  out.bound = BigInt(primorial) << static_cast<unsigned>(exponent);
  out.ok = BigInt(out.s_n) <= out.bound;
  return out;
}

/// n + 2 + s_{n+1}: upper bound on ind Θ_n(Prime).
inline std::uint64_t prime_theta_upper(std::size_t n, const PlausibleLimits& limits = {}) {
  return n + 2 + count_plausible(n + 1, limits);
}

}  // namespace entropylab

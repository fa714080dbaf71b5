#pragma once

#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entropylab/automaton_io.hpp"
#include "entropylab/combinators.hpp"
#include "entropylab/zoo.hpp"

namespace entropylab {

/// Parsed language spec. Leaf specs keep their argument after ':' in `arg`;
/// combinators keep sub-specs in `children` and plain arguments (file paths,
/// `sep=...`) in `params`.
struct LangSpec {
  std::string name;
  std::string arg;
  std::vector<LangSpec> children;
  std::vector<std::string> params;

  bool is_call() const { return !children.empty() || !params.empty(); }

  std::string str() const {
    if (!is_call()) return arg.empty() ? name : name + ":" + arg;
    std::string out = name + "(";
    bool first = true;
    for (const auto& c : children) {
      if (!first) out += ",";
      out += c.str();
      first = false;
    }
    for (const auto& p : params) {
      if (!first) out += ",";
      out += p;
      first = false;
    }
    return out + ")";
  }

  friend bool operator==(const LangSpec&, const LangSpec&) = default;
};

namespace detail {

struct SpecShape {
  std::string_view name;
  bool leaf;
  bool needs_arg;
  std::size_t children;
  std::size_t params;
};

inline constexpr SpecShape kSpecShapes[] = {
    {"dyck", true, true, 0, 0},    {"pali", true, true, 0, 0},   {"dpali", true, true, 0, 0},
    {"pdpali", true, true, 0, 0},  {"surj", true, true, 0, 0},   {"uinf", true, false, 0, 0},
    {"prime", true, false, 0, 0},  {"tinf", true, false, 0, 0},  {"tprime", true, true, 0, 0},
    {"sat", true, false, 0, 0},    {"all", true, true, 0, 0},    {"empty", true, true, 0, 0},
    {"pad", false, false, 1, 0},   {"rev", false, false, 1, 0},  {"combine", false, false, 2, 1},
    {"enc", false, false, 1, 1},   {"dfa", false, false, 0, 1},  {"pda", false, false, 0, 1},
};

inline const SpecShape* find_shape(std::string_view name) {
  for (const auto& s : kSpecShapes) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

inline std::string normalize_rational(std::string_view text, std::size_t pos) {
  auto bad = [&] { return Error(ErrorKind::SpecSyntax, "bad rational '" + std::string(text) + "' at " + std::to_string(pos)); };
  std::uint64_t num = 0, den = 1;
  auto slash = text.find('/');
  auto digits = [&](std::string_view s, std::uint64_t& v, std::uint64_t* scale) {
    if (s.empty()) throw bad();
    bool dot = false;
    for (char c : s) {
      if (c == '.' && scale && !dot) {
        dot = true;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
      if (v > (UINT64_MAX - 9) / 10) throw bad();
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (dot) *scale *= 10;
    }
  };
  if (slash == std::string_view::npos) {
    digits(text, num, &den);
  } else {
    den = 0;
    digits(text.substr(0, slash), num, nullptr);
    digits(text.substr(slash + 1), den, nullptr);
  }
  if (num == 0 || den == 0) throw bad();
  const auto g = std::gcd(num, den);
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  LangSpec parse() {
    auto spec = parse_spec();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SpecSyntax, what + " at position " + std::to_string(pos_));
  }

  // Text up to the next top-level ',' or ')'.
  std::string_view take_token() {
    const auto start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')' && depth-- == 0) break;
      if (c == ',' && depth == 0) break;
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  LangSpec parse_spec() {
    const auto start = pos_;
    while (pos_ < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    LangSpec spec;
    spec.name = std::string(text_.substr(start, pos_ - start));
    if (spec.name.empty()) fail("language name expected");
    const auto* shape = find_shape(spec.name);
    if (!shape) throw Error(ErrorKind::UnknownLanguage, "unknown language '" + spec.name + "'");
    if (shape->leaf) {
      if (pos_ < text_.size() && text_[pos_] == ':') {
        ++pos_;
        spec.arg = std::string(take_token());
      }
      if (shape->needs_arg && spec.arg.empty()) fail("'" + spec.name + ":' needs an argument");
      if (!shape->needs_arg && !spec.arg.empty()) fail("'" + spec.name + "' takes no argument");
      check_leaf(spec);
      return spec;
    }
    if (pos_ >= text_.size() || text_[pos_] != '(') fail("'(' expected after " + spec.name);
    ++pos_;
    for (std::size_t i = 0; i < shape->children + shape->params; ++i) {
      if (i > 0) {
        if (pos_ >= text_.size() || text_[pos_] != ',') fail("',' expected");
        ++pos_;
      }
      if (i < shape->children) {
        spec.children.push_back(parse_spec());
      } else {
        auto p = std::string(take_token());
        if (p.empty()) fail("argument expected");
        if (spec.name == "combine" && p.rfind("sep=", 0) != 0) fail("combine needs sep=<symbol>");
        if (spec.name == "combine" && p.size() == 4) fail("empty separator");
        spec.params.push_back(std::move(p));
      }
    }
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("')' expected");
    ++pos_;
    return spec;
  }

  void check_leaf(LangSpec& spec) {
    if (spec.name == "surj") {
      if (spec.arg.rfind("x=", 0) != 0) fail("surj needs x=<p>/<q>");
      spec.arg = "x=" + normalize_rational(std::string_view(spec.arg).substr(2), pos_);
    } else if (spec.name == "tprime") {
      if (spec.arg.rfind("k=", 0) != 0 || spec.arg.size() == 2) fail("tprime needs k=<n>");
      for (char c : spec.arg.substr(2)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("tprime needs k=<n>");
      }
      spec.arg = "k=" + std::to_string(std::stoull(spec.arg.substr(2)));
      if (spec.arg == "k=0") fail("tprime needs k >= 1");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline LangSpec parse_lang_spec(std::string_view text) { return detail::SpecParser(text).parse(); }

/// A built language: finite-alphabet or unary, plus the DFA when the spec
/// names a regular language given by an automaton.
struct BuiltLanguage {
  std::variant<Language, UnaryLanguage> lang;
  std::optional<Dfa> dfa;

  bool is_unary() const { return std::holds_alternative<UnaryLanguage>(lang); }
  const Language& finite() const {
    if (auto* l = std::get_if<Language>(&lang)) return *l;
    throw Error(ErrorKind::AlphabetMismatch, "expected a finite-alphabet language, got a unary one");
  }
  const UnaryLanguage& unary() const {
    if (auto* l = std::get_if<UnaryLanguage>(&lang)) return *l;
    throw Error(ErrorKind::AlphabetMismatch, "expected a unary language");
  }
};

namespace detail {

inline Alphabet chars_alphabet(const std::string& arg) {
  try {
    return Alphabet::from_chars(arg);
  } catch (const Error& e) {
    throw Error(ErrorKind::SpecSyntax, e.what());
  }
}

inline Dfa one_state_dfa(const Alphabet& sigma, bool accept) {
  Dfa d;
  d.alphabet = sigma;
  d.state_names = {accept ? "all" : "none"};
  d.delta.assign(sigma.size(), 0);
  d.finals = {accept};
  return d;
}

}  // namespace detail

inline BuiltLanguage build_language(const LangSpec& spec) {
  const auto desc = spec.str();
  const auto& n = spec.name;
  if (n == "dyck") {
    for (char c : spec.arg) {
      if (!std::islower(static_cast<unsigned char>(c))) {
        throw Error(ErrorKind::SpecSyntax, "dyck symbols must be lowercase letters");
      }
    }
    detail::chars_alphabet(spec.arg);
    return {dyck(spec.arg), {}};
  }
  if (n == "pali") return {pali(detail::chars_alphabet(spec.arg), desc), {}};
  if (n == "dpali") {
    if (spec.arg.find('#') != std::string::npos) throw Error(ErrorKind::AlphabetMismatch, "'#' is reserved in dpali");
    return {dpali(detail::chars_alphabet(spec.arg), desc), {}};
  }
  if (n == "pdpali") {
    std::vector<Alphabet> factors;
    std::string_view rest = spec.arg;
    for (;;) {
      auto bar = rest.find('|');
      factors.push_back(detail::chars_alphabet(std::string(rest.substr(0, bar))));
      if (bar == std::string_view::npos) break;
      rest = rest.substr(bar + 1);
    }
    return {product_dpali(factors, desc), {}};
  }
  if (n == "surj") {
    auto slash = spec.arg.find('/');
    return {surj_oracle(std::stoull(spec.arg.substr(2, slash - 2)), std::stoull(spec.arg.substr(slash + 1))), {}};
  }
  if (n == "uinf") return {uinf_oracle(), {}};
  if (n == "prime") return {prime_oracle(), {}};
  if (n == "tinf") return {tinf_oracle(), {}};
  if (n == "tprime") return {tprime_oracle(std::stoull(spec.arg.substr(2))), {}};
  if (n == "sat") return {sat_oracle(), {}};
  if (n == "all" || n == "empty") {
    auto sigma = detail::chars_alphabet(spec.arg);
    auto d = detail::one_state_dfa(sigma, n == "all");
    return {dfa_language(d, desc), d};
  }
  if (n == "pad") return {pad(build_language(spec.children[0]).finite()), {}};
  if (n == "rev") return {reverse(build_language(spec.children[0]).finite()), {}};
  if (n == "combine") {
    auto l1 = build_language(spec.children[0]);
    auto l2 = build_language(spec.children[1]);
    return {combine(l1.finite(), l2.finite(), spec.params[0].substr(4)), {}};
  }
  if (n == "enc") {
    auto inner = build_language(spec.children[0]);
    return {encode_image(inner.finite(), load_prefix_code(spec.params[0]), desc), {}};
  }
  if (n == "dfa") {
    auto d = load_automaton_as<Dfa>(spec.params[0]);
    return {dfa_language(d, desc), d};
  }
  if (n == "pda") {
    auto a = load_automaton(spec.params[0]);
    if (auto* d = std::get_if<Dfa>(&a)) return {dfa_language(*d, desc), *d};
    if (auto* p = std::get_if<MultiStackPda>(&a)) return {pda_oracle(*p, desc), {}};
    return {oc_oracle(std::get<OneCounterEps>(a), desc), {}};
  }
  throw Error(ErrorKind::UnknownLanguage, "unknown language '" + n + "'");
}

inline BuiltLanguage build_language(std::string_view text) { return build_language(parse_lang_spec(text)); }

/// Representative probe family realizing the lower-bound argument for a
/// zoo language at horizon n, when one exists.
inline std::optional<std::vector<Word>> representative_probes(const LangSpec& spec, std::size_t n) {
  if (spec.name == "dyck") return dyck_representatives(spec.arg.size(), n);
  if (spec.name == "tprime") return tprime_probes(std::stoull(spec.arg.substr(2)), n);
  if (spec.name == "sat") return sat_probes(n);
  if (spec.name == "surj") {
    if (n >= 5) throw Error(ErrorKind::BudgetExceeded, "surj representatives: 2^(2^n) words is too many");
    return enumerate_words_exact(2, std::size_t{1} << n);
  }
  return std::nullopt;
}

inline std::optional<std::vector<Natural>> representative_probes_unary(const LangSpec& spec, std::size_t n) {
  if (spec.name == "uinf") return uinf_probes(n);
  return std::nullopt;
}

}  // namespace entropylab

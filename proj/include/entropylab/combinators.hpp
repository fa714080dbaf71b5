#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "entropylab/language.hpp"

namespace entropylab {

// ---------------------------------------------------------------------------
// Prefix codes
// ---------------------------------------------------------------------------

/// Encoding of a source alphabet into nonempty target words, no image being a
/// prefix of another. `pre` holds every proper prefix of an image (ε included),
/// sorted length-lexicographically.
struct PrefixCode {
  Alphabet source;
  Alphabet target;
  std::vector<Word> images;  // indexed by source symbol
  std::size_t k1 = 0;        // longest image
  std::size_t k2 = 0;        // shortest image
  std::vector<Word> pre;

  Word encode(WordView w) const {
    Word out;
    for (Symbol s : w) {
      const auto& img = images.at(s);
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }
};

struct DecodeResult {
  Word decoded;   // over the source alphabet
  Word residual;  // over the target alphabet, always an element of `pre`

  friend bool operator==(const DecodeResult&, const DecodeResult&) = default;
};

inline bool is_prefix_of(WordView p, WordView w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

inline PrefixCode validate_prefix_code(const Alphabet& source, const Alphabet& target,
                                       std::vector<Word> images) {
  if (images.size() != source.size()) {
    throw Error(ErrorKind::InvalidArgument, "prefix code needs one image per source symbol");
  }
  for (Symbol s = 0; s < images.size(); ++s) {
    if (images[s].empty()) throw Error(ErrorKind::EmptyImage, "image of '" + source.name(s) + "' is empty");
    if (!target.valid(images[s])) throw Error(ErrorKind::BadSymbol, "image of '" + source.name(s) + "'");
  }
  for (Symbol a = 0; a < images.size(); ++a) {
    for (Symbol b = 0; b < images.size(); ++b) {
      if (a != b && is_prefix_of(images[a], images[b])) {
        throw Error(ErrorKind::PrefixViolation,
                    "image of '" + source.name(a) + "' is a prefix of image of '" + source.name(b) + "'");
      }
    }
  }
  PrefixCode code{source, target, std::move(images), 0, SIZE_MAX, {}};
  std::set<Word> prefixes;
  for (const auto& img : code.images) {
    code.k1 = std::max(code.k1, img.size());
    code.k2 = std::min(code.k2, img.size());
    for (std::size_t len = 0; len < img.size(); ++len) prefixes.emplace(img.begin(), img.begin() + len);
  }
  code.pre.assign(prefixes.begin(), prefixes.end());
  std::sort(code.pre.begin(), code.pre.end(),
            [](const Word& x, const Word& y) { return length_lex_less(x, y); });
  return code;
}

/// Convenience overload taking codewords as text over the target alphabet.
inline PrefixCode validate_prefix_code(const Alphabet& source, const Alphabet& target,
                                       const std::map<std::string, std::string>& images) {
  std::vector<Word> words(source.size());
  std::vector<bool> seen(source.size(), false);
  for (const auto& [sym, codeword] : images) {
    const Symbol s = source.at(sym);
    words[s] = target.parse(codeword);
    seen[s] = true;
  }
  for (Symbol s = 0; s < seen.size(); ++s) {
    if (!seen[s]) throw Error(ErrorKind::InvalidArgument, "no image for '" + source.name(s) + "'");
  }
  return validate_prefix_code(source, target, std::move(words));
}

/// Greedy left-to-right decoding. Returns nullopt when the input cannot be
/// split into codewords followed by a proper prefix of a codeword.
inline std::optional<DecodeResult> try_decode(const PrefixCode& code, WordView w) {
  DecodeResult out;
  std::size_t start = 0;
  while (start < w.size()) {
    bool matched = false;
    for (Symbol s = 0; s < code.images.size(); ++s) {
      const auto& img = code.images[s];
      if (start + img.size() <= w.size() && std::equal(img.begin(), img.end(), w.begin() + start)) {
        out.decoded.push_back(s);
        start += img.size();
        matched = true;
        break;
      }
    }
    if (!matched) break;
  }
  out.residual.assign(w.begin() + start, w.end());
  if (!std::binary_search(code.pre.begin(), code.pre.end(), out.residual,
                          [](const Word& x, const Word& y) { return length_lex_less(x, y); })) {
    return std::nullopt;
  }
  return out;
}

inline DecodeResult decode(const PrefixCode& code, WordView w) {
  if (!code.target.valid(w)) throw ContractViolation("decode: word over foreign alphabet");
  auto r = try_decode(code, w);
  if (!r) throw Error(ErrorKind::InvalidResidual, "'" + code.target.format(w) + "' has an undecodable suffix");
  return *std::move(r);
}

/// Loads {"source": [...], "target": [...], "map": {"sym": "codeword", ...}}.
inline PrefixCode prefix_code_from_json(const nlohmann::json& j) {
  try {
    Alphabet source(j.at("source").get<std::vector<std::string>>());
    Alphabet target(j.at("target").get<std::vector<std::string>>());
    auto images = j.at("map").get<std::map<std::string, std::string>>();
    return validate_prefix_code(source, target, images);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadFile, std::string("prefix code: ") + e.what());
  }
}

inline PrefixCode load_prefix_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadFile, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadFile, path + ": " + e.what());
  }
  return prefix_code_from_json(j);
}

/// enc(L): member iff the word decodes completely to a member of L.
inline Language encode_image(const Language& lang, const PrefixCode& code, std::string descriptor = {}) {
  if (!(lang.alphabet() == code.source)) {
    throw Error(ErrorKind::AlphabetMismatch, "code source alphabet differs from " + lang.descriptor());
  }
  if (descriptor.empty()) descriptor = "enc(" + lang.descriptor() + ")";
  return Language(
      code.target,
      [lang, code](WordView w) {
        auto r = try_decode(code, w);
        return r && r->residual.empty() && lang.contains(r->decoded);
      },
      std::move(descriptor));
}

// ---------------------------------------------------------------------------
// Language combinators
// ---------------------------------------------------------------------------

/// PAD(L) = { uv | u ∈ L, |v| = 2^|u| }.
inline Language pad(const Language& lang) {
  return Language(
      lang.alphabet(),
      [lang](WordView w) {
        const std::size_t len = w.size();
        for (std::size_t t = 0; t < 64; ++t) {
          const std::size_t total = t + (std::size_t{1} << t);
          if (total > len) return false;
          if (total == len) return lang.contains(w.first(t));
        }
        return false;
      },
      "pad(" + lang.descriptor() + ")");
}

/// L1 sep L2 over Σ ∪ {sep}.
inline Language combine(const Language& l1, const Language& l2, const std::string& sep) {
  if (!(l1.alphabet() == l2.alphabet())) {
    throw Error(ErrorKind::AlphabetMismatch, "combine: " + l1.descriptor() + " and " + l2.descriptor());
  }
  if (l1.alphabet().contains(sep)) {
    throw Error(ErrorKind::AlphabetMismatch, "combine: separator '" + sep + "' is not fresh");
  }
  auto names = l1.alphabet().names();
  names.push_back(sep);
  const Symbol sep_sym = static_cast<Symbol>(names.size() - 1);
  return Language(
      Alphabet(std::move(names)),
      [l1, l2, sep_sym](WordView w) {
        const auto first = std::find(w.begin(), w.end(), sep_sym);
        if (first == w.end()) return false;
        if (std::find(first + 1, w.end(), sep_sym) != w.end()) return false;
        const auto pos = static_cast<std::size_t>(first - w.begin());
        return l1.contains(w.first(pos)) && l2.contains(w.subspan(pos + 1));
      },
      "combine(" + l1.descriptor() + "," + l2.descriptor() + ",sep=" + sep + ")");
}

/// L^R = { w^R | w ∈ L }.
inline Language reverse(const Language& lang) {
  return Language(
      lang.alphabet(),
      [lang](WordView w) {
        Word r(w.rbegin(), w.rend());
        return lang.contains(r);
      },
      "rev(" + lang.descriptor() + ")");
}

}  // namespace entropylab

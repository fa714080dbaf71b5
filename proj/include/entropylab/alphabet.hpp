#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entropylab/error.hpp"

namespace entropylab {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

/// Ordered set of named symbols. The order fixes the length-lexicographic
/// word order used for every enumeration in the library.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols)
      : data_(std::make_shared<Data>()) {
    if (symbols.empty()) throw Error(ErrorKind::InvalidArgument, "alphabet must be nonempty");
    data_->names = std::move(symbols);
    for (Symbol i = 0; i < data_->names.size(); ++i) {
      const auto& name = data_->names[i];
      if (name.empty()) throw Error(ErrorKind::InvalidArgument, "empty symbol name");
      if (!data_->index.emplace(name, i).second) {
        throw Error(ErrorKind::InvalidArgument, "duplicate symbol '" + name + "'");
      }
      data_->max_name_len = std::max(data_->max_name_len, name.size());
    }
  }

  /// One symbol per character of `chars`.
  static Alphabet from_chars(std::string_view chars) {
    std::vector<std::string> names;
    for (char c : chars) names.emplace_back(1, c);
    return Alphabet(std::move(names));
  }

  std::size_t size() const noexcept { return data_ ? data_->names.size() : 0; }
  bool empty() const noexcept { return size() == 0; }

  const std::string& name(Symbol s) const { return data_->names.at(s); }
  const std::vector<std::string>& names() const { return data_->names; }

  bool contains(std::string_view name) const {
    return data_ && data_->index.count(std::string(name)) != 0;
  }

  Symbol at(std::string_view name) const {
    auto it = data_->index.find(std::string(name));
    if (it == data_->index.end()) {
      throw Error(ErrorKind::BadSymbol, "symbol '" + std::string(name) + "' not in alphabet");
    }
    return it->second;
  }

  bool valid(WordView w) const noexcept {
    const auto n = size();
    return std::all_of(w.begin(), w.end(), [n](Symbol s) { return s < n; });
  }

  /// Tokenizes `text` by longest match against the symbol names.
  Word parse(std::string_view text) const {
    Word out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t take = std::min(data_->max_name_len, text.size() - pos);
      bool matched = false;
      for (; take > 0; --take) {
        auto it = data_->index.find(std::string(text.substr(pos, take)));
        if (it != data_->index.end()) {
          out.push_back(it->second);
          pos += take;
          matched = true;
          break;
        }
      }
      if (!matched) {
        throw Error(ErrorKind::BadSymbol,
                    "cannot tokenize '" + std::string(text) + "' at offset " + std::to_string(pos));
      }
    }
    return out;
  }

  std::string format(WordView w) const {
    std::string out;
    for (Symbol s : w) out += name(s);
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    if (a.data_ == b.data_) return true;
    if (!a.data_ || !b.data_) return false;
    return a.data_->names == b.data_->names;
  }

 private:
  struct Data {
    std::vector<std::string> names;
    std::unordered_map<std::string, Symbol> index;
    std::size_t max_name_len = 0;
  };
  std::shared_ptr<Data> data_;
};

/// Length-lexicographic order: shorter words first, ties by symbol index.
inline bool length_lex_less(WordView a, WordView b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline Word concat(WordView a, WordView b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// |Σ^(n)| = number of words of length at most n.
inline std::uint64_t count_words_upto(std::uint64_t alphabet_size, std::uint64_t n) {
  std::uint64_t total = 0;
  std::uint64_t layer = 1;
  for (std::uint64_t len = 0; len <= n; ++len) {
    total += layer;
    if (len < n) {
      if (alphabet_size != 0 && layer > UINT64_MAX / alphabet_size) return UINT64_MAX;
      layer *= alphabet_size;
    }
  }
  return total;
}

/// All words of length ≤ n in length-lexicographic order, ε first.
inline std::vector<Word> enumerate_words(std::size_t alphabet_size, std::size_t n) {
  std::vector<Word> out;
  out.reserve(count_words_upto(alphabet_size, n));
  out.emplace_back();
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (Symbol s = 0; s < alphabet_size; ++s) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

inline std::vector<Word> enumerate_words(const Alphabet& alphabet, std::size_t n) {
  return enumerate_words(alphabet.size(), n);
}

/// Words of length exactly n, lexicographic.
inline std::vector<Word> enumerate_words_exact(std::size_t alphabet_size, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t len = 0; len < n; ++len) {
    std::vector<Word> next;
    next.reserve(out.size() * alphabet_size);
    for (const auto& w : out) {
      for (Symbol s = 0; s < alphabet_size; ++s) {
        Word x = w;
        x.push_back(s);
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace entropylab

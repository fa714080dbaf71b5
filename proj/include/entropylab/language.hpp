#pragma once

#include <functional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "entropylab/alphabet.hpp"

namespace entropylab {

/// Unary words a^n are represented by n.
using Natural = boost::multiprecision::cpp_int;

/// A language over a finite alphabet given by a total, pure membership test.
class Language {
 public:
  using Predicate = std::function<bool(WordView)>;

  Language() = default;
  Language(Alphabet alphabet, Predicate member, std::string descriptor)
      : alphabet_(std::move(alphabet)), member_(std::move(member)), descriptor_(std::move(descriptor)) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::string& descriptor() const noexcept { return descriptor_; }

  bool contains(WordView w) const {
    if (!alphabet_.valid(w)) {
      throw ContractViolation("word over foreign alphabet queried on " + descriptor_);
    }
    return member_(w);
  }

  bool contains(std::string_view text) const { return contains(alphabet_.parse(text)); }

 private:
  Alphabet alphabet_;
  Predicate member_;
  std::string descriptor_;
};

/// A language over {a}; words are naturals so astronomically long words stay
/// representable. Never mixed with `Language`.
class UnaryLanguage {
 public:
  using Predicate = std::function<bool(const Natural&)>;

  UnaryLanguage() = default;
  UnaryLanguage(Predicate member, std::string descriptor)
      : member_(std::move(member)), descriptor_(std::move(descriptor)) {}

  const std::string& descriptor() const noexcept { return descriptor_; }

  bool contains(const Natural& n) const {
    if (n < 0) throw ContractViolation("negative unary word queried on " + descriptor_);
    return member_(n);
  }

 private:
  Predicate member_;
  std::string descriptor_;
};

inline Language sigma_star(const Alphabet& alphabet) {
  return Language(alphabet, [](WordView) { return true; }, "all");
}

inline Language empty_language(const Alphabet& alphabet) {
  return Language(alphabet, [](WordView) { return false; }, "empty");
}

}  // namespace entropylab

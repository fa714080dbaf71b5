#include <gtest/gtest.h>

#include <random>

#include "entropylab/combinators.hpp"
#include "entropylab/nerode.hpp"
#include "entropylab/zoo.hpp"
#include "oracles.hpp"

using namespace entropylab;

namespace {

Alphabet dyck2_alphabet() { return Alphabet({"a", "b", "A", "B"}); }

PrefixCode dyck2_code() {
  return validate_prefix_code(dyck2_alphabet(), Alphabet::from_chars("01"),
                              std::map<std::string, std::string>{{"a", "00"}, {"A", "10"}, {"b", "01"}, {"B", "11"}});
}

Word bits(std::string_view s) { return Alphabet::from_chars("01").parse(s); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Alphabet, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(Alphabet({"a", "a"}), Error);
  EXPECT_THROW(Alphabet(std::vector<std::string>{}), Error);
  EXPECT_THROW(Alphabet({"a", ""}), Error);
}

TEST(Alphabet, ParseAndFormatMultiCharSymbols) {
  Alphabet g({"A", "A0", "B"});
  EXPECT_EQ(g.parse("AA0B"), (Word{0, 1, 2}));
  EXPECT_EQ(g.format(Word{1, 0}), "A0A");
  EXPECT_EQ(kind_of([&] { g.parse("AC"); }), ErrorKind::BadSymbol);
}

TEST(Alphabet, EnumerationIsLengthLex) {
  auto ab = enumerate_words(2, 2);
  ASSERT_EQ(ab.size(), 7u);
  EXPECT_EQ(ab, (std::vector<Word>{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(enumerate_words(1, 3).size(), 4u);
  EXPECT_EQ(enumerate_words(5, 0), (std::vector<Word>{{}}));
  for (std::size_t s = 1; s <= 3; ++s) {
    for (std::size_t n = 0; n <= 5; ++n) {
      auto words = enumerate_words(s, n);
      EXPECT_EQ(words.size(), count_words_upto(s, n));
      EXPECT_EQ(words, oracle::all_words(s, n));
      for (std::size_t i = 1; i < words.size(); ++i) EXPECT_TRUE(length_lex_less(words[i - 1], words[i]));
    }
  }
}

TEST(Language, ForeignAlphabetIsContractViolation) {
  auto l = sigma_star(Alphabet::from_chars("ab"));
  EXPECT_THROW(l.contains(Word{2}), ContractViolation);
}

TEST(PrefixCode, DyckCode) {
  auto code = dyck2_code();
  EXPECT_EQ(code.k1, 2u);
  EXPECT_EQ(code.k2, 2u);
  EXPECT_EQ(code.pre, (std::vector<Word>{{}, {0}, {1}}));
}

TEST(PrefixCode, SingleSymbolImages) {
  auto code = validate_prefix_code(Alphabet::from_chars("ab"), Alphabet::from_chars("01"),
                                   std::map<std::string, std::string>{{"a", "0"}, {"b", "1"}});
  EXPECT_EQ(code.k1, 1u);
  EXPECT_EQ(code.k2, 1u);
  EXPECT_EQ(code.pre, (std::vector<Word>{{}}));
}

TEST(PrefixCode, Violations) {
  auto ab = Alphabet::from_chars("ab");
  auto bin = Alphabet::from_chars("01");
  EXPECT_EQ(kind_of([&] { validate_prefix_code(ab, bin, std::map<std::string, std::string>{{"a", "0"}, {"b", "01"}}); }),
            ErrorKind::PrefixViolation);
  EXPECT_EQ(kind_of([&] { validate_prefix_code(ab, bin, std::vector<Word>{{}, {1}}); }), ErrorKind::EmptyImage);
  try {
    validate_prefix_code(ab, bin, std::map<std::string, std::string>{{"a", "0"}, {"b", "01"}});
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos);
  }
}

TEST(PrefixCode, LoadFromFile) {
  auto code = load_prefix_code(std::string(ENTROPYLAB_DATA_DIR) + "/dyck2_code.json");
  EXPECT_EQ(code.images, dyck2_code().images);
  EXPECT_EQ(kind_of([] { load_prefix_code("/nonexistent/code.json"); }), ErrorKind::BadFile);
}

TEST(Decode, Examples) {
  auto code = dyck2_code();
  auto r = decode(code, bits("0010"));
  EXPECT_EQ(r.decoded, (Word{0, 2}));  // a A
  EXPECT_TRUE(r.residual.empty());
  r = decode(code, bits("001"));
  EXPECT_EQ(r.decoded, (Word{0}));
  EXPECT_EQ(r.residual, bits("1"));
  auto code2 = validate_prefix_code(Alphabet::from_chars("ab"), Alphabet::from_chars("01"),
                                    std::map<std::string, std::string>{{"a", "0"}, {"b", "10"}});
  EXPECT_EQ(kind_of([&] { decode(code2, bits("11")); }), ErrorKind::InvalidResidual);
}

TEST(Decode, RoundTripProperty) {
  auto code = dyck2_code();
  auto variable = validate_prefix_code(Alphabet::from_chars("abc"), Alphabet::from_chars("01"),
                                       std::map<std::string, std::string>{{"a", "0"}, {"b", "10"}, {"c", "11"}});
  for (const auto* c : {&code, &variable}) {
    for (const auto& u : enumerate_words(c->source.size(), 5)) {
      auto r = decode(*c, c->encode(u));
      EXPECT_EQ(r.decoded, u);
      EXPECT_TRUE(r.residual.empty());
    }
  }
}

TEST(Decode, UniqueSplitProperty) {
  // brute force: count all splits into codewords + residual in pre
  auto code = validate_prefix_code(Alphabet::from_chars("abc"), Alphabet::from_chars("01"),
                                   std::map<std::string, std::string>{{"a", "0"}, {"b", "10"}, {"c", "11"}});
  std::function<std::size_t(WordView)> splits = [&](WordView w) -> std::size_t {
    std::size_t count = std::binary_search(code.pre.begin(), code.pre.end(), Word(w.begin(), w.end()),
                                           [](const Word& x, const Word& y) { return length_lex_less(x, y); });
    for (const auto& img : code.images) {
      if (is_prefix_of(img, w)) count += splits(w.subspan(img.size()));
    }
    return count;
  };
  for (const auto& w : enumerate_words(2, 10)) {
    const auto n = splits(w);
    EXPECT_LE(n, 1u);
    EXPECT_EQ(n == 1, try_decode(code, w).has_value());
  }
}

TEST(EncodeImage, DyckExamples) {
  auto enc = encode_image(dyck("ab"), dyck2_code());
  EXPECT_TRUE(enc.contains(bits("0010")));
  EXPECT_FALSE(enc.contains(bits("10")));
  EXPECT_FALSE(enc.contains(bits("0")));
  EXPECT_EQ(kind_of([] { encode_image(dyck("a"), dyck2_code()); }), ErrorKind::AlphabetMismatch);
  for (const auto& w : enumerate_words(2, 12)) {
    auto r = try_decode(dyck2_code(), w);
    const bool expected = r && r->residual.empty() && oracle::dyck_by_reduction(r->decoded, 2);
    EXPECT_EQ(enc.contains(w), expected);
  }
}

TEST(Pad, Examples) {
  auto p = pad(dyck("a"));
  const auto& g = p.alphabet();
  EXPECT_TRUE(p.contains(g.parse("a")));
  EXPECT_TRUE(p.contains(g.parse("aAAAaa")));
  EXPECT_FALSE(p.contains(g.parse("aaa")));
}

TEST(Combine, Examples) {
  auto ab = Alphabet::from_chars("ab");
  auto l1 = Language(ab, [](WordView w) { return w.size() == 1 && w[0] == 0; }, "{a}");
  auto l2 = Language(ab, [](WordView w) { return w.size() == 1 && w[0] == 1; }, "{b}");
  auto c = combine(l1, l2, "#");
  EXPECT_TRUE(c.contains(std::string_view("a#b")));
  EXPECT_FALSE(c.contains(std::string_view("b#b")));
  EXPECT_FALSE(c.contains(std::string_view("a##b")));
  EXPECT_EQ(kind_of([&] { combine(l1, l2, "a"); }), ErrorKind::AlphabetMismatch);
  EXPECT_EQ(kind_of([&] { combine(l1, dyck("a"), "#"); }), ErrorKind::AlphabetMismatch);
}

TEST(Reverse, Examples) {
  auto ab = Alphabet::from_chars("ab");
  auto l = Language(ab, [](WordView w) { return w.size() == 2 && w[0] == 0 && w[1] == 1; }, "{ab}");
  auto r = reverse(l);
  EXPECT_TRUE(r.contains(std::string_view("ba")));
  EXPECT_FALSE(r.contains(std::string_view("ab")));
  auto rd = reverse(dpali(ab));
  EXPECT_TRUE(rd.contains(std::string_view("ab#ba")));
}

// pad/combine/reverse agree with direct set constructions on words of length ≤ 8.
TEST(Combinators, AgreeWithSetConstruction) {
  auto ab = Alphabet::from_chars("ab");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    // a random finite language over {a,b} of words up to length 4 plus a regular tail
    std::set<Word> base;
    for (const auto& w : oracle::all_words(2, 4)) {
      if (rng() % 3 == 0) base.insert(w);
    }
    auto l1 = Language(ab, [base](WordView w) { return base.count(Word(w.begin(), w.end())) > 0; }, "finite");
    auto l2 = Language(ab, [](WordView w) { return !w.empty() && w.back() == 0; }, "ends-a");

    // PAD: { u v | u ∈ L, |v| = 2^|u| } built by concatenation
    std::set<Word> pad_set;
    for (const auto& u : base) {
      if (u.size() + (std::size_t{1} << u.size()) > 8) continue;
      for (const auto& v : enumerate_words_exact(2, std::size_t{1} << u.size())) pad_set.insert(concat(u, v));
    }
    auto p = pad(l1);
    for (const auto& w : oracle::all_words(2, 8)) EXPECT_EQ(p.contains(w), pad_set.count(w) > 0);

    // reverse
    auto r = reverse(l1);
    std::set<Word> rev_set;
    for (const auto& u : base) rev_set.emplace(u.rbegin(), u.rend());
    for (const auto& w : oracle::all_words(2, 8)) EXPECT_EQ(r.contains(w), rev_set.count(w) > 0);

    // combine: u # v over {a,b,#}
    auto c = combine(l1, l2, "#");
    std::set<Word> comb_set;
    auto l2_words = oracle::finite_set(2, 7, [&](const Word& w) { return l2.contains(w); });
    for (const auto& u : base) {
      for (const auto& v : l2_words) {
        if (u.size() + 1 + v.size() > 8) continue;
        Word w = u;
        w.push_back(2);
        w.insert(w.end(), v.begin(), v.end());
        comb_set.insert(w);
      }
    }
    for (const auto& w : oracle::all_words(3, 8)) EXPECT_EQ(c.contains(w), comb_set.count(w) > 0);
  }
}

TEST(Combine, NonShapeWordsHaveNoWitnesses) {
  auto ab = Alphabet::from_chars("ab");
  auto c = combine(sigma_star(ab), sigma_star(ab), "#");
  for (const auto& u : oracle::all_words(3, 5)) {
    const auto seps = std::count(u.begin(), u.end(), Symbol{2});
    if (seps >= 2) {
      for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(witness_signature(c, u, n).count(), 0u);
    }
  }
}

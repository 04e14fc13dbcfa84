#include <doctest.h>

#include <string>
#include <vector>

#include "saint/errors.hpp"
#include "saint/text/labels.hpp"
#include "saint/text/tokenizer.hpp"
#include "saint/text/utf8.hpp"

using namespace saint;

TEST_CASE("tokenizer splits words and punctuation") {
  CHECK(tokenize("This phone is excellent !") ==
        std::vector<std::string>{"this", "phone", "is", "excellent", "!"});
  CHECK(tokenize("Company A is better. Target is horrible.") ==
        std::vector<std::string>{"company", "a", "is", "better", ".", "target", "is", "horrible", "."});
  CHECK(tokenize("So sad :(") == std::vector<std::string>{"so", "sad", ":("});
  CHECK(tokenize("How much does Ipad cost?") ==
        std::vector<std::string>{"how", "much", "does", "ipad", "cost", "?"});
  CHECK(tokenize("don't stop") == std::vector<std::string>{"don't", "stop"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \t\n ").empty());
}

TEST_CASE("token spans point into the original text") {
  const std::string text = "Bad, really bad!";
  for (const auto& t : tokenize_with_spans(text)) {
    CHECK(utf8::to_lower(text.substr(t.begin, t.end - t.begin)) == t.text);
  }
  const auto toks = tokenize_with_spans(text);
  REQUIRE(toks.size() == 5);
  CHECK(toks[1].punctuation);
  CHECK_FALSE(toks[0].punctuation);
}

TEST_CASE("utf8 round trip and Vietnamese case folding") {
  const std::string vn = "Điện THOẠI rất TỐT";
  CHECK(utf8::encode(utf8::decode(vn)) == vn);
  CHECK(utf8::to_lower(vn) == "điện thoại rất tốt");
  CHECK(tokenize(vn) == std::vector<std::string>{"điện", "thoại", "rất", "tốt"});
  CHECK(utf8::decode("\xff").front() == U'�');
  CHECK(utf8::to_upper(U'đ') == U'Đ');
}

TEST_CASE("labels") {
  CHECK(index_of(Sentiment::positive) == 0);
  CHECK(index_of(Sentiment::negative) == 1);
  CHECK(index_of(Sentiment::neutral) == 2);
  CHECK(index_of(RuleLabel::heuristics) == 3);
  for (std::size_t i = 0; i < kSentimentClasses; ++i) {
    const auto s = sentiment_from_index(i);
    CHECK(parse_sentiment(to_string(s)) == s);
    const auto oh = one_hot(s);
    for (std::size_t j = 0; j < kSentimentClasses; ++j) CHECK(oh[j] == (i == j ? 1.0 : 0.0));
  }
  for (std::size_t i = 0; i < kRuleClasses; ++i) {
    const auto r = rule_from_index(i);
    CHECK(parse_rule(to_string(r)) == r);
  }
  CHECK(flip_polarity(Sentiment::positive) == Sentiment::negative);
  CHECK(flip_polarity(Sentiment::negative) == Sentiment::positive);
  CHECK(flip_polarity(Sentiment::neutral) == Sentiment::neutral);
  CHECK_FALSE(is_polar(Sentiment::neutral));
  CHECK_THROWS_AS(parse_sentiment("great"), InputError);
  CHECK_THROWS_AS(parse_rule("simplest"), InputError);
  CHECK_THROWS_AS(sentiment_from_index(3), InputError);
  CHECK_THROWS_AS(rule_from_index(4), InputError);
}

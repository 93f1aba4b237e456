#include <random>

#include "../common/random_text.hpp"
#include "doctest.h"
#include "support.hpp"
#include "vaxsent/error.hpp"
#include "vaxsent/normalize.hpp"

using namespace vaxsent;
using namespace vaxsent::text;

namespace {

std::string norm(std::string_view s) { return normalize(s, SubstitutionTable::defaults()).text; }

bool clean(const std::string& s) {
  if (s.empty()) return true;
  if (s.front() == ' ' || s.back() == ' ' || s.find("  ") != std::string::npos) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (alnum || c == ' ') continue;
    if (c != '\'') return false;
    auto is_an = [](char x) { return (x >= 'a' && x <= 'z') || (x >= '0' && x <= '9'); };
    if (i == 0 || i + 1 == s.size() || !is_an(s[i - 1]) || !is_an(s[i + 1])) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("normalize") {
  TEST_CASE("standard slang and emoji mappings") {
    CHECK(norm("omg") == "oh my god");
    CHECK(norm("tbh") == "to be honest");
    CHECK(norm("RT") == "retweet");
    CHECK(norm("dm") == "direct message");
    CHECK(norm("socialdistance") == "social distance");
    CHECK(norm("fwiw") == "for what it's worth");
    CHECK(norm("covid19vax") == "covid 19 vaccine");
    CHECK(norm("☺") == "smile");
    CHECK(norm("☹") == "sad");
  }

  TEST_CASE("documented examples") {
    CHECK(norm("omg the covid19vax 😊") == "oh my god the covid 19 vaccine smile");
    CHECK(norm("RT @user check https://t.co/x tbh") == "retweet check to be honest");
    auto empty = normalize("", SubstitutionTable::defaults());
    CHECK(empty.text.empty());
    CHECK(empty.token_count == 0);
  }

  TEST_CASE("urls, mentions, hashtags and punctuation") {
    CHECK(norm("Get it www.Who.int/x now") == "get it now");
    CHECK(norm("HTTPS://A.B/C done") == "done");
    CHECK(norm("hi @Bob_99, #Vaccine #covid19!") == "hi vaccine covid19");
    CHECK(norm("Don't 'quote' me’s") == "don't quote me's");
    CHECK(norm("omgomg tbh.") == "omgomg to be honest");
    CHECK(norm("😊😊") == "smile smile");
    CHECK(norm("café 🚀 end") == "caf end");
    CHECK(norm("    ...  ") == "");
  }

  TEST_CASE("word patterns match whole tokens only") {
    CHECK(norm("rtx dm's") == "rtx dm's");
    CHECK(norm("(rt)") == "retweet");
  }

  TEST_CASE("tokenize splits and rejoins") {
    auto n = normalize("oh my god", SubstitutionTable::defaults());
    CHECK(tokenize(n) == std::vector<std::string>{"oh", "my", "god"});
    CHECK(tokenize(NormalizedText{}).empty());
    std::mt19937_64 rng(21);
    for (int i = 0; i < 500; ++i) {
      auto t = normalize(test::random_tweet(rng), SubstitutionTable::defaults());
      auto toks = tokenize(t);
      CHECK(toks.size() == t.token_count);
      std::string joined;
      for (const auto& w : toks) joined += (joined.empty() ? "" : " ") + w;
      CHECK(joined == t.text);
    }
  }

  TEST_CASE("idempotent, clean output and complete substitution on random text") {
    std::mt19937_64 rng(1234);
    const auto& table = SubstitutionTable::defaults();
    const std::vector<std::string> words = {"omg", "tbh", "rt", "dm", "socialdistance", "fwiw", "covid19vax"};
    for (int i = 0; i < 3000; ++i) {
      auto raw = test::random_tweet(rng);
      auto once = normalize(raw, table);
      CHECK_MESSAGE(clean(once.text), raw);
      CHECK_MESSAGE(normalize(once.text, table) == once, raw);
      for (const auto& tok : tokenize(once)) {
        CHECK(std::find(words.begin(), words.end(), tok) == words.end());
      }
    }
  }

  TEST_CASE("custom tables") {
    auto t = SubstitutionTable::from_entries({{"idk", "I don't know"}, {"<3", "love"}, {"💉", "vaccine"}});
    CHECK(normalize("IDK <3 the 💉", t).text == "i don't know love the vaccine");
    CHECK(t.symbols().front().pattern.size() >= t.symbols().back().pattern.size());
    REQUIRE(t.word("idk"));
    CHECK(*t.word("idk") == std::vector<std::string>{"i", "don't", "know"});
    CHECK_FALSE(t.word("IDK"));
  }

  TEST_CASE("invalid tables") {
    CHECK_THROWS_AS(SubstitutionTable::from_entries({{"a b", "x"}}), FormatError);
    CHECK_THROWS_AS(SubstitutionTable::from_entries({{"", "x"}}), FormatError);
    CHECK_THROWS_AS(SubstitutionTable::from_entries({{"idk", "x"}, {"IDK", "y"}}), FormatError);
    CHECK_THROWS_AS(SubstitutionTable::from_entries({{"lol", "laugh"}, {"laugh", "x"}}), FormatError);
    CHECK_THROWS_AS(SubstitutionTable::from_entries({{"lol", "laugh out lol"}}), FormatError);

    test::TempDir dir;
    auto missing = dir.write("t.csv", "pattern,replacement\nomg,oh my god\n");
    CHECK_THROWS_AS(SubstitutionTable::load(missing), FormatError);
    auto header = dir.write("h.csv", "from,to\nomg,oh my god\n");
    CHECK_THROWS_AS(SubstitutionTable::load(header), FormatError);
    CHECK_THROWS(SubstitutionTable::load(dir / "none.csv"));
  }

  TEST_CASE("bundled table loads and extends the defaults") {
    auto t = SubstitutionTable::load(test::source_data() / "substitutions.csv");
    CHECK(t.entries().size() >= SubstitutionTable::defaults().entries().size());
    CHECK(normalize("omg 😢 ☻", t).text == "oh my god sad smile");
  }
}

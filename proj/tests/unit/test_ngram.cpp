#include <random>

#include "doctest.h"
#include "support.hpp"
#include "vaxsent/error.hpp"
#include "vaxsent/ngram.hpp"

using namespace vaxsent;
using namespace vaxsent::ngram;
using L = SentimentLabel;

TEST_SUITE("ngram") {
  TEST_CASE("sliding windows") {
    std::vector<std::string> t = {"a", "b", "c"};
    CHECK(ngrams(t, 2) == std::vector<Gram>{{"a", "b"}, {"b", "c"}});
    CHECK(ngrams(t, 3) == std::vector<Gram>{{"a", "b", "c"}});
    CHECK(ngrams(t, 4).empty());
    CHECK(ngrams(t, 1).size() == 3);
    CHECK_THROWS_AS(ngrams(t, 0), InvalidParameterError);
  }

  TEST_CASE("counting skips windows containing stopwords; ties break lexicographically") {
    StopwordSet stop = {"the"};
    NgramCounter c(2, stop);
    std::vector<std::string> a = {"vaccine", "works", "the", "vaccine", "works"};
    std::vector<std::string> b = {"side", "effects", "vaccine", "works"};
    c.add(a);
    c.add(b);
    auto top = c.top(10);
    REQUIRE(top.size() == 3);
    CHECK(top[0] == NgramCount{{"vaccine", "works"}, 3});
    CHECK(top[1] == NgramCount{{"effects", "vaccine"}, 1});
    CHECK(top[2] == NgramCount{{"side", "effects"}, 1});
    CHECK(c.top(1).size() == 1);
    CHECK(top[0].joined() == "vaccine works");
    CHECK_THROWS_AS(NgramCounter(0, stop), InvalidParameterError);
  }

  TEST_CASE("bundled stopwords") {
    auto s = load_stopwords(test::source_data() / "stopwords.txt");
    CHECK(s.contains("the"));
    CHECK(s.contains("and"));
    CHECK_FALSE(s.contains("vaccine"));
    CHECK_THROWS_AS(load_stopwords(test::source_data() / "missing.txt"), IoError);
  }

  TEST_CASE("counts are conserved, shards merge exactly, and groups partition the corpus") {
    std::mt19937_64 rng(77);
    StopwordSet stop = {"w0"};
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<polarity::ScoredTweet> corpus;
      std::size_t windows = 0;
      for (int i = 0; i < 40; ++i) {
        std::string text;
        std::vector<std::string> toks(rng() % 8);
        for (auto& w : toks) {
          w = "w" + std::to_string(rng() % 6);
          text += (text.empty() ? "" : " ") + w;
        }
        for (std::size_t j = 0; j + 2 <= toks.size(); ++j) {
          if (toks[j] != "w0" && toks[j + 1] != "w0") ++windows;
        }
        static const double naive[] = {-0.5, 0.0, 0.5};
        corpus.push_back(test::scored(std::to_string(i), "IN", 2021, 1, {}, naive[rng() % 3], text));
      }
      auto all = top_k(corpus, 2, 1000, stop);
      std::size_t total = 0;
      for (const auto& g : all) total += g.count;
      CHECK(total == windows);

      NgramCounter left(2, stop), right(2, stop), whole(2, stop);
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto toks = text::tokenize(corpus[i].normalized);
        (i % 3 ? left : right).add(toks);
        whole.add(toks);
      }
      right.merge(left);
      CHECK(right.top(1000) == whole.top(1000));

      auto groups = top_k_by_group(corpus, 2, 1000, stop);
      CHECK(groups.size() == 3);
      std::map<Gram, std::size_t> summed;
      for (const auto& [g, grams] : groups) {
        for (const auto& n : grams) summed[n.gram] += n.count;
      }
      std::map<Gram, std::size_t> expected;
      for (const auto& n : all) expected[n.gram] = n.count;
      CHECK(summed == expected);

      for (std::size_t i = 1; i < all.size(); ++i) {
        CHECK((all[i - 1].count > all[i].count ||
               (all[i - 1].count == all[i].count && all[i - 1].gram < all[i].gram)));
      }
    }
  }

  TEST_CASE("k must be positive") {
    StopwordSet stop;
    std::vector<polarity::ScoredTweet> corpus;
    CHECK_THROWS_AS(top_k(corpus, 2, 0, stop), InvalidParameterError);
    CHECK_THROWS_AS(top_k_by_group(corpus, 2, 0, stop), InvalidParameterError);
    CHECK(top_k(corpus, 2, 5, stop).empty());
  }
}

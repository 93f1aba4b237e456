#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <chrono>
#include <filesystem>
#include <functional>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unistd.h>

#include "vaxsent/corpus.hpp"
#include "vaxsent/polarity.hpp"

namespace test {

namespace fs = std::filesystem;

inline fs::path source_data() { return VAXSENT_SOURCE_DATA_DIR; }
inline fs::path fixtures() { return VAXSENT_TEST_DATA_DIR; }

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("vaxsent-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

  fs::path write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
    return path_ / name;
  }

 private:
  fs::path path_;
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline vaxsent::Timestamp at(int y, unsigned m, unsigned d = 1) {
  using namespace std::chrono;
  return sys_days{year{y} / month{m} / day{d}} + hours{12};
}

inline vaxsent::ingest::TweetRecord record(std::string id, std::optional<std::string> country, int y,
                                           unsigned m, std::string text = "text") {
  return {std::move(id), at(y, m), std::move(country), std::move(text)};
}

// A scored tweet with the given labels and naive score; no classifier involved.
inline vaxsent::polarity::ScoredTweet scored(std::string id, std::optional<std::string> country, int y,
                                             unsigned m, const vaxsent::LabelSet& labels,
                                             double naive = 0.0, std::string normalized = "") {
  using namespace vaxsent;
  polarity::ScoredTweet t;
  t.record = record(std::move(id), std::move(country), y, m);
  t.normalized.text = normalized;
  t.normalized.token_count = normalized.empty() ? 0 : 1 + std::count(normalized.begin(), normalized.end(), ' ');
  t.labels = labels;
  auto table = polarity::WeightTable::defaults();
  t.weight_sum = polarity::weight_sum(labels, table);
  t.vaccine_score = polarity::vaccine_polarity(labels, table);
  t.naive_score = naive;
  t.stance = polarity::stance(t.vaccine_score);
  t.group = polarity::polarity_group(naive);
  return t;
}

inline vaxsent::LabelSet random_labels(std::mt19937_64& rng) {
  vaxsent::LabelSet s;
  for (auto l : vaxsent::kAllLabels) {
    if (rng() % 4 == 0) s.insert(l);
  }
  return s;
}

}  // namespace test

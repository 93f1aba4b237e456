#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vaxsent {

// The eleven multi-label sentiments. The enumerator value is the canonical
// output index used by every backend, table, and file in the project.
enum class SentimentLabel : std::uint8_t {
  Optimistic = 0,
  Thankful,
  Empathetic,
  Pessimistic,
  Anxious,
  Sad,
  Annoyed,
  Denial,
  OfficialReport,
  Surprise,
  Joking,
};

inline constexpr std::size_t kLabelCount = 11;

inline constexpr std::array<SentimentLabel, kLabelCount> kAllLabels = {
    SentimentLabel::Optimistic,  SentimentLabel::Thankful, SentimentLabel::Empathetic,
    SentimentLabel::Pessimistic, SentimentLabel::Anxious,  SentimentLabel::Sad,
    SentimentLabel::Annoyed,     SentimentLabel::Denial,   SentimentLabel::OfficialReport,
    SentimentLabel::Surprise,    SentimentLabel::Joking,
};

constexpr std::size_t index_of(SentimentLabel label) { return static_cast<std::size_t>(label); }

std::string_view label_name(SentimentLabel label);

// Case-insensitive; also accepts "official", "official report" and
// "official_report" for OfficialReport.
std::optional<SentimentLabel> parse_label(std::string_view name);

// Per-label probabilities, each in [0, 1].
class LabelVector {
 public:
  LabelVector() = default;
  // Throws InvalidParameterError if a value is outside [0, 1] or NaN.
  explicit LabelVector(const std::array<double, kLabelCount>& probs);

  static LabelVector indicator(std::initializer_list<SentimentLabel> labels);

  double operator[](SentimentLabel label) const { return probs_[index_of(label)]; }
  const std::array<double, kLabelCount>& values() const { return probs_; }

  bool operator==(const LabelVector&) const = default;

 private:
  std::array<double, kLabelCount> probs_{};
};

class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<SentimentLabel> labels);

  void insert(SentimentLabel label) { bits_.set(index_of(label)); }
  bool contains(SentimentLabel label) const { return bits_.test(index_of(label)); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_subset_of(const LabelSet& other) const { return (bits_ & ~other.bits_).none(); }
  bool disjoint(const LabelSet& other) const { return (bits_ & other.bits_).none(); }
  LabelSet operator|(const LabelSet& other) const;

  // Members in canonical order.
  std::vector<SentimentLabel> labels() const;

  // "Annoyed;Denial" in canonical order; "" when empty.
  std::string str() const;
  // Inverse of str(). Throws InvalidParameterError on an unknown name.
  static LabelSet parse(std::string_view joined);

  std::uint16_t bits() const { return static_cast<std::uint16_t>(bits_.to_ulong()); }

  bool operator==(const LabelSet&) const = default;

 private:
  std::bitset<kLabelCount> bits_;
};

}  // namespace vaxsent

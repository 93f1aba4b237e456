#include <cmath>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "vaxsent/classifier.hpp"
#include "vaxsent/error.hpp"
#include "vaxsent/exported_model.hpp"

using namespace vaxsent;
using namespace vaxsent::classify;

namespace {

const test::fs::path kModel = test::fixtures() / "tiny_model";

nlohmann::json expected() {
  std::ifstream in(kModel / "expected.json");
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_SUITE("exported_model") {
  TEST_CASE("manifest") {
    auto m = ModelManifest::load(kModel);
    CHECK(m.format == "torchscript");
    CHECK(m.labels.size() == 10);
    CHECK(std::find(m.labels.begin(), m.labels.end(), SentimentLabel::OfficialReport) == m.labels.end());
    CHECK(m.max_length == 16);
    CHECK(m.outputs_logits);
    CHECK(m.model == kModel / "model.pt");
  }

  TEST_CASE("manifest errors") {
    test::TempDir dir;
    CHECK_THROWS_AS(ModelManifest::load(dir.path()), BackendUnavailableError);
    auto with = [&](const std::string& body) {
      dir.write("manifest.json", body);
      return ModelManifest::load(dir.path());
    };
    const std::string ten =
        R"(["Optimistic","Thankful","Empathetic","Pessimistic","Anxious","Sad","Annoyed","Denial","Surprise","Joking"])";
    CHECK_NOTHROW(with(R"({"labels":)" + ten + "}"));
    CHECK_THROWS_AS(with("[1,2]"), FormatError);
    CHECK_THROWS_AS(with(R"({"labels":["Optimistic"]})"), FormatError);
    CHECK_THROWS_AS(with(R"({"labels":)" + ten + R"(,"format":"onnx"})"), FormatError);
    CHECK_THROWS_AS(with(R"({"labels":)" + ten + R"(,"output":"scores"})"), FormatError);
    CHECK_THROWS_AS(with(R"({"labels":)" + ten + R"(,"max_length":1})"), FormatError);
    CHECK_THROWS_AS(
        with(R"({"labels":["Thankful","Optimistic","Empathetic","Pessimistic","Anxious","Sad","Annoyed","Denial","Surprise","Joking"]})"),
        FormatError);
    CHECK_THROWS_AS(with(R"({"labels":)" + ten + R"(,"max_length":"x"})"), FormatError);
  }

  TEST_CASE("wordpiece matches the reference tokenizer") {
    auto tok = WordPieceTokenizer::load(kModel / "vocab.txt", true);
    for (const auto& c : expected()["cases"]) {
      auto text = c["text"].get<std::string>();
      CAPTURE(text);
      CHECK(tok.tokenize(text) == c["tokens"].get<std::vector<std::string>>());
      CHECK(tok.encode(text, 16) == c["ids"].get<std::vector<std::int64_t>>());
    }
    CHECK(tok.encode("", 2) == std::vector<std::int64_t>{2, 3});
    CHECK(tok.encode("the the the", 3) == std::vector<std::int64_t>{2, 5, 3});
    CHECK(tok.tokenize(std::string(101, 'a')) == std::vector<std::string>{"[UNK]"});
  }

  TEST_CASE("vocabulary must contain the special tokens") {
    CHECK_THROWS_AS(WordPieceTokenizer({"[CLS]", "[SEP]", "[UNK]"}, true), FormatError);
    CHECK_THROWS_AS(WordPieceTokenizer({"[PAD]", "[SEP]", "[UNK]"}, true), FormatError);
    CHECK_THROWS_AS(WordPieceTokenizer::load(kModel / "none.txt", true), BackendUnavailableError);
  }

  TEST_CASE("missing model directory") {
    CHECK_THROWS_AS(load_exported_model(kModel / "does-not-exist"), BackendUnavailableError);
  }

  TEST_CASE("model outputs agree with the exporting framework") {
    if (!exported_model_supported()) {
      CHECK_THROWS_AS(load_exported_model(kModel), BackendUnavailableError);
      return;
    }
    auto backend = load_exported_model(kModel);
    CHECK(backend->name() == "exported-model");
    auto exp = expected();
    std::vector<SentimentLabel> labels;
    for (const auto& n : exp["labels"]) labels.push_back(*parse_label(n.get<std::string>()));
    for (const auto& c : exp["cases"]) {
      auto text = c["text"].get<std::string>();
      CAPTURE(text);
      auto v = backend->classify("id", text::NormalizedText{text, 0});
      auto probs = c["probabilities"].get<std::vector<double>>();
      for (std::size_t i = 0; i < labels.size(); ++i) CHECK(std::abs(v[labels[i]] - probs[i]) < 1e-4);
      CHECK(v[SentimentLabel::OfficialReport] == 0.0);
    }
  }

  TEST_CASE("graph missing next to a valid manifest") {
    test::TempDir dir;
    test::fs::copy(kModel / "manifest.json", dir / "manifest.json");
    test::fs::copy(kModel / "vocab.txt", dir / "vocab.txt");
    CHECK_THROWS_AS(load_exported_model(dir.path()), BackendUnavailableError);
  }
}

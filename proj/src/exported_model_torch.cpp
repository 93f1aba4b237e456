#include <torch/script.h>

#include <cmath>

#include "vaxsent/classifier.hpp"
#include "vaxsent/error.hpp"
#include "vaxsent/exported_model.hpp"

namespace vaxsent::classify {

namespace {

// One TorchScript module shared by all callers. forward() runs under
// InferenceMode and keeps no per-call state, so concurrent classify() calls
// are safe without replicating the session.
class ExportedModelBackend final : public ClassifierBackend {
 public:
  ExportedModelBackend(ModelManifest manifest, WordPieceTokenizer tokenizer, torch::jit::Module module)
      : manifest_(std::move(manifest)), tokenizer_(std::move(tokenizer)), module_(std::move(module)) {}

  LabelVector classify(std::string_view, const text::NormalizedText& text) const override {
    auto ids = tokenizer_.encode(text.text, manifest_.max_length);
    const auto len = static_cast<std::int64_t>(ids.size());
    c10::InferenceMode guard;
    auto input_ids = torch::from_blob(ids.data(), {1, len}, torch::kInt64).clone();
    auto mask = torch::ones({1, len}, torch::kInt64);

    torch::Tensor out;
    try {
      torch::jit::Module module = module_;  // shallow handle copy
      out = module.forward({input_ids, mask}).toTensor().to(torch::kDouble).reshape({-1}).contiguous();
    } catch (const c10::Error& e) {
      throw BackendUnavailableError(std::string("exported model inference failed: ") + e.what_without_backtrace());
    }
    if (out.numel() != static_cast<std::int64_t>(manifest_.labels.size())) {
      throw BackendUnavailableError("exported model returned " + std::to_string(out.numel()) +
                                    " outputs, manifest declares " +
                                    std::to_string(manifest_.labels.size()));
    }
    std::array<double, kLabelCount> probs{};
    const double* values = out.data_ptr<double>();
    for (std::size_t i = 0; i < manifest_.labels.size(); ++i) {
      double v = values[i];
      if (manifest_.outputs_logits) v = 1.0 / (1.0 + std::exp(-v));
      if (std::isnan(v)) throw BackendUnavailableError("exported model produced NaN");
      probs[index_of(manifest_.labels[i])] = std::clamp(v, 0.0, 1.0);
    }
    return LabelVector(probs);
  }

  std::string name() const override { return "exported-model"; }

 private:
  ModelManifest manifest_;
  WordPieceTokenizer tokenizer_;
  torch::jit::Module module_;
};

}  // namespace

bool exported_model_supported() { return true; }

std::unique_ptr<ClassifierBackend> load_exported_model(const std::filesystem::path& dir) {
  auto manifest = ModelManifest::load(dir);
  auto tokenizer = WordPieceTokenizer::load(manifest.vocab, manifest.lowercase);
  if (!std::filesystem::exists(manifest.model)) {
    throw BackendUnavailableError("exported model graph not found: " + manifest.model.string());
  }
  torch::jit::Module module;
  try {
    module = torch::jit::load(manifest.model.string());
  } catch (const c10::Error& e) {
    throw BackendUnavailableError("cannot load " + manifest.model.string() + ": " + e.what_without_backtrace());
  }
  module.eval();
  return std::make_unique<ExportedModelBackend>(std::move(manifest), std::move(tokenizer), std::move(module));
}

}  // namespace vaxsent::classify

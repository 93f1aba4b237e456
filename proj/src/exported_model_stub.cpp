#include "vaxsent/classifier.hpp"
#include "vaxsent/error.hpp"
#include "vaxsent/exported_model.hpp"

namespace vaxsent::classify {

bool exported_model_supported() { return false; }

std::unique_ptr<ClassifierBackend> load_exported_model(const std::filesystem::path& dir) {
  ModelManifest::load(dir);
  throw BackendUnavailableError("exported-model backend unavailable: vaxsent was built without libtorch");
}

}  // namespace vaxsent::classify

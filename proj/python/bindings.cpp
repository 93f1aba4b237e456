#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vaxsent/classifier.hpp"
#include "vaxsent/labels.hpp"
#include "vaxsent/normalize.hpp"
#include "vaxsent/pipeline.hpp"
#include "vaxsent/polarity.hpp"

namespace py = pybind11;
using namespace vaxsent;

namespace {

text::SubstitutionTable table_for(const std::optional<std::filesystem::path>& path) {
  return path ? text::SubstitutionTable::load(*path) : text::SubstitutionTable::defaults();
}

LabelSet to_set(const std::vector<std::string>& names) {
  LabelSet set;
  for (const auto& n : names) {
    auto label = parse_label(n);
    if (!label) throw InvalidParameterError("unknown sentiment label '" + n + "'");
    set.insert(*label);
  }
  return set;
}

std::vector<std::string> to_names(const LabelSet& set) {
  std::vector<std::string> out;
  for (auto l : set.labels()) out.emplace_back(label_name(l));
  return out;
}

report::Command parse_command(const std::string& name) {
  for (auto c : {report::Command::score, report::Command::aggregate, report::Command::ngrams,
                 report::Command::report}) {
    if (report::command_name(c) == name) return c;
  }
  throw report::StageError(report::Stage::config, "unknown command '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "vaxsent native core";
  m.attr("__version__") = std::string(report::kVersion);

  // Module-lifetime exception types; intentionally never released.
  static PyObject* error = PyErr_NewException("vaxsent.VaxsentError", nullptr, nullptr);
  static PyObject* stage_error = PyErr_NewException("vaxsent.StageError", error, nullptr);
  m.attr("VaxsentError") = py::handle(error);
  m.attr("StageError") = py::handle(stage_error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const report::StageError& e) {
      py::object exc = py::handle(stage_error)(e.what());
      exc.attr("stage") = std::string(report::stage_name(e.stage()));
      exc.attr("exit_code") = report::exit_code(e.stage());
      PyErr_SetObject(stage_error, exc.ptr());
    } catch (const Error& e) {
      PyErr_SetString(error, e.what());
    }
  });

  m.def("label_names", [] {
    std::vector<std::string> out;
    for (auto l : kAllLabels) out.emplace_back(label_name(l));
    return out;
  });

  m.def("normalize", [](std::string_view raw, std::optional<std::filesystem::path> substitutions) {
    return text::normalize(raw, table_for(substitutions)).text;
  }, py::arg("text"), py::arg("substitutions") = py::none());

  m.def("tokenize", [](std::string_view raw, std::optional<std::filesystem::path> substitutions) {
    return text::tokenize(text::normalize(raw, table_for(substitutions)));
  }, py::arg("text"), py::arg("substitutions") = py::none());

  m.def("threshold", [](const std::array<double, kLabelCount>& probs, double tau) {
    return to_names(classify::threshold(LabelVector(probs), tau));
  }, py::arg("probabilities"), py::arg("tau") = classify::kDefaultThreshold);

  m.def("weight_sum", [](const std::vector<std::string>& labels) {
    return polarity::weight_sum(to_set(labels), polarity::WeightTable::defaults());
  }, py::arg("labels"));

  m.def("vaccine_score", [](const std::vector<std::string>& labels) {
    return polarity::vaccine_polarity(to_set(labels), polarity::WeightTable::defaults());
  }, py::arg("labels"));

  m.def("stance", [](double score) { return std::string(polarity::stance_name(polarity::stance(score))); },
        py::arg("score"));

  m.def("polarity_group", [](double p) { return std::string(polarity::group_name(polarity::polarity_group(p))); },
        py::arg("p"));

  m.def("exported_model_supported", &classify::exported_model_supported);

  m.def("run", [](const std::filesystem::path& config, const std::string& command,
                  std::optional<std::filesystem::path> output_dir) {
    auto c = report::PipelineConfig::load(config);
    if (output_dir) c.output_dir = std::filesystem::absolute(*output_dir).string();
    py::gil_scoped_release release;
    return report::run_pipeline(c, parse_command(command));
  }, py::arg("config"), py::arg("command") = "report", py::arg("output_dir") = py::none());

  m.def("inspect", [](const std::filesystem::path& config, const std::string& id) {
    return report::inspect(report::PipelineConfig::load(config), id);
  }, py::arg("config"), py::arg("tweet_id"));
}

#include "holeprobe/manifest.hpp"

#include "holeprobe/digest.hpp"
#include "holeprobe/errors.hpp"
#include "json.hpp"

namespace holeprobe {

using nlohmann::json;

namespace {

json input_json(const InputRecord& r) { return {{"path", r.path}, {"sha256", r.sha256}}; }

InputRecord parse_input(const json& j) { return {j.at("path").get<std::string>(), j.at("sha256").get<std::string>()}; }

}  // namespace

std::string metric_name(Metric metric) { return metric == Metric::cosine ? "cosine" : "euclidean"; }

Metric parse_metric(std::string_view name) {
  if (name == "cosine") return Metric::cosine;
  if (name == "euclidean") return Metric::euclidean;
  throw InputError("unknown metric '" + std::string(name) + "'");
}

InputRecord record_input(const std::string& path) { return {path, sha256_file(path)}; }

std::string RunManifest::to_json() const {
  const json j{{"tool", tool},
               {"version", version},
               {"inputs", {{"base", input_json(base)}, {"class_a", input_json(class_a)}, {"class_b", input_json(class_b)}}},
               {"metric", metric_name(metric)},
               {"truncation", truncation ? json(*truncation) : json(nullptr)},
               {"config",
                {{"iterations", config.iterations},
                 {"sample_fraction", config.sample_fraction},
                 {"seed", config.seed},
                 {"persistence_threshold", config.persistence_threshold},
                 {"permutations", config.permutations},
                 {"average_nonzero_only", config.average_nonzero_only}}},
               {"output", output}};
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    const auto& inputs = j.at("inputs");
    m.base = parse_input(inputs.at("base"));
    m.class_a = parse_input(inputs.at("class_a"));
    m.class_b = parse_input(inputs.at("class_b"));
    m.metric = parse_metric(j.at("metric").get<std::string>());
    if (!j.at("truncation").is_null()) m.truncation = j["truncation"].get<double>();
    const auto& c = j.at("config");
    m.config.iterations = c.at("iterations").get<std::size_t>();
    m.config.sample_fraction = c.at("sample_fraction").get<double>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.persistence_threshold = c.at("persistence_threshold").get<double>();
    m.config.permutations = c.at("permutations").get<std::size_t>();
    m.config.average_nonzero_only = c.value("average_nonzero_only", false);
    m.output = j.at("output").get<std::string>();
    m.config.validate();
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("manifest: ") + e.what());
  }
}

void RunManifest::verify_inputs() const {
  for (const InputRecord* r : {&base, &class_a, &class_b}) {
    if (sha256_file(r->path) != r->sha256) {
      throw InputError("input " + r->path + " does not match the digest recorded in the manifest");
    }
  }
}

}  // namespace holeprobe

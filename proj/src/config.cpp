#include "corrgt/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "corrgt/errors.hpp"

namespace corrgt {

namespace {

using Section = std::map<std::string, std::string>;
using Sections = std::map<std::string, Section>;

const std::map<std::string, std::vector<std::string>> kKnownKeys = {
    {"graph", {"family", "nodes", "side", "degree", "clusters", "q_intra", "q_inter", "file", "seed", "resample"}},
    {"model", {"r", "p"}},
    {"strategy",
     {"kind", "backend", "partition", "eps_prime", "group_length", "c_grid", "grid_slack", "gamma", "design_slack",
      "decoder", "sbm_constant"}},
    {"error", {"criterion", "eps", "delta"}},
    {"run", {"trials", "seed", "threads"}},
    {"bounds", {"entropy", "strong_error", "star", "components"}},
    {"output", {"dir", "name"}},
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& value) {
  double x = 0.0;
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, x);
  if (res.ec != std::errc{} || res.ptr != end) throw ValidationError(key + ": expected a number, got '" + value + "'");
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  std::uint64_t x = 0;
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, x);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ValidationError(key + ": expected a nonnegative integer, got '" + value + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ValidationError(key + ": expected true or false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  require(!out.empty(), key + ": list must not be empty");
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_double(xs[i]);
  return out;
}

bool is_auto(const std::string& value) { return value.empty() || value == "auto"; }

Sections to_sections(const ExperimentConfig& cfg) {
  Sections s;
  auto& g = s["graph"];
  g["family"] = std::string(to_string(cfg.graph.spec.family));
  g["nodes"] = std::to_string(cfg.graph.spec.nodes);
  g["side"] = std::to_string(cfg.graph.spec.side);
  g["degree"] = std::to_string(cfg.graph.spec.degree);
  g["clusters"] = std::to_string(cfg.graph.spec.clusters);
  g["q_intra"] = format_double(cfg.graph.spec.q_intra);
  g["q_inter"] = format_double(cfg.graph.spec.q_inter);
  if (!cfg.graph.file.empty()) g["file"] = cfg.graph.file;
  g["seed"] = std::to_string(cfg.graph.seed);
  g["resample"] = cfg.graph.resample ? "true" : "false";

  s["model"]["r"] = join(cfg.r_values);
  s["model"]["p"] = join(cfg.p_values);

  auto& st = s["strategy"];
  const auto& spec = cfg.strategy;
  st["kind"] = std::string(to_string(spec.kind));
  st["backend"] = std::string(to_string(spec.backend));
  st["partition"] = spec.partition_family ? std::string(to_string(*spec.partition_family)) : "auto";
  st["eps_prime"] = spec.eps_prime ? format_double(*spec.eps_prime) : "auto";
  st["group_length"] = spec.group_length ? std::to_string(*spec.group_length) : "auto";
  st["c_grid"] = format_double(spec.c_grid);
  st["grid_slack"] = spec.grid_slack ? format_double(*spec.grid_slack) : "auto";
  st["gamma"] = format_double(spec.gamma);
  st["design_slack"] = format_double(spec.design_slack);
  st["decoder"] = spec.decoder == Decoder::comp ? "comp" : "dd";
  st["sbm_constant"] = format_double(spec.sbm_constant);

  s["error"]["criterion"] = cfg.criterion == ErrorCriterion::average ? "average" : "maximum";
  s["error"]["eps"] = format_double(cfg.eps);
  s["error"]["delta"] = format_double(cfg.delta);

  s["run"]["trials"] = std::to_string(cfg.trials);
  s["run"]["seed"] = std::to_string(cfg.seed);
  s["run"]["threads"] = std::to_string(cfg.threads);

  auto b = [](bool x) { return x ? std::string("true") : std::string("false"); };
  s["bounds"]["entropy"] = b(cfg.bounds.entropy);
  s["bounds"]["strong_error"] = b(cfg.bounds.strong_error);
  s["bounds"]["star"] = b(cfg.bounds.star);
  s["bounds"]["components"] = b(cfg.bounds.components);

  s["output"]["dir"] = cfg.output_dir;
  s["output"]["name"] = cfg.output_name;
  return s;
}

ExperimentConfig from_sections(const Sections& sections) {
  for (const auto& [name, keys] : sections) {
    const auto known = kKnownKeys.find(name);
    require(known != kKnownKeys.end(), "unknown config section [" + name + "]");
    for (const auto& [key, value] : keys) {
      (void)value;
      require(std::find(known->second.begin(), known->second.end(), key) != known->second.end(),
              "unknown key '" + key + "' in [" + name + "]");
    }
  }

  ExperimentConfig cfg;
  auto get = [&](const std::string& sec, const std::string& key) -> const std::string* {
    const auto s = sections.find(sec);
    if (s == sections.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };
  auto id = [](const std::string& sec, const std::string& key) { return sec + "." + key; };

  if (auto v = get("graph", "family")) cfg.graph.spec.family = parse_family(*v);
  if (auto v = get("graph", "nodes")) cfg.graph.spec.nodes = parse_uint(id("graph", "nodes"), *v);
  if (auto v = get("graph", "side")) cfg.graph.spec.side = parse_uint(id("graph", "side"), *v);
  if (auto v = get("graph", "degree")) cfg.graph.spec.degree = parse_uint(id("graph", "degree"), *v);
  if (auto v = get("graph", "clusters")) cfg.graph.spec.clusters = parse_uint(id("graph", "clusters"), *v);
  if (auto v = get("graph", "q_intra")) cfg.graph.spec.q_intra = parse_double(id("graph", "q_intra"), *v);
  if (auto v = get("graph", "q_inter")) cfg.graph.spec.q_inter = parse_double(id("graph", "q_inter"), *v);
  if (auto v = get("graph", "file")) cfg.graph.file = *v;
  if (auto v = get("graph", "seed")) cfg.graph.seed = parse_uint(id("graph", "seed"), *v);
  if (auto v = get("graph", "resample")) cfg.graph.resample = parse_bool(id("graph", "resample"), *v);

  if (auto v = get("model", "r")) cfg.r_values = parse_list("model.r", *v);
  if (auto v = get("model", "p")) cfg.p_values = parse_list("model.p", *v);

  auto& spec = cfg.strategy;
  if (auto v = get("strategy", "kind")) spec.kind = parse_strategy_kind(*v);
  if (auto v = get("strategy", "backend")) spec.backend = parse_backend(*v);
  if (auto v = get("strategy", "partition"); v && !is_auto(*v)) spec.partition_family = parse_partition_family(*v);
  if (auto v = get("strategy", "eps_prime"); v && !is_auto(*v)) spec.eps_prime = parse_double("strategy.eps_prime", *v);
  if (auto v = get("strategy", "group_length"); v && !is_auto(*v))
    spec.group_length = parse_uint("strategy.group_length", *v);
  if (auto v = get("strategy", "c_grid")) spec.c_grid = parse_double("strategy.c_grid", *v);
  if (auto v = get("strategy", "grid_slack"); v && !is_auto(*v))
    spec.grid_slack = parse_double("strategy.grid_slack", *v);
  if (auto v = get("strategy", "gamma")) spec.gamma = parse_double("strategy.gamma", *v);
  if (auto v = get("strategy", "design_slack")) spec.design_slack = parse_double("strategy.design_slack", *v);
  if (auto v = get("strategy", "decoder")) {
    if (*v == "comp") spec.decoder = Decoder::comp;
    else if (*v == "dd" || *v == "definite_defectives") spec.decoder = Decoder::definite_defectives;
    else throw ValidationError("strategy.decoder must be comp or dd, got '" + *v + "'");
  }
  if (auto v = get("strategy", "sbm_constant")) spec.sbm_constant = parse_double("strategy.sbm_constant", *v);

  if (auto v = get("error", "criterion")) {
    if (*v == "average") cfg.criterion = ErrorCriterion::average;
    else if (*v == "maximum") cfg.criterion = ErrorCriterion::maximum;
    else throw ValidationError("error.criterion must be average or maximum, got '" + *v + "'");
  }
  if (auto v = get("error", "eps")) cfg.eps = parse_double("error.eps", *v);
  if (auto v = get("error", "delta")) cfg.delta = parse_double("error.delta", *v);

  if (auto v = get("run", "trials")) cfg.trials = parse_uint("run.trials", *v);
  if (auto v = get("run", "seed")) cfg.seed = parse_uint("run.seed", *v);
  if (auto v = get("run", "threads")) cfg.threads = static_cast<unsigned>(parse_uint("run.threads", *v));

  if (auto v = get("bounds", "entropy")) cfg.bounds.entropy = parse_bool("bounds.entropy", *v);
  if (auto v = get("bounds", "strong_error")) cfg.bounds.strong_error = parse_bool("bounds.strong_error", *v);
  if (auto v = get("bounds", "star")) cfg.bounds.star = parse_bool("bounds.star", *v);
  if (auto v = get("bounds", "components")) cfg.bounds.components = parse_bool("bounds.components", *v);

  if (auto v = get("output", "dir")) cfg.output_dir = *v;
  if (auto v = get("output", "name")) cfg.output_name = *v;

  cfg.strategy = cfg.effective_strategy();
  cfg.validate();
  return cfg;
}

}  // namespace

StrategySpec ExperimentConfig::effective_strategy() const {
  StrategySpec s = strategy;
  s.eps = eps;
  s.delta = criterion == ErrorCriterion::maximum ? std::optional<double>(delta) : std::nullopt;
  return s;
}

void ExperimentConfig::validate() const {
  if (graph.file.empty()) graph.spec.validate();
  require(!r_values.empty() && !p_values.empty(), "model.r and model.p must list at least one value");
  for (const auto r : r_values) require_probability(r, "model.r");
  for (const auto p : p_values) require_probability(p, "model.p");
  require(eps >= 0.0 && eps < 1.0, "error.eps must lie in [0, 1)");
  require(delta > 0.0 && delta < 1.0, "error.delta must lie in (0, 1)");
  effective_strategy().validate();
  require(!output_name.empty(), "output.name must not be empty");
}

ExperimentConfig parse_config_text(const std::string& text) {
  Sections sections;
  std::istringstream in(text);
  std::string line;
  std::string current;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', "line " + std::to_string(lineno) + ": malformed section header");
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos, "line " + std::to_string(lineno) + ": expected key = value");
    require(!current.empty(), "line " + std::to_string(lineno) + ": key outside any section");
    sections[current][trim(std::string_view(line).substr(0, eq))] = trim(std::string_view(line).substr(eq + 1));
  }
  return from_sections(sections);
}

std::string to_config_text(const ExperimentConfig& cfg) {
  const auto sections = to_sections(cfg);
  std::ostringstream out;
  bool first = true;
  // Fixed section order keeps the text stable and readable.
  for (const char* name : {"graph", "model", "strategy", "error", "run", "bounds", "output"}) {
    const auto it = sections.find(name);
    if (it == sections.end()) continue;
    if (!first) out << '\n';
    first = false;
    out << '[' << name << "]\n";
    for (const auto& key : kKnownKeys.at(name)) {
      const auto kv = it->second.find(key);
      if (kv != it->second.end()) out << key << " = " << kv->second << '\n';
    }
  }
  return out.str();
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  for (const auto& [name, keys] : to_sections(cfg)) {
    auto& sec = j[name];
    for (const auto& [key, value] : keys) {
      if (name == "model") {
        sec[key] = key == "r" ? cfg.r_values : cfg.p_values;
      } else if (value == "true" || value == "false") {
        sec[key] = value == "true";
      } else if (value == "auto") {
        sec[key] = nullptr;
      } else if (key == "family" || key == "file" || key == "kind" || key == "backend" || key == "partition" ||
                 key == "decoder" || key == "criterion" || key == "dir" || key == "name") {
        sec[key] = value;
      } else if (key == "seed") {
        sec[key] = parse_uint(key, value);
      } else {
        sec[key] = nlohmann::json::parse(value);
      }
    }
  }
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  require(j.is_object(), "config JSON must be an object");
  Sections sections;
  for (const auto& [name, sec] : j.items()) {
    require(sec.is_object(), "config section '" + name + "' must be an object");
    auto& out = sections[name];
    for (const auto& [key, value] : sec.items()) {
      if (value.is_null()) {
        out[key] = "auto";
      } else if (value.is_string()) {
        out[key] = value.get<std::string>();
      } else if (value.is_boolean()) {
        out[key] = value.get<bool>() ? "true" : "false";
      } else if (value.is_array()) {
        std::vector<double> xs;
        for (const auto& x : value) {
          require(x.is_number(), name + "." + key + ": list entries must be numbers");
          xs.push_back(x.get<double>());
        }
        out[key] = join(xs);
      } else if (value.is_number_unsigned() || value.is_number_integer()) {
        out[key] = value.dump();
      } else if (value.is_number()) {
        out[key] = format_double(value.get<double>());
      } else {
        throw ValidationError(name + "." + key + ": unsupported value");
      }
    }
  }
  return from_sections(sections);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg;
  if (path.size() >= 5 && path.ends_with(".json")) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(std::string("config JSON: ") + e.what());
    }
    cfg = config_from_json(j);
  } else {
    cfg = parse_config_text(buf.str());
  }
  if (const char* dir = std::getenv("CORRGT_OUTPUT_DIR"); dir != nullptr && *dir != '\0') cfg.output_dir = dir;
  return cfg;
}

bool is_random_family(Family family) {
  return family == Family::tree || family == Family::d_regular || family == Family::sbm;
}

Graph build_config_graph(const GraphConfig& graph) {
  if (!graph.file.empty()) return read_edge_list_file(graph.file);
  return build_graph(graph.spec, graph.seed);
}

}  // namespace corrgt

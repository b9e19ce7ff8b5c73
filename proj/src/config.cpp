#include "invset/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

#include "invset/dynamics.hpp"

namespace invset {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError("config." + field + ": " + msg);
}

void check_keys(const json& obj, const std::string& field, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(field.empty() ? "<root>" : field, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) fail(field.empty() ? key : field + "." + key, "unknown key");
}

std::string join(const std::string& field, const char* key) { return field.empty() ? key : field + "." + key; }

double get_number(const json& obj, const std::string& field, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(join(field, key), "expected a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& obj, const std::string& field, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    fail(join(field, key), "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::vector<double> get_vector(const json& obj, const std::string& field, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_array()) fail(join(field, key), "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(join(field, key), "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::map<std::string, double> get_params(const json& obj, const std::string& field) {
  std::map<std::string, double> out;
  if (!obj.is_object()) fail(field, "expected an object of numbers");
  for (const auto& [key, v] : obj.items()) {
    if (!v.is_number()) fail(field + "." + key, "expected a number");
    out[key] = v.get<double>();
  }
  return out;
}

InitSpec parse_init(const json& j) {
  check_keys(j, "init", {"kind", "n", "counts", "seed", "skip"});
  if (!j.contains("kind") || !j["kind"].is_string()) fail("init.kind", "expected \"uniform\", \"grid\" or \"halton\"");
  const std::string kind = j["kind"];
  InitSpec s;
  if (kind == "uniform") {
    s.kind = InitKind::Uniform;
    if (j.contains("counts") || j.contains("skip")) fail("init", "uniform takes only n and seed");
    if (j.contains("seed")) s.seed = get_count(j, "init", "seed");
  } else if (kind == "halton") {
    s.kind = InitKind::Halton;
    if (j.contains("counts") || j.contains("seed")) fail("init", "halton takes only n and skip");
    if (j.contains("skip")) s.skip = get_count(j, "init", "skip");
  } else if (kind == "grid") {
    s.kind = InitKind::Grid;
    if (j.contains("seed") || j.contains("skip")) fail("init", "grid takes only counts");
    if (!j.contains("counts") || !j["counts"].is_array()) fail("init.counts", "required array of per-axis counts");
    s.n = 1;
    for (const auto& c : j["counts"]) {
      if (!c.is_number_integer() || c.get<std::int64_t>() < 1) fail("init.counts", "counts must be positive integers");
      s.counts.push_back(c.get<std::size_t>());
      s.n *= s.counts.back();
    }
    if (j.contains("n") && get_count(j, "init", "n") != s.n) fail("init.n", "does not match the product of counts");
    return s;
  } else {
    fail("init.kind", "unknown generator '" + kind + "'");
  }
  if (!j.contains("n")) fail("init.n", "required");
  s.n = get_count(j, "init", "n");
  if (s.n < 1) fail("init.n", "must be >= 1");
  return s;
}

OptimOptions parse_optim(const json& j) {
  check_keys(j, "optim", {"grad_tol", "max_iters", "memory", "wolfe_c1", "wolfe_c2", "snapshot_every", "max_line_evals"});
  OptimOptions o;
  o.snapshot_every = 10;
  if (j.contains("grad_tol")) o.grad_tol = get_number(j, "optim", "grad_tol");
  if (j.contains("max_iters")) o.max_iters = get_count(j, "optim", "max_iters");
  if (j.contains("memory")) o.memory = get_count(j, "optim", "memory");
  if (j.contains("wolfe_c1")) o.wolfe_c1 = get_number(j, "optim", "wolfe_c1");
  if (j.contains("wolfe_c2")) o.wolfe_c2 = get_number(j, "optim", "wolfe_c2");
  if (j.contains("snapshot_every")) o.snapshot_every = get_count(j, "optim", "snapshot_every");
  if (j.contains("max_line_evals")) o.max_line_evals = get_count(j, "optim", "max_line_evals");
  try {
    o.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config.") + e.what());
  }
  return o;
}

LJConfig parse_lj(const json& j) {
  check_keys(j, "lj", {"p", "m", "mu", "delta"});
  LJConfig lj;
  if (j.contains("p")) lj.p = static_cast<int>(get_count(j, "lj", "p"));
  if (j.contains("m")) lj.m = get_count(j, "lj", "m");
  if (j.contains("mu")) lj.mu = get_number(j, "lj", "mu");
  if (j.contains("delta")) lj.delta = get_number(j, "lj", "delta");
  if (lj.p < 1) fail("lj.p", "must be >= 1");
  if (lj.m < 1) fail("lj.m", "must be >= 1");
  if (lj.mu < 0.0) fail("lj.mu", "must be >= 0");
  if (lj.delta && !(*lj.delta > 0.0)) fail("lj.delta", "must be positive");
  return lj;
}

}  // namespace

ReferenceSpec parse_reference(const json& j) {
  check_keys(j, "reference", {"kind", "point", "lo", "hi", "count", "radius", "map", "start", "transient", "samples"});
  if (!j.contains("kind") || !j["kind"].is_string()) fail("reference.kind", "required string");
  ReferenceSpec r;
  try {
    r.kind = reference_kind_from_string(j["kind"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail("reference.kind", e.what());
  }
  if (j.contains("point")) r.point = get_vector(j, "reference", "point");
  if (j.contains("lo")) r.lo = get_number(j, "reference", "lo");
  if (j.contains("hi")) r.hi = get_number(j, "reference", "hi");
  if (j.contains("count")) r.count = get_count(j, "reference", "count");
  if (j.contains("radius")) r.radius = get_number(j, "reference", "radius");
  else if (r.kind == ReferenceKind::DiskSample) r.radius = disk_invariant_radius(10.0, 0.1);
  if (j.contains("map")) {
    const json& m = j["map"];
    check_keys(m, "reference.map", {"name", "params"});
    if (!m.contains("name") || !m["name"].is_string()) fail("reference.map.name", "required string");
    r.map_name = m["name"];
    if (m.contains("params")) r.map_params = get_params(m["params"], "reference.map.params");
  }
  if (j.contains("start")) r.start = get_vector(j, "reference", "start");
  if (j.contains("transient")) r.transient = get_count(j, "reference", "transient");
  if (j.contains("samples")) r.samples = get_count(j, "reference", "samples");
  if (r.kind == ReferenceKind::PointSingleton && r.point.empty()) fail("reference.point", "must be nonempty");
  if ((r.kind == ReferenceKind::IntervalGrid || r.kind == ReferenceKind::SegmentGrid) && !(r.lo < r.hi))
    fail("reference", "need lo < hi");
  if (r.kind != ReferenceKind::PointSingleton && r.kind != ReferenceKind::TrajectorySample && r.count < 2)
    fail("reference.count", "must be >= 2");
  if (r.kind == ReferenceKind::DiskSample && !(r.radius > 0.0)) fail("reference.radius", "must be positive");
  return r;
}

ReferenceSpec parse_reference_arg(const std::string& text) {
  json doc;
  try {
    if (!text.empty() && text.front() == '{') {
      doc = json::parse(text);
    } else {
      std::ifstream in(text);
      if (!in) throw ConfigError("cannot open reference spec '" + text + "'");
      doc = json::parse(in);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("reference spec is not valid JSON: ") + e.what());
  }
  return parse_reference(doc);
}

ExperimentConfig parse_config(const json& doc) {
  check_keys(doc, "", {"name", "map", "box", "init", "n", "lj", "optim", "reference", "output", "seed"});
  ExperimentConfig c;
  try {
    if (doc.contains("name")) c.name = doc.at("name").get<std::string>();

    if (!doc.contains("map")) fail("map", "required");
    const json& m = doc["map"];
    check_keys(m, "map", {"name", "params"});
    if (!m.contains("name") || !m["name"].is_string()) fail("map.name", "required string");
    c.map_name = m["name"];
    if (m.contains("params")) c.map_params = get_params(m["params"], "map.params");
    MapSystem f;
    try {
      f = make_map(c.map_name, c.map_params);
    } catch (const std::invalid_argument& e) {
      fail("map", e.what());
    }

    if (doc.contains("box")) {
      const json& b = doc["box"];
      check_keys(b, "box", {"lower", "upper"});
      if (!b.contains("lower") || !b.contains("upper")) fail("box", "needs lower and upper");
      try {
        c.box = AxisBox(get_vector(b, "box", "lower"), get_vector(b, "box", "upper"));
      } catch (const std::invalid_argument& e) {
        fail("box", e.what());
      }
    } else if (f.box) {
      c.box = *f.box;
    } else {
      fail("box", "required for this map");
    }
    if (c.box.dim() != f.dim)
      fail("box", "dimension " + std::to_string(c.box.dim()) + " does not match map dimension " + std::to_string(f.dim));

    if (!doc.contains("init")) fail("init", "required");
    c.init = parse_init(doc["init"]);
    if (c.init.kind == InitKind::Grid && c.init.counts.size() != f.dim)
      fail("init.counts", "need one count per axis");
    c.n = c.init.n;
    if (doc.contains("n") && get_count(doc, "", "n") != c.n) fail("n", "does not match the init spec");

    if (doc.contains("seed")) c.seed = get_count(doc, "", "seed");
    if (doc.contains("optim")) c.optim = parse_optim(doc["optim"]);
    else c.optim.snapshot_every = 10;
    if (doc.contains("lj")) {
      c.lj = parse_lj(doc["lj"]);
      if (c.lj->m >= c.n) fail("lj.m", "must be < n = " + std::to_string(c.n));
    }
    if (doc.contains("reference")) c.reference = parse_reference(doc["reference"]);
    if (doc.contains("output")) c.output = doc.at("output").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  ExperimentConfig cfg = parse_config(doc);
  if (cfg.name.empty()) cfg.name = path.stem().string();
  return cfg;
}

json to_json(const ReferenceSpec& r) {
  json j{{"kind", to_string(r.kind)}};
  switch (r.kind) {
    case ReferenceKind::PointSingleton: j["point"] = r.point; break;
    case ReferenceKind::IntervalGrid:
    case ReferenceKind::SegmentGrid:
      j["lo"] = r.lo;
      j["hi"] = r.hi;
      j["count"] = r.count;
      break;
    case ReferenceKind::DiskSample:
      j["radius"] = r.radius;
      j["count"] = r.count;
      break;
    case ReferenceKind::TrajectorySample:
      j["map"] = {{"name", r.map_name}, {"params", r.map_params}};
      if (!r.start.empty()) j["start"] = r.start;
      j["transient"] = r.transient;
      j["samples"] = r.samples;
      break;
  }
  return j;
}

json to_json(const ExperimentConfig& c) {
  json init;
  switch (c.init.kind) {
    case InitKind::Uniform:
      init = {{"kind", "uniform"}, {"n", c.init.n}};
      if (c.init.seed) init["seed"] = *c.init.seed;
      break;
    case InitKind::Grid: init = {{"kind", "grid"}, {"counts", c.init.counts}}; break;
    case InitKind::Halton: init = {{"kind", "halton"}, {"n", c.init.n}, {"skip", c.init.skip}}; break;
  }
  json j{{"name", c.name},
         {"map", {{"name", c.map_name}, {"params", c.map_params}}},
         {"box", {{"lower", c.box.lower()}, {"upper", c.box.upper()}}},
         {"init", init},
         {"n", c.n},
         {"optim",
          {{"grad_tol", c.optim.grad_tol},
           {"max_iters", c.optim.max_iters},
           {"memory", c.optim.memory},
           {"wolfe_c1", c.optim.wolfe_c1},
           {"wolfe_c2", c.optim.wolfe_c2},
           {"snapshot_every", c.optim.snapshot_every},
           {"max_line_evals", c.optim.max_line_evals}}},
         {"output", c.output.string()},
         {"seed", c.seed}};
  if (c.lj) {
    j["lj"] = {{"p", c.lj->p}, {"m", c.lj->m}, {"mu", c.lj->mu}};
    if (c.lj->delta) j["lj"]["delta"] = *c.lj->delta;
  }
  if (c.reference) j["reference"] = to_json(*c.reference);
  return j;
}

}  // namespace invset

#include <cmath>
#include <fstream>
#include <sstream>

#include "scenuc/io.hpp"

namespace scenuc {

using nlohmann::json;

namespace {

json bound_to_json(double v) {
  if (!is_finite_bound(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

double bound_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw ParseError("bad bound string: " + s);
  }
  const double v = j.get<double>();
  if (!is_finite_bound(v)) return v > 0 ? kInf : -kInf;
  return v;
}

json matrix_to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of arrays");
  const int rows = static_cast<int>(j.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
  DenseMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j.at(r).size()) != cols) throw ParseError("ragged matrix");
    for (int c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

json model_to_json(const ErrorModel& m) {
  json j;
  switch (m.kind) {
    case ErrorKind::Gaussian:
      j["kind"] = "gaussian";
      j["sigma_frac"] = m.sigma_frac;
      j["trunc_lo_sigmas"] = m.trunc_lo_sigmas;
      j["trunc_hi_sigmas"] = m.trunc_hi_sigmas;
      break;
    case ErrorKind::Uniform:
      j["kind"] = "uniform";
      j["lo_mw"] = m.uniform_lo_mw;
      j["hi_mw"] = m.uniform_hi_mw;
      break;
    case ErrorKind::Empirical: {
      j["kind"] = "empirical";
      json vals = json::array();
      for (const DenseMatrix& t : m.values) vals.push_back(matrix_to_json(t));
      j["values"] = std::move(vals);
      break;
    }
  }
  return j;
}

ErrorModel model_from_json(const json& j) {
  ErrorModel m;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") {
    m.kind = ErrorKind::Gaussian;
    m.sigma_frac = j.value("sigma_frac", 0.10);
    m.trunc_lo_sigmas = j.value("trunc_lo_sigmas", -3.0);
    m.trunc_hi_sigmas = j.value("trunc_hi_sigmas", 3.0);
  } else if (kind == "uniform") {
    m.kind = ErrorKind::Uniform;
    m.uniform_lo_mw = j.at("lo_mw").get<double>();
    m.uniform_hi_mw = j.at("hi_mw").get<double>();
  } else if (kind == "empirical") {
    m.kind = ErrorKind::Empirical;
    for (const json& t : j.at("values")) m.values.push_back(matrix_from_json(t));
  } else {
    throw ParseError("unknown error model kind: " + kind);
  }
  return m;
}

}  // namespace

json distribution_to_json(const DistributionSpec& spec) {
  json j;
  j["wind"] = model_to_json(spec.wind);
  j["load"] = model_to_json(spec.load);
  j["shared_factor"] = spec.shared_factor;
  j["empirical_mode"] = spec.empirical_mode == EmpiricalMode::Ordered ? "ordered" : "iid";
  return j;
}

DistributionSpec distribution_from_json(const json& j) {
  DistributionSpec spec;
  spec.wind = model_from_json(j.at("wind"));
  spec.load = model_from_json(j.at("load"));
  spec.shared_factor = j.value("shared_factor", 0.0);
  const std::string mode = j.value("empirical_mode", "ordered");
  if (mode == "ordered")
    spec.empirical_mode = EmpiricalMode::Ordered;
  else if (mode == "iid")
    spec.empirical_mode = EmpiricalMode::Iid;
  else
    throw ParseError("unknown empirical_mode: " + mode);
  return spec;
}

json case_to_json(const CaseFile& c) {
  const GridCase& g = c.grid;
  json j;
  j["schema_version"] = g.schema_version;
  j["name"] = g.name;
  j["mva_base"] = g.mva_base;
  j["horizon"] = g.horizon;
  j["slack_bus"] = g.slack_bus;
  j["reserve_enabled"] = g.reserve_enabled;
  j["commitment_logic_enabled"] = g.commitment_logic_enabled;
  j["base_case_weight"] = g.base_case_weight;
  j["buses"] = g.buses;
  json lines = json::array();
  for (const Line& l : g.lines) {
    json jl{{"from", l.from}, {"to", l.to}, {"reactance", l.reactance},
            {"capacity", bound_to_json(l.capacity)}};
    if (l.capacity_lo) jl["capacity_lo"] = bound_to_json(*l.capacity_lo);
    lines.push_back(std::move(jl));
  }
  j["lines"] = std::move(lines);
  json gens = json::array();
  for (const Generator& gen : g.generators) {
    json jg;
    jg["bus"] = gen.bus;
    jg["g_min"] = gen.g_min;
    jg["g_max"] = gen.g_max;
    jg["ramp_lo"] = bound_to_json(gen.ramp_lo);
    jg["ramp_hi"] = bound_to_json(gen.ramp_hi);
    jg["min_on"] = gen.min_on;
    jg["min_off"] = gen.min_off;
    jg["cost_energy"] = gen.cost_energy;
    jg["cost_no_load"] = gen.cost_no_load;
    jg["cost_startup"] = gen.cost_startup;
    jg["cost_shutdown"] = gen.cost_shutdown;
    jg["cost_reserve"] = gen.cost_reserve;
    jg["initial_on"] = gen.initial_on;
    jg["initial_output"] = gen.initial_output;
    gens.push_back(std::move(jg));
  }
  j["generators"] = std::move(gens);
  json winds = json::array();
  for (const WindFarm& w : g.wind_farms)
    winds.push_back(json{{"bus", w.bus}, {"forecast", w.forecast}});
  j["wind_farms"] = std::move(winds);
  json loads = json::array();
  for (const LoadPoint& d : g.loads)
    loads.push_back(json{{"bus", d.bus}, {"forecast", d.forecast}});
  j["loads"] = std::move(loads);
  json cont = json::array();
  for (const Contingency& k : g.contingencies)
    cont.push_back(json{{"availability", k.availability}, {"weight", k.weight}});
  j["contingencies"] = std::move(cont);
  if (c.distribution) j["distribution"] = distribution_to_json(*c.distribution);
  if (c.experiment) {
    const ExperimentDefaults& e = *c.experiment;
    j["experiment"] = json{{"n_grid", e.n_grid},
                           {"trials", e.trials},
                           {"beta", e.beta},
                           {"m_oos", e.m_oos},
                           {"master_seed", e.master_seed}};
  }
  return j;
}

CaseFile case_from_json(const json& j) {
  CaseFile c;
  GridCase& g = c.grid;
  try {
    g.schema_version = j.value("schema_version", kCaseSchemaVersion);
    if (g.schema_version != kCaseSchemaVersion)
      throw ParseError("unsupported case schema_version " + std::to_string(g.schema_version));
    g.name = j.value("name", std::string{});
    g.mva_base = j.value("mva_base", 100.0);
    g.horizon = j.at("horizon").get<int>();
    g.slack_bus = j.at("slack_bus").get<int>();
    g.reserve_enabled = j.value("reserve_enabled", true);
    g.commitment_logic_enabled = j.value("commitment_logic_enabled", true);
    g.base_case_weight = j.value("base_case_weight", 1.0);
    g.buses = j.at("buses").get<std::vector<int>>();
    for (const json& jl : j.at("lines")) {
      Line l;
      l.from = jl.at("from").get<int>();
      l.to = jl.at("to").get<int>();
      l.reactance = jl.at("reactance").get<double>();
      l.capacity = bound_from_json(jl.at("capacity"));
      if (jl.contains("capacity_lo")) l.capacity_lo = bound_from_json(jl.at("capacity_lo"));
      g.lines.push_back(l);
    }
    for (const json& jg : j.at("generators")) {
      Generator gen;
      gen.bus = jg.at("bus").get<int>();
      gen.g_min = jg.at("g_min").get<double>();
      gen.g_max = jg.at("g_max").get<double>();
      gen.ramp_lo = jg.contains("ramp_lo") ? bound_from_json(jg.at("ramp_lo")) : -kInf;
      gen.ramp_hi = jg.contains("ramp_hi") ? bound_from_json(jg.at("ramp_hi")) : kInf;
      gen.min_on = jg.value("min_on", 1);
      gen.min_off = jg.value("min_off", 1);
      gen.cost_energy = jg.value("cost_energy", 0.0);
      gen.cost_no_load = jg.value("cost_no_load", 0.0);
      gen.cost_startup = jg.value("cost_startup", 0.0);
      gen.cost_shutdown = jg.value("cost_shutdown", 0.0);
      gen.cost_reserve = jg.value("cost_reserve", 0.0);
      gen.initial_on = jg.value("initial_on", 0);
      gen.initial_output = jg.value("initial_output", 0.0);
      g.generators.push_back(gen);
    }
    for (const json& jw : j.at("wind_farms")) {
      WindFarm w;
      w.bus = jw.at("bus").get<int>();
      w.forecast = jw.at("forecast").get<std::vector<double>>();
      g.wind_farms.push_back(std::move(w));
    }
    for (const json& jd : j.at("loads")) {
      LoadPoint d;
      d.bus = jd.at("bus").get<int>();
      d.forecast = jd.at("forecast").get<std::vector<double>>();
      g.loads.push_back(std::move(d));
    }
    if (j.contains("contingencies")) {
      for (const json& jk : j.at("contingencies")) {
        Contingency k;
        k.availability = jk.at("availability").get<std::vector<int>>();
        k.weight = jk.value("weight", 0.0);
        g.contingencies.push_back(std::move(k));
      }
    }
    if (j.contains("distribution")) c.distribution = distribution_from_json(j.at("distribution"));
    if (j.contains("experiment")) {
      const json& je = j.at("experiment");
      ExperimentDefaults e;
      e.n_grid = je.value("n_grid", e.n_grid);
      e.trials = je.value("trials", e.trials);
      e.beta = je.value("beta", e.beta);
      e.m_oos = je.value("m_oos", e.m_oos);
      e.master_seed = je.value("master_seed", e.master_seed);
      c.experiment = e;
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("case file: ") + e.what());
  }
  g.validate();
  return c;
}

CaseFile load_case_file(const std::string& path) {
  json j;
  try {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return case_from_json(j);
}

void save_case_file(const CaseFile& c, const std::string& path) {
  write_text_file(path, case_to_json(c).dump(2) + "\n");
}

json scenario_set_to_json(const ScenarioSet& set) {
  json j;
  j["seed"] = set.seed;
  j["spec_hash"] = set.spec_hash;
  json draws = json::array();
  for (const ScenarioRealization& d : set.draws)
    draws.push_back(json{{"wind_err", matrix_to_json(d.wind_err)},
                         {"load_err", matrix_to_json(d.load_err)}});
  j["draws"] = std::move(draws);
  return j;
}

ScenarioSet scenario_set_from_json(const json& j) {
  ScenarioSet set;
  try {
    set.seed = j.value("seed", 0ull);
    set.spec_hash = j.value("spec_hash", 0ull);
    for (const json& jd : j.at("draws")) {
      ScenarioRealization d;
      d.wind_err = matrix_from_json(jd.at("wind_err"));
      d.load_err = matrix_from_json(jd.at("load_err"));
      set.draws.push_back(std::move(d));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario set: ") + e.what());
  }
  return set;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace scenuc

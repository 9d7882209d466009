#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "scenuc/io.hpp"

namespace scenuc {

using nlohmann::json;

uint64_t fnv1a(const std::string& text) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

const char* kind_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::Support:
      return "support";
    case ReductionKind::Irreducible:
      return "irreducible";
    case ReductionKind::Essential:
      return "essential";
  }
  return "?";
}

const char* degeneracy_name(Degeneracy d) {
  switch (d) {
    case Degeneracy::NonDegenerate:
      return "non-degenerate";
    case Degeneracy::Degenerate:
      return "degenerate";
    case Degeneracy::Unknown:
      return "unknown";
  }
  return "?";
}

}  // namespace

json solution_to_json(const UcSolution& sol) {
  json j;
  j["status"] = sol.status == MilpStatus::Optimal      ? "optimal"
                : sol.status == MilpStatus::Infeasible ? "infeasible"
                                                       : "node-limit";
  j["objective"] = sol.objective;
  j["z"] = sol.z;
  j["u"] = sol.u;
  j["v"] = sol.v;
  j["g"] = sol.g;
  j["r"] = sol.r;
  j["node_count"] = sol.node_count;
  return j;
}

json reduction_to_json(const ReductionResult& red) {
  json j;
  j["kind"] = kind_name(red.kind);
  std::vector<int> ids;
  ids.reserve(red.indices.size());
  for (int i : red.indices) ids.push_back(i + 1);
  j["scenario_ids"] = ids;  // 1-based in reports
  j["set_size"] = red.indices.size();
  j["degenerate"] = degeneracy_name(red.degenerate);
  j["solve_count"] = red.solve_count;
  j["full_objective"] = red.full_objective;
  j["precondition_warning"] = red.precondition_warning;
  return j;
}

json certificate_to_json(const EpsilonCertificate& cert) {
  return json{{"n_scenarios", cert.n_scenarios},
              {"invariant_cardinality", cert.invariant_cardinality},
              {"confidence_beta", cert.confidence_beta},
              {"epsilon", cert.epsilon}};
}

json manifest_to_json(const RunManifest& m) {
  return json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", m.command},
              {"config_hash", m.config_hash},
              {"master_seed", m.master_seed},
              {"created_utc", m.created_utc}};
}

RunManifest make_manifest(const std::string& command, const std::string& config_text,
                          uint64_t master_seed) {
  RunManifest m;
  m.command = command;
  m.config_hash = fnv1a(config_text);
  m.master_seed = master_seed;
  m.created_utc = utc_timestamp();
  return m;
}

std::string experiment_csv(const ExperimentReport& rep) {
  std::ostringstream out;
  out << "schema_version,case,n,trial,sample_seed,oos_seed,status,error,objective,"
         "reduction_kind,set_size,degenerate,epsilon_posterior,beta,m_oos,violations,"
         "balance_violations,line_violations,epsilon_hat,ci_half_width,solve_count\n";
  for (const TrialRow& r : rep.rows) {
    out << rep.schema_version << ',' << rep.case_name << ',' << r.n << ',' << r.trial << ','
        << r.sample_seed << ',' << r.oos_seed << ',';
    if (!r.ok) {
      std::string msg = r.error;
      for (char& c : msg)
        if (c == ',' || c == '\n') c = ';';
      out << "failed," << msg << ",,,,,,"
          << format_double(rep.beta) << ',' << rep.m_oos << ",,,,,,\n";
      continue;
    }
    out << "ok,," << format_double(r.objective) << ',' << kind_name(r.kind) << ',' << r.set_size
        << ',' << degeneracy_name(r.degenerate) << ',' << format_double(r.epsilon_posterior)
        << ',' << format_double(rep.beta) << ',' << r.oos.m_samples << ','
        << r.oos.violation_count << ',' << r.oos.balance_violations << ','
        << r.oos.line_violations << ',' << format_double(r.oos.epsilon_hat) << ','
        << format_double(r.oos.half_width) << ',' << r.solve_count << '\n';
  }
  return out.str();
}

json experiment_summary_json(const ExperimentReport& rep) {
  json j;
  j["schema_version"] = rep.schema_version;
  j["case"] = rep.case_name;
  j["beta"] = rep.beta;
  j["m_oos"] = rep.m_oos;
  j["master_seed"] = rep.master_seed;
  json per_n = json::array();
  for (const NAggregate& a : rep.per_n) {
    per_n.push_back(json{{"n", a.n},
                         {"ok_trials", a.ok_trials},
                         {"objective", {{"min", a.obj_min}, {"mean", a.obj_mean}, {"max", a.obj_max}}},
                         {"epsilon_hat",
                          {{"min", a.eps_hat_min}, {"mean", a.eps_hat_mean}, {"max", a.eps_hat_max}}},
                         {"epsilon_posterior",
                          {{"min", a.eps_post_min},
                           {"mean", a.eps_post_mean},
                           {"max", a.eps_post_max}}},
                         {"set_size",
                          {{"min", a.set_size_min},
                           {"mean", a.set_size_mean},
                           {"max", a.set_size_max}}},
                         {"degenerate_rate", a.degenerate_rate},
                         {"solve_count_mean", a.solve_count_mean},
                         {"wall_ms_mean_informational", a.wall_ms_mean}});
  }
  j["per_n"] = std::move(per_n);
  return j;
}

std::string model_row_listing(const MixedIntegerProgram& mip) {
  std::ostringstream out;
  const LinearProgram& lp = mip.relaxation;
  out << "vars " << lp.num_vars() << " rows " << lp.num_rows() << " binaries "
      << mip.binary_mask.size() << "\n";
  out << "# var j: lower upper cost [binary]\n";
  std::vector<char> is_bin(lp.num_vars(), 0);
  for (int j : mip.binary_mask) is_bin[j] = 1;
  for (int j = 0; j < lp.num_vars(); ++j) {
    out << "x" << j << ": " << format_double(lp.lower[j]) << ' ' << format_double(lp.upper[j])
        << ' ' << format_double(lp.objective[j]) << (is_bin[j] ? " binary" : "") << "\n";
  }
  out << "# row r: group | sum coef*var sense rhs\n";
  for (int r = 0; r < lp.num_rows(); ++r) {
    const Constraint& c = lp.rows[r];
    out << "r" << r << ": " << c.group << " |";
    for (int k = 0; k < c.nnz(); ++k)
      out << ' ' << format_double(c.coef[k]) << "*x" << c.idx[k];
    out << (c.sense == RowSense::LE ? " <= " : c.sense == RowSense::GE ? " >= " : " == ")
        << format_double(c.rhs) << "\n";
  }
  return out.str();
}

}  // namespace scenuc

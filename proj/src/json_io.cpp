#include "confdyn/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace confdyn {

Json series_to_json(const FourierSeries& s) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "fourier_series";
  Json coeffs = Json::array();
  for (const auto& [n, c] : s.coeffs()) coeffs.push_back({n, c.real(), c.imag()});
  j["coeffs"] = std::move(coeffs);
  return j;
}

FourierSeries series_from_json(const Json& j) {
  if (!j.contains("coeffs")) throw std::invalid_argument("series JSON lacks 'coeffs'");
  FourierSeries s;
  for (const auto& entry : j.at("coeffs")) {
    if (!entry.is_array() || entry.size() != 3)
      throw std::invalid_argument("series coefficient must be a (n, re, im) triple");
    s.set(entry[0].get<int>(), {entry[1].get<double>(), entry[2].get<double>()});
  }
  try {
    s.mark_real_valued();
  } catch (const NotRealValued&) {
    // left complex-valued; evaluate() will refuse
  }
  return s;
}

Json regularity_to_json(const RegularityReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "regularity_report";
  j["c0_majorant"] = r.c0_majorant;
  j["c1_majorant"] = r.c1_majorant;
  Json decay = Json::array();
  for (const auto& [n, a] : r.decay) decay.push_back({n, a});
  j["decay"] = std::move(decay);
  return j;
}

Json trace_to_json(const BirkhoffTrace& t) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "birkhoff_trace";
  j["x0"] = t.x0;
  j["K"] = t.sums.size();
  j["slope"] = t.growth_fit.slope;
  j["residual"] = t.growth_fit.residual;
  j["sums"] = t.sums;
  return j;
}

void trace_to_csv(const BirkhoffTrace& t, std::ostream& out) {
  out << "k,S_k\n";
  char buf[64];
  for (std::size_t k = 0; k < t.sums.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k + 1, t.sums[k]);
    out << buf;
  }
}

Json gh_report_to_json(const GHReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "gh_report";
  j["verdict"] = to_string(r.verdict);
  j["max_abs_sum"] = r.max_abs_sum;
  j["slope"] = r.slope;
  j["residual"] = r.residual;
  j["bound"] = r.bound;
  j["K"] = r.steps;
  return j;
}

Json rotation_number_to_json(const RotationNumber& theta) {
  Json j;
  j["value"] = theta.value();
  j["den_bits"] = theta.den_bits();
  j["convergent_count"] = theta.convergents().size();
  j["is_liouville_constructed"] = theta.is_liouville_constructed();
  return j;
}

Json ladder_to_json(const FrequencyLadder& ladder, const RotationNumber& theta) {
  Json rungs = Json::array();
  for (const auto& [j, n] : ladder.entries) {
    Json rung;
    rung["j"] = j;
    rung["n"] = n;
    rung["frac_n_theta"] = theta.frac_multiple(n);
    rungs.push_back(std::move(rung));
  }
  return rungs;
}

Json pullback_report_to_json(const PullbackReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["flow"] = r.flow_name;
  j["t"] = r.t;
  j["dim"] = r.dim;
  j["samples"] = r.sample_count;
  j["seed"] = r.seed;
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

Json obstruction_verdict_to_json(const ObstructionVerdict& v) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["point"] = v.point;
  j["m"] = v.period;
  j["residual"] = v.residual;
  j["factor_sum"] = v.factor_sum;
  j["conclusion"] = to_string(v.conclusion);
  return j;
}

Json fixed_point_search_to_json(const FixedPointSearch& s) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "fixed_point_search";
  j["points"] = s.points;
  j["no_convergence"] = s.no_convergence_count;
  j["singular"] = s.singular_count;
  Json outcomes = Json::array();
  for (SeedOutcome o : s.outcomes) {
    switch (o) {
      case SeedOutcome::Converged: outcomes.push_back("Converged"); break;
      case SeedOutcome::NoConvergence: outcomes.push_back("NoConvergence"); break;
      case SeedOutcome::SingularNewtonStep: outcomes.push_back("SingularNewtonStep"); break;
    }
  }
  j["outcomes"] = std::move(outcomes);
  return j;
}

Json constraint_report_to_json(const AverageReport& a, const JensenReport& je) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["A"] = a.average;
  j["avg_f"] = je.average_f;
  Json verdicts;
  verdicts["average"] = to_string(a.verdict);
  verdicts["jensen"] = to_string(je.verdict);
  verdicts["jensen_positive_average"] = je.positive_average;
  verdicts["jensen_nonpositive_somewhere_negative"] = je.nonpositive_somewhere_negative;
  j["verdicts"] = std::move(verdicts);
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return Json::parse(in);
}

}  // namespace confdyn

#include "confdyn/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "confdyn/constraint.hpp"
#include "confdyn/flows.hpp"
#include "confdyn/json_io.hpp"
#include "confdyn/obstruction.hpp"
#include "confdyn/rotation.hpp"

namespace confdyn {

namespace {

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size())
      throw std::invalid_argument("malformed number in coordinate list: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty coordinate list");
  return out;
}

std::vector<Vec> parse_seed_list(const std::string& text) {
  std::vector<Vec> out;
  std::stringstream ss(text);
  std::string group;
  while (std::getline(ss, group, ';'))
    if (!group.empty()) out.push_back(parse_point(group));
  if (out.empty()) throw std::invalid_argument("empty seed list");
  return out;
}

// Named grid expressions: zero | const:<v> | sinx:<v> | siny:<v> | sinz:<v>
// | nonpos:<v> (the last is -v sin^2(pi x): nonpositive, negative somewhere).
std::function<double(double, double, double)> parse_grid_expression(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  double v = 0.0;
  if (colon != std::string::npos) v = std::stod(spec.substr(colon + 1));
  if (head == "zero") return [](double, double, double) { return 0.0; };
  if (head == "const") return [v](double, double, double) { return v; };
  if (head == "sinx") return [v](double x, double, double) { return v * std::sin(kTwoPi * x); };
  if (head == "siny") return [v](double, double y, double) { return v * std::sin(kTwoPi * y); };
  if (head == "sinz") return [v](double, double, double z) { return v * std::sin(kTwoPi * z); };
  if (head == "nonpos")
    return [v](double x, double, double) {
      const double s = std::sin(0.5 * kTwoPi * x);
      return -v * s * s;
    };
  throw std::invalid_argument("unknown grid expression '" + spec + "'");
}

void emit(const std::string& out_path, const Json& artifact) {
  if (!out_path.empty()) write_json_file(out_path, artifact);
}

FourierSeries load_series(const std::string& path) {
  return series_from_json(read_json_file(path));
}

void add_uniform_flags(CLI::App* sub, std::string& out, std::string& format,
                       std::uint64_t& seed,
                       const std::vector<std::string>& formats = {"json"}) {
  sub->add_option("--out", out, "write the machine artifact here");
  sub->add_option("--format", format)->check(CLI::IsMember(formats));
  sub->add_option("--seed", seed, "deterministic sampling seed");
}

void wire_rotation(CLI::App& app, int& code) {
  auto* rotation =
      app.add_subcommand("rotation", "cohomological equation over a circle rotation");
  rotation->require_subcommand(1);

  struct SolveOpt {
    std::string in, out, format = "json";
    double theta = 0.0, denom_floor = 1e-12;
    std::uint64_t seed = 0;
  };
  auto so = std::make_shared<SolveOpt>();
  auto* solve = rotation->add_subcommand(
      "solve", "solve g - g(.+theta) = f coefficientwise from a series file");
  solve->add_option("--in", so->in, "input Fourier series (JSON)")
      ->required()->check(CLI::ExistingFile);
  solve->add_option("--theta", so->theta, "rotation number in (0,1)")->required();
  solve->add_option("--denom-floor", so->denom_floor,
                    "reject |1 - e^{2 pi i n theta}| below this");
  add_uniform_flags(solve, so->out, so->format, so->seed);
  solve->callback([&code, so] {
    (void)code;
    const FourierSeries f = load_series(so->in);
    const RotationNumber theta = RotationNumber::from_double(so->theta);
    const FourierSeries g = coboundary_solve(f, theta, so->denom_floor);
    emit(so->out, series_to_json(g));
    std::printf("solve: g has %zu coefficients, max_freq = %d\n", g.coeffs().size(),
                g.max_freq());
  });

  struct BirkOpt {
    std::string in, out, format = "csv";
    double theta = 0.0, x0 = 0.0;
    std::int64_t K = 1000;
    std::uint64_t seed = 0;
  };
  auto bo = std::make_shared<BirkOpt>();
  auto* birkhoff =
      rotation->add_subcommand("birkhoff", "partial sums S_k along the orbit of x0");
  birkhoff->add_option("--in", bo->in, "input Fourier series (JSON)")
      ->required()->check(CLI::ExistingFile);
  birkhoff->add_option("--theta", bo->theta)->required();
  birkhoff->add_option("--x0", bo->x0, "initial angle in [0,1)");
  birkhoff->add_option("--K", bo->K, "number of partial sums")->check(CLI::PositiveNumber);
  add_uniform_flags(birkhoff, bo->out, bo->format, bo->seed, {"csv", "json"});
  birkhoff->callback([&code, bo] {
    (void)code;
    const FourierSeries f = load_series(bo->in);
    const RotationNumber theta = RotationNumber::from_double(bo->theta);
    const BirkhoffTrace trace = birkhoff_sums(f, theta, bo->x0, bo->K);
    if (!bo->out.empty()) {
      if (bo->format == "csv") {
        std::ofstream out(bo->out, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file: " + bo->out);
        trace_to_csv(trace, out);
      } else {
        write_json_file(bo->out, trace_to_json(trace));
      }
    }
    std::printf("birkhoff: K = %zu, max|S_k| = %.6g, slope = %.6g, residual = %.6g\n",
                trace.sums.size(), trace.max_abs(), trace.growth_fit.slope,
                trace.growth_fit.residual);
  });

  struct GhOpt {
    std::string in, out, format = "json";
    double theta = 0.0, x0 = 0.0, bound = 0.0;
    std::int64_t K = 10000;
    std::uint64_t seed = 0;
  };
  auto go = std::make_shared<GhOpt>();
  auto* gh = rotation->add_subcommand(
      "gh-test", "bounded-sums heuristic: coboundary candidate vs linear growth");
  gh->add_option("--in", go->in)->required()->check(CLI::ExistingFile);
  gh->add_option("--theta", go->theta)->required();
  gh->add_option("--x0", go->x0);
  gh->add_option("--K", go->K)->check(CLI::PositiveNumber);
  gh->add_option("--bound", go->bound, "uniform bound tested against max|S_k|")->required();
  add_uniform_flags(gh, go->out, go->format, go->seed);
  gh->callback([&code, go] {
    const FourierSeries f = load_series(go->in);
    const RotationNumber theta = RotationNumber::from_double(go->theta);
    const GHReport rep = gottschalk_hedlund_test(f, theta, go->x0, go->K, go->bound);
    emit(go->out, gh_report_to_json(rep));
    std::printf("gh-test: verdict = %s, max|S_k| = %.6g, slope = %.6g\n",
                to_string(rep.verdict), rep.max_abs_sum, rep.slope);
    if (rep.verdict == GHVerdict::LinearGrowth) code = kExitNegativeVerdict;
  });

  struct CexOpt {
    std::string out, format = "json";
    int J = 8;
    std::int64_t precision_bits = 0;
    std::uint64_t seed = 0;
  };
  auto co = std::make_shared<CexOpt>();
  auto* cex = rotation->add_subcommand(
      "counterexample", "smooth f whose transfer solution g is only continuous");
  cex->add_option("--J", co->J, "truncation order")->check(CLI::Range(1, 24));
  cex->add_option("--precision-bits", co->precision_bits,
                  "working precision (0 = max(1024, 4*2^J))");
  add_uniform_flags(cex, co->out, co->format, co->seed);
  cex->callback([&code, co] {
    (void)code;
    std::int64_t bits = co->precision_bits;
    if (bits == 0) bits = std::max<std::int64_t>(1024, 4 * (std::int64_t{1} << co->J));
    const auto [theta, ladder] = build_liouville_theta(co->J, bits);
    const auto [f, g] = counterexample_pair(ladder, theta, co->J);
    const RegularityReport reg_f = regularity_report(f);
    const RegularityReport reg_g = regularity_report(g);

    Json artifact;
    artifact["schema"] = kSchemaVersion;
    artifact["type"] = "counterexample";
    artifact["J"] = co->J;
    artifact["precision_bits"] = bits;
    artifact["theta"] = rotation_number_to_json(theta);
    artifact["ladder"] = ladder_to_json(ladder, theta);
    artifact["f"] = series_to_json(f);
    artifact["g"] = series_to_json(g);
    artifact["regularity_f"] = regularity_to_json(reg_f);
    artifact["regularity_g"] = regularity_to_json(reg_g);
    emit(co->out, artifact);
    std::printf("counterexample: J = %d certified; C1 majorants f = %.6g, g = %.6g\n", co->J,
                reg_f.c1_majorant, reg_g.c1_majorant);
  });

  struct RegOpt {
    std::string in, out, format = "json";
    std::uint64_t seed = 0;
  };
  auto ro = std::make_shared<RegOpt>();
  auto* reg =
      rotation->add_subcommand("regularity", "coefficient-norm majorants of a series");
  reg->add_option("--in", ro->in)->required()->check(CLI::ExistingFile);
  add_uniform_flags(reg, ro->out, ro->format, ro->seed);
  reg->callback([&code, ro] {
    (void)code;
    const RegularityReport r = regularity_report(load_series(ro->in));
    emit(ro->out, regularity_to_json(r));
    std::printf("regularity: C0 majorant = %.6g, C1 majorant = %.6g\n", r.c0_majorant,
                r.c1_majorant);
  });
}

void wire_flows(CLI::App& app, int& code) {
  auto* flows = app.add_subcommand("flows", "model conformal flows and pullback checks");
  flows->require_subcommand(1);

  struct VerifyOpt {
    std::string flow, out, format = "json";
    double t = 1.0;
    int n = 1;
    std::int64_t samples = 100;
    std::uint64_t seed = 0;
  };
  auto vo = std::make_shared<VerifyOpt>();
  auto* verify = flows->add_subcommand(
      "verify", "compare phi_t^* tau against e^{f_t} tau on sampled points");
  verify->add_option("--flow", vo->flow)
      ->required()->check(CLI::IsMember({"H", "F", "liouville", "volume", "reeb"}));
  verify->add_option("--t", vo->t);
  verify->add_option("--n", vo->n, "half-dimension parameter")->check(CLI::PositiveNumber);
  verify->add_option("--samples", vo->samples)->check(CLI::PositiveNumber);
  add_uniform_flags(verify, vo->out, vo->format, vo->seed);
  verify->callback([&code, vo] {
    const ConformalFlowSpec spec = flow_spec_by_name(vo->flow, vo->n);
    const PullbackReport rep = verify_conformal_factor(spec, vo->t, vo->samples, vo->seed);
    emit(vo->out, pullback_report_to_json(rep));
    std::printf("verify: flow = %s, t = %.6g, max_residual = %.6g, tolerance = %.6g, %s\n",
                rep.flow_name.c_str(), rep.t, rep.max_residual, rep.tolerance,
                rep.pass ? "pass" : "FAIL");
    if (!rep.pass) code = kExitNumerical;
  });

  struct IntegOpt {
    std::string x_text, out, format = "json";
    double t = 1.0, inner = 0.5, outer = 1.0;
    std::int64_t steps = 0;
    bool linear = false;
    std::uint64_t seed = 0;
  };
  auto io = std::make_shared<IntegOpt>();
  auto* integrate =
      flows->add_subcommand("integrate", "volume flow endpoint and accumulated factor f_t");
  integrate->add_option("--t", io->t)->required();
  integrate->add_option("--x", io->x_text, "start point, comma separated")->required();
  integrate->add_option("--steps", io->steps, "0 = ceil(|t|/1e-3)");
  integrate->add_option("--inner", io->inner, "cutoff inner radius");
  integrate->add_option("--outer", io->outer, "cutoff outer radius");
  integrate->add_flag("--linear", io->linear, "use rho(r) = r/n without cutoff");
  add_uniform_flags(integrate, io->out, io->format, io->seed);
  integrate->callback([&code, io] {
    (void)code;
    const Vec x = parse_point(io->x_text);
    const int dim = static_cast<int>(x.size());
    const ScalarProfile profile = io->linear
                                      ? linear_volume_profile(dim)
                                      : default_volume_profile(dim, io->inner, io->outer);
    std::int64_t steps = io->steps;
    if (steps == 0)
      steps = std::max<std::int64_t>(
          1, static_cast<std::int64_t>(std::ceil(std::abs(io->t) / 1e-3)));
    const auto [endpoint, factor] = volume_flow(io->t, x, profile, steps);
    Json artifact;
    artifact["schema"] = kSchemaVersion;
    artifact["type"] = "volume_flow";
    artifact["t"] = io->t;
    artifact["x"] = x;
    artifact["steps"] = steps;
    artifact["endpoint"] = endpoint;
    artifact["factor"] = factor;
    emit(io->out, artifact);
    std::printf("integrate: t = %.6g, f_t = %.12g\n", io->t, factor);
  });
}

void wire_obstruction(CLI::App& app, int& code) {
  auto* obstruction = app.add_subcommand(
      "obstruction", "fixed/periodic-point obstruction to preserving any tensor");
  obstruction->require_subcommand(1);

  struct FfOpt {
    std::string flow, seeds_text, out, format = "json";
    double t = 1.0, tol = 1e-10;
    int n = 1, max_iter = 50;
    std::uint64_t seed = 0;
  };
  auto fo = std::make_shared<FfOpt>();
  auto* find_fixed = obstruction->add_subcommand("find-fixed", "Newton search for phi(x) = x");
  find_fixed->add_option("--flow", fo->flow)
      ->required()->check(CLI::IsMember({"H", "F", "liouville", "volume", "reeb"}));
  find_fixed->add_option("--t", fo->t);
  find_fixed->add_option("--n", fo->n)->check(CLI::PositiveNumber);
  find_fixed->add_option("--seeds", fo->seeds_text, "start points 'x,y,z;x,y,z;...'")
      ->required();
  find_fixed->add_option("--tol", fo->tol)->check(CLI::PositiveNumber);
  find_fixed->add_option("--max-iter", fo->max_iter)->check(CLI::PositiveNumber);
  add_uniform_flags(find_fixed, fo->out, fo->format, fo->seed);
  find_fixed->callback([&code, fo] {
    const ConformalFlowSpec spec = flow_spec_by_name(fo->flow, fo->n);
    const double t = fo->t;
    const auto map = [spec, t](const Vec& p) { return spec.exact_flow(t, p); };
    const FixedPointSearch search =
        find_fixed_points(map, parse_seed_list(fo->seeds_text), fo->tol, fo->max_iter);
    emit(fo->out, fixed_point_search_to_json(search));
    std::printf("find-fixed: %zu point(s), %d no-convergence, %d singular\n",
                search.points.size(), search.no_convergence_count, search.singular_count);
    if (search.points.empty() && search.singular_count == 0) code = kExitNumerical;
  });

  struct CheckOpt {
    std::string flow, point_text, out, format = "json";
    double t = 1.0, point_tol = kDefaultPointTol, factor_tol = kDefaultFactorTol;
    int n = 1, m = 1;
    std::uint64_t seed = 0;
  };
  auto ko = std::make_shared<CheckOpt>();
  auto* check = obstruction->add_subcommand(
      "check", "orbit factor sum at a periodic point of the chosen flow");
  check->add_option("--flow", ko->flow)
      ->required()->check(CLI::IsMember({"H", "F", "liouville", "volume", "reeb"}));
  check->add_option("--t", ko->t);
  check->add_option("--n", ko->n)->check(CLI::PositiveNumber);
  check->add_option("--point", ko->point_text, "candidate periodic point")->required();
  check->add_option("--m", ko->m, "period")->check(CLI::PositiveNumber);
  check->add_option("--point-tol", ko->point_tol)->check(CLI::PositiveNumber);
  check->add_option("--factor-tol", ko->factor_tol)->check(CLI::PositiveNumber);
  add_uniform_flags(check, ko->out, ko->format, ko->seed);
  check->callback([&code, ko] {
    const ConformalFlowSpec spec = flow_spec_by_name(ko->flow, ko->n);
    const double t = ko->t;
    const auto map = [spec, t](const Vec& p) { return spec.exact_flow(t, p); };
    const auto factor = [spec, t](const Vec& p) { return spec.expected_factor(t, p); };
    const ObstructionVerdict v = criterion_check(map, factor, parse_point(ko->point_text),
                                                 ko->m, ko->point_tol, ko->factor_tol);
    emit(ko->out, obstruction_verdict_to_json(v));
    std::printf("check: conclusion = %s, factor_sum = %.6g, residual = %.6g\n",
                to_string(v.conclusion), v.factor_sum, v.residual);
    if (v.conclusion == ObstructionConclusion::NoInvariantTensor)
      code = kExitNegativeVerdict;
  });
}

void wire_constraint(CLI::App& app, int& code) {
  auto* constraint = app.add_subcommand(
      "constraint", "compact-contact average-value checks on the 3-torus");
  constraint->require_subcommand(1);

  struct ConstraintOpt {
    std::string expr = "zero", in, out, format = "json";
    int res = 32;
    double tol = 1e-8;
    std::uint64_t seed = 0;
  };
  auto add_sub = [&](const char* name, const char* help, bool jensen_drives) {
    auto opt = std::make_shared<ConstraintOpt>();
    auto* sub = constraint->add_subcommand(name, help);
    auto* f_opt = sub->add_option(
        "--f", opt->expr,
        "grid expression: zero|const:<v>|sinx:<v>|siny:<v>|sinz:<v>|nonpos:<v>");
    sub->add_option("--in", opt->in, "grid CSV 'x_index,y_index,z_index,value'")
        ->check(CLI::ExistingFile)->excludes(f_opt);
    sub->add_option("--res", opt->res, "grid resolution per axis")->check(CLI::Range(8, 256));
    sub->add_option("--tol", opt->tol)->check(CLI::PositiveNumber);
    add_uniform_flags(sub, opt->out, opt->format, opt->seed);
    sub->callback([&code, opt, jensen_drives] {
      const std::array<int, 3> res = {opt->res, opt->res, opt->res};
      GridFunction grid = [&]() {
        if (!opt->in.empty()) {
          std::ifstream in(opt->in);
          return GridFunction::from_csv(in, res);
        }
        return GridFunction::from_function(res, parse_grid_expression(opt->expr));
      }();
      const ContactModel model = ContactModel::standard_t3();
      const AverageReport avg = average_check(grid, model, opt->tol);
      const JensenReport jen = jensen_check(grid, model, opt->tol);
      emit(opt->out, constraint_report_to_json(avg, jen));
      std::printf("constraint: A = %.12g (%s), avg_f = %.12g (%s)\n", avg.average,
                  to_string(avg.verdict), jen.average_f, to_string(jen.verdict));
      const ConstraintVerdict drives = jensen_drives ? jen.verdict : avg.verdict;
      if (drives == ConstraintVerdict::Violated) code = kExitNegativeVerdict;
    });
  };
  add_sub("average", "mu-average of e^{(n+1)f} must equal 1", false);
  add_sub("jensen", "mu-average of f must be nonpositive", true);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"conformal flows, rotation cocycles, and obstruction checks"};
  app.require_subcommand(1);

  int code = kExitOk;
  wire_rotation(app, code);
  wire_flows(app, code);
  wire_obstruction(app, code);
  wire_constraint(app, code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const NonzeroMean& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const SmallDenominator& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const PrecisionExhausted& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const StepTooLarge& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const SingularJacobian& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const DegenerateContactForm& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const NotRealValued& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const ResolutionMismatch& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const BadRadii& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "usage error: malformed JSON input: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return code;
}

}  // namespace confdyn

// Command-line front end.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fano/fano_core.hpp"
#include "fano/instance_forge.hpp"
#include "fano/io.hpp"
#include "fano/monodromy.hpp"
#include "fano/pipeline.hpp"

using namespace fano;
namespace fs = std::filesystem;

namespace {

std::string degrees_csv(const FanoType& t) {
  std::string out;
  for (int d : t.degrees()) out += (out.empty() ? "" : ",") + std::to_string(d);
  return out;
}

Json problem_json(const FanoType& t, const Integer& degree) {
  return {{"r", t.r()}, {"n", t.n()}, {"degrees", t.degrees()}, {"degree", degree.get_str()}, {"enriched", is_enriched(t)}};
}

int cmd_enumerate(const std::string& cap, bool json) {
  const auto problems = enumerate_fano_problems(Integer(cap));
  Json arr = Json::array();
  for (const auto& p : problems) {
    if (json)
      arr.push_back(problem_json(p.type, p.degree));
    else
      std::cout << p.type.r() << ' ' << p.type.n() << ' ' << degrees_csv(p.type) << ' ' << p.degree << ' '
                << (is_enriched(p.type) ? "enriched" : "-") << '\n';
  }
  if (json) std::cout << arr.dump(1) << '\n';
  return kExitOk;
}

int cmd_degree(const FanoType& t, bool json) {
  if (delta(t) != 0) {
    std::cerr << t.to_string() << " is not a Fano problem: expected dimension " << delta(t) << '\n';
    return kExitUsage;
  }
  const Integer deg = fano_degree(t);
  const auto lb = degree_lower_bound(t);
  if (json) {
    Json j = problem_json(t, deg);
    j["lower_bound_refined"] = lb.refined.get_str();
    j["lower_bound_crude"] = lb.crude.get_str();
    std::cout << j.dump(1) << '\n';
  } else {
    std::cout << t.to_string() << " degree " << deg << " (lower bounds: refined " << lb.refined << ", crude "
              << lb.crude << ")" << (is_enriched(t) ? " enriched" : "") << '\n';
  }
  return kExitOk;
}

int cmd_tables(bool json) {
  Json out = Json::object();
  auto emit = [&](const char* name, const std::vector<TableRow>& rows, const char* label) {
    Json arr = Json::array();
    if (!json) std::cout << name << "\n  r  n  degrees        degree  " << (label ? label : "") << '\n';
    for (const auto& row : rows) {
      const Integer deg = fano_degree(row.type);
      Json j = problem_json(row.type, deg);
      if (label) j[label] = row.label;
      arr.push_back(j);
      if (!json) {
        std::printf("  %-2d %-2d %-14s %-7s %s\n", row.type.r(), row.type.n(), degrees_csv(row.type).c_str(),
                    deg.get_str().c_str(), row.label.c_str());
      }
    }
    out[name] = arr;
  };
  emit("small", small_degree_table(), "group");
  emit("large", large_problem_table(), nullptr);
  if (json) std::cout << out.dump(1) << '\n';
  return kExitOk;
}

int cmd_forge(const FanoType& t, std::uint64_t seed, bool double_point, const fs::path& dir) {
  if (double_point) {
    const ChartPoint ell = default_ell(t);
    const TangentVector v = default_v(t);
    write_json(dir / "F.json", to_json(constrained_form_system(t, ell, v, seed)));
    write_json(dir / "ell.json", {{"type", t.to_string()}, {"coords", to_json(ell.coords)}});
    write_json(dir / "v.json", {{"type", t.to_string()}, {"coords", to_json(v.coords)}});
  } else {
    write_json(dir / "F.json", to_json(random_form_system(t, seed)));
  }
  std::cout << "wrote " << (dir / "F.json").string() << (double_point ? " (with ell.json, v.json)" : "") << '\n';
  return kExitOk;
}

int cmd_build(const fs::path& in, const fs::path& out) {
  const FormSystem f = form_system_from_json(read_json(in));
  const SquareSystem g = build_square_system(f);
  write_json(out, to_json(g, f.type()));
  std::cout << g.num_vars() << " equations in " << g.num_vars() << " unknowns\n";
  return kExitOk;
}

std::optional<DoubleZeroCertificate> load_double_point(const fs::path& path) {
  if (path.empty()) return std::nullopt;
  const Json j = read_json(path);
  if (j.contains("rejection")) throw FormatError(path.string() + " records a rejected double point");
  return double_zero_from_json(j);
}

int cmd_solve(const fs::path& system, std::uint64_t seed, const fs::path& out, const fs::path& dp,
              const TrackSettings& settings) {
  const SquareSystem g = square_system_from_json(read_json(system));
  std::optional<FloatPoint> exclude;
  if (auto dz = load_double_point(dp)) {
    exclude.emplace();
    for (const auto& c : dz->point.coords) exclude->push_back(c.to_complex());
  }
  const SolveReport rep = solve_total_degree(g, settings, seed, exclude ? &*exclude : nullptr);
  write_json(out, to_json(rep, seed));
  std::cout << rep.paths.size() << " paths: " << rep.solutions.size() << " solutions, " << rep.truncated
            << " truncated, " << rep.diverged << " diverged, " << rep.failed << " failed\n";
  return rep.solutions.empty() ? kExitNumerical : kExitOk;
}

int cmd_certify(const fs::path& system, const fs::path& candidates, const fs::path& dp, const fs::path& out) {
  const Json gj = read_json(system);
  if (!gj.contains("instance")) throw FormatError(system.string() + " lacks the instance it was built from");
  const SquareSystem g = square_system_from_json(gj);
  const FormSystem& f = *g.provenance();
  std::optional<DoubleZeroCertificate> dz;
  if (auto stored = load_double_point(dp)) {
    auto res = is_simple_double_zero(g, stored->point);
    if (auto* rej = std::get_if<Rejection>(&res)) {
      std::cerr << "double point rejected: " << to_string(*rej) << '\n';
      return kExitVerification;
    }
    dz = std::get<DoubleZeroCertificate>(res);
  }
  const FiberResult res = certify_fiber(g, solutions_from_json(read_json(candidates)), dz, fano_degree(f.type()));
  write_json(out, certificate_json(f, res));
  std::cout << res.fiber.boxes.size() << " certified boxes, " << res.fiber.failed << " uncertified candidates, status "
            << to_string(res.status) << (res.detail.empty() ? "" : ": " + res.detail) << '\n';
  switch (res.status) {
    case FiberStatus::Ok: return kExitOk;
    case FiberStatus::CountMismatch: return kExitNumerical;
    default: return kExitVerification;
  }
}

int cmd_monodromy(const FanoType& t, std::size_t loops, std::uint64_t seed, bool force, bool json,
                  const TrackSettings& settings) {
  const Integer deg = fano_degree(t);
  if (deg > 64 && !force) {
    std::cerr << "degree " << deg << " exceeds 64; pass --force to sample anyway\n";
    return kExitUsage;
  }
  const MonodromyRun run = sample_galois_group(t, loops, seed, settings);
  const std::size_t n = run.fiber.boxes.size();
  std::optional<bool> preserved;
  if (n <= 64) {
    std::vector<FloatPoint> centers;
    for (const auto& b : run.fiber.boxes) centers.push_back(b.center);
    const auto graph = incidence_graph(t, centers);
    preserved = true;
    for (const auto& g : run.group.generators) *preserved = *preserved && preserves_graph(g, graph);
  }
  const bool full = run.group.order == factorial(static_cast<unsigned>(n));
  if (json) {
    Json hist = Json::array();
    for (const auto& o : run.order_history) hist.push_back(o.get_str());
    Json j{{"type", t.to_string()},     {"seed", seed},
           {"fiber", n},                {"accepted_loops", run.accepted},
           {"rejected_loops", run.rejected}, {"order", run.group.order.get_str()},
           {"transitive", run.group.transitive}, {"contains_odd", run.group.contains_odd},
           {"symmetric", full},         {"order_history", hist}};
    if (preserved) j["incidences_preserved"] = *preserved;
    std::cout << j.dump(1) << '\n';
  } else {
    std::cout << t.to_string() << " seed " << seed << ": fiber " << n << ", loops " << run.accepted << " accepted "
              << run.rejected << " rejected\n"
              << "order " << run.group.order << (full ? " (full symmetric group)" : "") << ", transitive "
              << (run.group.transitive ? "yes" : "no") << ", odd generator " << (run.group.contains_odd ? "yes" : "no")
              << '\n';
    if (preserved) std::cout << "incidence graph preserved: " << (*preserved ? "yes" : "no") << '\n';
  }
  return kExitOk;
}

int cmd_pipeline(const FanoType& t, const PipelineOptions& opts) {
  if (delta(t) != 0) {
    std::cerr << t.to_string() << " is not a Fano problem: expected dimension " << delta(t) << '\n';
    return kExitUsage;
  }
  const PipelineReport rep = run_pipeline(t, opts);
  std::cout << t.to_string() << " degree " << rep.degree << ", seed " << rep.attempt_seed << " (attempt "
            << rep.attempts << ")\n";
  for (const auto& s : rep.stages)
    std::printf("  %-13s %9.3f s  %s\n", s.stage.c_str(), s.seconds, s.ok ? "ok" : s.error.c_str());
  std::cout << "double zero " << (rep.verdict.double_zero_valid ? "valid" : "not valid") << ", "
            << rep.verdict.certified_boxes << " certified boxes, fiber " << rep.verdict.fiber_status << ", "
            << rep.truncated_paths << " paths truncated at the double point\n";
  if (rep.verdict.transposition_witness)
    std::cout << "transposition witness: the Galois group is the full symmetric group\n";
  std::cout << "report " << (opts.out_dir / "report.json").string() << '\n';
  return rep.exit_code;
}

int cmd_verify(const fs::path& path) {
  const VerifyResult res = verify_file(path);
  for (const auto& p : res.problems) std::cout << "problem: " << p << '\n';
  std::cout << (res.ok ? "verified" : "NOT verified") << ": double zero "
            << (res.verdict.double_zero_valid ? "valid" : "absent or invalid") << ", " << res.verdict.certified_boxes
            << " boxes, fiber " << res.verdict.fiber_status
            << (res.verdict.transposition_witness ? ", transposition witness" : "") << '\n';
  return res.ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fano problems: degrees, certified fibers and monodromy"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for path tracking")->check(CLI::PositiveNumber);
  std::uint64_t seed = default_seed();
  std::string type_text, cap = "75000";
  bool json = false, double_point = false, force = false;
  fs::path input, output, dir = "fano-out", system, candidates, dp, file;
  std::size_t loops = 40;
  int attempts = 3;
  auto add_type = [&](CLI::App* c) { c->add_option("--type", type_text, "r,n,d1:d2:...")->required(); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", seed, "Seed (default: FANO_SEED or built-in)"); };

  auto* enumerate = app.add_subcommand("enumerate", "List Fano problems below a degree cap");
  enumerate->add_option("--cap", cap, "Degree cap");
  enumerate->add_flag("--json", json);

  auto* degree = app.add_subcommand("degree", "Exact degree of one problem");
  add_type(degree);
  degree->add_flag("--json", json);

  auto* tables = app.add_subcommand("tables", "Recompute the reference tables");
  tables->add_flag("--json", json);

  auto* build = app.add_subcommand("build-system", "Square system of an instance");
  add_type(build);
  build->add_option("--input", input)->required();
  build->add_option("--output", output)->required();

  auto* forge = app.add_subcommand("forge", "Random instance, optionally with a double point at the chart origin");
  add_type(forge);
  add_seed(forge);
  forge->add_flag("--double-point", double_point);
  forge->add_option("--out-dir", dir);

  auto* solve = app.add_subcommand("solve", "Total-degree homotopy");
  solve->add_option("--system", system)->required();
  add_seed(solve);
  solve->add_option("--out", output)->required();
  solve->add_option("--double-point", dp, "Double point to steer clear of");

  auto* certify = app.add_subcommand("certify", "Certify candidate solutions");
  certify->add_option("--system", system)->required();
  certify->add_option("--candidates", candidates)->required();
  certify->add_option("--double-point", dp);
  certify->add_option("--out", output)->default_val("certificate.json");

  auto* mono = app.add_subcommand("monodromy", "Sample the monodromy group");
  add_type(mono);
  add_seed(mono);
  mono->add_option("--loops", loops);
  mono->add_flag("--force", force, "Allow degree above 64");
  mono->add_flag("--json", json);

  auto* pipeline = app.add_subcommand("pipeline", "Forge, check, solve and certify");
  add_type(pipeline);
  add_seed(pipeline);
  pipeline->add_option("--out-dir", dir);
  pipeline->add_option("--attempts", attempts)->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Re-check a report or certificate");
  verify->add_option("file", file)->required();

  CLI11_PARSE(app, argc, argv);
  TrackSettings settings;
  settings.threads = threads;

  try {
    std::optional<FanoType> t;
    if (!type_text.empty()) t = FanoType::parse(type_text);
    if (*enumerate) return cmd_enumerate(cap, json);
    if (*degree) return cmd_degree(*t, json);
    if (*tables) return cmd_tables(json);
    if (*build) return cmd_build(input, output);
    if (*forge) return cmd_forge(*t, seed, double_point, dir);
    if (*solve) return cmd_solve(system, seed, output, dp, settings);
    if (*certify) return cmd_certify(system, candidates, dp, output);
    if (*mono) return cmd_monodromy(*t, loops, seed, force, json, settings);
    if (*pipeline) {
      PipelineOptions opts;
      opts.out_dir = dir;
      opts.seed = seed;
      opts.attempts = attempts;
      opts.settings = settings;
      opts.progress = true;
      return cmd_pipeline(*t, opts);
    }
    if (*verify) return cmd_verify(file);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

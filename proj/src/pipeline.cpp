#include "fano/pipeline.hpp"

#include <chrono>
#include <iostream>
#include <stdexcept>

#include "fano/instance_forge.hpp"
#include "fano/random.hpp"

namespace fano {

namespace fs = std::filesystem;

Json to_json(const Verdict& v) {
  return {{"double_zero_valid", v.double_zero_valid},
          {"certified_boxes", v.certified_boxes},
          {"fiber_status", v.fiber_status},
          {"transposition_witness", v.transposition_witness}};
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  v.double_zero_valid = j.at("double_zero_valid").get<bool>();
  v.certified_boxes = j.at("certified_boxes").get<std::size_t>();
  v.fiber_status = j.at("fiber_status").get<std::string>();
  v.transposition_witness = j.at("transposition_witness").get<bool>();
  return v;
}

Json to_json(const PipelineReport& r) {
  Json stages = Json::array();
  for (const auto& s : r.stages) {
    Json e{{"stage", s.stage}, {"seconds", s.seconds}, {"ok", s.ok}};
    if (!s.error.empty()) e["error"] = s.error;
    stages.push_back(e);
  }
  Json files = Json::object();
  for (const auto& [k, v] : r.files) files[k] = v;
  return {{"kind", "report"},
          {"type", r.type.to_string()},
          {"degree", r.degree.get_str()},
          {"enriched", r.enriched},
          {"seed", r.seed},
          {"attempt_seed", r.attempt_seed},
          {"attempts", r.attempts},
          {"truncated_paths", r.truncated_paths},
          {"stages", stages},
          {"files", files},
          {"verdict", to_json(r.verdict)},
          {"failed_stage", r.failed_stage},
          {"exit_code", r.exit_code}};
}

Verdict make_verdict(const FanoType& t, const FiberResult& res) {
  Verdict v;
  v.double_zero_valid = res.fiber.double_point && res.fiber.double_point->valid();
  v.certified_boxes = res.fiber.boxes.size();
  v.fiber_status = to_string(res.status);
  v.transposition_witness = v.double_zero_valid && res.status == FiberStatus::Ok && !is_enriched(t);
  return v;
}

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

FloatPoint to_float(const ExactVector& v) {
  FloatPoint out;
  for (const auto& c : v) out.push_back(c.to_complex());
  return out;
}

int exit_code_for(const Verdict& v, const FiberResult& res) {
  if (!v.double_zero_valid) return kExitVerification;
  switch (res.status) {
    case FiberStatus::Ok: return kExitOk;
    case FiberStatus::CountMismatch: return kExitNumerical;
    default: return kExitVerification;
  }
}

}  // namespace

PipelineReport run_pipeline(const FanoType& t, const PipelineOptions& opts) {
  if (delta(t) != 0) throw std::invalid_argument(t.to_string() + " has expected dimension " + std::to_string(delta(t)));
  PipelineReport rep(t, fano_degree(t));
  rep.enriched = is_enriched(t);
  rep.seed = opts.seed;
  const fs::path dir = opts.out_dir;
  fs::create_directories(dir);
  auto log = [&](const std::string& msg) {
    if (opts.progress) std::cerr << "[" << t.to_string() << "] " << msg << std::endl;
  };

  const ChartPoint ell = default_ell(t);
  const TangentVector v = default_v(t);
  const FloatPoint ell_float = to_float(ell.coords);

  for (int attempt = 0; attempt < opts.attempts; ++attempt) {
    const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(attempt);
    rep.attempts = attempt + 1;
    rep.attempt_seed = seed;
    rep.stages.clear();
    rep.files.clear();
    rep.failed_stage.clear();
    rep.verdict = Verdict{};
    rep.exit_code = kExitNumerical;
    auto stage = [&](const std::string& name, auto&& body) {
      Stopwatch sw;
      StageTiming st;
      st.stage = name;
      try {
        body();
        st.ok = true;
      } catch (const std::exception& e) {
        st.error = e.what();
      }
      st.seconds = sw.seconds();
      rep.stages.push_back(st);
      log(name + (st.ok ? " done" : " failed: " + st.error) + " (" + std::to_string(st.seconds) + " s)");
      if (!st.ok) rep.failed_stage = name;
      return st.ok;
    };
    log("attempt " + std::to_string(attempt + 1) + " seed " + std::to_string(seed));

    std::optional<FormSystem> f;
    std::optional<SquareSystem> g;
    std::optional<DoubleZeroCertificate> dz;
    SolveReport solved;
    std::optional<FiberResult> fiber;

    if (!stage("forge", [&] {
          f = constrained_form_system(t, ell, v, seed);
          write_json(dir / "F.json", to_json(*f));
          write_json(dir / "ell.json", {{"type", t.to_string()}, {"coords", to_json(ell.coords)}});
          write_json(dir / "v.json", {{"type", t.to_string()}, {"coords", to_json(v.coords)}});
        }))
      continue;
    rep.files = {{"instance", "F.json"}, {"ell", "ell.json"}, {"v", "v.json"}};
    if (!stage("build-system", [&] {
          g = build_square_system(*f);
          write_json(dir / "G.json", to_json(*g, t));
        }))
      continue;
    rep.files.emplace_back("system", "G.json");
    const bool dz_ok = stage("double-zero", [&] {
      auto res = is_simple_double_zero(*g, ell);
      if (auto* rej = std::get_if<Rejection>(&res)) {
        write_json(dir / "dp.json", {{"valid", false}, {"rejection", to_string(*rej)}});
        throw std::runtime_error("rejected: " + to_string(*rej));
      }
      dz = std::get<DoubleZeroCertificate>(res);
      write_json(dir / "dp.json", to_json(*dz));
    });
    rep.files.emplace_back("double_point", "dp.json");
    if (!dz_ok) {
      rep.exit_code = kExitVerification;
      continue;
    }
    rep.verdict.double_zero_valid = true;
    const Integer target = rep.degree - 2;
    stage("solve", [&] {
      Rng rng(seed);
      solved = solve_total_degree(*g, opts.settings, rng.next(), &ell_float);
      log("paths " + std::to_string(solved.paths.size()) + ", solutions " + std::to_string(solved.solutions.size()) +
          ", truncated " + std::to_string(solved.truncated));
      for (int k = 0; k < opts.resolves && Integer(static_cast<unsigned long>(solved.solutions.size())) < target; ++k) {
        SolveReport more = solve_total_degree(*g, opts.settings, rng.next(), &ell_float);
        merge_clustered(solved.solutions, more.solutions, opts.settings.cluster_tol);
        log("re-solve " + std::to_string(k + 1) + ": " + std::to_string(solved.solutions.size()) + " solutions");
      }
      rep.truncated_paths = solved.truncated;
      write_json(dir / "sols.json", to_json(solved, seed));
    });
    rep.files.emplace_back("solutions", "sols.json");
    stage("certify", [&] {
      fiber = certify_fiber(*g, solved.solutions, dz, rep.degree);
      write_json(dir / "certificate.json", certificate_json(*f, *fiber));
    });
    rep.files.emplace_back("certificate", "certificate.json");
    if (!fiber) continue;
    rep.verdict = make_verdict(t, *fiber);
    rep.exit_code = exit_code_for(rep.verdict, *fiber);
    if (rep.exit_code == kExitOk) break;
    rep.failed_stage = "certify";
    log("fiber status " + rep.verdict.fiber_status + ": " + fiber->detail);
  }
  write_json(dir / "report.json", to_json(rep));
  return rep;
}

VerifyResult verify_certificate(const Json& cert) {
  VerifyResult out;
  auto problem = [&](std::string msg) { out.problems.push_back(std::move(msg)); };

  const FormSystem f = form_system_from_json(cert.at("instance"));
  const FanoType& t = f.type();
  const SquareSystem g = build_square_system(f);
  const Integer degree = fano_degree(t);
  if (cert.at("expected_degree").get<std::string>() != degree.get_str()) problem("expected degree differs from fano_degree");

  std::optional<DoubleZeroCertificate> dz;
  if (!cert.at("double_point").is_null()) {
    const DoubleZeroCertificate stored = double_zero_from_json(cert.at("double_point"));
    auto res = is_simple_double_zero(g, stored.point);
    if (auto* rej = std::get_if<Rejection>(&res)) {
      problem("double zero rejected on recheck: " + to_string(*rej));
      dz = stored;
      dz->zero_value = dz->kernel_dim_one = dz->hessian_escape = false;
    } else {
      dz = std::get<DoubleZeroCertificate>(res);
      if (to_json(*dz) != to_json(stored)) problem("recomputed double-zero certificate differs from the stored one");
    }
  }

  const IntervalSystem ig(g);
  std::vector<CertifiedBox> boxes;
  std::size_t index = 0;
  for (const auto& b : cert.at("boxes")) {
    CertifiedBox cb{float_point_from_json(b.at("center")), box_from_json(b.at("box"))};
    if (cb.box.dim() != g.num_vars() || cb.center.size() != g.num_vars())
      problem("box " + std::to_string(index) + " has the wrong dimension");
    else if (!recheck_box(ig, cb))
      problem("box " + std::to_string(index) + " fails the Krawczyk test");
    boxes.push_back(std::move(cb));
    ++index;
  }
  if (boxes.size() != cert.at("box_count").get<std::size_t>()) problem("box count field disagrees with the box list");

  const FiberResult res = check_fiber(std::move(boxes), dz, degree, cert.at("failed_candidates").get<std::size_t>());
  if (to_string(res.status) != cert.at("status").get<std::string>())
    problem("fiber status " + to_string(res.status) + " differs from stored " + cert.at("status").get<std::string>());
  out.verdict = make_verdict(t, res);
  out.ok = out.problems.empty();
  return out;
}

VerifyResult verify_file(const fs::path& path) {
  const Json j = read_json(path);
  const std::string kind = j.value("kind", "");
  if (kind == "certificate") return verify_certificate(j);
  if (kind != "report") throw FormatError(path.string() + " is neither a report nor a certificate");

  const fs::path dir = path.parent_path();
  const Json& files = j.at("files");
  if (!files.contains("certificate")) {
    VerifyResult out;
    out.problems.push_back("report has no certificate (failed stage: " + j.value("failed_stage", "") + ")");
    return out;
  }
  const Json cert = read_json(dir / files.at("certificate").get<std::string>());
  VerifyResult out = verify_certificate(cert);

  if (cert.at("instance") != read_json(dir / files.at("instance").get<std::string>()))
    out.problems.push_back("certificate instance differs from the instance file");
  const FanoType t = FanoType::parse(j.at("type").get<std::string>());
  if (cert.at("instance").at("type").get<std::string>() != t.to_string())
    out.problems.push_back("certificate type differs from the report type");
  if (!cert.at("double_point").is_null() && files.contains("ell")) {
    const ExactVector ell = exact_vector_from_json(read_json(dir / files.at("ell").get<std::string>()).at("coords"));
    if (exact_vector_from_json(cert.at("double_point").at("point")) != ell)
      out.problems.push_back("double point is not the prescribed chart point");
  }
  if (verdict_from_json(j.at("verdict")) != out.verdict)
    out.problems.push_back("recomputed verdict differs from the report verdict");
  out.ok = out.problems.empty();
  return out;
}

}  // namespace fano

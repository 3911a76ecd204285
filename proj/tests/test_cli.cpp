#include <filesystem>

#include "doctest.h"
#include "fano/instance_forge.hpp"
#include "fano/pipeline.hpp"

using namespace fano;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fano-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("json round trips") {
  const FanoType t(1, 3, {3});
  const FormSystem f = random_form_system(t, 8);
  CHECK(form_system_from_json(to_json(f)) == f);
  const SquareSystem g = build_square_system(f);
  CHECK(square_system_from_json(to_json(g, t)).polys() == g.polys());

  Json tampered = to_json(g, t);
  tampered["polys"][0] = "(1)*x0";
  CHECK_THROWS_AS(square_system_from_json(tampered), FormatError);

  const FloatPoint x{{0.1, -1e-300}, {3.0, 0.0}};
  CHECK(float_point_from_json(to_json(x)) == x);
  const ComplexBox box = ComplexBox::around(x, 1e-9);
  const ComplexBox back = box_from_json(to_json(box));
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(back[k].re.lo == box[k].re.lo);
    CHECK(back[k].im.hi == box[k].im.hi);
  }
  const ExactVector v{GaussianRational::parse("1/3-2/7*i"), 0};
  CHECK(exact_vector_from_json(to_json(v)) == v);
}

TEST_CASE("certificate verification") {
  const FanoType t(1, 3, {3});
  const FormSystem f = random_form_system(t, 2);
  const SquareSystem g = build_square_system(f);
  const FiberResult res = certify_fiber(g, solve_total_degree(g, {}, 2).solutions, std::nullopt, fano_degree(t));
  REQUIRE(res.status == FiberStatus::Ok);
  Json cert = certificate_json(f, res);
  const VerifyResult ok = verify_certificate(cert);
  CHECK(ok.ok);
  CHECK(ok.verdict.certified_boxes == 27);
  CHECK_FALSE(ok.verdict.transposition_witness);

  Json moved = cert;
  moved["boxes"][0]["box"] = moved["boxes"][1]["box"];
  CHECK_FALSE(verify_certificate(moved).ok);

  Json other = cert;
  other["instance"] = to_json(random_form_system(t, 3));
  CHECK_FALSE(verify_certificate(other).ok);

  Json relabeled = cert;
  relabeled["status"] = "CountMismatch";
  CHECK_FALSE(verify_certificate(relabeled).ok);
}

TEST_CASE("pipeline writes re-verifiable artifacts") {
  const fs::path dir = scratch_dir("pipeline");
  PipelineOptions opts;
  opts.out_dir = dir;
  opts.seed = 1;
  opts.attempts = 1;
  opts.resolves = 0;
  const PipelineReport rep = run_pipeline(FanoType(1, 3, {3}), opts);
  CHECK(rep.verdict.double_zero_valid);
  for (const char* name : {"F.json", "ell.json", "v.json", "G.json", "dp.json", "sols.json", "certificate.json", "report.json"})
    CHECK(fs::exists(dir / name));
  const VerifyResult v = verify_file(dir / "report.json");
  CHECK(v.ok);
  CHECK(v.verdict == rep.verdict);

  Json report = read_json(dir / "report.json");
  report["verdict"]["certified_boxes"] = rep.verdict.certified_boxes + 1;
  write_json(dir / "report.json", report);
  CHECK_FALSE(verify_file(dir / "report.json").ok);
}

TEST_CASE("pipeline rejects non-Fano types") {
  CHECK_THROWS_AS(run_pipeline(FanoType(1, 4, {3}), {}), std::invalid_argument);
}

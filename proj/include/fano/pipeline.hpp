#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fano/certification.hpp"
#include "fano/fano_core.hpp"
#include "fano/io.hpp"
#include "fano/tracker.hpp"

namespace fano {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitVerification = 2, kExitNumerical = 3 };

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
  bool ok = false;
  std::string error;
};

/// The conclusions a certificate supports, recomputable from files alone.
struct Verdict {
  bool double_zero_valid = false;
  std::size_t certified_boxes = 0;
  std::string fiber_status;
  /// Double zero valid, deg - 2 boxes and a non-enriched problem.
  bool transposition_witness = false;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Json to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

struct PipelineReport {
  PipelineReport(FanoType t, Integer deg) : type(std::move(t)), degree(std::move(deg)) {}

  FanoType type;
  Integer degree;
  bool enriched = false;
  std::uint64_t seed = 0;
  /// Seed of the attempt the artifacts come from.
  std::uint64_t attempt_seed = 0;
  int attempts = 0;
  std::size_t truncated_paths = 0;
  std::vector<StageTiming> stages;
  /// File names relative to the report's directory.
  std::vector<std::pair<std::string, std::string>> files;
  Verdict verdict;
  /// Name of the stage that ended the last attempt, empty on success.
  std::string failed_stage;
  int exit_code = kExitOk;
};

Json to_json(const PipelineReport& r);

struct PipelineOptions {
  std::filesystem::path out_dir = "fano-out";
  std::uint64_t seed = 0;
  int attempts = 3;
  /// Extra total-degree solves with fresh gamma when solutions are missing.
  int resolves = 2;
  TrackSettings settings;
  bool progress = false;
};

/// Forge an instance with a double zero at the chart origin, check it
/// exactly, solve and certify the rest of the fiber; up to `attempts`
/// seeds (seed, seed + 1, ...). Writes F.json, ell.json, v.json, G.json,
/// dp.json, sols.json, certificate.json and report.json to out_dir.
/// Throws std::invalid_argument when delta != 0.
PipelineReport run_pipeline(const FanoType& t, const PipelineOptions& opts);

/// Verdict of a fiber result for problem t.
Verdict make_verdict(const FanoType& t, const FiberResult& res);

struct VerifyResult {
  bool ok = false;
  Verdict verdict;
  std::vector<std::string> problems;
};

/// Re-checks a certificate from its own contents: rebuilds G from the exact
/// instance, reruns the exact double-zero test, re-evaluates the Krawczyk
/// test on every box and the fiber checks, and compares with the stored
/// flags.
VerifyResult verify_certificate(const Json& cert);

/// Accepts a report (re-checks its certificate and verdict) or a bare
/// certificate.
VerifyResult verify_file(const std::filesystem::path& path);

}  // namespace fano

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fano/compiled.hpp"
#include "fano/system_builder.hpp"

namespace fano {

using FloatPoint = std::vector<std::complex<double>>;

/// Float shadow of a square system: values and Jacobian over complex<double>.
class FloatSystem {
 public:
  FloatSystem() = default;
  explicit FloatSystem(const SquareSystem& g);
  FloatSystem(const std::vector<SparsePoly>& polys, std::size_t num_vars);

  std::size_t num_vars() const { return polys_.num_vars(); }
  std::size_t num_polys() const { return polys_.num_polys(); }
  void evaluate(const std::complex<double>* x, std::complex<double>* values, std::complex<double>* jac) const {
    polys_.evaluate(x, values, jac);
  }
  Eigen::VectorXcd values(const FloatPoint& x) const;

 private:
  CompiledPolys<std::complex<double>> polys_;
};

struct TrackSettings {
  double initial_step = 0.02;
  double min_step = 1e-13;
  double max_step = 0.1;
  int corrector_iterations = 3;
  /// Corrector convergence: Newton update below this, relative to 1 + |x|.
  double corrector_tol = 1e-9;
  /// Largest first corrector update accepted, relative to 1 + |x|.
  double corrector_max_first = 1e-2;
  double divergence_norm = 1e8;
  /// Endpoint clustering tolerance (max norm).
  double cluster_tol = 1e-8;
  /// Paths that stall at t >= this close to an excluded point are reported
  /// as truncated near a singularity.
  double singular_cutoff = 0.99;
  double singular_radius = 1e-2;
  long max_steps = 200000;
  /// Worker threads for batches of independent paths.
  unsigned threads = 1;
};

enum class PathStatus { Converged, Diverged, Failed, TruncatedNearSingularity };

const char* to_string(PathStatus s);

struct PathResult {
  std::size_t start_index = 0;
  FloatPoint endpoint;
  PathStatus status = PathStatus::Failed;
  double t_reached = 0.0;
  long steps = 0;
};

struct NewtonResult {
  FloatPoint x;
  double last_step = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Newton's method on S. Succeeds when the update falls below tol relative
/// to 1 + |x| with contracting steps; nullopt on a singular Jacobian or no
/// convergence within max_iter.
std::optional<NewtonResult> newton_refine(const FloatSystem& s, const FloatPoint& x0, int max_iter = 50,
                                          double tol = 1e-13);

/// H(x, t) = (1 - t) gamma A(x) + t B(x), tracked from t = 0 to t = 1.
struct LinearHomotopy {
  const FloatSystem* start;
  const FloatSystem* target;
  std::complex<double> gamma{1.0, 0.0};
};

/// Tracks one path. `exclude` is a point near which a stalled path counts as
/// truncated rather than failed.
PathResult track_path(const LinearHomotopy& h, const FloatPoint& x0, const TrackSettings& settings,
                      const FloatPoint* exclude = nullptr);

struct SolveReport {
  std::vector<PathResult> paths;
  /// Converged endpoints after Newton refinement and clustering, minus any
  /// at the excluded point.
  std::vector<FloatPoint> solutions;
  std::size_t truncated = 0;
  std::size_t diverged = 0;
  std::size_t failed = 0;
  std::complex<double> gamma;
};

/// Total-degree homotopy from x_i^{deg g_i} - 1 with a random gamma.
SolveReport solve_total_degree(const SquareSystem& g, const TrackSettings& settings, std::uint64_t seed,
                               const FloatPoint* exclude = nullptr);

/// Start solutions of x_i^{d_i} - 1 in lexicographic order of root indices.
std::vector<FloatPoint> total_degree_start_points(const std::vector<int>& degrees);

/// Appends points of `extra` not within tol (max norm) of a point already in
/// `into`.
void merge_clustered(std::vector<FloatPoint>& into, const std::vector<FloatPoint>& extra, double tol);

double max_norm(const FloatPoint& x);
double max_dist(const FloatPoint& a, const FloatPoint& b);

/// Transport of a fiber along a piecewise-linear loop F_0 -> F_1 -> ... ->
/// F_0 through target systems given as float systems of the same family.
/// Returns nullopt if any path fails on any segment.
std::optional<std::vector<FloatPoint>> track_parameter_path(const std::vector<const FloatSystem*>& loop,
                                                            const std::vector<FloatPoint>& start_fiber,
                                                            const TrackSettings& settings);

}  // namespace fano

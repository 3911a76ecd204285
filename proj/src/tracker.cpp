#include "fano/tracker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "fano/random.hpp"

namespace fano {

namespace {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

double norm_inf(const Vec& v) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) out = std::max(out, std::abs(v(i)));
  return out;
}

Vec to_vec(const FloatPoint& x) {
  Vec v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = x[i];
  return v;
}

FloatPoint to_point(const Vec& v) { return FloatPoint(v.data(), v.data() + v.size()); }

bool finite(const Vec& v) { return v.allFinite(); }

}  // namespace

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::Converged: return "converged";
    case PathStatus::Diverged: return "diverged";
    case PathStatus::Failed: return "failed";
    case PathStatus::TruncatedNearSingularity: return "truncated-near-singularity";
  }
  return "?";
}

FloatSystem::FloatSystem(const SquareSystem& g)
    : polys_(g.polys(), g.num_vars(), [](const GaussianRational& c) { return c.to_complex(); }) {}

FloatSystem::FloatSystem(const std::vector<SparsePoly>& polys, std::size_t num_vars)
    : polys_(polys, num_vars, [](const GaussianRational& c) { return c.to_complex(); }) {}

Eigen::VectorXcd FloatSystem::values(const FloatPoint& x) const {
  Vec out(static_cast<Eigen::Index>(num_polys()));
  evaluate(x.data(), out.data(), nullptr);
  return out;
}

double max_norm(const FloatPoint& x) {
  double out = 0.0;
  for (const auto& z : x) out = std::max(out, std::abs(z));
  return out;
}

double max_dist(const FloatPoint& a, const FloatPoint& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

std::optional<NewtonResult> newton_refine(const FloatSystem& s, const FloatPoint& x0, int max_iter, double tol) {
  const auto m = static_cast<Eigen::Index>(s.num_vars());
  Vec x = to_vec(x0), f(m);
  Mat j(m, m);
  double prev = INFINITY;
  for (int it = 1; it <= max_iter; ++it) {
    s.evaluate(x.data(), f.data(), j.data());
    j.transposeInPlace();  // row-major fill into a column-major matrix
    Eigen::PartialPivLU<Mat> lu(j);
    Vec dx = lu.solve(f);
    if (!finite(dx) || !(std::abs(lu.determinant()) > 0.0)) return std::nullopt;
    x -= dx;
    const double step = norm_inf(dx);
    const double scale = 1.0 + norm_inf(x);
    const bool done = step <= tol * scale;
    // Limiting accuracy: tiny steps that no longer contract.
    const bool stalled = step < 1e-9 * scale && step > 0.5 * prev;
    if (done || stalled) {
      s.evaluate(x.data(), f.data(), nullptr);
      return NewtonResult{to_point(x), step, norm_inf(f), it};
    }
    if (step > 1e3 * scale) return std::nullopt;
    prev = step;
  }
  return std::nullopt;
}

namespace {

class HomotopyEval {
 public:
  HomotopyEval(const LinearHomotopy& h) : h_(h), m_(static_cast<Eigen::Index>(h.target->num_vars())) {
    a_.resize(m_);
    b_.resize(m_);
    ja_.resize(m_, m_);
    jb_.resize(m_, m_);
  }

  /// H, H_x and H_t at (x, t).
  void eval(const Vec& x, double t, Vec& hv, Mat& hx, Vec* ht) {
    h_.start->evaluate(x.data(), a_.data(), ja_.data());
    h_.target->evaluate(x.data(), b_.data(), jb_.data());
    const std::complex<double> ca = (1.0 - t) * h_.gamma;
    hv = ca * a_ + t * b_;
    // ja_/jb_ hold row-major data; transpose once combined.
    hx = (ca * ja_ + t * jb_).transpose();
    if (ht) *ht = b_ - h_.gamma * a_;
  }

  /// dx/dt = -H_x^{-1} H_t; false on a singular or non-finite solve.
  bool tangent(const Vec& x, double t, Vec& out) {
    eval(x, t, hv_, hx_, &ht_);
    Eigen::PartialPivLU<Mat> lu(hx_);
    out = -lu.solve(ht_);
    return finite(out);
  }

  /// Up to `iters` Newton steps on H(., t). Returns false on failure.
  bool correct(Vec& x, double t, const TrackSettings& s) {
    for (int it = 0; it < s.corrector_iterations; ++it) {
      eval(x, t, hv_, hx_, nullptr);
      Eigen::PartialPivLU<Mat> lu(hx_);
      Vec dx = lu.solve(hv_);
      if (!finite(dx)) return false;
      x -= dx;
      const double step = norm_inf(dx);
      const double scale = 1.0 + norm_inf(x);
      if (it == 0 && step > s.corrector_max_first * scale) return false;
      if (step <= s.corrector_tol * scale) return true;
    }
    return false;
  }

  Eigen::Index dim() const { return m_; }

 private:
  const LinearHomotopy& h_;
  Eigen::Index m_;
  Vec a_, b_, hv_, ht_;
  Mat ja_, jb_, hx_;
};

}  // namespace

PathResult track_path(const LinearHomotopy& h, const FloatPoint& x0, const TrackSettings& s, const FloatPoint* exclude) {
  HomotopyEval ev(h);
  PathResult res;
  Vec x = to_vec(x0);
  double t = 0.0, step = s.initial_step;
  int streak = 0;
  Vec k1, k2, k3, k4;

  auto near_excluded = [&](const FloatPoint& p, double radius) {
    return exclude && max_dist(p, *exclude) <= radius * (1.0 + max_norm(*exclude));
  };
  auto finish = [&](PathStatus st) {
    res.status = st;
    res.endpoint = to_point(x);
    res.t_reached = t;
    return res;
  };

  while (t < 1.0) {
    if (++res.steps > s.max_steps) return finish(PathStatus::Failed);
    const bool last = step >= 1.0 - t;
    const double hstep = last ? 1.0 - t : step;
    const double t1 = last ? 1.0 : t + hstep;
    bool ok = ev.tangent(x, t, k1) && ev.tangent(x + 0.5 * hstep * k1, t + 0.5 * hstep, k2) &&
              ev.tangent(x + 0.5 * hstep * k2, t + 0.5 * hstep, k3) && ev.tangent(x + hstep * k3, t1, k4);
    Vec xn;
    if (ok) {
      xn = x + (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ok = finite(xn) && ev.correct(xn, t1, s);
    }
    if (ok) {
      x = xn;
      t = t1;
      if (++streak >= 5) {
        step = std::min(2.0 * step, s.max_step);
        streak = 0;
      }
      if (norm_inf(x) > s.divergence_norm) return finish(PathStatus::Diverged);
    } else {
      streak = 0;
      step *= 0.5;
      if (step < s.min_step) {
        if (norm_inf(x) > 1e-4 * s.divergence_norm) return finish(PathStatus::Diverged);
        if (t >= s.singular_cutoff && near_excluded(to_point(x), s.singular_radius))
          return finish(PathStatus::TruncatedNearSingularity);
        return finish(PathStatus::Failed);
      }
    }
  }
  res.t_reached = 1.0;
  auto refined = newton_refine(*h.target, to_point(x));
  if (!refined) {
    if (near_excluded(to_point(x), s.singular_radius)) return finish(PathStatus::TruncatedNearSingularity);
    return finish(PathStatus::Failed);
  }
  x = to_vec(refined->x);
  if (near_excluded(refined->x, 1e-6)) return finish(PathStatus::TruncatedNearSingularity);
  return finish(PathStatus::Converged);
}

std::vector<FloatPoint> total_degree_start_points(const std::vector<int>& degrees) {
  std::vector<FloatPoint> out;
  const std::size_t m = degrees.size();
  std::vector<int> idx(m, 0);
  while (true) {
    FloatPoint p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = std::polar(1.0, 2.0 * std::numbers::pi * idx[i] / degrees[i]);
    out.push_back(std::move(p));
    std::size_t k = m;
    while (k > 0) {
      --k;
      if (++idx[k] < degrees[k]) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (m == 0) return out;
  }
}

void merge_clustered(std::vector<FloatPoint>& into, const std::vector<FloatPoint>& extra, double tol) {
  for (const auto& p : extra) {
    bool dup = false;
    for (const auto& q : into)
      if (max_dist(p, q) <= tol) {
        dup = true;
        break;
      }
    if (!dup) into.push_back(p);
  }
}

SolveReport solve_total_degree(const SquareSystem& g, const TrackSettings& settings, std::uint64_t seed,
                               const FloatPoint* exclude) {
  const std::size_t m = g.num_vars();
  std::vector<int> degrees = g.equation_degrees();
  std::vector<SparsePoly> start_polys;
  for (std::size_t i = 0; i < m; ++i) {
    degrees[i] = std::max(degrees[i], 1);
    Monomial mono(m);
    mono[i] = static_cast<unsigned>(degrees[i]);
    SparsePoly p = SparsePoly::term(mono, GaussianRational(1));
    p.add_term(Monomial(m), GaussianRational(-1));
    start_polys.push_back(std::move(p));
  }
  const FloatSystem start(start_polys, m);
  const FloatSystem target(g);

  Rng rng(seed);
  SolveReport rep;
  rep.gamma = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform01());
  const LinearHomotopy h{&start, &target, rep.gamma};

  const auto starts = total_degree_start_points(degrees);
  rep.paths.resize(starts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < starts.size();) {
      rep.paths[k] = track_path(h, starts[k], settings, exclude);
      rep.paths[k].start_index = k;
    }
  };
  const std::size_t workers = std::min<std::size_t>(std::max(settings.threads, 1u), starts.size());
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < workers; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<FloatPoint> endpoints;
  for (const PathResult& pr : rep.paths) {
    switch (pr.status) {
      case PathStatus::Converged: endpoints.push_back(pr.endpoint); break;
      case PathStatus::Diverged: ++rep.diverged; break;
      case PathStatus::Failed: ++rep.failed; break;
      case PathStatus::TruncatedNearSingularity: ++rep.truncated; break;
    }
  }
  merge_clustered(rep.solutions, endpoints, settings.cluster_tol);
  return rep;
}

std::optional<std::vector<FloatPoint>> track_parameter_path(const std::vector<const FloatSystem*>& loop,
                                                            const std::vector<FloatPoint>& start_fiber,
                                                            const TrackSettings& settings) {
  if (loop.empty()) return start_fiber;
  std::vector<FloatPoint> current = start_fiber;
  for (std::size_t seg = 0; seg < loop.size(); ++seg) {
    const FloatSystem* a = loop[seg];
    const FloatSystem* b = loop[(seg + 1) % loop.size()];
    if (a == b) continue;
    const LinearHomotopy h{a, b, {1.0, 0.0}};
    for (auto& x : current) {
      PathResult pr = track_path(h, x, settings);
      if (pr.status != PathStatus::Converged) return std::nullopt;
      x = pr.endpoint;
    }
  }
  return current;
}

}  // namespace fano

#include "fano/monodromy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "fano/instance_forge.hpp"
#include "fano/random.hpp"

namespace fano {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto i : images_) {
    if (i >= images_.size() || seen[i]) throw std::invalid_argument("not a permutation");
    seen[i] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint32_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint32_t>(i);
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

Permutation Permutation::cycle(std::size_t n, const std::vector<std::uint32_t>& points) {
  Permutation p = identity(n);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k] >= n) throw std::invalid_argument("cycle point out of range");
    p.images_[points[k]] = points[(k + 1) % points.size()];
  }
  return Permutation(p.images_);
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

bool Permutation::is_odd() const {
  std::vector<bool> seen(images_.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 1;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("composing permutations of different degree");
  Permutation p;
  p.images_.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p.images_[i] = a.images_[b.images_[i]];
  return p;
}

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

namespace {

class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t n) : n_(n) {}

  void build(const std::vector<Permutation>& gens) {
    std::vector<Permutation> s;
    for (const auto& g : gens)
      if (!g.is_identity()) s.push_back(g);
    for (const auto& g : s)
      if (fixes_base(g)) add_level(first_moved(g));
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      for (const auto& g : s)
        if (fixes_prefix(g, i)) levels_[i].gens.push_back(g);
      orbit(i);
    }
    std::size_t i = levels_.size();
    while (i > 0) {
      const std::size_t lvl = i - 1;
      const auto j = check_level(lvl);
      if (j) {
        i = *j + 1;
      } else {
        --i;
      }
    }
  }

  Integer order() const {
    Integer out = 1;
    for (const auto& l : levels_) out *= static_cast<unsigned long>(l.orbit.size());
    return out;
  }

 private:
  struct Level {
    std::uint32_t base = 0;
    std::vector<Permutation> gens;
    std::vector<std::uint32_t> orbit;
    std::vector<std::optional<Permutation>> transversal;  // u_b(base) = b
  };

  bool fixes_base(const Permutation& g) const { return fixes_prefix(g, levels_.size()); }
  bool fixes_prefix(const Permutation& g, std::size_t count) const {
    for (std::size_t k = 0; k < count; ++k)
      if (g(levels_[k].base) != levels_[k].base) return false;
    return true;
  }
  static std::uint32_t first_moved(const Permutation& g) {
    for (std::uint32_t i = 0; i < g.size(); ++i)
      if (g(i) != i) return i;
    throw std::logic_error("identity has no moved point");
  }
  void add_level(std::uint32_t base) {
    Level l;
    l.base = base;
    levels_.push_back(std::move(l));
  }

  void orbit(std::size_t i) {
    Level& l = levels_[i];
    l.transversal.assign(n_, std::nullopt);
    l.transversal[l.base] = Permutation::identity(n_);
    l.orbit = {l.base};
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      const std::uint32_t p = l.orbit[k];
      for (const auto& s : l.gens) {
        const std::uint32_t q = s(p);
        if (l.transversal[q]) continue;
        l.transversal[q] = s * *l.transversal[p];
        l.orbit.push_back(q);
      }
    }
  }

  /// Strips g through levels from `start`; returns the residue and the
  /// level where it left the chain (levels_.size() if it went through).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t start) const {
    for (std::size_t j = start; j < levels_.size(); ++j) {
      const auto& u = levels_[j].transversal[g(levels_[j].base)];
      if (!u) return {std::move(g), j};
      g = u->inverse() * g;
    }
    return {std::move(g), levels_.size()};
  }

  /// Sifts every Schreier generator of level i. On the first one that does
  /// not sift, extends the chain and returns the deepest level touched.
  std::optional<std::size_t> check_level(std::size_t i) {
    const Level& l = levels_[i];
    const std::vector<std::uint32_t> orb = l.orbit;
    const std::vector<Permutation> gens = l.gens;
    for (std::uint32_t b : orb) {
      for (const auto& s : gens) {
        const Level& cur = levels_[i];
        Permutation h = cur.transversal[s(b)]->inverse() * s * *cur.transversal[b];
        auto [res, j] = sift(std::move(h), i + 1);
        if (j == levels_.size() && res.is_identity()) continue;
        if (j == levels_.size()) add_level(first_moved(res));
        for (std::size_t k = i + 1; k <= j; ++k) {
          levels_[k].gens.push_back(res);
          orbit(k);
        }
        return j;
      }
    }
    return std::nullopt;
  }

  std::size_t n_;
  std::vector<Level> levels_;
};

}  // namespace

PermGroupEstimate group_order(const std::vector<Permutation>& gens, std::size_t degree) {
  for (const auto& g : gens)
    if (g.size() != degree) throw std::invalid_argument("generator has the wrong degree");
  PermGroupEstimate est;
  est.generators = gens;
  StabilizerChain chain(degree);
  chain.build(gens);
  est.order = chain.order();
  for (const auto& g : gens) est.contains_odd = est.contains_odd || g.is_odd();
  // Orbit of 0.
  if (degree == 0) {
    est.transitive = true;
    return est;
  }
  std::vector<bool> seen(degree, false);
  std::vector<std::uint32_t> queue{0};
  seen[0] = true;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& g : gens)
      if (!seen[g(queue[k])]) {
        seen[g(queue[k])] = true;
        queue.push_back(g(queue[k]));
      }
  est.transitive = queue.size() == degree;
  return est;
}

std::optional<std::size_t> match_point(const BaseFiber& fiber, const FloatPoint& x) {
  std::optional<std::size_t> hit;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < fiber.boxes.size(); ++i)
    if (fiber.boxes[i].box.contains(x)) {
      hit = i;
      ++hits;
    }
  if (hits == 1) return hit;
  double best = std::numeric_limits<double>::infinity(), second = best;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < fiber.boxes.size(); ++i) {
    const double d = max_dist(fiber.boxes[i].center, x);
    if (d < best) {
      second = best;
      best = d;
      arg = i;
    } else if (d < second) {
      second = d;
    }
  }
  constexpr double margin = 1e-6;
  if (best <= margin && second - best >= margin) return arg;
  return std::nullopt;
}

std::optional<Permutation> loop_permutation(const BaseFiber& fiber, const std::vector<FormSystem>& aux,
                                            const TrackSettings& settings) {
  const std::size_t n = fiber.boxes.size();
  if (aux.empty()) return Permutation::identity(n);
  std::vector<FloatSystem> systems;
  systems.reserve(aux.size() + 1);
  systems.emplace_back(build_square_system(fiber.instance));
  for (const auto& a : aux) systems.emplace_back(build_square_system(a));
  std::vector<const FloatSystem*> loop;
  for (const auto& s : systems) loop.push_back(&s);

  std::vector<FloatPoint> start;
  for (const auto& cb : fiber.boxes) start.push_back(cb.center);
  auto end = track_parameter_path(loop, start, settings);
  if (!end) return std::nullopt;
  std::vector<std::uint32_t> images(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto j = match_point(fiber, (*end)[i]);
    if (!j || used[*j]) return std::nullopt;
    used[*j] = true;
    images[i] = static_cast<std::uint32_t>(*j);
  }
  return Permutation(std::move(images));
}

std::optional<Permutation> loop_permutation(const BaseFiber& fiber, std::uint64_t seed, const TrackSettings& settings) {
  const FanoType& t = fiber.instance.type();
  Rng rng(seed);
  const std::uint64_t sa = rng.next(), sb = rng.next();
  return loop_permutation(fiber, {random_form_system(t, sa), random_form_system(t, sb)}, settings);
}

std::vector<std::vector<bool>> incidence_graph(const FanoType& t, const std::vector<FloatPoint>& points) {
  const auto rows = static_cast<Eigen::Index>(t.n() + 1);
  const auto cols = static_cast<Eigen::Index>(t.r() + 1);
  const auto top = rows - cols;
  auto plane = [&](const FloatPoint& x) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(rows, cols);
    for (Eigen::Index i = 0; i < top; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) p(i, j) = x[static_cast<std::size_t>(i * cols + j)];
    for (Eigen::Index j = 0; j < cols; ++j) p(top + j, j) = 1.0;
    return p;
  };
  const std::size_t n = points.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Eigen::MatrixXcd m(rows, 2 * cols);
      m << plane(points[a]), plane(points[b]);
      bool meet = 2 * cols > rows;
      if (!meet) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        const auto& sv = svd.singularValues();
        meet = sv(sv.size() - 1) < 1e-8 * sv(0);
      }
      adj[a][b] = adj[b][a] = meet;
    }
  return adj;
}

bool preserves_graph(const Permutation& p, const std::vector<std::vector<bool>>& graph) {
  const std::size_t n = graph.size();
  if (p.size() != n) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (graph[a][b] != graph[p(static_cast<std::uint32_t>(a))][p(static_cast<std::uint32_t>(b))]) return false;
  return true;
}

MonodromyRun sample_galois_group(const FanoType& t, std::size_t num_loops, std::uint64_t seed,
                                 const TrackSettings& settings) {
  const Integer degree = fano_degree(t);
  Rng rng(seed);
  MonodromyRun run{PermGroupEstimate{}, 0, 0, {}, BaseFiber{random_form_system(t, seed), {}}};
  bool complete = false;
  for (int draw = 0; draw < 5 && !complete; ++draw) {
    FormSystem f = random_form_system(t, rng.next());
    const SquareSystem g = build_square_system(f);
    std::vector<FloatPoint> candidates;
    for (int attempt = 0; attempt < 3 && !complete; ++attempt) {
      SolveReport rep = solve_total_degree(g, settings, rng.next());
      merge_clustered(candidates, rep.solutions, settings.cluster_tol);
      FiberResult fr = certify_fiber(g, candidates, std::nullopt, degree);
      if (fr.status == FiberStatus::Ok) {
        complete = true;
        run.fiber = BaseFiber{f, std::move(fr.fiber.boxes)};
      }
    }
  }
  if (!complete) throw std::runtime_error("could not certify a complete fiber for " + t.to_string());

  const std::size_t n = run.fiber.boxes.size();
  std::vector<Permutation> gens;
  for (std::size_t attempt = 0; run.accepted < num_loops && attempt < 4 * num_loops; ++attempt) {
    auto p = loop_permutation(run.fiber, rng.next(), settings);
    if (!p) {
      ++run.rejected;
      continue;
    }
    ++run.accepted;
    if (!p->is_identity()) gens.push_back(std::move(*p));
    run.group = group_order(gens, n);
    run.order_history.push_back(run.group.order);
  }
  if (run.accepted == 0) run.group = group_order(gens, n);
  return run;
}

}  // namespace fano

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fano/certification.hpp"
#include "fano/fano_core.hpp"
#include "fano/system_builder.hpp"
#include "fano/tracker.hpp"

namespace fano {

/// Bijection of {0..N-1}; images[i] is the image of i.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(std::size_t n);
  /// Transposition or cycle given by its points, e.g. {0, 1, 2}: 0->1->2->0.
  static Permutation cycle(std::size_t n, const std::vector<std::uint32_t>& points);

  std::size_t size() const { return images_.size(); }
  std::uint32_t operator()(std::uint32_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  bool is_identity() const;
  bool is_odd() const;
  Permutation inverse() const;
  /// (a * b)(i) = a(b(i)): b first.
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

struct PermGroupEstimate {
  std::vector<Permutation> generators;
  Integer order{1};
  bool transitive = false;
  bool contains_odd = false;
};

/// Exact order via a deterministic Schreier-Sims stabilizer chain.
/// Throws std::invalid_argument if generators differ in degree.
PermGroupEstimate group_order(const std::vector<Permutation>& gens, std::size_t degree);

Integer factorial(unsigned n);

/// A zero fiber of G_F with isolating boxes, the base of monodromy loops.
struct BaseFiber {
  FormSystem instance;
  std::vector<CertifiedBox> boxes;
};

/// Index of the fiber point matching x: the unique box containing x, or the
/// nearest center when it is within 1e-6 and every other center is farther
/// by at least 1e-6.
std::optional<std::size_t> match_point(const BaseFiber& fiber, const FloatPoint& x);

/// Transport around F -> A -> B -> F with A, B random systems drawn from
/// `seed`. nullopt if any path fails or the matching is ambiguous or not a
/// bijection.
std::optional<Permutation> loop_permutation(const BaseFiber& fiber, std::uint64_t seed,
                                            const TrackSettings& settings = {});

/// Permutation for an explicit loop through the given auxiliary systems
/// (F -> aux[0] -> ... -> F). An empty list is the constant loop.
std::optional<Permutation> loop_permutation(const BaseFiber& fiber, const std::vector<FormSystem>& aux,
                                            const TrackSettings& settings = {});

/// Adjacency of lines: entry (i, j) is true when the planes of fiber points
/// i and j meet, from the numerical rank of the stacked plane matrices.
std::vector<std::vector<bool>> incidence_graph(const FanoType& t, const std::vector<FloatPoint>& points);

bool preserves_graph(const Permutation& p, const std::vector<std::vector<bool>>& graph);

struct MonodromyRun {
  PermGroupEstimate group;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  /// Group order after each accepted loop.
  std::vector<Integer> order_history;
  BaseFiber fiber;
};

/// Solves and certifies a random instance (drawn from `seed`; redrawn up to
/// four times when the fiber is incomplete), then samples loops until
/// `num_loops` are accepted or 4 * num_loops attempts are spent. Throws
/// std::runtime_error if no complete fiber is found.
MonodromyRun sample_galois_group(const FanoType& t, std::size_t num_loops, std::uint64_t seed,
                                 const TrackSettings& settings = {});

}  // namespace fano

#include "doctest.h"
#include "fano/instance_forge.hpp"
#include "fano/monodromy.hpp"
#include "oracles.hpp"

using namespace fano;

namespace {

Permutation random_perm(Rng& rng, std::size_t n) {
  std::vector<std::uint32_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(img[i - 1], img[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(i) - 1))]);
  return Permutation(img);
}

BaseFiber certified_fiber(const FanoType& t, std::uint64_t seed) {
  const FormSystem f = random_form_system(t, seed);
  const SquareSystem g = build_square_system(f);
  const FiberResult res = certify_fiber(g, solve_total_degree(g, {}, seed).solutions, std::nullopt, fano_degree(t));
  REQUIRE(res.status == FiberStatus::Ok);
  return {f, res.fiber.boxes};
}

}  // namespace

TEST_CASE("permutation basics") {
  CHECK_THROWS_AS(Permutation({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 2}), std::invalid_argument);
  const Permutation c = Permutation::cycle(4, {0, 1, 2});
  CHECK(c(0) == 1);
  CHECK(c(2) == 0);
  CHECK(c(3) == 3);
  CHECK_FALSE(c.is_odd());
  CHECK(Permutation::cycle(4, {1, 3}).is_odd());
  CHECK((c * c.inverse()).is_identity());
  const Permutation t = Permutation::cycle(4, {0, 3});
  CHECK((c * t)(3) == c(t(3)));
}

TEST_CASE("group orders") {
  CHECK(group_order({}, 5).order == 1);
  const auto two = group_order({Permutation::cycle(2, {0, 1})}, 2);
  CHECK(two.order == 2);
  CHECK(two.transitive);
  CHECK(two.contains_odd);
  for (std::uint32_t n = 2; n <= 9; ++n) {
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
    const auto g = group_order({Permutation::cycle(n, all), Permutation::cycle(n, {0, 1})}, n);
    CHECK(g.order == factorial(n));
  }
  // Alternating group from 3-cycles.
  const auto a5 = group_order({Permutation::cycle(5, {0, 1, 2}), Permutation::cycle(5, {2, 3, 4})}, 5);
  CHECK(a5.order == 60);
  CHECK_FALSE(a5.contains_odd);
  CHECK_FALSE(group_order({Permutation::cycle(4, {0, 1})}, 4).transitive);
  CHECK_THROWS_AS(group_order({Permutation::identity(3)}, 4), std::invalid_argument);
}

TEST_CASE("group order matches brute-force closure") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    std::vector<Permutation> gens;
    const long k = rng.uniform_int(0, 3);
    for (long i = 0; i < k; ++i) {
      // Mix in small-support elements so proper subgroups show up often.
      if (rng.uniform_int(0, 1) && n >= 2) {
        const auto a = static_cast<std::uint32_t>(rng.uniform_int(0, static_cast<long>(n) - 1));
        const auto b = static_cast<std::uint32_t>((a + 1 + rng.uniform_int(0, static_cast<long>(n) - 2)) % n);
        gens.push_back(Permutation::cycle(n, {a, b}));
      } else {
        gens.push_back(random_perm(rng, n));
      }
    }
    const auto est = group_order(gens, n);
    CHECK(est.order == static_cast<unsigned long>(oracle::closure_size(gens, n)));
    CHECK(factorial(static_cast<unsigned>(n)) % est.order == 0);
  }
}

TEST_CASE("order grows monotonically with generators") {
  Rng rng(2);
  std::vector<Permutation> gens;
  Integer prev = 1;
  for (int k = 0; k < 8; ++k) {
    gens.push_back(random_perm(rng, 12));
    const Integer order = group_order(gens, 12).order;
    CHECK(order % prev == 0);
    prev = order;
  }
}

TEST_CASE("loops on the lines of two quadrics") {
  const FanoType t(1, 4, {2, 2});
  const BaseFiber fiber = certified_fiber(t, 3);
  REQUIRE(fiber.boxes.size() == 16);

  const auto id = loop_permutation(fiber, std::vector<FormSystem>{}, {});
  REQUIRE(id);
  CHECK(id->is_identity());

  for (const auto& b : fiber.boxes) CHECK(match_point(fiber, b.center));

  std::vector<FloatPoint> centers;
  for (const auto& b : fiber.boxes) centers.push_back(b.center);
  const auto graph = incidence_graph(t, centers);
  for (std::size_t i = 0; i < 16; ++i) {
    int valence = 0;
    for (std::size_t j = 0; j < 16; ++j) valence += graph[i][j];
    CHECK(valence == 5);
  }

  // Transport along A then B equals transport along the concatenated loop.
  const std::vector<FormSystem> a{random_form_system(t, 100), random_form_system(t, 101)};
  const std::vector<FormSystem> b{random_form_system(t, 102), random_form_system(t, 103)};
  std::vector<FormSystem> ab = a;
  ab.push_back(fiber.instance);
  ab.insert(ab.end(), b.begin(), b.end());
  const auto pa = loop_permutation(fiber, a, {}), pb = loop_permutation(fiber, b, {}), pab = loop_permutation(fiber, ab, {});
  REQUIRE(pa);
  REQUIRE(pb);
  REQUIRE(pab);
  CHECK(*pab == *pb * *pa);
  CHECK(preserves_graph(*pa, graph));
  CHECK(preserves_graph(*pb, graph));
}

TEST_CASE("sampled group of the lines on two quadrics") {
  const MonodromyRun run = sample_galois_group(FanoType(1, 4, {2, 2}), 25, 11);
  CHECK(run.accepted == 25);
  CHECK(run.group.transitive);
  CHECK(run.group.order <= 1920);
  CHECK(1920 % run.group.order == 0);
  for (std::size_t k = 1; k < run.order_history.size(); ++k) CHECK(run.order_history[k] % run.order_history[k - 1] == 0);
}

#include <set>

#include "doctest.h"
#include "fano/fano_core.hpp"

using namespace fano;

namespace {

std::set<FanoType> types_below(long cap) {
  std::set<FanoType> out;
  for (const auto& p : enumerate_fano_problems(Integer(cap))) out.insert(p.type);
  return out;
}

std::set<FanoType> small_table_types() {
  std::set<FanoType> out;
  for (const auto& row : small_degree_table()) out.insert(row.type);
  return out;
}

}  // namespace

TEST_CASE("type validation and parsing") {
  CHECK(FanoType::parse("1,4,2:2") == FanoType(1, 4, {2, 2}));
  CHECK(FanoType::parse("(1,7,(2,4,3))") == FanoType(1, 7, {2, 3, 4}));
  CHECK(FanoType(1, 4, {2, 2}).to_string() == "(1,4,(2,2))");
  CHECK_THROWS_AS(FanoType(1, 4, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(FanoType(2, 4, {2}), std::invalid_argument);
  CHECK_THROWS_AS(FanoType::parse("1,4"), std::invalid_argument);
}

TEST_CASE("delta") {
  CHECK(delta(FanoType(1, 3, {3})) == 0);
  CHECK(delta(FanoType(1, 4, {2, 2})) == 0);
  CHECK(delta(FanoType(1, 4, {3})) == 2);
}

TEST_CASE("q_poly and vandermonde") {
  const SparsePoly x0 = SparsePoly::variable(2, 0), x1 = SparsePoly::variable(2, 1);
  CHECK(q_poly(1, 2) == (x0 * x0 * x1 + x0 * x1 * x1) * GaussianRational(4));
  CHECK(q_poly(0, 5) == SparsePoly::variable(1, 0) * GaussianRational(5));
  CHECK(q_poly(1, 1) == x0 * x1);
  CHECK(vandermonde(0) == SparsePoly::constant(1, GaussianRational(1)));
  CHECK(vandermonde(1) == x0 - x1);
  const SparsePoly y0 = SparsePoly::variable(3, 0), y1 = SparsePoly::variable(3, 1), y2 = SparsePoly::variable(3, 2);
  CHECK(vandermonde(2) == (y0 - y1) * (y0 - y2) * (y1 - y2));
}

TEST_CASE("fano_degree on the small and large tables") {
  const long small[] = {16, 27, 64, 256, 512, 720, 1024, 1024};
  const auto& s = small_degree_table();
  REQUIRE(s.size() == 8);
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(fano_degree(s[k].type) == small[k]);

  const long large[] = {512, 720, 1024, 1053, 1280, 20480, 27648, 32768, 37584, 47104, 51759, 64512};
  const auto& l = large_problem_table();
  REQUIRE(l.size() == 12);
  for (std::size_t k = 0; k < l.size(); ++k) CHECK(fano_degree(l[k].type) == large[k]);

  CHECK(fano_degree(FanoType(1, 4, {5})) == 2875);
  CHECK_THROWS_AS(fano_degree(FanoType(1, 4, {3})), std::invalid_argument);
}

TEST_CASE("enriched family degrees are 4^(r+1)") {
  for (int r = 1; r <= 5; ++r) {
    const FanoType t(r, 2 * r + 2, {2, 2});
    CHECK(is_enriched(t));
    CHECK(fano_degree(t) == Integer(1) << (2 * (r + 1)));
  }
  CHECK(is_enriched(FanoType(1, 3, {3})));
  CHECK_FALSE(is_enriched(FanoType(1, 7, {2, 2, 2, 2})));
  CHECK_FALSE(is_enriched(FanoType(2, 8, {2, 2, 2})));
}

TEST_CASE("fano_degree_mod matches the exact degree") {
  for (const auto& t : {FanoType(1, 4, {2, 2}), FanoType(1, 3, {3}), FanoType(2, 6, {2, 2}), FanoType(1, 6, {2, 2, 3}),
                        FanoType(2, 8, {2, 2, 2}), FanoType(1, 5, {3, 3}), FanoType(3, 8, {2, 2}),
                        FanoType(1, 7, {2, 3, 4})}) {
    for (std::uint32_t p : {1000003u, 2097143u}) {
      const auto m = fano_degree_mod(t, p);
      REQUIRE(m);
      const Integer expected = fano_degree(t) % p;
      CHECK(*m == expected.get_ui());
    }
  }
  CHECK_FALSE(fano_degree_mod(FanoType(1, 4, {2, 2}), 7));        // too small for the weights
  CHECK_FALSE(fano_degree_mod(FanoType(1, 4, {2, 2}), 1000001));  // not prime
}

TEST_CASE("lower bounds") {
  auto lb = degree_lower_bound(FanoType(1, 3, {3}));
  CHECK(lb.refined == 9);
  CHECK(lb.crude == 9);
  lb = degree_lower_bound(FanoType(1, 4, {2, 2}));
  CHECK(lb.refined == 16);
  CHECK(lb.crude == 16);
  CHECK(degree_lower_bound(FanoType(2, 6, {2, 2})).crude == 64);
}

TEST_CASE("enumeration below small caps") {
  CHECK(types_below(16).empty());
  CHECK(types_below(30) == std::set<FanoType>{FanoType(1, 4, {2, 2}), FanoType(1, 3, {3})});
  // 1053 is the next degree after the small table's largest entry 1024.
  CHECK(types_below(1053) == small_table_types());
  auto with_extra = small_table_types();
  with_extra.insert(FanoType(1, 5, {3, 3}));
  CHECK(types_below(1100) == with_extra);

  const auto list = enumerate_fano_problems(Integer(1100));
  for (std::size_t k = 1; k < list.size(); ++k) CHECK(list[k - 1].degree <= list[k].degree);
  for (const auto& p : list) {
    CHECK(delta(p.type) == 0);
    const auto b = degree_lower_bound(p.type);
    CHECK(b.crude <= b.refined);
    CHECK(b.refined <= p.degree);
  }
}

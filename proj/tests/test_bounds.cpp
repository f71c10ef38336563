#include <random>

#include "doctest.h"
#include "frhyper/bounds.hpp"
#include "frhyper/construct.hpp"
#include "frhyper/error.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "reference_codes.hpp"

using namespace frhyper;

namespace {

const BoundEntry& entry(const BoundReport& r, std::string_view id) {
  const BoundEntry* e = r.find(id);
  REQUIRE(e != nullptr);
  return *e;
}

void check_sides(const BoundReport& r, std::string_view id, Rational lhs, Rational rhs) {
  const auto& e = entry(r, id);
  CAPTURE(id);
  CHECK(e.applicable);
  CHECK(e.lhs == lhs);
  CHECK(e.rhs == rhs);
  CHECK(e.satisfied);
}

// All partitions of `total` as non-increasing vectors.
void partitions(Index total, Index cap, std::vector<Index>& cur, std::vector<std::vector<Index>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (Index part = std::min(total, cap); part >= 1; --part) {
    cur.push_back(part);
    partitions(total - part, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("existence verdicts") {
  CHECK(existence_check({{4, 3, 2, 2, 2}, {2, 2, 2, 2, 2, 3}}) == ExistenceVerdict::SufficientPass);
  CHECK(existence_check({{3, 1}, {2, 2}}) == ExistenceVerdict::Indeterminate);
  CHECK(existence_check({{1}, {1}}) == ExistenceVerdict::SufficientPass);
  CHECK(existence_check({{2}, {1}}) == ExistenceVerdict::NecessaryFail);
  CHECK_THROWS_AS(existence_check({{0}, {1}}), Error);
  CHECK_THROWS_AS(existence_check({{1}, {2}}), Error);  // packet on more nodes than exist
  CHECK(existence_check({{2, 4, 2, 3, 2}, {3, 2, 2, 2, 2, 2}}) == ExistenceVerdict::SufficientPass);
}

TEST_CASE("realization") {
  auto c = realize({{4, 3, 2, 2, 2}, {2, 2, 2, 2, 2, 3}});
  CHECK(c.storage_vector() == std::vector<Index>{4, 3, 2, 2, 2});
  CHECK(c.replication_vector() == std::vector<Index>{2, 2, 2, 2, 2, 3});
  CHECK(realize({{1}, {1}}).node(0) == IdSet{0});
  auto k4 = realize({{3, 3, 3, 3}, {2, 2, 2, 2, 2, 2}});
  CHECK(k4.storage_vector() == std::vector<Index>{3, 3, 3, 3});
  CHECK(realize({{2, 1, 3}, {3, 2, 1}}).storage_vector() == std::vector<Index>{2, 1, 3});
  CHECK_THROWS_AS(realize({{3, 1}, {2, 2}}), Error);
}

TEST_CASE("realization agrees with the matrix search") {
  std::vector<std::vector<Index>> all;
  for (Index total = 1; total <= 8; ++total) {
    std::vector<Index> cur;
    partitions(total, total, cur, all);
  }
  for (const auto& alpha : all) {
    for (const auto& rho : all) {
      DegreeSequencePair seq{alpha, rho};
      bool exists = oracle::MatrixSearch(alpha, rho).feasible();
      bool valid = true;
      for (Index r : rho) valid = valid && r <= alpha.size();
      if (!valid) {
        CHECK_FALSE(exists);
        CHECK_THROWS_AS(existence_check(seq), Error);
        continue;
      }
      auto verdict = existence_check(seq);
      if (verdict == ExistenceVerdict::SufficientPass) REQUIRE(exists);
      // The dominance test is also necessary, so nothing Indeterminate exists.
      if (verdict == ExistenceVerdict::Indeterminate) REQUIRE_FALSE(exists);
      if (!exists) {
        REQUIRE_THROWS_AS(realize(seq), Error);
        continue;
      }
      auto c = realize(seq);
      REQUIRE(c.storage_vector() == alpha);
      REQUIRE(c.replication_vector() == rho);
    }
  }
}

TEST_CASE("bounds on the asymmetric five-node code") {
  auto r = check_bounds(ref::asym5());
  check_sides(r, "linear.node_pairs", 8, 10);
  check_sides(r, "linear.packet_pairs", 12, 15);
  check_sides(r, "antichain.lym", Rational(19, 60), 1);
  check_sides(r, "antichain.sperner", 5, 20);
  check_sides(r, "linear.edge_count", 6, 3);
  CHECK_FALSE(entry(r, "uniform.divisible").applicable);
  CHECK_FALSE(entry(r, "linear.regular_nodes").applicable);
  CHECK_FALSE(entry(r, "linear.uniform_packets").applicable);
  CHECK(r.all_satisfied());
}

TEST_CASE("bounds on the K4 code") {
  auto r = check_bounds(ref::k4(), 2);
  check_sides(r, "linear.uniform_packets", 6, 6);
  CHECK(entry(r, "linear.uniform_packets").tight);
  check_sides(r, "linear.regular_nodes", 4, 5);
  CHECK_FALSE(entry(r, "linear.regular_nodes").tight);
  check_sides(r, "uniform.divisible", 12, 2);
  check_sides(r, "uniform.total", 12, 6);
  check_sides(r, "uniform.max_capacity", 3, 6);
  check_sides(r, "flexible.lower", 5, 5);
  check_sides(r, "flexible.upper", 5, 6);
  CHECK(r.all_satisfied());
  CHECK_THROWS_AS(check_bounds(ref::k4(), 5), Error);
}

TEST_CASE("linear-only bounds are inapplicable on non-linear codes") {
  auto c = validate_fr({{0, 1}, {0, 1, 2}}, 3);
  auto r = check_bounds(c, 1);
  for (auto id : {"linear.node_pairs", "linear.packet_pairs", "linear.regular_nodes", "linear.uniform_packets", "linear.edge_count", "linear.induced_edges", "flexible.lower"}) {
    CAPTURE(id);
    CHECK_FALSE(entry(r, id).applicable);
    CHECK_FALSE(entry(r, id).reason.empty());
  }
  CHECK_FALSE(entry(r, "antichain.lym").applicable);  // U_1 inside U_2
}

TEST_CASE("single node code") {
  auto c = validate_fr({{0}}, 1);
  auto r = check_bounds(c, 1);
  CHECK_FALSE(entry(r, "linear.regular_nodes").applicable);
  CHECK_FALSE(entry(r, "linear.uniform_packets").applicable);
  CHECK(r.all_satisfied());
  auto d = distance_bounds(c, 1);
  CHECK(d.singleton_like == 1);
  CHECK(d.observed == 1);
  CHECK_FALSE(gfr_bound_check(c, 1).applicable);
}

TEST_CASE("pairing bound") {
  auto two = validate_fr({{0}, {1}}, 2);
  auto res = check_pairing_bound(two, {{0, 1}});
  CHECK(res.hypothesis_holds);
  CHECK(res.sum == Rational(1, 2));

  auto k4 = check_pairing_bound(ref::k4(), {{0, 5}, {1, 4}, {2, 3}});
  CHECK(k4.hypothesis_holds);
  CHECK(k4.sum == Rational(1, 2));
  CHECK(k4.satisfied == true);

  auto same = check_pairing_bound(validate_fr({{0, 1}}, 2), {{0, 1}});
  CHECK_FALSE(same.hypothesis_holds);
  CHECK_FALSE(same.satisfied.has_value());

  CHECK_THROWS_AS(check_pairing_bound(validate_fr({{0, 1, 2}}, 3), {{0, 1}}), Error);
  CHECK_THROWS_AS(check_pairing_bound(ref::k4(), {{0, 1}, {0, 2}, {3, 4}}), Error);
  auto found = find_pairing(ref::k4());
  REQUIRE(found);
  CHECK(check_pairing_bound(ref::k4(), *found).hypothesis_holds);
}

TEST_CASE("distance and gfr spot values") {
  auto t = distance_bounds(ref::asym5(), 3);
  CHECK(t.file_size == 5);
  CHECK(t.singleton_like == 4);
  CHECK(t.observed == 3);
  CHECK(t.satisfied);
  auto f = distance_bounds(ref::k4(), 2);
  CHECK(f.singleton_like == 3);
  CHECK(f.observed == 3);

  auto g = gfr_bound_check(ref::k4(), 2);
  CHECK(g.applicable);
  CHECK(g.lhs == 5);
  CHECK(g.rhs == 5);
  CHECK(g.tight);
  auto g1 = gfr_bound_check(ref::asym5(), 1);
  CHECK(g1.lhs == 2);
  CHECK(g1.rhs == 2);
}

TEST_CASE("bounds hold on random codes") {
  std::mt19937_64 rng(3);
  int linear = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto c = gen::random_code(rng);
    CAPTURE(trial);
    REQUIRE(existence_check({c.storage_vector(), c.replication_vector()}) !=
            ExistenceVerdict::NecessaryFail);
    linear += is_universally_good(c);
    for (Index k = 1; k <= c.num_nodes(); ++k) {
      auto r = check_bounds(c, k);
      for (const auto& e : r.entries) {
        CAPTURE(e.id);
        REQUIRE((!e.applicable || e.satisfied));
      }
      REQUIRE(distance_bounds(c, k).satisfied);
    }
  }
  CHECK(linear > 30);
}

TEST_CASE("regular and uniform linear codes") {
  // Constructed codes are linear; the K_n family is also 2-uniform.
  for (Index n = 3; n <= 7; ++n) {
    auto h = grow_linear(n, 2, {}, n * (n - 1) / 2).current();
    auto r = check_bounds(hypergraph_to_fr(h));
    CAPTURE(n);
    CHECK(entry(r, "linear.regular_nodes").applicable);
    CHECK(entry(r, "linear.uniform_packets").tight);
    CHECK(r.all_satisfied());
  }
}

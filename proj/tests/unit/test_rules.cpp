#include <algorithm>

#include "doctest.h"
#include "oracles/fixtures.hpp"
#include "pricekit/axioms.hpp"
#include "pricekit/error.hpp"
#include "pricekit/rules.hpp"

using namespace pricekit;
namespace fx = pricekit::fixtures;

namespace {

std::vector<Rational> frac_list(std::initializer_list<std::pair<long, long>> items) {
  std::vector<Rational> out;
  for (auto [a, b] : items) out.push_back(fx::frac(a, b));
  return out;
}

}  // namespace

TEST_CASE("equal split on the four-voter profile") {
  auto inst = fx::four_voter_laminar();
  auto ps = equal_split(inst.profile, inst.committee);
  CHECK(ps.payment(0, 0) == Rational(1, 4));
  CHECK(ps.payment(2, 1) == Rational(1, 4));
  CHECK(ps.payment(1, 3) == Rational(1, 2));
  // Voters 2,3 pay 1/2; their joint residual is capped at 1 by the outsider c5.
  CHECK(budgets(ps) == frac_list({{3, 2}, {3, 2}, {1, 1}, {1, 1}}));
  CHECK(is_one_stable(inst.profile, ps));
}

TEST_CASE("equal split on the brick wall") {
  auto inst = fx::brick_wall();
  auto ps = equal_split(inst.profile, inst.committee);
  // Voter 0 pays 1/3 for each member; the pair (c4, c1) caps r3 + r4 + 1/3 at 1.
  CHECK(budgets(ps) == frac_list({{4, 3}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}));
  CHECK(is_one_stable(inst.profile, ps));
  CHECK(is_perfect_symmetry_instance(inst.profile, inst.committee));
  CHECK_FALSE(is_budget_uniform(ps));
}

TEST_CASE("equal split charges every supporter alike on a single winner") {
  auto inst = fx::single_winner_minority(2);
  auto ps = equal_split(inst.profile, inst.committee);
  auto r = check_single_winner_payment_responsiveness(inst.profile, ps);
  REQUIRE(r.has_value());
  CHECK_FALSE(r->ok);
}

TEST_CASE("continuous Phragmén on the single-winner minority instance") {
  auto inst = fx::single_winner_minority(2);
  PhragmenStats stats;
  auto ps = continuous_phragmen(inst.profile, inst.committee, &stats);
  CHECK(ps.payment(0, 1) == Rational(2, 3));
  CHECK(ps.payment(1, 1) == Rational(1, 3));
  CHECK(budgets(ps) == frac_list({{2, 3}, {2, 3}, {1, 3}, {1, 3}}));
  CHECK(stats.events > 0);
  auto r = check_single_winner_payment_responsiveness(inst.profile, ps);
  REQUIRE(r.has_value());
  CHECK(r->ok);
}

TEST_CASE("continuous Phragmén on small hand-built instances") {
  auto two = fx::two_identical_voters();
  auto ps = continuous_phragmen(two.profile, two.committee);
  CHECK(ps.payment(0, 0) == Rational(1, 2));
  CHECK(ps.payment(1, 0) == Rational(1, 2));
  CHECK(is_budget_uniform(ps));

  auto eleven = fx::eleven_voter_laminar();
  CHECK(is_budget_uniform(continuous_phragmen(eleven.profile, eleven.committee)));

  auto brick = fx::brick_wall();
  auto bw = continuous_phragmen(brick.profile, brick.committee);
  CHECK(is_budget_uniform(bw));
  CHECK(is_symmetric(brick.profile, bw));
}

TEST_CASE("property: both rules return valid 1-stable, budget-averaging, equal-treatment systems") {
  SeededRng rng(31);
  for (int t = 0; t < 120; ++t) {
    auto inst = fx::random_instance(rng, 14, 14);
    for (int rule = 0; rule < 2; ++rule) {
      auto ps = rule == 0 ? continuous_phragmen(inst.profile, inst.committee) : equal_split(inst.profile, inst.committee);
      INFO("instance ", t, " rule ", rule);
      REQUIRE_FALSE(validate_price_system(inst.profile, ps).has_value());
      CHECK(is_one_stable(inst.profile, ps));
      CHECK(is_budget_averaging(inst.profile, ps));
      CHECK(is_equal_treatment(inst.profile, ps));
    }
  }
}

TEST_CASE("property: equal split pays 1/|V[c]| and keeps residuals from distribute_residual") {
  SeededRng rng(32);
  for (int t = 0; t < 60; ++t) {
    auto inst = fx::random_instance(rng, 12, 12);
    auto ps = equal_split(inst.profile, inst.committee);
    for (int c : inst.committee.members())
      for (int i = 0; i < inst.profile.voter_count(); ++i)
        CHECK(ps.payment(i, c) == (inst.profile.approves(i, c) ? fx::frac(1, inst.profile.approval_score(c)) : 0));
    PriceSystem bare = ps;
    for (auto& r : bare.residuals()) r = 0;
    CHECK(distribute_residual(inst.profile, bare) == ps);
  }
}

TEST_CASE("distribute_residual never lowers residuals or changes payments") {
  auto inst = fx::four_voter_laminar();
  auto ps = fx::four_voter_block_payments(inst);
  ps.set_residual(0, Rational(1, 10));
  auto out = distribute_residual(inst.profile, ps);
  for (int i = 0; i < 4; ++i) {
    CHECK(out.residual(i) >= ps.residual(i));
    CHECK(out.total_payment(i) == ps.total_payment(i));
  }
  CHECK(is_one_stable(inst.profile, out));
}

TEST_CASE("property: rules are symmetric on small instances") {
  SeededRng rng(33);
  for (int t = 0; t < 40; ++t) {
    auto inst = fx::random_perfect_symmetry(rng);
    SearchLimits wide{7, 8};
    CHECK(is_symmetric(inst.profile, continuous_phragmen(inst.profile, inst.committee), wide));
    CHECK(is_symmetric(inst.profile, equal_split(inst.profile, inst.committee), wide));
  }
  for (int t = 0; t < 60; ++t) {
    auto inst = fx::random_instance(rng, 6, 7);
    CHECK(is_symmetric(inst.profile, continuous_phragmen(inst.profile, inst.committee)));
    CHECK(is_symmetric(inst.profile, equal_split(inst.profile, inst.committee)));
  }
}

TEST_CASE("property: relabelling voters and candidates permutes continuous Phragmén's budgets") {
  SeededRng rng(34);
  for (int t = 0; t < 40; ++t) {
    auto inst = fx::random_instance(rng, 10, 10);
    auto relabelled = fx::shuffled(inst, rng);
    auto b1 = budgets(continuous_phragmen(inst.profile, inst.committee));
    auto b2 = budgets(continuous_phragmen(relabelled.profile, relabelled.committee));
    std::sort(b1.begin(), b1.end());
    std::sort(b2.begin(), b2.end());
    CHECK(b1 == b2);
  }
}

TEST_CASE("continuous Phragmén agrees with the micro-step oracle") {
  SeededRng rng(35);
  const Rational eps(1, 200);
  for (int t = 0; t < 15; ++t) {
    auto inst = fx::random_instance(rng, 7, 7);
    auto exact = budgets(continuous_phragmen(inst.profile, inst.committee));
    auto approx = budgets(micro_step_oracle(inst.profile, inst.committee, eps));
    Rational worst = 0;
    for (size_t i = 0; i < exact.size(); ++i) worst = std::max(worst, Rational(abs(exact[i] - approx[i])));
    CHECK(worst <= 10 * eps);
  }
}

TEST_CASE("micro-step oracle enforces its step budget") {
  auto inst = fx::single_winner_minority(2);
  CHECK_THROWS_AS(micro_step_oracle(inst.profile, inst.committee, Rational(1, 1000), 10), Error);
}

TEST_CASE("money flow funds only approved remaining members") {
  auto inst = fx::four_voter_laminar();
  std::vector<bool> active(4, true);
  std::vector<Rational> remaining(inst.committee.size(), Rational(1));
  remaining[inst.committee.position(0)] = 0;
  auto sets = money_flow(inst.profile, inst.committee, active, remaining);
  REQUIRE(sets.size() == 4);
  for (int i = 0; i < 4; ++i)
    for (int c : sets[i]) {
      CHECK(inst.profile.approves(i, c));
      CHECK(inst.committee.contains(c));
      CHECK(c != 0);
    }
  // Voters 2,3 can only fund c1; voters 0,1 have c1, c2 and c3.
  CHECK(sets[2] == CandidateSet{1});
}

#include "doctest.h"
#include "oracles/fixtures.hpp"
#include "pricekit/constraints.hpp"
#include "pricekit/error.hpp"
#include "pricekit/price_system.hpp"

using namespace pricekit;
namespace fx = pricekit::fixtures;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected pricekit::Error");
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("rational parsing and rendering") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-3") == -3);
  CHECK(parse_rational("+2/8") == Rational(1, 4));
  CHECK(to_fraction_string(Rational(2)) == "2/1");
  CHECK(to_fraction_string(parse_rational("-10/4")) == "-5/2");
  CHECK(to_decimal_string(Rational(1, 3), 4) == "0.3333");
  CHECK(to_decimal_string(Rational(2, 3)) == "0.666666666667");
  for (const char* bad : {"", "/", "1/", "1/0", "a/2", "1/-2", "1.5", " 1"})
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
}

TEST_CASE("profile construction validates its input") {
  auto a = build_profile(3, 3, {{0, 1}, {1}, {2}});
  CHECK(a.voter_count() == 3);
  CHECK(a.supporters(1) == std::vector<int>{0, 1});
  CHECK(a.approves(0, 1));
  CHECK_FALSE(a.approves(1, 0));
  CHECK(a.approval_score(1) == 2);
  CHECK(a.weight(2) == 1);
  CHECK_FALSE(a.has_weights());

  CHECK(code_of([] { build_profile(2, 2, {{0}, {}}); }) == ErrorCode::EmptyApprovalSet);
  CHECK(code_of([] { build_profile(2, 3, {{0}, {1}}); }) == ErrorCode::UnsupportedCandidate);
  CHECK(code_of([] { build_profile(1, 2, {{0, 2}}); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { build_profile(2, 1, {{0}}); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { build_profile(0, 1, {}); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { build_profile(1, 1, {{0}}, std::vector<Rational>{0}); }) == ErrorCode::OutOfRange);

  try {
    build_profile(3, 1, {{0}, {0}, {}});
  } catch (const Error& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("committees reject empty, duplicate and out-of-range members") {
  auto w = make_committee(5, {3, 1});
  CHECK(w.size() == 2);
  CHECK(w.contains(3));
  CHECK(w.position(1) >= 0);
  CHECK(w.position(0) == -1);
  CHECK(w.outsiders() == std::vector<int>{0, 2, 4});
  CHECK(code_of([] { make_committee(3, {}); }) == ErrorCode::InvalidCommittee);
  CHECK(code_of([] { make_committee(3, {1, 1}); }) == ErrorCode::InvalidCommittee);
  CHECK(code_of([] { make_committee(3, {3}); }) == ErrorCode::InvalidCommittee);
  CHECK(code_of([] { make_committee(3, {-1}); }) == ErrorCode::InvalidCommittee);
}

TEST_CASE("four-voter price systems validate with equal budgets") {
  auto inst = fx::four_voter_laminar();
  auto unequal = fx::four_voter_unequal_payments(inst);
  auto block = fx::four_voter_block_payments(inst);
  CHECK_FALSE(validate_price_system(inst.profile, unequal).has_value());
  CHECK_FALSE(validate_price_system(inst.profile, block).has_value());
  for (int i = 0; i < 4; ++i) CHECK(unequal.budget(i) == Rational(5, 4));
  CHECK(is_budget_uniform(unequal));
  CHECK(is_budget_uniform(block));
  CHECK(unequal.total_payment(1) == Rational(5, 4));
  CHECK(covered_count(inst.profile, inst.committee, 0) == 4);
  CHECK(covered_count(inst.profile, inst.committee, 2) == 2);
}

TEST_CASE("validation names the violated clause") {
  auto inst = fx::four_voter_laminar();
  auto ps = fx::four_voter_block_payments(inst);

  auto under = ps;
  under.set_payment(0, 2, Rational(1, 4));
  auto v = validate_price_system(inst.profile, under);
  REQUIRE(v.has_value());
  CHECK(v->candidate == 2);

  auto foreign = ps;
  foreign.set_payment(2, 2, Rational(1, 10));
  foreign.set_payment(3, 2, Rational(2, 5));
  v = validate_price_system(inst.profile, foreign);
  REQUIRE(v.has_value());
  CHECK(v->voter == 2);

  auto negative = ps;
  negative.set_residual(1, Rational(-1, 10));
  CHECK(validate_price_system(inst.profile, negative).has_value());

  auto outside = ps;
  CHECK_THROWS(outside.set_payment(0, 4, Rational(1, 2)));
}

TEST_CASE("price systems compare by value") {
  auto inst = fx::four_voter_laminar();
  CHECK(fx::four_voter_block_payments(inst) == fx::four_voter_block_payments(inst));
  CHECK_FALSE(fx::four_voter_block_payments(inst) == fx::four_voter_unequal_payments(inst));
  PriceSystem zero(inst.committee, 4);
  CHECK(zero.payment(0, 5) == 0);
  CHECK(budgets(zero) == std::vector<Rational>(4, Rational(0)));
}

TEST_CASE("constraint evaluation: parallel equals serial and matches direct sums") {
  SeededRng rng(11);
  for (int t = 0; t < 60; ++t) {
    auto inst = fx::random_instance(rng, 25, 25);
    PriceSystem ps(inst.committee, inst.profile.voter_count());
    for (int i = 0; i < inst.profile.voter_count(); ++i) {
      ps.set_residual(i, fx::frac(static_cast<long>(rng.below(7)), 13));
      for (int c : inst.profile.approvals(i))
        if (inst.committee.contains(c)) ps.set_payment(i, c, fx::frac(static_cast<long>(rng.below(5)), 11));
    }
    StabilityConstraints sc(inst.profile, inst.committee);
    auto par = evaluate_constraints(sc, ps);
    auto ser = evaluate_constraints_serial(sc, ps);
    REQUIRE(par.residual == ser.residual);
    REQUIRE(par.pair == ser.pair);
    for (int u = 0; u < sc.outsider_count(); ++u) {
      const int c = sc.outsider(u);
      Rational r = 0;
      for (int i : inst.profile.supporters(c)) r += ps.residual(i);
      CHECK(par.residual[u] == r);
      for (int s = 0; s < sc.member_count(); ++s) {
        const int d = sc.member(s);
        Rational pair = 0;
        for (int i : inst.profile.supporters(c))
          pair += inst.profile.approves(i, d) ? ps.payment(i, d) : ps.residual(i);
        CHECK(par.pair[sc.pair_index(u, s)] == pair);
      }
    }
  }
}

TEST_CASE("error codes have stable names") {
  CHECK(std::string(error_code_name(ErrorCode::NotLaminar)) == "NotLaminar");
  Error e(ErrorCode::ParseError, "bad", 7);
  CHECK(e.index() == 7);
  CHECK(std::string(e.what()).find("bad") != std::string::npos);
}

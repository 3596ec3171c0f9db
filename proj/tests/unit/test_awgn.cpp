#include "awgn.hpp"
#include "golden_values.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace nomafbl;

namespace {

const FrameConfig kCanonical{500.0, 500.0, 0.8};
const LinkPowers kTenDb = LinkPowers::from_db(10.0, 10.0);

} // namespace

TEST_SUITE("awgn") {

TEST_CASE("canonical NOMA point") {
  const auto e = noma_outage(kCanonical, kTenDb);
  CHECK(e.user1.eps.value() < 1e-100);
  CHECK(e.user1.eps.value() > 0.0);
  // The value is subnormal; only about ten significant bits survive.
  CHECK(std::log10(e.user1.eps.value()) ==
        doctest::Approx(golden::kAwgnNomaUser1Log10).epsilon(1e-5));
  CHECK(e.user2.eps.value() == doctest::Approx(golden::kAwgnNomaUser2).epsilon(1e-12));
  CHECK(e.user1.flags.empty());
  CHECK(e.user2.flags.empty());
}

TEST_CASE("canonical OMA point") {
  const auto e = oma_outage(kCanonical, kTenDb);
  CHECK(test::close_rel(e.user1.eps.value(), golden::kAwgnOmaUser1, 1e-10));
  CHECK(e.user2.eps.value() > 0.999);
  // 1 - eps is about 4e-27, below the resolution of a double near one.
  CHECK(e.user2.eps.value() == golden::kAwgnOmaUser2);
  CHECK_FALSE(e.user2.flags.has(Flag::short_blocklength)); // (1-beta) n = 100
}

TEST_CASE("half-log correction") {
  const auto e = noma_outage(kCanonical, kTenDb, true);
  CHECK(e.user2.eps.value() == doctest::Approx(golden::kAwgnNomaUser2HalfLog).epsilon(1e-12));
}

TEST_CASE("effective blocklengths and SINRs") {
  CHECK(effective_blocklength(Scheme::oma, 1, kCanonical) == 400.0);
  CHECK(effective_blocklength(Scheme::oma, 2, kCanonical) == doctest::Approx(100.0));
  CHECK(effective_blocklength(Scheme::noma, 1, kCanonical) == 500.0);
  CHECK(effective_blocklength(Scheme::noma, 2, kCanonical) == 500.0);
  CHECK_THROWS_AS(effective_blocklength(Scheme::noma, 3, kCanonical), DomainError);

  const auto s = noma_sinrs(kTenDb);
  CHECK(s.user1.value() == 10.0);
  CHECK(s.user2.value() == doctest::Approx(10.0 / 11.0).epsilon(1e-16));
  const auto silent = noma_sinrs({SnrLinear(0.0), SnrLinear(3.0)});
  CHECK(silent.user2.value() == 3.0);
}

TEST_CASE("OMA requires a proper split") {
  CHECK_THROWS_AS(oma_outage({500, 500, 1.0}, kTenDb), DomainError);
  CHECK_THROWS_AS(oma_outage({500, 500, 0.0}, kTenDb), DomainError);
  CHECK_THROWS_AS(oma_outage({500, 500, 1.5}, kTenDb), DomainError);
  CHECK_THROWS_AS(noma_outage({-1, 500, 0.8}, kTenDb), DomainError);
}

TEST_CASE("throughput uses the full frame") {
  CHECK(throughput(500, 500, Probability(0.25)) == 0.75);
  CHECK(throughput(1000, 500, Probability(0.0)) == 2.0);
  CHECK(throughput(1000, 500, Probability(1.0)) == 0.0);
  CHECK_THROWS_AS(throughput(0, 500, Probability(0.5)), DomainError);
}

TEST_CASE("OMA rates split the frame") {
  const auto r = oma_rates(kCanonical, kTenDb, Probability(1e-3));
  CHECK(r.user1.rate.value == doctest::Approx(golden::kRate400At1em3).epsilon(1e-14));
  CHECK(r.user2.rate.value < r.user1.rate.value);
}

TEST_CASE("property: NOMA user 1 never loses to OMA user 1") {
  // Same SNR, n instead of beta n channel uses.
  auto g = test::rng(11);
  for (int i = 0; i < 2000; ++i) {
    const FrameConfig f{test::uniform(g, 10, 3000), test::uniform(g, 20, 3000),
                        test::uniform(g, 0.05, 0.95)};
    const auto p = LinkPowers::from_db(test::uniform(g, -10, 30), test::uniform(g, -10, 30));
    CHECK(noma_outage(f, p).user1.eps.value() <= oma_outage(f, p).user1.eps.value());
  }
}

TEST_CASE("property: OMA is symmetric under swapping users and shares") {
  auto g = test::rng(12);
  for (int i = 0; i < 1000; ++i) {
    const double beta = test::uniform(g, 0.05, 0.95);
    const FrameConfig f{test::uniform(g, 10, 3000), test::uniform(g, 20, 3000), beta};
    FrameConfig swapped = f;
    swapped.beta = 1.0 - beta;
    const double p1 = test::uniform(g, -10, 30), p2 = test::uniform(g, -10, 30);
    const auto a = oma_outage(f, LinkPowers::from_db(p1, p2));
    const auto b = oma_outage(swapped, LinkPowers::from_db(p2, p1));
    CHECK(test::close_rel(a.user1.eps.value(), b.user2.eps.value(), 1e-9));
    CHECK(test::close_rel(a.user2.eps.value(), b.user1.eps.value(), 1e-9));
  }
}

TEST_CASE("property: NOMA user 2 degrades as user 1 gets louder") {
  auto g = test::rng(13);
  for (int i = 0; i < 1000; ++i) {
    const FrameConfig f{test::uniform(g, 10, 2000), test::uniform(g, 20, 2000), 0.8};
    const double p1 = test::uniform(g, -10, 30), p2 = test::uniform(g, -10, 30);
    const double quiet = noma_outage(f, LinkPowers::from_db(p1, p2)).user2.eps.value();
    const double loud = noma_outage(f, LinkPowers::from_db(p1 + 1.0, p2)).user2.eps.value();
    CHECK(loud >= quiet);
  }
}

} // TEST_SUITE

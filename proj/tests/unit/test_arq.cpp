#include "arq.hpp"
#include "awgn.hpp"
#include "golden_values.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace nomafbl;

TEST_SUITE("arq") {

TEST_CASE("channel uses and throughput match the oracle") {
  const Probability eps(0.2);
  const double uses_expected[3][2] = {{golden::kArqUsesExpected_M1_D0, golden::kArqUsesExpected_M1_D10},
                                      {golden::kArqUsesExpected_M2_D0, golden::kArqUsesExpected_M2_D10},
                                      {golden::kArqUsesExpected_M3_D0, golden::kArqUsesExpected_M3_D10}};
  const double uses_literal[3][2] = {{golden::kArqUsesLiteral_M1_D0, golden::kArqUsesLiteral_M1_D10},
                                     {golden::kArqUsesLiteral_M2_D0, golden::kArqUsesLiteral_M2_D10},
                                     {golden::kArqUsesLiteral_M3_D0, golden::kArqUsesLiteral_M3_D10}};
  const double tput_literal[3][2] = {
      {golden::kArqThroughputLiteral_M1_D0, golden::kArqThroughputLiteral_M1_D10},
      {golden::kArqThroughputLiteral_M2_D0, golden::kArqThroughputLiteral_M2_D10},
      {golden::kArqThroughputLiteral_M3_D0, golden::kArqThroughputLiteral_M3_D10}};
  for (int m = 1; m <= 3; ++m) {
    for (int d = 0; d < 2; ++d) {
      const double delay = d == 0 ? 0.0 : 10.0;
      const ArqPolicy expected{m, delay, LatencyModel::expected_rounds};
      const ArqPolicy literal{m, delay, LatencyModel::paper_literal};
      CHECK(expected_channel_uses(eps, 500, expected) ==
            doctest::Approx(uses_expected[m - 1][d]).epsilon(1e-15));
      CHECK(expected_channel_uses(eps, 500, literal) ==
            doctest::Approx(uses_literal[m - 1][d]).epsilon(1e-15));
      CHECK(arq_throughput(500, 500, eps, literal) ==
            doctest::Approx(tput_literal[m - 1][d]).epsilon(1e-15));
    }
  }
}

TEST_CASE("cumulative outage is the M-th power") {
  auto g = test::rng(31);
  for (int i = 0; i < 2000; ++i) {
    const double e = test::uniform(g, 0.0, 1.0);
    for (int m = 0; m <= 6; ++m)
      CHECK(std::abs(cumulative_outage(Probability(e), m).value() - std::pow(e, m)) <= 1e-15);
  }
  CHECK(cumulative_outage(Probability(0.0), 0).value() == 1.0);
  CHECK_THROWS_AS(cumulative_outage(Probability(0.5), -1), DomainError);
}

TEST_CASE("a single transmission reduces to the plain throughput") {
  auto g = test::rng(32);
  for (int i = 0; i < 2000; ++i) {
    const double k = test::uniform(g, 10, 3000), n = test::uniform(g, 10, 3000);
    const Probability eps(test::uniform(g, 0.0, 1.0));
    for (LatencyModel model : {LatencyModel::paper_literal, LatencyModel::expected_rounds}) {
      const ArqPolicy one{1, test::uniform(g, 0, 100), model};
      CHECK(arq_throughput(k, n, eps, one) == throughput(k, n, eps));
      CHECK(expected_channel_uses(eps, n, one) == n);
    }
  }
}

TEST_CASE("geometric sums are evaluated term by term") {
  CHECK(geometric_sum(0.5, 0) == 0.0);
  CHECK(geometric_sum(0.5, 1) == 1.0);
  CHECK(geometric_sum(0.5, 3) == 1.75);
  CHECK(geometric_sum(1.0, 4) == 4.0);
  CHECK(geometric_sum(0.0, 4) == 1.0);
  CHECK(delivered_bits(500, Probability(0.2), 2) == doctest::Approx(480.0).epsilon(1e-15));
}

TEST_CASE("degenerate per-round outage") {
  const ArqPolicy literal{3, 5.0, LatencyModel::paper_literal};
  const ArqPolicy expected{3, 5.0, LatencyModel::expected_rounds};
  CHECK(expected_channel_uses(Probability(0.0), 100, expected) == 105.0);
  CHECK(expected_channel_uses(Probability(0.0), 100, literal) == 310.0);
  CHECK(expected_channel_uses(Probability(1.0), 100, expected) == 310.0);
  CHECK(arq_throughput(500, 100, Probability(1.0), literal) == 0.0);
  const auto out = evaluate_arq(500, 100, Probability(0.5), expected);
  CHECK(out.cumulative_outage.value() == 0.125);
  CHECK(out.delivered_bits == 437.5);
  CHECK(out.throughput == doctest::Approx(out.delivered_bits / out.expected_channel_uses));
}

TEST_CASE("property: more rounds cost throughput under the literal latency") {
  auto g = test::rng(33);
  for (int i = 0; i < 2000; ++i) {
    const double k = test::uniform(g, 10, 3000), n = test::uniform(g, 10, 3000);
    const Probability eps(test::uniform(g, 1e-9, 1.0 - 1e-9));
    const double d = test::uniform(g, 0, 50);
    double prev = arq_throughput(k, n, eps, {1, d, LatencyModel::paper_literal});
    for (int m = 2; m <= 5; ++m) {
      const double t = arq_throughput(k, n, eps, {m, d, LatencyModel::paper_literal});
      CHECK(t < prev);
      prev = t;
    }
  }
}

TEST_CASE("property: expected-rounds latency and delivery grow with M") {
  auto g = test::rng(34);
  for (int i = 0; i < 2000; ++i) {
    const double k = test::uniform(g, 10, 3000), n = test::uniform(g, 10, 3000);
    const Probability eps(test::uniform(g, 1e-6, 1.0 - 1e-6));
    const double d = test::uniform(g, 0, 50);
    for (int m = 1; m < 5; ++m) {
      const ArqPolicy a{m, d, LatencyModel::expected_rounds};
      const ArqPolicy b{m + 1, d, LatencyModel::expected_rounds};
      CHECK(expected_channel_uses(eps, n, b) > expected_channel_uses(eps, n, a));
      CHECK(delivered_bits(k, eps, m + 1) > delivered_bits(k, eps, m));
      CHECK(cumulative_outage(eps, m + 1).value() < cumulative_outage(eps, m).value());
    }
  }
}

TEST_CASE("policy validation") {
  CHECK_THROWS_AS((ArqPolicy{0, 0.0, LatencyModel::paper_literal}.validate()), DomainError);
  CHECK_THROWS_AS((ArqPolicy{2, -1.0, LatencyModel::paper_literal}.validate()), DomainError);
  CHECK_THROWS_AS(expected_channel_uses(Probability(0.1), 0.0, ArqPolicy{}), DomainError);
}

} // TEST_SUITE

#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <random>
#include <vector>

#include "coedyn/cocycle.hpp"

using namespace coedyn;

namespace {

std::shared_ptr<const FiniteGroupTable> zmod(int p) {
  return std::make_shared<const FiniteGroupTable>(FiniteGroupTable::cyclic(p));
}

std::shared_ptr<const FiniteGroupTable> s3() {
  return std::make_shared<const FiniteGroupTable>(FiniteGroupTable::symmetric3());
}

}  // namespace

TEST_CASE("evaluate matches direct summation") {
  const OdometerModel model(dyadic_chain(), 3);
  const LevelCocycle c(zmod(3), 1, {0, 1});
  CHECK(evaluate(c, model, 4, 0) == 2);  // 0+1+0+1
  CHECK(evaluate(c, model, 0, 5) == 0);
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(evaluate(c, model, 8, x) == 1);  // 4 = 1 mod 3
  // Oracle: plain summation for arbitrary N >= 0.
  for (std::uint64_t x = 0; x < 8; ++x) {
    for (std::int64_t N = 0; N <= 24; ++N) {
      int sum = 0;
      for (std::int64_t i = 0; i < N; ++i) sum = (sum + c.f(model.step(x, i))) % 3;
      REQUIRE(evaluate(c, model, N, x) == sum);
    }
  }
}

TEST_CASE("evaluate level mismatch") {
  const OdometerModel model(dyadic_chain(), 2);
  const LevelCocycle c(zmod(3), 3, {0, 1, 0, 0, 1, 0, 0, 0});
  CHECK_THROWS_AS(evaluate(c, model, 1, 0), LevelMismatch);
}

TEST_CASE("cocycle identity holds for table cocycles at every level") {
  for (int L : {2, 3}) {
    const OdometerModel model(dyadic_chain(), L);
    const LevelCocycle c(zmod(3), 1, {0, 1});
    REQUIRE(is_cocycle_exhaustive(c, model, 3 * static_cast<std::int64_t>(model.modulus())));
    const LevelCocycle trivial = LevelCocycle::trivial(zmod(3), 1, 2);
    REQUIRE(is_cocycle_exhaustive(trivial, model, 8));
  }
  // Nonabelian target.
  const OdometerModel model(dyadic_chain(), 3);
  const LevelCocycle cs3(s3(), 2, {0, 1, 3, 5});
  REQUIRE(is_cocycle_exhaustive(cs3, model, 24));
}

TEST_CASE("corrupted evaluation tables fail the identity") {
  const OdometerModel model(dyadic_chain(), 2);
  const LevelCocycle c(zmod(3), 1, {0, 1});
  // Cache genuine values, then mutate one entry.
  std::vector<std::vector<int>> cache(33, std::vector<int>(4));
  for (std::int64_t n = -16; n <= 16; ++n)
    for (std::uint64_t x = 0; x < 4; ++x) cache[n + 16][x] = evaluate(c, model, n, x);
  cache[16 + 2][0] = (cache[16 + 2][0] + 1) % 3;
  auto eval = [&](std::int64_t n, std::uint64_t x) { return cache[n + 16][x]; };
  CHECK_FALSE(is_cocycle_exhaustive(eval, *c.target, model, 8));
}

TEST_CASE("cohomologous_verify") {
  const OdometerModel model(dyadic_chain(), 3);
  const LevelCocycle c(zmod(3), 1, {0, 1});

  TransferFunction trivial_b{3, std::vector<int>(8, 0), TransferFunction::Orientation::Standard};
  CHECK(cohomologous_verify(c, c, trivial_b, model, 16));

  // c1(n, x) := b(T^n x)^-1 b(x) is cohomologous to the trivial cocycle.
  const std::vector<int> b_table = {0, 2, 1, 1, 0, 2, 2, 0};
  TransferFunction b{3, b_table, TransferFunction::Orientation::Standard};
  std::vector<int> f1(8);
  for (std::uint64_t x = 0; x < 8; ++x)
    f1[x] = ((b_table[(x + 1) % 8] == 0 ? 0 : 3 - b_table[(x + 1) % 8]) + b_table[x]) % 3;
  const LevelCocycle c1(zmod(3), 3, f1);
  CHECK(cohomologous_verify(c1, LevelCocycle::trivial(zmod(3), 1, 2), b, model, 16));

  // A transfer that does not match fails.
  TransferFunction wrong{3, std::vector<int>(8, 1), TransferFunction::Orientation::Standard};
  CHECK_FALSE(cohomologous_verify(c1, c, wrong, model, 16));
}

TEST_CASE("coboundary_solve_at_level") {
  {
    // 3^i chain, f = (0,1,2): S = 0, solvable at the cocycle's own level.
    const LevelCocycle c(zmod(3), 1, {0, 1, 2});
    const auto sol = coboundary_solve_at_level(c, power_chain(3), 1);
    REQUIRE(sol.solvable);
    CHECK(sol.transfer.table == std::vector<int>{0, 0, 1});
    // Telescoping identity around the cycle.
    const OdometerModel model(power_chain(3), 1);
    CHECK(cohomologous_verify(c, LevelCocycle::trivial(zmod(3), 1, 3), sol.transfer, model, 9));
  }
  {
    // Dyadic chain into Z/3: obstruction 2^{k-1} mod 3 never vanishes.
    const LevelCocycle c(zmod(3), 1, {0, 1});
    for (int k = 1; k <= 6; ++k) {
      const auto sol = coboundary_solve_at_level(c, dyadic_chain(), k);
      REQUIRE_FALSE(sol.solvable);
      int expected = 1;
      for (int i = 1; i < k; ++i) expected = (expected * 2) % 3;
      CHECK(sol.obstruction == expected);
    }
  }
  {
    const LevelCocycle c = LevelCocycle::trivial(zmod(5), 1, 2);
    const auto sol = coboundary_solve_at_level(c, dyadic_chain(), 4);
    REQUIRE(sol.solvable);
    for (int v : sol.transfer.table) CHECK(v == 0);
  }
  {
    const LevelCocycle c(s3(), 1, {0, 1});
    CHECK_THROWS_AS(coboundary_solve_at_level(c, dyadic_chain(), 2), NonAbelianTarget);
  }
}

TEST_CASE("solver output always verifies") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int p = std::uniform_int_distribution<int>(0, 1)(rng) ? 3 : 5;
    const DivisibilityChain chain = p == 3 ? power_chain(3) : DivisibilityChain(5, {}, {5});
    std::vector<int> table(chain.base());
    for (auto& v : table) v = std::uniform_int_distribution<int>(0, p - 1)(rng);
    const LevelCocycle c(zmod(p), 1, table);
    for (int k = 1; k <= 3; ++k) {
      const auto sol = coboundary_solve_at_level(c, chain, k);
      if (!sol.solvable) continue;
      const OdometerModel model(chain, k);
      REQUIRE(cohomologous_verify(c, LevelCocycle::trivial(zmod(p), 1, table.size()),
                                  sol.transfer, model,
                                  2 * static_cast<std::int64_t>(model.modulus())));
    }
  }
}

TEST_CASE("both solver orientations untwist") {
  const LevelCocycle c(zmod(3), 1, {1, 2, 0});
  const auto fwd = coboundary_solve_at_level(c, power_chain(3), 2,
                                             TransferFunction::Orientation::Forward);
  const auto std_form = coboundary_solve_at_level(c, power_chain(3), 2,
                                                  TransferFunction::Orientation::Standard);
  REQUIRE(fwd.solvable);
  REQUIRE(std_form.solvable);
  CHECK(fwd.transfer.orientation == TransferFunction::Orientation::Forward);
  CHECK(std_form.transfer.orientation == TransferFunction::Orientation::Standard);
  const OdometerModel model(power_chain(3), 2);
  const auto trivial = LevelCocycle::trivial(zmod(3), 1, 3);
  CHECK(cohomologous_verify(c, trivial, fwd.transfer, model, 18));
  CHECK(cohomologous_verify(c, trivial, std_form.transfer, model, 18));
}

TEST_CASE("coboundary_decide_chain") {
  {
    const LevelCocycle c(zmod(3), 1, {0, 1});
    const auto v = coboundary_decide_chain(c, dyadic_chain());
    CHECK_FALSE(v.is_coboundary());
    CHECK(v.obstruction.values == std::vector<int>{0, 1, 2});
  }
  {
    const LevelCocycle c(zmod(3), 1, {0, 1, 0, 0, 0, 0});
    const auto v = coboundary_decide_chain(c, power_chain(6));
    REQUIRE(v.is_coboundary());
    CHECK(v.level == 2);
  }
  {
    const LevelCocycle c(zmod(3), 1, {1, 2, 0});  // S = 0
    const auto v = coboundary_decide_chain(c, dyadic_chain());
    REQUIRE(v.is_coboundary());
    CHECK(v.level == 1);
  }
  {
    // Prefix growth counts relative to the cocycle level.
    const LevelCocycle c(zmod(3), 1, {0, 1});
    const auto v = coboundary_decide_chain(c, DivisibilityChain(2, {3, 3}, {2}));
    REQUIRE(v.is_coboundary());
    CHECK(v.level == 2);
  }
}

TEST_CASE("essential values: pinned examples") {
  {
    const OdometerModel model(dyadic_chain(), 4);
    const LevelCocycle c(zmod(3), 1, {0, 1});
    CHECK(essential_values_bruteforce(c, model, 3).values == std::vector<int>{0, 1, 2});
  }
  {
    const OdometerModel model(power_chain(3), 3);
    const LevelCocycle c(zmod(3), 1, {0, 1, 2});
    CHECK(essential_values_bruteforce(c, model, 2).values == std::vector<int>{0});
  }
  {
    const OdometerModel model(dyadic_chain(), 4);
    const LevelCocycle c = LevelCocycle::trivial(zmod(3), 1, 2);
    CHECK(essential_values_bruteforce(c, model, 3).values == std::vector<int>{0});
  }
}

TEST_CASE("essential values: closed form pinned examples") {
  {
    const LevelCocycle c(zmod(3), 1, {0, 1});
    CHECK(essential_values_closed_form(c, dyadic_chain(), 3).values ==
          std::vector<int>{0, 1, 2});
    CHECK(essential_values_closed_form(c, power_chain(3), 2).values == std::vector<int>{0});
  }
  {
    const LevelCocycle c(zmod(3), 1, {1, 2, 0});  // S = 0
    for (int k = 1; k <= 4; ++k)
      CHECK(essential_values_closed_form(c, power_chain(3), k).values ==
            std::vector<int>{0});
  }
}

TEST_CASE("essential values: limit set") {
  CHECK(essential_values_limit(LevelCocycle(zmod(3), 1, {0, 1}), dyadic_chain()).values ==
        std::vector<int>{0, 1, 2});
  CHECK(essential_values_limit(LevelCocycle(zmod(3), 1, {0, 1, 0, 0, 0, 0}), power_chain(6))
            .values == std::vector<int>{0});
  CHECK(essential_values_limit(LevelCocycle(zmod(3), 1, {1, 2, 0}), dyadic_chain()).values ==
        std::vector<int>{0});
  // Z/4 target over a 2*3^i chain: only one factor of 2 arrives, the limit is <2S>.
  const LevelCocycle c4(zmod(4), 1, {0, 1});
  CHECK(essential_values_limit(c4, DivisibilityChain(2, {2}, {3})).values ==
        std::vector<int>{0, 2});
}

TEST_CASE("oracle equivalence and coboundary consistency on a small family") {
  std::mt19937 rng(20240818);
  const std::vector<DivisibilityChain> chains = {
      dyadic_chain(), power_chain(3), power_chain(6), DivisibilityChain(2, {3}, {2}),
      DivisibilityChain(5, {}, {2, 5})};
  for (const auto& chain : chains) {
    for (int p : {2, 3, 5}) {
      const auto K = zmod(p);
      for (int trial = 0; trial < 12; ++trial) {
        std::vector<int> table(chain.base());
        for (auto& v : table) v = std::uniform_int_distribution<int>(0, p - 1)(rng);
        const LevelCocycle c(K, 1, table);
        for (int k = 1; k <= 3; ++k) {
          if (chain.nth_modulus(k) > 729) break;
          const OdometerModel model(chain, k);
          REQUIRE(essential_values_bruteforce(c, model, k) ==
                  essential_values_closed_form(c, chain, k));
        }
        const auto verdict = coboundary_decide_chain(c, chain);
        REQUIRE(verdict.is_coboundary() ==
                essential_values_limit(c, chain).trivial(*K));
      }
    }
  }
}

TEST_CASE("brute force at a model level above the cylinder level") {
  const OdometerModel model(dyadic_chain(), 5);
  const LevelCocycle c(zmod(3), 2, {0, 1, 1, 0});
  for (int k = 2; k <= 5; ++k)
    REQUIRE(essential_values_bruteforce(c, model, k) ==
            essential_values_closed_form(c, dyadic_chain(), k));
}

TEST_CASE("reduce_target") {
  const auto K = s3();
  const int tau = 1;  // a transposition
  REQUIRE(K->element_order(tau) == 2);
  const int u = prime_order_element(*K, 3);
  const auto K0 = cyclic_subgroup(*K, u);

  const OdometerModel model(dyadic_chain(), 2);
  {
    // Constant transfer in the coset K0 tau, trivial cocycle.
    const LevelCocycle c = LevelCocycle::trivial(K, 1, 2);
    TransferFunction b{2, std::vector<int>(4, tau), TransferFunction::Orientation::Forward};
    const auto reduced = reduce_target(c, K0, b, model);
    for (int v : reduced.table) CHECK(v == K->identity());
  }
  {
    // K0 = K returns the transfer unchanged.
    std::vector<int> all;
    for (int a = 0; a < K->order(); ++a) all.push_back(a);
    const LevelCocycle c = LevelCocycle::trivial(K, 1, 2);
    TransferFunction b{2, {0, 1, 2, 3}, TransferFunction::Orientation::Forward};
    CHECK(reduce_target(c, all, b, model).table == b.table);
  }
  {
    // Genuine coboundary into K0 with an S3-valued transfer reduces to a
    // K0-valued transfer that still verifies.
    const std::vector<int> L_table = {0, u, K->mul(u, u), 0};
    std::vector<int> f(4);
    for (std::uint64_t x = 0; x < 4; ++x)
      f[x] = K->mul(L_table[(x + 1) % 4], K->inv(L_table[x]));
    const LevelCocycle c(K, 2, f);
    std::vector<int> b_table(4);
    for (std::uint64_t x = 0; x < 4; ++x) b_table[x] = K->mul(L_table[x], tau);
    TransferFunction b{2, b_table, TransferFunction::Orientation::Forward};
    const auto reduced = reduce_target(c, K0, b, model);
    for (int v : reduced.table)
      CHECK(std::find(K0.begin(), K0.end(), v) != K0.end());
    CHECK(cohomologous_verify(c, LevelCocycle::trivial(K, 1, 2), reduced, model, 8));
  }
  {
    // Values split across two cosets: the transfer was not valid.
    const LevelCocycle c = LevelCocycle::trivial(K, 1, 2);
    TransferFunction b{2, {0, tau, 0, 0}, TransferFunction::Orientation::Forward};
    CHECK_THROWS_AS(reduce_target(c, K0, b, model), NotSingleCoset);
  }
}

TEST_CASE("decision procedures reject nonabelian targets") {
  const LevelCocycle c(s3(), 1, {0, 3});
  CHECK_THROWS_AS(coboundary_decide_chain(c, dyadic_chain()), NonAbelianTarget);
  CHECK_THROWS_AS(essential_values_limit(c, dyadic_chain()), NonAbelianTarget);
  const OdometerModel model(dyadic_chain(), 2);
  CHECK_THROWS_AS(essential_values_bruteforce(c, model, 2), NonAbelianTarget);
}

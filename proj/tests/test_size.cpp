#include <doctest.h>

#include <algorithm>
#include <utility>
#include <vector>

#include "deon/errors.hpp"
#include "deon/lab.hpp"
#include "deon/size.hpp"

using namespace deon;

namespace {

/// Reflexive relation on {0..n-1}; bit a*(n-1)+b' of `mask` encodes a ≼ b for a ≠ b.
PreferentialSize<int> relation(int n, std::uint32_t mask) {
  return {[n, mask](const int& a, const int& b) {
    if (a == b) return true;
    int idx = a * (n - 1) + (b < a ? b : b - 1);
    return ((mask >> idx) & 1u) != 0;
  }};
}

std::vector<int> range(int n) {
  std::vector<int> v;
  for (int i = 0; i < n; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST_SUITE("size") {
  TEST_CASE("fraction budgets") {
    std::vector<int> X = range(10);
    SizeSpec<int> s = FractionSize{0.2};
    CHECK(is_big(std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7}, X, s));
    CHECK_FALSE(is_big(std::vector<int>{0, 1, 2, 3, 4, 5, 6}, X, s));
    CHECK(allowed_exceptions(FractionSize{0.0}, 5) == 0);
    CHECK(allowed_exceptions(FractionSize{0.1}, 10) == 1);
    CHECK_THROWS_AS(validate(FractionSize{1.0}), SizeUndefined);
    CHECK_THROWS_AS(validate(FractionSize{-0.1}), SizeUndefined);
    CHECK_THROWS_AS(is_big(std::vector<int>{11}, X, s), PreconditionViolation);
  }

  TEST_CASE("preferential filters are principal") {
    // 0 ≼ 1 strictly, 2 incomparable: μ = {0, 2}
    PreferentialSize<int> p{[](const int& a, const int& b) { return a == b || (a == 0 && b == 1); }};
    std::vector<int> X = range(3);
    CHECK(minimal_elements(X, p) == std::vector<int>{0, 2});
    CHECK(is_big(std::vector<int>{0, 2}, X, SizeSpec<int>{p}));
    CHECK_FALSE(is_big(std::vector<int>{0, 1}, X, SizeSpec<int>{p}));
    CHECK(is_big(X, X, SizeSpec<int>{p}));
    CHECK_THROWS_AS(validate(PreferentialSize<int>{}), SizeUndefined);
  }

  TEST_CASE("filter laws") {
    PreferentialSize<int> p = relation(3, 0b000101);
    std::vector<int> X = range(3);
    for (std::uint32_t a = 0; a < 8; ++a)
      for (std::uint32_t b = 0; b < 8; ++b) {
        if ((a & ~b) != 0) continue;
        std::vector<int> A, B;
        for (int i = 0; i < 3; ++i) {
          if ((a >> i) & 1u) A.push_back(i);
          if ((b >> i) & 1u) B.push_back(i);
        }
        if (is_big(A, X, SizeSpec<int>{p})) CHECK(is_big(B, X, SizeSpec<int>{p}));
      }
    CHECK_FALSE(is_big(std::vector<int>{}, X, SizeSpec<int>{p}));
  }

  TEST_CASE("product filters") {
    PreferentialSize<int> l = relation(2, 0b01), r = relation(2, 0b00);
    std::vector<int> X = range(2);
    std::vector<std::pair<int, int>> all = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(product_is_big(all, X, X, SizeSpec<int>{l}, SizeSpec<int>{r}));
    // μ(X) = {0}, μ(X′) = {0, 1}: dropping ⟨0,1⟩ loses a product minimum.
    CHECK_FALSE(product_is_big(std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}}, X, X, SizeSpec<int>{l},
                               SizeSpec<int>{r}));
    CHECK(product_is_big(std::vector<std::pair<int, int>>{{0, 0}, {0, 1}}, X, X, SizeSpec<int>{l}, SizeSpec<int>{r}));
    CHECK_THROWS_AS(product_is_big(all, X, X, SizeSpec<int>{FractionSize{0.1}}, SizeSpec<int>{r}), NonPrincipal);
    CHECK_THROWS_AS(product_is_big(std::vector<std::pair<int, int>>{{5, 0}}, X, X, SizeSpec<int>{l}, SizeSpec<int>{r}),
                    PreconditionViolation);
  }

  TEST_CASE("product filter equals the filter of the product relation, carriers ≤ 3") {
    for (int n1 = 1; n1 <= 3; ++n1)
      for (int n2 = 1; n2 <= 3; ++n2) {
        std::vector<int> X = range(n1), Xp = range(n2);
        std::vector<std::pair<int, int>> carrier;
        for (int a : X)
          for (int b : Xp) carrier.emplace_back(a, b);
        for (std::uint32_t r1 = 0; r1 < (1u << (n1 * (n1 - 1))); ++r1)
          for (std::uint32_t r2 = 0; r2 < (1u << (n2 * (n2 - 1))); ++r2) {
            PreferentialSize<int> p1 = relation(n1, r1), p2 = relation(n2, r2);
            auto prod = product_preference(p1, p2);
            std::vector<std::pair<int, int>> mu = minimal_elements(carrier, prod);
            // Oracle: the product minima are exactly the pairs of minima.
            std::vector<std::pair<int, int>> pairs;
            for (int a : minimal_elements(X, p1))
              for (int b : minimal_elements(Xp, p2)) pairs.emplace_back(a, b);
            CHECK(mu == pairs);
            CHECK(product_is_big(mu, X, Xp, SizeSpec<int>{p1}, SizeSpec<int>{p2}));
          }
      }
  }

  TEST_CASE("varying generators yield the same product filter") {
    // Big sets in the product are those containing a big A × A′; with principal
    // filters the smallest such rectangle is μ × μ′.
    lab::Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
      int n1 = 1 + static_cast<int>(rng.below(3)), n2 = 1 + static_cast<int>(rng.below(3));
      PreferentialSize<int> p1 = relation(n1, static_cast<std::uint32_t>(rng.next() & ((1u << (n1 * (n1 - 1))) - 1)));
      PreferentialSize<int> p2 = relation(n2, static_cast<std::uint32_t>(rng.next() & ((1u << (n2 * (n2 - 1))) - 1)));
      std::vector<int> X = range(n1), Xp = range(n2);
      std::vector<std::pair<int, int>> carrier, C;
      for (int a : X)
        for (int b : Xp) carrier.emplace_back(a, b);
      for (const auto& c : carrier)
        if (rng.chance(0.7)) C.push_back(c);
      bool rectangle = false;
      for (std::uint32_t a = 0; a < (1u << n1) && !rectangle; ++a)
        for (std::uint32_t b = 0; b < (1u << n2) && !rectangle; ++b) {
          std::vector<int> A, B;
          for (int i = 0; i < n1; ++i)
            if ((a >> i) & 1u) A.push_back(i);
          for (int i = 0; i < n2; ++i)
            if ((b >> i) & 1u) B.push_back(i);
          if (!is_big(A, X, SizeSpec<int>{p1}) || !is_big(B, Xp, SizeSpec<int>{p2})) continue;
          bool inside = true;
          for (int x : A)
            for (int y : B) inside = inside && std::find(C.begin(), C.end(), std::make_pair(x, y)) != C.end();
          rectangle = inside;
        }
      CHECK(product_is_big(C, X, Xp, SizeSpec<int>{p1}, SizeSpec<int>{p2}) == rectangle);
    }
  }

  TEST_CASE("soft quantifier") {
    std::vector<int> X = range(10);
    auto always = [](int) { return true; };
    SoftResult<int> r = soft_forall(X, always, SizeSpec<int>{FractionSize{0.0}});
    CHECK(r.holds);
    CHECK(r.exceptions.empty());
    auto not_three = [](int x) { return x != 3; };
    SoftResult<int> strict = soft_forall(X, not_three, SizeSpec<int>{FractionSize{0.0}});
    CHECK_FALSE(strict.holds);
    CHECK(strict.exceptions == std::vector<int>{3});
    CHECK(soft_forall(X, not_three, SizeSpec<int>{FractionSize{0.1}}).holds);
  }
}

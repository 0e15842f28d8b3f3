#include "anth/oracle.hpp"
#include "anth/engine.hpp"

#include <doctest.h>

#include <random>

using namespace anth;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("oracle_expand") {
  CHECK(oracle::oracle_expand(QuadraticSurd(0, 19, 1), 12) == ints({4, 2, 1, 3, 1, 2, 8, 2, 1, 3, 1, 2}));
  CHECK(oracle::oracle_expand(QuadraticSurd(3, 0, 2), 10) == ints({1, 2}));
  CHECK(oracle::oracle_expand(QuadraticSurd(0, 54, 1), 6) == ints({7, 2, 1, 6, 1, 2}));
}

TEST_CASE("oracle_is_palindrome") {
  CHECK(oracle::oracle_is_palindrome(ints({2, 1, 3, 1, 2})));
  CHECK(oracle::oracle_is_palindrome({}));
  CHECK_FALSE(oracle::oracle_is_palindrome(ints({1, 2})));
}

TEST_CASE("engine and oracle agree on random general surds") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const long p = static_cast<long>(rng() % 2001) - 1000;
    const long d = static_cast<long>(rng() % 5000);
    long q = static_cast<long>(rng() % 201) - 100;
    if (q == 0) q = 1;
    const QuadraticSurd s = normalize(QuadraticSurd(p, d, q));
    const Expansion e = expand_surd(s);
    const std::size_t count = e.terminated ? e.preperiod.size() + 2
                                           : e.preperiod.size() + 3 * e.period.size();
    REQUIRE_MESSAGE(e.quotients(count) == oracle::oracle_expand(s, count), s.str());
  }
}

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "pgroups/collection.hpp"

using namespace pgroups;

namespace {

NormalForm nf(const TablePtr& t, std::vector<long long> exps) {
  std::vector<Int> e(exps.begin(), exps.end());
  return NormalForm::from_exponents(t, std::move(e));
}

NormalForm random_element(const TablePtr& t, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<Int> e;
  for (int i = 0; i < t->size(); ++i) e.emplace_back(d(rng));
  return NormalForm::from_exponents(t, std::move(e));
}

long long nonzero_terms(const TruncatedSeries& s) {
  long long n = 0;
  s.for_each_nonzero([&](const std::vector<int>&, const Int&) { ++n; });
  return n;
}

}  // namespace

TEST_CASE("generator product collects to ascending order") {
  TablePtr t = make_table(2, 2);
  NormalForm a = NormalForm::generator(t, 0);
  NormalForm b = NormalForm::generator(t, 1);
  CHECK(b * a == nf(t, {1, 1, 1}));  // b a = a b [b,a]
  CHECK(a * b == nf(t, {1, 1, 0}));
}

TEST_CASE("identity is neutral") {
  TablePtr t = make_table(2, 3);
  NormalForm id(t);
  NormalForm u = nf(t, {2, -1, 3, 0, 1});
  CHECK(u * id == u);
  CHECK(id * u == u);
}

TEST_CASE("weight-2 letter past a generator spends a weight-3 commutator") {
  TablePtr t = make_table(2, 3);
  NormalForm c = nf(t, {0, 0, 1, 0, 0});  // [b,a]
  NormalForm a = NormalForm::generator(t, 0);
  CHECK(c * a == nf(t, {1, 0, 1, 1, 0}));  // a [b,a] [[b,a],a]
}

TEST_CASE("fourth power of ab in class 2") {
  TablePtr t = make_table(2, 2);
  NormalForm ab = NormalForm::generator(t, 0) * NormalForm::generator(t, 1);
  CHECK(pow(ab, 4) == nf(t, {4, 4, 6}));
}

TEST_CASE("pow edge cases") {
  TablePtr t = make_table(2, 3);
  NormalForm u = nf(t, {1, 2, -1, 0, 3});
  CHECK(pow(u, 0) == NormalForm(t));
  NormalForm a = NormalForm::generator(t, 0);
  CHECK(pow(a, -1) == nf(t, {-1, 0, 0, 0, 0}));
  CHECK(pow(u, 1) == u);
  CHECK(pow(u, -1) * u == NormalForm(t));
}

TEST_CASE("commutator examples") {
  TablePtr t = make_table(2, 2);
  NormalForm a = NormalForm::generator(t, 0);
  NormalForm b = NormalForm::generator(t, 1);
  CHECK(commutator(a, a) == NormalForm(t));
  CHECK(commutator(b, a) == nf(t, {0, 0, 1}));
  CHECK(commutator(b * b, a) == nf(t, {0, 0, 2}));  // [b^2,a] = [b,a]^2 in class 2
}

TEST_CASE("closed form for (ab)^n in class 2") {
  TablePtr t = make_table(2, 2);
  NormalForm ab = NormalForm::generator(t, 0) * NormalForm::generator(t, 1);
  for (long long n = -10; n <= 10; ++n) {
    CHECK(pow(ab, n) == nf(t, {n, n, n * (n - 1) / 2}));
  }
}

TEST_CASE("magnus image of generators and small products") {
  TablePtr t = make_table(2, 2);
  NormalForm a = NormalForm::generator(t, 0);
  NormalForm b = NormalForm::generator(t, 1);

  TruncatedSeries sa = magnus_image(a);
  CHECK(sa.coefficient({}) == 1);
  CHECK(sa.coefficient({0}) == 1);
  CHECK(nonzero_terms(sa) == 2);

  TruncatedSeries sab = magnus_image(a * b);
  CHECK(sab.coefficient({}) == 1);
  CHECK(sab.coefficient({0}) == 1);
  CHECK(sab.coefficient({1}) == 1);
  CHECK(sab.coefficient({0, 1}) == 1);
  CHECK(nonzero_terms(sab) == 4);

  TruncatedSeries sc = magnus_image(nf(t, {0, 0, 1}));  // [b,a]
  CHECK(sc.coefficient({}) == 1);
  CHECK(sc.coefficient({1, 0}) == 1);
  CHECK(sc.coefficient({0, 1}) == -1);
  CHECK(nonzero_terms(sc) == 3);
}

TEST_CASE("magnus oracle: multiplication is respected") {
  std::mt19937 rng(20260823);
  for (auto [r, c, trials] : {std::tuple{2, 3, 250}, {2, 4, 200}, {3, 3, 80}, {3, 4, 30}}) {
    TablePtr t = make_table(r, c);
    for (int i = 0; i < trials; ++i) {
      NormalForm u = random_element(t, rng);
      NormalForm v = random_element(t, rng);
      REQUIRE(magnus_image(u * v) == magnus_image(u) * magnus_image(v));
    }
  }
}

TEST_CASE("magnus oracle: inverse and commutator are respected") {
  std::mt19937 rng(424242);
  TablePtr t = make_table(3, 4);
  for (int i = 0; i < 25; ++i) {
    NormalForm u = random_element(t, rng);
    NormalForm v = random_element(t, rng);
    REQUIRE(magnus_image(inverse(u)) == magnus_image(u).inverse());
    REQUIRE(magnus_image(commutator(u, v)) ==
            magnus_image(inverse(u)) * magnus_image(inverse(v)) * magnus_image(u) *
                magnus_image(v));
  }
}

TEST_CASE("associativity and inverses on random triples") {
  std::mt19937 rng(987654321);
  for (int r : {2, 3}) {
    TablePtr t = make_table(r, 4);
    for (int i = 0; i < 250; ++i) {
      NormalForm u = random_element(t, rng);
      NormalForm v = random_element(t, rng);
      NormalForm w = random_element(t, rng);
      REQUIRE((u * v) * w == u * (v * w));
      REQUIRE(u * inverse(u) == NormalForm(t));
      REQUIRE(inverse(u) * u == NormalForm(t));
    }
  }
}

TEST_CASE("powers via square-and-multiply match repeated products") {
  std::mt19937 rng(1357);
  TablePtr t = make_table(2, 4);
  for (int i = 0; i < 40; ++i) {
    NormalForm u = random_element(t, rng);
    NormalForm acc(t);
    for (int n = 0; n <= 9; ++n) {
      CHECK(pow(u, n) == acc);
      CHECK(pow(u, -n) == inverse(acc));
      acc = acc * u;
    }
  }
}

TEST_CASE("large exponents collect in logarithmic time") {
  TablePtr t2 = make_table(2, 2);
  NormalForm ab2 = NormalForm::generator(t2, 0) * NormalForm::generator(t2, 1);
  Int n = Int(1) << 40;
  CHECK(pow(ab2, n) == NormalForm::from_exponents(t2, {n, n, n * (n - 1) / 2}));

  TablePtr t3 = make_table(2, 3);
  NormalForm ab3 = NormalForm::generator(t3, 0) * NormalForm::generator(t3, 1);
  NormalForm big = pow(ab3, 12345);
  CHECK(magnus_image(big) == magnus_image(ab3).pow(12345));
  CHECK(pow(ab3, n) * pow(ab3, -n) == NormalForm(t3));
}

TEST_CASE("power is a homomorphism on commuting elements") {
  TablePtr t = make_table(2, 4);
  NormalForm a = NormalForm::generator(t, 0);
  for (long long m : {-7, -2, 0, 3, 11}) {
    for (long long k : {-5, 1, 8}) {
      CHECK(pow(a, m) * pow(a, k) == pow(a, m + k));
    }
  }
}

TEST_CASE("mixed tables are rejected") {
  TablePtr t1 = make_table(2, 2);
  TablePtr t2 = make_table(2, 3);
  NormalForm u(t1), v(t2);
  CHECK_THROWS_AS(u * v, std::invalid_argument);
}

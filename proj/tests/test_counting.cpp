#include "doctest.h"

#include "dlconn/counting.hpp"
#include "oracles.hpp"

using namespace dlconn;

namespace {

TwistedDatum twisted_a(int rank) {
  auto d = CoxeterDatum::of_type("A" + std::to_string(rank));
  std::vector<int> perm(rank);
  for (int i = 0; i < rank; ++i) perm[i] = rank - 1 - i;
  return TwistedDatum::make(d, DiagramAutomorphism::make(d, perm));
}

TwistedDatum split(const std::string& label) {
  return TwistedDatum::split(CoxeterDatum::of_type(label));
}

std::vector<TwistedDatum> test_data() {
  std::vector<TwistedDatum> out;
  for (const char* label : {"A1", "A2", "A3", "A4", "B2", "B3", "D4", "G2"})
    out.push_back(split(label));
  for (int r : {2, 3, 4}) out.push_back(twisted_a(r));
  auto d4 = CoxeterDatum::of_type("D4");
  out.push_back(TwistedDatum::make(d4, DiagramAutomorphism::make(d4, {0, 1, 3, 2})));
  auto d4b = CoxeterDatum::of_type("D4");
  out.push_back(TwistedDatum::make(d4b, DiagramAutomorphism::make(d4b, {2, 1, 3, 0})));
  return out;
}

}  // namespace

TEST_CASE("bigint basics") {
  CHECK(BigInt(0).is_zero());
  CHECK(BigInt(-5).to_string() == "-5");
  CHECK((BigInt(1000000007) * BigInt(998244353)).to_string() ==
        "998244359987710471");
  BigInt big = BigInt::pow(BigInt(10), 25);
  CHECK(big.to_string() == "10000000000000000000000000");
  CHECK_FALSE(big.fits_int64());
  CHECK((big - big).is_zero());
  CHECK((BigInt(7) - BigInt(20)).to_int64() == -13);
  for (long long a : {-37LL, 0LL, 12LL, 1LL << 40}) {
    for (long long b : {-4LL, 9LL, -(1LL << 41), 3LL}) {
      CHECK((BigInt(a) + BigInt(b)).to_int64() == a + b);
      CHECK((BigInt(a) - BigInt(b)).to_int64() == a - b);
      CHECK((BigInt(a) < BigInt(b)) == (a < b));
    }
  }
  for (long long a : {-37LL, 0LL, 12LL, 1LL << 20}) {
    for (long long b : {-4LL, 9LL, -(1LL << 21), 3LL}) {
      CHECK((BigInt(a) * BigInt(b)).to_int64() == a * b);
    }
  }
}

TEST_CASE("polynomial arithmetic and exact division") {
  IntPolynomial p = IntPolynomial::from_ints({1, 2, 2, 1});
  IntPolynomial q1 = IntPolynomial::from_ints({1, 1});
  CHECK(p.degree() == 3);
  CHECK((q1 * q1) == IntPolynomial::from_ints({1, 2, 1}));
  CHECK(p.divide_exact(q1) == IntPolynomial::from_ints({1, 1, 1}));
  CHECK(p.evaluate(2).to_int64() == 21);
  CHECK(IntPolynomial().degree() == -1);
  CHECK_THROWS_AS(IntPolynomial::from_ints({1, 1, 1}).divide_exact(q1), Error);
  CHECK((p - p).is_zero());
}

TEST_CASE("count_N examples") {
  TwistedDatum a2 = split("A2");
  CHECK(count_N(a2, {}) == IntPolynomial::from_ints({1}));
  CHECK(count_N_full(a2) == IntPolynomial::from_ints({1, 2, 2, 1}));
  CHECK(evaluate(count_N_full(a2), 2).to_int64() == 21);

  TwistedDatum t2 = twisted_a(2);
  CHECK(count_N_full(t2) == IntPolynomial::from_ints({1, 0, 0, 1}));
  CHECK(evaluate(count_N_full(t2), 2).to_int64() == 9);

  TwistedDatum t3 = twisted_a(3);
  CHECK(count_N_full(t3) == IntPolynomial::from_ints({1, 1, 1, 2, 1, 1, 1}));
  CHECK(evaluate(count_N_full(t3), 2).to_int64() == 135);
  // orbit parabolics: N(W^s) = 1 + q^{l(w0^s)}
  CHECK(count_N(t3, {0, 2}) == IntPolynomial::from_ints({1, 0, 1}));
  CHECK(count_N(t3, {1}) == IntPolynomial::from_ints({1, 1}));
}

TEST_CASE("count_N rejects non-stable sets") {
  TwistedDatum t3 = twisted_a(3);
  try {
    count_N(t3, {0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSigmaStable);
  }
}

TEST_CASE("N(W^s) = 1 + q^{l(w0^s)} across twists") {
  for (const TwistedDatum& t : test_data()) {
    for (int s = 0; s < t.datum->rank(); ++s) {
      GeneratorSet orbit = sigma_orbit(t, s);
      WeylElement w0s = longest_element(t.datum, orbit);
      IntPolynomial expect;
      expect.add_monomial(0, BigInt(1));
      expect.add_monomial(static_cast<int>(w0s.length()), BigInt(1));
      CHECK(count_N(t, orbit) == expect);
    }
  }
}

TEST_CASE("component counts") {
  TwistedDatum a2 = split("A2");
  CHECK(component_count(a2, element_from_string(a2.datum, "0")) ==
        IntPolynomial::from_ints({1, 1, 1}));
  CHECK(evaluate(component_count(a2, element_from_string(a2.datum, "0")), 2)
            .to_int64() == 7);
  CHECK(component_count(a2, element_from_string(a2.datum, "0.1")) ==
        IntPolynomial::from_ints({1}));

  TwistedDatum t3 = twisted_a(3);
  IntPolynomial cc = component_count(t3, element_from_string(t3.datum, "1"));
  CHECK(cc == IntPolynomial::from_ints({1, 0, 1, 1, 0, 1}));
  CHECK(evaluate(cc, 2).to_int64() == 45);
}

TEST_CASE("split special formula") {
  TwistedDatum a1 = split("A1");
  CHECK(split_component_count_special(a1, 0) == IntPolynomial::from_ints({1}));
  TwistedDatum a2 = split("A2");
  CHECK(split_component_count_special(a2, 0) ==
        IntPolynomial::from_ints({1, 1, 1}));
  TwistedDatum a3 = split("A3");
  IntPolynomial got = split_component_count_special(a3, 1);
  CHECK(got == IntPolynomial::from_ints({1, 2, 3, 3, 2, 1}));
  CHECK(evaluate(got, 2).to_int64() == 105);

  TwistedDatum t2 = twisted_a(2);
  try {
    split_component_count_special(t2, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IdentityTwistRequired);
  }
}

TEST_CASE("divisibility of N(W_J) into N(W) for every stable J, F4 included") {
  std::vector<TwistedDatum> data = test_data();
  data.push_back(split("F4"));  // |W| = 1152
  {
    auto f4 = CoxeterDatum::of_type("F4");
    data.push_back(
        TwistedDatum::make(f4, DiagramAutomorphism::make(f4, {3, 2, 1, 0})));
  }
  for (const TwistedDatum& t : data) {
    IntPolynomial nw = count_N_full(t);
    const int rank = t.datum->rank();
    for (int mask = 0; mask < (1 << rank); ++mask) {
      GeneratorSet J;
      for (int i = 0; i < rank; ++i)
        if (mask & (1 << i)) J.insert(i);
      if (!is_sigma_stable(t, J)) continue;
      IntPolynomial nj = count_N(t, J);
      IntPolynomial quot = nw.divide_exact(nj);  // throws on failure
      CHECK((quot * nj) == nw);
      for (const BigInt& c : quot.coeffs()) CHECK(c >= BigInt(0));
    }
  }
}

TEST_CASE("component_count is 1 exactly on irreducible elements") {
  for (const TwistedDatum& t : test_data()) {
    for (const auto& w : enumerate_group(t.datum)) {
      bool irr = is_irreducible(t, w);
      IntPolynomial cc = component_count(t, w);
      CHECK((cc == IntPolynomial::from_ints({1})) == irr);
      CHECK(cc.coeff(0) == BigInt(1));
      for (const BigInt& c : cc.coeffs()) CHECK(c >= BigInt(0));
    }
  }
}

TEST_CASE("identity twist count matches the inversion-length generating function") {
  // independent length computation through the root action
  for (const char* label : {"A3", "B3", "G2", "D4"}) {
    auto t = split(label);
    IntPolynomial direct;
    for (const auto& w : enumerate_group(t.datum)) {
      int inv = 0;
      for (int r = 0; r < t.datum->num_positive_roots(); ++r)
        if (!t.datum->root_is_positive(w.act_on_root(r))) ++inv;
      direct.add_monomial(inv, BigInt(1));
    }
    CHECK(count_N_full(t) == direct);
  }
}

TEST_CASE("twisted A4 count matches the permutation model") {
  TwistedDatum t4 = twisted_a(4);
  auto model = oracle::symmetric_group(5).enumerate();
  IntPolynomial expect;
  for (const auto& [v, d] : model) {
    std::vector<int> conj(5);
    for (int i = 0; i < 5; ++i) conj[4 - i] = 4 - v[i];
    if (conj == v) expect.add_monomial(oracle::inversions(v), BigInt(1));
  }
  CHECK(count_N_full(t4) == expect);
}

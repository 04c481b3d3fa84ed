#include "doctest.h"

#include "dlconn/twist.hpp"
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

TwistedDatum triality_d4() {
  auto d = CoxeterDatum::of_type("D4");
  return TwistedDatum::make(d, DiagramAutomorphism::make(d, {2, 1, 3, 0}));
}

}  // namespace

TEST_CASE("diagram automorphism validation and order") {
  auto a3 = CoxeterDatum::of_type("A3");
  auto flip = DiagramAutomorphism::make(a3, {2, 1, 0});
  CHECK(flip.order == 2);
  CHECK(DiagramAutomorphism::identity(a3).order == 1);
  // B3 has no nontrivial diagram symmetry
  auto b3 = CoxeterDatum::of_type("B3");
  CHECK_THROWS_AS(DiagramAutomorphism::make(b3, {2, 1, 0}), Error);
  auto d4 = CoxeterDatum::of_type("D4");
  auto tri = DiagramAutomorphism::make(d4, {2, 1, 3, 0});
  CHECK(tri.order == 3);
}

TEST_CASE("apply_sigma on generators and words") {
  TwistedDatum t = twisted_a(2);
  CHECK(apply_sigma(t, WeylElement::identity(t.datum)).is_identity());
  CHECK(element_to_string(apply_sigma(t, element_from_string(t.datum, "0"))) ==
        "1");

  TwistedDatum t3 = twisted_a(3);
  auto img = apply_sigma(t3, element_from_string(t3.datum, "0.1"));
  CHECK(img == element_from_string(t3.datum, "2.1"));
}

TEST_CASE("apply_sigma is a length-preserving order-preserving automorphism") {
  TwistedDatum t = twisted_a(3);
  auto all = enumerate_group(t.datum);
  for (const auto& w : all) CHECK(apply_sigma(t, w).length() == w.length());
  for (const auto& a : all) {
    for (const auto& b : all) {
      CHECK(apply_sigma(t, multiply(a, b)) ==
            multiply(apply_sigma(t, a), apply_sigma(t, b)));
      CHECK(bruhat_leq(a, b) ==
            bruhat_leq(apply_sigma(t, a), apply_sigma(t, b)));
    }
  }
}

TEST_CASE("orbits and closures") {
  TwistedDatum id2 = split("A2");
  CHECK(sigma_orbit(id2, 0) == GeneratorSet{0});

  TwistedDatum t3 = twisted_a(3);
  CHECK(sigma_orbit(t3, 0) == GeneratorSet{0, 2});
  CHECK(sigma_orbit(t3, 1) == GeneratorSet{1});
  CHECK(sigma_closure(t3, {}).empty());
  CHECK(sigma_closure(t3, {0}) == GeneratorSet{0, 2});
  CHECK(sigma_closure(t3, {0, 1}) == GeneratorSet{0, 1, 2});

  TwistedDatum tri = triality_d4();
  CHECK(sigma_orbit(tri, 0) == GeneratorSet{0, 2, 3});
  CHECK(sigma_orbit(tri, 1) == GeneratorSet{1});
}

TEST_CASE("sigma_closure is a closure operator") {
  for (const TwistedDatum& t : {twisted_a(3), split("B3"), triality_d4()}) {
    const int rank = t.datum->rank();
    for (int mask = 0; mask < (1 << rank); ++mask) {
      GeneratorSet I;
      for (int i = 0; i < rank; ++i)
        if (mask & (1 << i)) I.insert(i);
      GeneratorSet c = sigma_closure(t, I);
      for (int s : I) CHECK(c.count(s) == 1);  // extensive
      CHECK(sigma_closure(t, c) == c);         // idempotent
      for (int extra = 0; extra < rank; ++extra) {  // monotone
        GeneratorSet bigger = I;
        bigger.insert(extra);
        GeneratorSet cb = sigma_closure(t, bigger);
        for (int s : c) CHECK(cb.count(s) == 1);
      }
      CHECK((sigma_closure(t, I) == I) == is_sigma_stable(t, I));
    }
  }
}

TEST_CASE("connectedness and irreducibility criteria") {
  TwistedDatum a2 = split("A2");
  CHECK(is_connected_union(a2, {0, 1}));
  CHECK_FALSE(is_connected_union(a2, {0}));

  TwistedDatum t3 = twisted_a(3);
  CHECK_FALSE(is_connected_union(t3, {1}));
  CHECK(is_connected_union(t3, {0, 1}));
  CHECK(is_connected_union(t3, {0, 1, 2}));

  CHECK(is_irreducible(a2, element_from_string(a2.datum, "0.1")));
  CHECK_FALSE(is_irreducible(a2, WeylElement::identity(a2.datum)));
  CHECK_FALSE(is_irreducible(t3, element_from_string(t3.datum, "0")));
  CHECK(is_irreducible(t3, element_from_string(t3.datum, "1.0")));
}

TEST_CASE("fixed subgroup structure for the standard twists") {
  TwistedDatum id2 = split("A2");
  auto fg_id = fixed_subgroup(id2);
  CHECK(fg_id.elements.size() == 6);
  CHECK(fg_id.generators.size() == 2);
  CHECK(fg_id.coxeter_matrix == id2.datum->coxeter_matrix());

  TwistedDatum t2 = twisted_a(2);
  auto fg2 = fixed_subgroup(t2);
  REQUIRE(fg2.elements.size() == 2);
  CHECK(element_to_string(fg2.elements[1]) == "0.1.0");
  REQUIRE(fg2.generators.size() == 1);
  CHECK(fg2.generators[0].length() == 3);

  TwistedDatum t3 = twisted_a(3);
  auto fg3 = fixed_subgroup(t3);
  REQUIRE(fg3.elements.size() == 8);
  REQUIRE(fg3.generators.size() == 2);
  // orbit {0,2} gives the commuting pair, orbit {1} the middle reflection
  CHECK(element_to_string(fg3.generators[0]) == "0.2");
  CHECK(element_to_string(fg3.generators[1]) == "1");
  CHECK(fg3.coxeter_matrix[0][1] == 4);  // type B2
  for (const auto& x : fg3.elements) {
    CHECK(is_sigma_fixed(t3, x));
    for (const auto& y : fg3.elements) {
      WeylElement p = multiply(x, y);
      bool found = false;
      for (const auto& z : fg3.elements) found = found || z == p;
      CHECK(found);
    }
  }
}

TEST_CASE("fixed subgroup of the twisted A4 matches the permutation model") {
  TwistedDatum t4 = twisted_a(4);
  auto fg = fixed_subgroup(t4);
  // model: elements of S5 fixed under conjugation by the reversal
  auto model = oracle::symmetric_group(5).enumerate();
  std::map<int, int> model_fixed_lengths;
  for (const auto& [v, d] : model) {
    std::vector<int> conj(5);
    for (int i = 0; i < 5; ++i) conj[4 - i] = 4 - v[i];
    if (conj == v) model_fixed_lengths[oracle::inversions(v)]++;
  }
  std::map<int, int> lib_lengths;
  for (const auto& w : fg.elements) lib_lengths[static_cast<int>(w.length())]++;
  CHECK(lib_lengths == model_fixed_lengths);
  CHECK(fg.elements.size() == 8);
  CHECK(fg.coxeter_matrix[0][1] == 4);
}

TEST_CASE("steinberg verification for identity and flip twists") {
  for (const char* label : {"A1", "A2", "A3", "B2", "G2"}) {
    auto rep = verify_steinberg(split(label));
    CAPTURE(label);
    CHECK(rep.passed());
  }
  for (int rank : {2, 3, 4}) {
    auto rep = verify_steinberg(twisted_a(rank));
    CAPTURE(rank);
    CHECK(rep.passed());
    CHECK(rep.well_formed());
  }
  CHECK(verify_steinberg(triality_d4()).passed());
}

TEST_CASE("W^s cap W^sigma is {id, w0^s}") {
  for (const TwistedDatum& t : {twisted_a(3), twisted_a(4), split("B2")}) {
    for (int s = 0; s < t.datum->rank(); ++s) {
      GeneratorSet orbit = sigma_orbit(t, s);
      WeylElement w0s = longest_element(t.datum, orbit);
      int fixed_in_parabolic = 0;
      for (const auto& w : parabolic_elements(t.datum, orbit)) {
        if (is_sigma_fixed(t, w)) {
          ++fixed_in_parabolic;
          CHECK((w.is_identity() || w == w0s));
        }
      }
      CHECK(fixed_in_parabolic == 2);
    }
  }
}

TEST_CASE("descent equivalences vs<v, v sigma(s)<v, v w0^s<v") {
  for (const TwistedDatum& t : {twisted_a(2), twisted_a(3), twisted_a(4)}) {
    auto fg = fixed_subgroup(t);
    for (const auto& v : fg.elements) {
      for (int s = 0; s < t.datum->rank(); ++s) {
        bool ds = v.is_descent(s, Side::Right);
        bool dsig = v.is_descent(t.sigma.apply(s), Side::Right);
        WeylElement w0s = longest_element(t.datum, sigma_orbit(t, s));
        bool dmove = multiply(v, w0s).length() < v.length();
        CHECK(ds == dsig);
        CHECK(ds == dmove);
      }
    }
  }
}

TEST_CASE("descent_move_exists") {
  TwistedDatum a2 = split("A2");
  CHECK_FALSE(descent_move_exists(a2, {0, 1}, WeylElement::identity(a2.datum))
                  .has_value());
  auto w0 = longest_element(a2.datum, {0, 1});
  auto mv = descent_move_exists(a2, {0, 1}, w0);
  REQUIRE(mv.has_value());
  CHECK(*mv == 0);

  TwistedDatum t2 = twisted_a(2);
  auto mv2 = descent_move_exists(t2, {0}, longest_element(t2.datum, {0, 1}));
  REQUIRE(mv2.has_value());
  CHECK(*mv2 == 0);

  TwistedDatum t3 = twisted_a(3);
  auto w0_3 = longest_element(t3.datum, {0, 1, 2});
  auto mv3 = descent_move_exists(t3, {0, 1}, w0_3);
  REQUIRE(mv3.has_value());
  CHECK(*mv3 == 0);

  try {
    descent_move_exists(t3, {0}, element_from_string(t3.datum, "0"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSigmaFixed);
  }
}

TEST_CASE("is_irreducible is sigma-invariant") {
  TwistedDatum t = twisted_a(3);
  for (const auto& w : enumerate_group(t.datum))
    CHECK(is_irreducible(t, w) == is_irreducible(t, apply_sigma(t, w)));
}

TEST_CASE("flipped E6 has fixed group of order 1152 on four orbit generators") {
  auto e6 = CoxeterDatum::of_type("E6");
  // chain 0-1-2-3-4 with node 5 on the center: flip swaps 0<->4 and 1<->3
  auto t = TwistedDatum::make(
      e6, DiagramAutomorphism::make(e6, {4, 3, 2, 1, 0, 5}));
  FixedGroupStructure fg = fixed_subgroup(t);
  CHECK(fg.elements.size() == 1152);
  REQUIRE(fg.generators.size() == 4);
  bool has_bond4 = false;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (fg.coxeter_matrix[i][j] == 4) has_bond4 = true;
  CHECK(has_bond4);  // the fixed system carries the double bond
}

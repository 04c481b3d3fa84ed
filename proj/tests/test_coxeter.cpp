#include "doctest.h"

#include <map>

#include "dlconn/coxeter.hpp"
#include "oracles.hpp"

using namespace dlconn;

namespace {

std::map<int, int> length_distribution(const std::vector<WeylElement>& v) {
  std::map<int, int> out;
  for (const auto& w : v) out[w.length()]++;
  return out;
}

}  // namespace

TEST_CASE("enumeration of the small standard types") {
  auto a1 = enumerate_group(CoxeterDatum::of_type("A1"));
  CHECK(a1.size() == 2);
  CHECK(a1[0].is_identity());
  CHECK(a1[1].length() == 1);

  auto a2 = enumerate_group(CoxeterDatum::of_type("A2"));
  REQUIRE(a2.size() == 6);
  std::vector<unsigned> lens;
  for (const auto& w : a2) lens.push_back(w.length());
  CHECK(lens == std::vector<unsigned>{0, 1, 1, 2, 2, 3});

  auto a3 = enumerate_group(CoxeterDatum::of_type("A3"));
  CHECK(a3.size() == 24);
  CHECK(a3.back().length() == 6);
}

TEST_CASE("enumeration matches the independent models") {
  struct Case {
    const char* label;
    oracle::ModelGroup model;
  };
  std::vector<Case> cases;
  cases.push_back({"A2", oracle::symmetric_group(3)});
  cases.push_back({"A3", oracle::symmetric_group(4)});
  cases.push_back({"A4", oracle::symmetric_group(5)});
  cases.push_back({"B2", oracle::signed_group(2)});
  cases.push_back({"B3", oracle::signed_group(3)});
  cases.push_back({"D4", oracle::even_signed_group(4)});
  cases.push_back({"G2", oracle::dihedral_group(6)});
  for (auto& c : cases) {
    CAPTURE(c.label);
    auto elems = enumerate_group(CoxeterDatum::of_type(c.label));
    auto model_dist = oracle::length_distribution(c.model);
    CHECK(length_distribution(elems) == model_dist);
  }
}

TEST_CASE("factorial sizes for type A") {
  std::size_t factorial = 1;
  for (int n = 2; n <= 5; ++n) {
    factorial *= n;
    auto elems = enumerate_group(CoxeterDatum::of_type("A" + std::to_string(n - 1)));
    CHECK(elems.size() == factorial);
  }
}

TEST_CASE("length and multiplication basics") {
  auto d = CoxeterDatum::of_type("A3");
  WeylElement id = WeylElement::identity(d);
  CHECK(id.length() == 0);
  for (int i = 0; i < 3; ++i) CHECK(id.mult_gen_right(i).length() == 1);

  // s1 s3 s2 s1 s3 (1-based) is the transposition (1 4): five inversions
  WeylElement w = element_from_string(d, "0.2.1.0.2");
  CHECK(w.length() == 5);

  WeylElement a = element_from_string(d, "0");
  CHECK(multiply(id, w) == w);
  CHECK(multiply(a, a) == id);
  CHECK(multiply(a, element_from_string(d, "1")).length() == 2);
  CHECK(multiply(w, w.inverse()) == id);

  auto d2 = CoxeterDatum::of_type("A2");
  CHECK_THROWS_AS(multiply(WeylElement::identity(d2), w), Error);
}

TEST_CASE("associativity on the whole of A2 x A2") {
  auto d = CoxeterDatum::of_type("A2");
  auto all = enumerate_group(d);
  for (const auto& x : all)
    for (const auto& y : all)
      for (const auto& z : all)
        CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
}

TEST_CASE("bruhat order per the subword oracle") {
  for (const char* label : {"A2", "A3", "B2", "B3", "G2", "A4"}) {
    CAPTURE(label);
    auto d = CoxeterDatum::of_type(label);
    auto all = enumerate_group(d);
    for (const auto& w : all) {
      auto lower = oracle::bruhat_lower_set(w);
      for (const auto& v : all) {
        bool expect = lower.count(element_to_string(v)) > 0;
        CHECK(bruhat_leq(v, w) == expect);
      }
    }
  }
}

TEST_CASE("bruhat order examples") {
  auto d = CoxeterDatum::of_type("A2");
  WeylElement id = WeylElement::identity(d);
  WeylElement s0 = element_from_string(d, "0");
  WeylElement s1 = element_from_string(d, "1");
  WeylElement s1s0 = element_from_string(d, "1.0");
  auto w0 = longest_element(d, {0, 1});
  CHECK(bruhat_leq(id, w0));
  CHECK_FALSE(bruhat_leq(w0, id));
  CHECK(bruhat_leq(s0, s1s0));
  CHECK_FALSE(bruhat_leq(s0, s1));
}

TEST_CASE("exchange property: exactly one of ws<=w, w<=ws, lengths adjacent") {
  for (const char* label : {"A3", "B2"}) {
    auto d = CoxeterDatum::of_type(label);
    for (const auto& w : enumerate_group(d)) {
      for (int s = 0; s < d->rank(); ++s) {
        WeylElement ws = w.mult_gen_right(s);
        int diff = static_cast<int>(ws.length()) - static_cast<int>(w.length());
        CHECK((diff == 1 || diff == -1));
        CHECK(bruhat_leq(ws, w) != bruhat_leq(w, ws));
        CHECK(w.is_descent(s, Side::Right) == (diff == -1));
      }
    }
  }
}

TEST_CASE("support") {
  auto d = CoxeterDatum::of_type("A2");
  CHECK(support(WeylElement::identity(d)).empty());
  CHECK(support(element_from_string(d, "0")) == GeneratorSet{0});
  CHECK(support(element_from_string(d, "0.1.0")) == GeneratorSet{0, 1});

  auto d3 = CoxeterDatum::of_type("A3");
  auto all = enumerate_group(d3);
  for (const auto& a : all) {
    for (const auto& b : all) {
      GeneratorSet u = support(a);
      for (int s : support(b)) u.insert(s);
      GeneratorSet prod = support(multiply(a, b));
      for (int s : prod) CHECK(u.count(s) == 1);
    }
  }
}

TEST_CASE("parabolic subgroups and longest elements") {
  auto d = CoxeterDatum::of_type("A3");
  CHECK(parabolic_elements(d, {}).size() == 1);

  auto d2 = CoxeterDatum::of_type("A2");
  auto p = parabolic_elements(d2, {0});
  REQUIRE(p.size() == 2);
  CHECK(element_to_string(p[1]) == "0");

  auto p13 = parabolic_elements(d, {0, 2});
  REQUIRE(p13.size() == 4);
  std::vector<std::string> words;
  for (const auto& w : p13) words.push_back(element_to_string(w));
  CHECK(words == std::vector<std::string>{"", "0", "2", "0.2"});
  for (const auto& a : p13)
    for (const auto& b : p13)
      CHECK(support(multiply(a, b)).size() <= 2);

  CHECK(longest_element(d, {}).is_identity());
  auto w0_12 = longest_element(d2, {0, 1});
  CHECK(w0_12.length() == 3);
  CHECK(element_to_string(w0_12) == "0.1.0");
  auto w0_13 = longest_element(d, {0, 2});
  CHECK(w0_13.length() == 2);
  CHECK(element_to_string(w0_13) == "0.2");

  for (const char* label : {"A3", "B3", "G2"}) {
    auto dt = CoxeterDatum::of_type(label);
    GeneratorSet all_gens;
    for (int i = 0; i < dt->rank(); ++i) all_gens.insert(i);
    auto w0 = longest_element(dt, all_gens);
    CHECK(multiply(w0, w0).is_identity());
    for (const auto& w : enumerate_group(dt)) {
      CHECK(w.length() <= w0.length());
      CHECK(bruhat_leq(w, w0));
    }
  }
}

TEST_CASE("descents") {
  auto d = CoxeterDatum::of_type("A2");
  WeylElement id = WeylElement::identity(d);
  CHECK_FALSE(id.is_descent(0, Side::Right));
  CHECK(element_from_string(d, "0").is_descent(0, Side::Right));
  WeylElement s0s1 = element_from_string(d, "0.1");
  CHECK(s0s1.is_descent(1, Side::Right));
  CHECK_FALSE(s0s1.is_descent(0, Side::Right));
  CHECK(s0s1.is_descent(0, Side::Left));
  CHECK_FALSE(s0s1.is_descent(1, Side::Left));
}

namespace {

// all reduced words of w, by descent recursion
void all_reduced_words(const WeylElement& w, std::vector<int>& prefix,
                       std::vector<std::vector<int>>& out) {
  if (w.is_identity()) {
    out.push_back(prefix);
    return;
  }
  for (int s = 0; s < w.datum()->rank(); ++s) {
    if (!w.is_descent(s, Side::Left)) continue;
    prefix.push_back(s);
    all_reduced_words(w.mult_gen_left(s), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

TEST_CASE("canonical word is the lex-smallest reduced word") {
  for (const char* label : {"A3", "B2"}) {
    auto d = CoxeterDatum::of_type(label);
    for (const auto& w : enumerate_group(d)) {
      std::vector<std::vector<int>> words;
      std::vector<int> prefix;
      all_reduced_words(w, prefix, words);
      CHECK(w.canonical_word() == *std::min_element(words.begin(), words.end()));
      for (const auto& word : words) CHECK(word.size() == w.length());
    }
  }
}

TEST_CASE("enumeration is sorted by length then lex word") {
  auto all = enumerate_group(CoxeterDatum::of_type("B3"));
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    bool ordered =
        all[i].length() < all[i + 1].length() ||
        (all[i].length() == all[i + 1].length() &&
         all[i].canonical_word() < all[i + 1].canonical_word());
    CHECK(ordered);
  }
}

TEST_CASE("canonical words and serialization round-trip") {
  auto d = CoxeterDatum::of_type("B3");
  for (const auto& w : enumerate_group(d)) {
    auto word = w.canonical_word();
    CHECK(word.size() == w.length());
    CHECK(element_from_word(d, word) == w);
    CHECK(element_from_string(d, element_to_string(w)) == w);
  }
  CHECK(element_to_string(WeylElement::identity(d)).empty());
}

TEST_CASE("element act_on_root is an inversion oracle for the length") {
  auto d = CoxeterDatum::of_type("B3");
  for (const auto& w : enumerate_group(d)) {
    int inv = 0;
    for (int r = 0; r < d->num_positive_roots(); ++r)
      if (!d->root_is_positive(w.act_on_root(r))) ++inv;
    CHECK(static_cast<unsigned>(inv) == w.length());
  }
}

TEST_CASE("errors: bounds, infinite groups, unsupported matrices") {
  CHECK_THROWS_AS(enumerate_group(CoxeterDatum::of_type("A4"), 50), Error);
  // affine A~2: all bonds 3, infinite group
  std::vector<std::vector<int>> affine{{1, 3, 3}, {3, 1, 3}, {3, 3, 1}};
  CHECK_THROWS_AS(CoxeterDatum::make(affine), Error);
  // bond 5 has no integral realization
  std::vector<std::vector<int>> h2{{1, 5}, {5, 1}};
  try {
    CoxeterDatum::make(h2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedMatrix);
  }
  std::vector<std::vector<int>> bad{{1, 2}, {3, 1}};
  CHECK_THROWS_AS(CoxeterDatum::make(bad), Error);
}

TEST_CASE("explicit matrix agrees with the type label") {
  std::vector<std::vector<int>> b2{{1, 4}, {4, 1}};
  auto d = CoxeterDatum::make(b2);
  CHECK(enumerate_group(d).size() == 8);
}

TEST_CASE("larger types: F4 and E6 orders") {
  CHECK(enumerate_group(CoxeterDatum::of_type("F4")).size() == 1152);
  auto e6 = CoxeterDatum::of_type("E6");
  CHECK(e6->num_positive_roots() == 36);
  CHECK(enumerate_group(e6).size() == 51840);
}

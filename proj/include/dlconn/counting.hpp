#pragma once

#include <string>
#include <vector>

#include "dlconn/bigint.hpp"
#include "dlconn/coxeter.hpp"
#include "dlconn/errors.hpp"
#include "dlconn/twist.hpp"

namespace dlconn {

/// Integer polynomial in the point-count variable q, constant term first.
/// Trailing zero coefficients are trimmed; the zero polynomial has degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
    trim();
  }
  static IntPolynomial constant(long long v) {
    return IntPolynomial({BigInt(v)});
  }
  /// c0 + c1 q + ... from plain integers.
  static IntPolynomial from_ints(const std::vector<long long>& v) {
    std::vector<BigInt> c;
    c.reserve(v.size());
    for (long long x : v) c.emplace_back(x);
    return IntPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : BigInt(0);
  }

  void add_monomial(int deg, const BigInt& v) {
    if (static_cast<int>(c_.size()) <= deg) c_.resize(deg + 1, BigInt(0));
    c_[deg] += v;
    trim();
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) {
    return !(a == b);
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < a.c_.size()) c[i] += a.c_[i];
      if (i < b.c_.size()) c[i] += b.c_[i];
    }
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < a.c_.size()) c[i] += a.c_[i];
      if (i < b.c_.size()) c[i] -= b.c_[i];
    }
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPolynomial(std::move(c));
  }

  /// Exact quotient by a monic divisor; throws DivisionNotExact when a
  /// nonzero remainder is left (or the divisor is unusable).
  IntPolynomial divide_exact(const IntPolynomial& den) const {
    if (den.is_zero())
      fail(ErrorCode::DivisionNotExact, "division by the zero polynomial");
    if (den.c_.back() != BigInt(1))
      fail(ErrorCode::DivisionNotExact, "divisor is not monic");
    if (is_zero()) return IntPolynomial();
    if (degree() < den.degree())
      fail(ErrorCode::DivisionNotExact, "degree of divisor exceeds dividend");
    std::vector<BigInt> rem = c_;
    std::vector<BigInt> quot(degree() - den.degree() + 1, BigInt(0));
    for (int k = degree() - den.degree(); k >= 0; --k) {
      BigInt lead = rem[k + den.degree()];
      if (lead.is_zero()) continue;
      quot[k] = lead;
      for (int j = 0; j <= den.degree(); ++j) rem[k + j] -= lead * den.c_[j];
    }
    for (const BigInt& r : rem) {
      if (!r.is_zero())
        fail(ErrorCode::DivisionNotExact, "polynomial division leaves remainder");
    }
    return IntPolynomial(std::move(quot));
  }

  BigInt evaluate(unsigned long long q) const {
    BigInt acc(0), base(static_cast<long long>(q));
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * base + c_[i];
    return acc;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      if (i == 0) {
        out += c_[i].to_string();
      } else {
        if (c_[i] != BigInt(1)) out += c_[i].to_string() + "*";
        out += i == 1 ? "q" : "q^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

/// N(W_J) = sum of q^{l(w)} over the sigma-fixed elements of the standard
/// parabolic W_J, with l the ambient length. J must be sigma-stable.
inline IntPolynomial count_N(const TwistedDatum& t, const GeneratorSet& J,
                             std::size_t bound = 1000000) {
  if (!is_sigma_stable(t, J)) {
    std::string j;
    for (int s : J) j += (j.empty() ? "" : ",") + std::to_string(s);
    fail(ErrorCode::NotSigmaStable, "set {" + j + "} is not sigma-stable");
  }
  IntPolynomial out;
  for (const auto& w : parabolic_elements(t.datum, J, bound)) {
    if (is_sigma_fixed(t, w))
      out.add_monomial(static_cast<int>(w.length()), BigInt(1));
  }
  return out;
}

inline IntPolynomial count_N_full(const TwistedDatum& t,
                                  std::size_t bound = 1000000) {
  return count_N(t, full_generator_set(t.datum), bound);
}

/// Number of connected components of X(w) as a polynomial in q:
/// N(W) / N(W^w) with W^w the smallest sigma-stable standard parabolic
/// containing w. The quotient is always exact; a nonzero remainder would
/// expose an implementation defect, reported as DivisionNotExact.
inline IntPolynomial component_count(const TwistedDatum& t,
                                     const WeylElement& w,
                                     std::size_t bound = 1000000) {
  GeneratorSet J = sigma_closure(t, support(w));
  return count_N_full(t, bound).divide_exact(count_N(t, J, bound));
}

inline BigInt evaluate(const IntPolynomial& p, unsigned long long q) {
  return p.evaluate(q);
}

/// Split-group special case: X(s) has (number of rational flags)/(1+q)
/// irreducible components, the same for every generator s. Requires the
/// identity twist; cross-validates against component_count for all s.
inline IntPolynomial split_component_count_special(const TwistedDatum& t,
                                                   int s,
                                                   std::size_t bound = 1000000) {
  if (!t.sigma.is_identity())
    fail(ErrorCode::IdentityTwistRequired,
         "split component formula needs the identity twist");
  if (s < 0 || s >= t.datum->rank())
    fail(ErrorCode::ParseError, "generator index out of range");
  IntPolynomial q1 = IntPolynomial::from_ints({1, 1});
  IntPolynomial quotient = count_N_full(t, bound).divide_exact(q1);
  for (int i = 0; i < t.datum->rank(); ++i) {
    WeylElement gen = WeylElement::identity(t.datum).mult_gen_right(i);
    if (component_count(t, gen, bound) != quotient)
      fail(ErrorCode::DivisionNotExact,
           "split component formula disagrees with the general count at s=" +
               std::to_string(i));
  }
  return quotient;
}

}  // namespace dlconn

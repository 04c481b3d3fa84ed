#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "dlconn/errors.hpp"

namespace dlconn {

namespace gfpoly {

// Dense little-endian polynomials over F_p, used only to set up towers.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<std::uint32_t>(
          (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  }
  trim(c);
  return c;
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, newt = 1, r = p, newr = a % p;
  while (newr != 0) {
    std::int64_t q = r / newr;
    t -= q * newt; std::swap(t, newt);
    r -= q * newr; std::swap(r, newr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

/// a mod f, f monic.
inline Poly mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - 1 - df;
    if (lead != 0) {
      for (std::size_t j = 0; j < f.size(); ++j) {
        std::uint64_t sub = static_cast<std::uint64_t>(lead) * f[j] % p;
        std::uint32_t& tgt = a[shift + j];
        tgt = static_cast<std::uint32_t>((tgt + p - sub) % p);
      }
    }
    a.pop_back();
    trim(a);
    if (a.size() <= df) break;
  }
  return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  return mod(mul(a, b, p), f, p);
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  base = mod(std::move(base), f, p);
  while (e != 0) {
    if (e & 1ULL) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

inline Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::uint32_t lead_inv = inv_mod_p(b.back(), p);
    Poly bm = b;
    for (auto& c : bm)
      c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * lead_inv % p);
    a = mod(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

/// Rabin test: monic f of degree N is irreducible over F_p iff
/// x^{p^N} = x (mod f) and gcd(x^{p^{N/l}} - x, f) = 1 for prime l | N.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const int N = static_cast<int>(f.size()) - 1;
  if (N < 1 || f.back() != 1) return false;
  auto x_pow_p_iter = [&](int times) {
    Poly t{0, 1};
    for (int i = 0; i < times; ++i) t = powmod(std::move(t), p, f, p);
    return t;
  };
  Poly xN = x_pow_p_iter(N);
  Poly x = mod(Poly{0, 1}, f, p);
  if (xN != x) return false;
  auto coprime_at = [&](int k) {
    Poly t = x_pow_p_iter(k);
    Poly diff = t;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    trim(diff);
    return gcd(diff, f, p).size() == 1;
  };
  int n = N;
  for (int l = 2; l * l <= n; ++l) {
    if (n % l != 0) continue;
    while (n % l == 0) n /= l;
    if (!coprime_at(N / l)) return false;
  }
  if (n > 1 && !coprime_at(N / n)) return false;
  return true;
}

}  // namespace gfpoly

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// One finite field F_{p^N} holding every extension the caller needs; the
/// intermediate fields are carved out as Frobenius-fixed subsets rather
/// than living as separate types. The base field of interest has q = p^d
/// elements (d = q_degree). Elements are indexed 0..p^N-1 by evaluating
/// their coefficient vector at p (constant term least significant).
///
/// Arithmetic on indices: in characteristic 2 the index is the coefficient
/// bitmask, addition is XOR and multiplication is a carry-less product
/// followed by one reduction-table lookup, so any tower within the bound is
/// fast. Small odd-characteristic towers get full add/mul tables; larger
/// ones fall back to polynomial arithmetic.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  static std::shared_ptr<const FieldTower> build(
      std::uint32_t p, int q_degree, const std::vector<int>& degrees_needed,
      std::uint64_t bound = 1ULL << 20) {
    if (!is_prime_u32(p))
      fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (q_degree < 1) fail(ErrorCode::ParseError, "q_degree must be positive");
    std::uint64_t N = 1;
    for (int m : degrees_needed) {
      if (m < 1) fail(ErrorCode::ParseError, "extension degrees must be positive");
      N = std::lcm<std::uint64_t>(N, static_cast<std::uint64_t>(q_degree) * m);
    }
    std::uint64_t size = 1;
    for (std::uint64_t i = 0; i < N; ++i) {
      if (size > bound / p)
        fail(ErrorCode::BoundExceeded,
             "field of " + std::to_string(p) + "^" + std::to_string(N) +
                 " elements exceeds bound " + std::to_string(bound));
      size *= p;
    }
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->p_ = p;
    t->N_ = static_cast<int>(N);
    t->q_degree_ = q_degree;
    t->size_ = size;
    t->find_modulus();
    t->precompute();
    return t;
  }

  std::uint32_t p() const { return p_; }
  int degree() const { return N_; }
  int q_degree() const { return q_degree_; }
  std::uint64_t q() const {
    std::uint64_t v = 1;
    for (int i = 0; i < q_degree_; ++i) v *= p_;
    return v;
  }
  std::uint64_t size() const { return size_; }
  const gfpoly::Poly& modulus() const { return modulus_; }

  // ---- index-level arithmetic (the oracle's working representation) ----

  std::uint32_t mul2(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t acc = 0;
    while (b != 0) {
      int k = __builtin_ctz(b);
      acc ^= static_cast<std::uint64_t>(a) << k;
      b &= b - 1;
    }
    return static_cast<std::uint32_t>(acc & mask2_) ^ red2_[acc >> N_];
  }

  std::uint32_t add_i(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (!add_.empty()) return add_[static_cast<std::size_t>(a) * size_ + b];
    return encode(add_vec(decode(a), decode(b)));
  }
  std::uint32_t mul_i(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return mul2(a, b);
    if (!mul_.empty()) return mul_[static_cast<std::size_t>(a) * size_ + b];
    return encode_poly(gfpoly::mulmod(decode_poly(a), decode_poly(b), modulus_, p_));
  }
  std::uint32_t neg_i(std::uint32_t a) const {
    if (p_ == 2) return a;
    auto v = decode(a);
    for (auto& c : v) c = c == 0 ? 0 : p_ - c;
    return encode(v);
  }
  std::uint32_t sub_i(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    return add_i(a, neg_i(b));
  }
  std::uint32_t inv_i(std::uint32_t a) const {
    if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
    if (!inv_.empty()) return inv_[a];
    return pow_i(a, size_ - 2);
  }
  std::uint32_t pow_i(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1, base = a;
    while (e != 0) {
      if (e & 1ULL) r = mul_i(r, base);
      base = mul_i(base, base);
      e >>= 1;
    }
    return r;
  }
  std::uint32_t frob_p_i(std::uint32_t a) const {
    if (p_ == 2) return mul2(a, a);
    if (!frob_p_.empty()) return frob_p_[a];
    return pow_i(a, p_);
  }
  std::uint32_t frob_q_i(std::uint32_t a) const {
    if (!frob_q_.empty()) return frob_q_[a];
    std::uint32_t r = a;
    for (int i = 0; i < q_degree_; ++i) r = frob_p_i(r);
    return r;
  }

  bool in_subfield_i(std::uint32_t a, int k) const {
    std::uint32_t r = a;
    for (int i = 0; i < k; ++i) r = frob_p_i(r);
    return r == a;
  }

  // Raw hooks for tight loops.
  bool is_char2() const { return p_ == 2; }
  int bits() const { return N_; }
  std::uint32_t bitmask() const { return mask2_; }
  const std::uint32_t* reduction_table() const {
    return red2_.empty() ? nullptr : red2_.data();
  }
  const std::uint32_t* raw_mul() const {
    return mul_.empty() ? nullptr : mul_.data();
  }
  const std::uint32_t* raw_add() const {
    return add_.empty() ? nullptr : add_.data();
  }

  /// All elements of the subfield F_{p^k}, k | N, sorted by index.
  const std::vector<std::uint32_t>& subfield_elements(int k) const {
    auto it = subfields_.find(k);
    if (it == subfields_.end())
      fail(ErrorCode::ParseError,
           "degree " + std::to_string(k) + " does not divide " + std::to_string(N_));
    return it->second;
  }

  // ---- coefficient-vector representation ----

  std::vector<std::uint32_t> decode(std::uint32_t idx) const {
    std::vector<std::uint32_t> v(N_, 0);
    for (int i = 0; i < N_ && idx != 0; ++i) {
      v[i] = idx % p_;
      idx /= p_;
    }
    return v;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& v) const {
    std::uint64_t idx = 0;
    for (std::size_t i = v.size(); i-- > 0;) idx = idx * p_ + v[i] % p_;
    return static_cast<std::uint32_t>(idx);
  }

 private:
  FieldTower() = default;

  gfpoly::Poly decode_poly(std::uint32_t idx) const {
    auto v = decode(idx);
    gfpoly::trim(v);
    return v;
  }
  std::uint32_t encode_poly(const gfpoly::Poly& a) const {
    std::vector<std::uint32_t> v(N_, 0);
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i];
    return encode(v);
  }
  std::vector<std::uint32_t> add_vec(std::vector<std::uint32_t> a,
                                     const std::vector<std::uint32_t>& b) const {
    for (int i = 0; i < N_; ++i) a[i] = (a[i] + b[i]) % p_;
    return a;
  }

  /// Deterministic modulus: the lexicographically smallest monic
  /// irreducible of degree N, coefficients compared constant term first.
  void find_modulus() {
    std::uint64_t total = size_;
    for (std::uint64_t counter = 0; counter < total; ++counter) {
      gfpoly::Poly f(N_ + 1, 0);
      f[N_] = 1;
      std::uint64_t rest = counter;
      for (int i = 0; i < N_; ++i) {
        std::uint64_t place = 1;
        for (int j = 0; j < N_ - 1 - i; ++j) place *= p_;
        f[i] = static_cast<std::uint32_t>(rest / place);
        rest %= place;
      }
      if (gfpoly::is_irreducible(f, p_)) {
        modulus_ = std::move(f);
        return;
      }
    }
    fail(ErrorCode::BoundExceeded, "no irreducible modulus found");
  }

  void precompute() {
    if (p_ == 2) {
      // reduction table: red2_[h] = (x^N * h) mod f, as bitmasks
      mask2_ = static_cast<std::uint32_t>(size_ - 1);
      std::uint32_t f_low = 0;
      for (int i = 0; i < N_; ++i)
        if (modulus_[i]) f_low |= 1u << i;
      std::vector<std::uint32_t> xpow(N_);  // x^{N+i} mod f
      xpow[0] = f_low;
      for (int i = 1; i < N_; ++i) {
        std::uint32_t t = xpow[i - 1] << 1;
        if (t & ~mask2_) t = (t & mask2_) ^ f_low;
        xpow[i] = t;
      }
      red2_.assign(size_, 0);
      for (std::uint64_t h = 1; h < size_; ++h)
        red2_[h] = red2_[h & (h - 1)] ^ xpow[__builtin_ctzll(h)];
    } else if (size_ <= 1024) {
      std::uint32_t n = static_cast<std::uint32_t>(size_);
      add_.resize(static_cast<std::size_t>(n) * n);
      mul_.resize(static_cast<std::size_t>(n) * n);
      frob_p_.resize(n);
      std::vector<gfpoly::Poly> polys(n);
      for (std::uint32_t a = 0; a < n; ++a) polys[a] = decode_poly(a);
      for (std::uint32_t a = 0; a < n; ++a) {
        auto va = decode(a);
        for (std::uint32_t b = 0; b < n; ++b) {
          add_[static_cast<std::size_t>(a) * n + b] = encode(add_vec(va, decode(b)));
          mul_[static_cast<std::size_t>(a) * n + b] =
              encode_poly(gfpoly::mulmod(polys[a], polys[b], modulus_, p_));
        }
      }
      for (std::uint32_t a = 0; a < n; ++a) frob_p_[a] = pow_i(a, p_);
    }
    if (size_ <= 65536) {
      std::uint32_t n = static_cast<std::uint32_t>(size_);
      inv_.resize(n);
      inv_[0] = 0;
      for (std::uint32_t a = 1; a < n; ++a) inv_[a] = pow_i(a, size_ - 2);
      frob_q_.resize(n);
      for (std::uint32_t a = 0; a < n; ++a) {
        std::uint32_t r = a;
        for (int i = 0; i < q_degree_; ++i) r = frob_p_i(r);
        frob_q_[a] = r;
      }
    }
    for (int k = 1; k <= N_; ++k) {
      if (N_ % k != 0) continue;
      subfields_.emplace(k, build_subfield(k));
    }
  }

  std::vector<std::uint32_t> build_subfield(int k) const {
    std::vector<std::uint32_t> out;
    if (k == N_) {
      out.resize(size_);
      for (std::uint64_t i = 0; i < size_; ++i) out[i] = static_cast<std::uint32_t>(i);
      return out;
    }
    // kernel of (Frob_p^k - id) as an F_p-linear map in the monomial basis
    gfpoly::Poly y{0, 1};
    for (int i = 0; i < k; ++i) y = gfpoly::powmod(y, p_, modulus_, p_);
    std::vector<std::vector<std::uint32_t>> M(N_, std::vector<std::uint32_t>(N_, 0));
    gfpoly::Poly ypow{1};
    for (int j = 0; j < N_; ++j) {
      for (std::size_t i = 0; i < ypow.size(); ++i) M[i][j] = ypow[i];
      M[j][j] = (M[j][j] + p_ - 1) % p_;
      ypow = gfpoly::mulmod(ypow, y, modulus_, p_);
    }
    std::vector<int> pivot_col(N_, -1);
    int row = 0;
    for (int col = 0; col < N_ && row < N_; ++col) {
      int sel = -1;
      for (int r = row; r < N_; ++r) {
        if (M[r][col] != 0) { sel = r; break; }
      }
      if (sel < 0) continue;
      std::swap(M[sel], M[row]);
      std::uint32_t inv = gfpoly::inv_mod_p(M[row][col], p_);
      for (int c = 0; c < N_; ++c)
        M[row][c] = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(M[row][c]) * inv % p_);
      for (int r = 0; r < N_; ++r) {
        if (r == row || M[r][col] == 0) continue;
        std::uint64_t factor = M[r][col];
        for (int c = 0; c < N_; ++c)
          M[r][c] = static_cast<std::uint32_t>(
              (M[r][c] + static_cast<std::uint64_t>(p_ - 1) * factor % p_ *
                             M[row][c]) % p_);
      }
      pivot_col[row] = col;
      ++row;
    }
    std::vector<bool> is_pivot(N_, false);
    for (int r = 0; r < row; ++r) is_pivot[pivot_col[r]] = true;
    std::vector<std::vector<std::uint32_t>> basis;
    for (int free = 0; free < N_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<std::uint32_t> v(N_, 0);
      v[free] = 1;
      for (int r = 0; r < row; ++r)
        v[pivot_col[r]] = (p_ - M[r][free] % p_) % p_;
      basis.push_back(std::move(v));
    }
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) count *= p_;
    std::vector<std::uint32_t> elems;
    elems.reserve(count);
    for (std::uint64_t it = 0; it < count; ++it) {
      std::vector<std::uint32_t> v(N_, 0);
      std::uint64_t rest = it;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        std::uint32_t coef = rest % p_;
        rest /= p_;
        if (coef == 0) continue;
        for (int i = 0; i < N_; ++i)
          v[i] = static_cast<std::uint32_t>(
              (v[i] + static_cast<std::uint64_t>(coef) * basis[b][i]) % p_);
      }
      elems.push_back(encode(v));
    }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  std::uint32_t p_ = 2;
  int N_ = 1;
  int q_degree_ = 1;
  std::uint64_t size_ = 2;
  gfpoly::Poly modulus_;
  std::uint32_t mask2_ = 1;
  std::vector<std::uint32_t> red2_;              // char-2 reduction table
  std::vector<std::uint32_t> add_, mul_;         // small odd-p tables
  std::vector<std::uint32_t> inv_, frob_p_, frob_q_;
  std::map<int, std::vector<std::uint32_t>> subfields_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

/// Value-type field element over a tower, canonical reduced representative.
class FieldElement {
 public:
  FieldElement(TowerPtr tower, std::vector<std::uint32_t> rep)
      : tower_(std::move(tower)), rep_(std::move(rep)) {
    rep_.resize(tower_->degree(), 0);
    for (auto& c : rep_) c %= tower_->p();
  }
  static FieldElement zero(TowerPtr t) { return FieldElement(std::move(t), {}); }
  static FieldElement one(TowerPtr t) { return FieldElement(std::move(t), {1}); }
  static FieldElement from_index(TowerPtr t, std::uint32_t idx) {
    auto rep = t->decode(idx);
    return FieldElement(std::move(t), std::move(rep));
  }

  const TowerPtr& tower() const { return tower_; }
  const std::vector<std::uint32_t>& rep() const { return rep_; }
  std::uint32_t index() const { return tower_->encode(rep_); }
  bool is_zero() const {
    for (auto c : rep_)
      if (c != 0) return false;
    return true;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.tower_ == b.tower_ && a.rep_ == b.rep_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return from_index(a.tower_, a.tower_->add_i(a.index(), b.index()));
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return from_index(a.tower_, a.tower_->mul_i(a.index(), b.index()));
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return from_index(a.tower_, a.tower_->sub_i(a.index(), b.index()));
  }
  FieldElement operator-() const {
    return from_index(tower_, tower_->neg_i(index()));
  }
  FieldElement inverse() const {
    return from_index(tower_, tower_->inv_i(index()));
  }

  bool in_subfield(int k) const { return tower_->in_subfield_i(index(), k); }

 private:
  static void check(const FieldElement& a, const FieldElement& b) {
    if (a.tower_ != b.tower_)
      fail(ErrorCode::RealizationMismatch, "elements from different towers");
  }

  TowerPtr tower_;
  std::vector<std::uint32_t> rep_;
};

/// x -> x^q, the Frobenius of the base field; fixes exactly F_q.
inline FieldElement frobenius_q(const FieldElement& x) {
  return FieldElement::from_index(x.tower(), x.tower()->frob_q_i(x.index()));
}

}  // namespace dlconn

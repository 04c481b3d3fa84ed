#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlconn/errors.hpp"

namespace dlconn {

/// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs.
/// Covers what exact point-count polynomials need: add, subtract, multiply,
/// compare, decimal printing. No general division.
class BigInt {
 public:
  BigInt() = default;

  BigInt(long long v) {  // NOLINT: implicit by design, mirrors int literals
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    unsigned long long m =
        v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
              : static_cast<unsigned long long>(v);
    while (m != 0) {
      mag_.push_back(static_cast<std::uint32_t>(m & 0xffffffffULL));
      m >>= 32;
    }
  }

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }

  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c < 0 : c > 0;
  }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  BigInt operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
      r.mag_ = add_mag(a.mag_, b.mag_);
      r.sign_ = a.sign_;
    } else {
      int c = cmp_mag(a.mag_, b.mag_);
      if (c == 0) return BigInt();
      if (c > 0) {
        r.mag_ = sub_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_;
      } else {
        r.mag_ = sub_mag(b.mag_, a.mag_);
        r.sign_ = b.sign_;
      }
    }
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.mag_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] +
                            r.mag_[i + j] + carry;
        r.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
        carry = cur >> 32;
      }
      std::size_t k = i + b.mag_.size();
      while (carry != 0) {
        std::uint64_t cur = r.mag_[k] + carry;
        r.mag_[k] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    return r;
  }

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  static BigInt pow(const BigInt& base, unsigned long long e) {
    BigInt r(1), b = base;
    while (e != 0) {
      if (e & 1ULL) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  bool fits_int64() const {
    if (mag_.size() > 2) return false;
    unsigned long long m = mag_u64();
    if (sign_ >= 0) return m <= 0x7fffffffffffffffULL;
    return m <= 0x8000000000000000ULL;
  }

  long long to_int64() const {
    if (!fits_int64()) fail(ErrorCode::BoundExceeded, "BigInt exceeds int64");
    unsigned long long m = mag_u64();
    return sign_ < 0 ? -static_cast<long long>(m - 1) - 1
                     : static_cast<long long>(m);
  }

  std::string to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
      // divide magnitude by 10^9, collecting the remainder
      std::uint64_t rem = 0;
      for (std::size_t i = m.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | m[i];
        m[i] = static_cast<std::uint32_t>(cur / 1000000000ULL);
        rem = cur % 1000000000ULL;
      }
      while (!m.empty() && m.back() == 0) m.pop_back();
      for (int d = 0; d < 9; ++d) {
        digits.push_back(static_cast<char>('0' + rem % 10));
        rem /= 10;
      }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    std::string out;
    if (sign_ < 0) out.push_back('-');
    out.append(digits.rbegin(), digits.rend());
    return out;
  }

 private:
  int sign_ = 0;
  std::vector<std::uint32_t> mag_;  // little-endian, no trailing zero limbs

  unsigned long long mag_u64() const {
    unsigned long long m = 0;
    if (mag_.size() >= 1) m = mag_[0];
    if (mag_.size() >= 2) m |= static_cast<unsigned long long>(mag_[1]) << 32;
    return m;
  }

  void trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
  }

  static int cmp_mag(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  static std::vector<std::uint32_t> add_mag(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r = big;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::uint64_t cur = carry + r[i] + (i < small.size() ? small[i] : 0);
      r[i] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
      if (carry == 0 && i >= small.size()) break;
    }
    if (carry != 0) r.push_back(static_cast<std::uint32_t>(carry));
    return r;
  }

  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
      borrow = 0;
      if (cur < 0) {
        cur += 1LL << 32;
        borrow = 1;
      }
      r[i] = static_cast<std::uint32_t>(cur);
      if (borrow == 0 && i >= b.size()) break;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
};

}  // namespace dlconn

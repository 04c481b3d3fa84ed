#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dlconn/coxeter.hpp"
#include "dlconn/errors.hpp"
#include "dlconn/field.hpp"
#include "dlconn/twist.hpp"

namespace dlconn {

enum class RealizationKind { Split, Unitary };

/// Relative position of two full flags in dimension n: a permutation of
/// {0,..,n-1} (the Weyl group of type A_{n-1} in its one-line form).
struct RelPos {
  std::uint8_t n = 0;
  std::array<std::uint8_t, 4> w{};  // one-line images, entries < n

  static RelPos id(int n) {
    RelPos r;
    r.n = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) r.w[i] = static_cast<std::uint8_t>(i);
    return r;
  }
  static RelPos longest(int n) {
    RelPos r;
    r.n = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) r.w[i] = static_cast<std::uint8_t>(n - 1 - i);
    return r;
  }

  friend bool operator==(const RelPos& a, const RelPos& b) {
    return a.n == b.n && a.w == b.w;
  }
  friend bool operator!=(const RelPos& a, const RelPos& b) { return !(a == b); }

  RelPos inverse() const {
    RelPos r;
    r.n = n;
    for (int i = 0; i < n; ++i) r.w[w[i]] = static_cast<std::uint8_t>(i);
    return r;
  }

  /// Conjugation by the longest permutation: the diagram flip of A_{n-1}.
  RelPos flipped() const {
    RelPos r;
    r.n = n;
    for (int i = 0; i < n; ++i)
      r.w[i] = static_cast<std::uint8_t>(n - 1 - w[n - 1 - i]);
    return r;
  }

  /// Compact code for bucketing (n <= 4: base-4 digits).
  int code() const {
    int c = 0;
    for (int i = n; i-- > 0;) c = c * 4 + w[i];
    return c;
  }

  int inversions() const {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (w[i] > w[j]) ++inv;
    return inv;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < n; ++i) {
      if (i) s.push_back(' ');
      s += std::to_string(static_cast<int>(w[i]) + 1);
    }
    s.push_back(']');
    return s;
  }
};

/// RelPos <-> Weyl element of the A_{n-1} datum. Generator i maps to the
/// adjacent transposition of positions i, i+1.
inline WeylElement relpos_to_weyl(const DatumPtr& a_datum, const RelPos& rp) {
  std::array<std::uint8_t, 4> v = rp.w;
  std::vector<int> letters;
  for (;;) {
    int k = -1;
    for (int i = 0; i + 1 < rp.n; ++i) {
      if (v[i] > v[i + 1]) { k = i; break; }
    }
    if (k < 0) break;
    std::swap(v[k], v[k + 1]);
    letters.push_back(k);
  }
  WeylElement e = WeylElement::identity(a_datum);
  for (std::size_t i = letters.size(); i-- > 0;)
    e = e.mult_gen_right(letters[i]);
  return e;
}

inline RelPos weyl_to_relpos(const WeylElement& e, int n) {
  RelPos r = RelPos::id(n);
  for (int i : e.canonical_word()) std::swap(r.w[i], r.w[i + 1]);
  return r;
}

/// One of the two realized reductive-group families acting on full flags in
/// n-space: split GL_n over F_q, or the quasi-split unitary group, whose
/// flags live over F_{q^2} and whose Frobenius composes the entrywise q-th
/// power with the duality of the hermitian form sum_k x_k y_{n-1-k}^q
/// (antidiagonal Gram, so the standard coordinate flag is rational).
class GroupRealization
    : public std::enable_shared_from_this<GroupRealization> {
 public:
  static std::shared_ptr<const GroupRealization> make(
      RealizationKind kind, int n, std::uint64_t q, int max_m = 0,
      std::size_t flag_bound = 1000000, std::uint64_t field_bound = 1ULL << 20) {
    if (n < 2 || n > 4)
      fail(ErrorCode::ParseError, "dimension must be between 2 and 4");
    // factor q as p^d
    std::uint32_t p = 0;
    int d = 0;
    for (std::uint32_t cand = 2; static_cast<std::uint64_t>(cand) <= q; ++cand) {
      if (q % cand == 0) {
        p = cand;
        std::uint64_t rest = q;
        d = 0;
        while (rest % p == 0) { rest /= p; ++d; }
        if (rest != 1)
          fail(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
        break;
      }
    }
    if (p == 0) fail(ErrorCode::NotPrime, "q must be at least 2");
    auto r = std::shared_ptr<GroupRealization>(new GroupRealization());
    r->n_ = n;
    r->kind_ = kind;
    r->q_ = q;
    if (max_m <= 0) max_m = kind == RealizationKind::Split ? 3 : 1;
    r->max_m_ = max_m;
    int coef = kind == RealizationKind::Unitary ? 2 : 1;
    std::vector<int> degrees;
    for (int m = 1; m <= max_m; ++m) degrees.push_back(coef * m);
    r->tower_ = FieldTower::build(p, d, degrees, field_bound);
    r->def_degree_ = coef * d;
    r->flag_bound_ = flag_bound;
    r->field_bound_ = field_bound;
    r->weyl_ = CoxeterDatum::of_type("A" + std::to_string(n - 1));
    if (kind == RealizationKind::Unitary && n >= 3) {
      std::vector<int> perm(n - 1);
      for (int i = 0; i < n - 1; ++i) perm[i] = n - 2 - i;
      r->twisted_.emplace(TwistedDatum::make(
          r->weyl_, DiagramAutomorphism::make(r->weyl_, std::move(perm))));
    } else {
      r->twisted_.emplace(TwistedDatum::split(r->weyl_));
    }
    return r;
  }

  int n() const { return n_; }
  RealizationKind kind() const { return kind_; }
  std::uint64_t q() const { return q_; }
  int max_m() const { return max_m_; }
  const TowerPtr& tower() const { return tower_; }
  int def_degree() const { return def_degree_; }
  std::size_t flag_bound() const { return flag_bound_; }
  const DatumPtr& weyl_datum() const { return weyl_; }
  const TwistedDatum& twisted() const { return *twisted_; }

  std::string spec_string() const {
    return (kind_ == RealizationKind::Split ? "GL" : "U") + std::to_string(n_) +
           "@q=" + std::to_string(q_);
  }

  /// Same realization over a tower that reaches level m (for escalation).
  std::shared_ptr<const GroupRealization> with_max_m(int m) const {
    return make(kind_, n_, q_, m, flag_bound_, field_bound_);
  }

 private:
  GroupRealization() = default;

  int n_ = 2;
  RealizationKind kind_ = RealizationKind::Split;
  std::uint64_t q_ = 2;
  int max_m_ = 2;
  TowerPtr tower_;
  int def_degree_ = 1;
  std::size_t flag_bound_ = 1000000;
  std::uint64_t field_bound_ = 1ULL << 20;
  DatumPtr weyl_;
  std::optional<TwistedDatum> twisted_;
};

using RealizationPtr = std::shared_ptr<const GroupRealization>;

namespace flagdet {

/// Field ops resolved once per routine; add is XOR in characteristic 2 and
/// multiplication there is carry-less with a one-lookup reduction.
struct FieldView {
  const FieldTower* t;
  const std::uint32_t* mul;
  const std::uint32_t* add;
  std::uint32_t size;
  bool char2;

  explicit FieldView(const FieldTower& tower)
      : t(&tower),
        mul(tower.raw_mul()),
        add(tower.raw_add()),
        size(static_cast<std::uint32_t>(tower.size())),
        char2(tower.is_char2()) {}

  std::uint32_t mulv(std::uint32_t a, std::uint32_t b) const {
    if (char2) return t->mul2(a, b);
    return mul ? mul[static_cast<std::size_t>(a) * size + b] : t->mul_i(a, b);
  }
  std::uint32_t addv(std::uint32_t a, std::uint32_t b) const {
    if (char2) return a ^ b;
    return add ? add[static_cast<std::size_t>(a) * size + b] : t->add_i(a, b);
  }
  std::uint32_t subv(std::uint32_t a, std::uint32_t b) const {
    if (char2) return a ^ b;
    return t->sub_i(a, b);
  }
  std::uint32_t invv(std::uint32_t a) const { return t->inv_i(a); }
  std::uint32_t negv(std::uint32_t a) const {
    return char2 ? a : t->neg_i(a);
  }
};

/// row -= c * other, length n.
inline void row_submul(const FieldView& f, std::uint32_t* row,
                       std::uint32_t c, const std::uint32_t* other, int n) {
  for (int k = 0; k < n; ++k)
    row[k] = f.subv(row[k], f.mulv(c, other[k]));
}

inline int leading_index(const std::uint32_t* row, int n) {
  for (int k = 0; k < n; ++k)
    if (row[k] != 0) return k;
  return -1;
}

/// Echelon accumulator keyed by leading column; rows owned externally or
/// internally. Capacity suffices for 2n rows of length n, n <= 4.
struct Echelon {
  const FieldView& f;
  int n;
  std::array<const std::uint32_t*, 4> by_pivot{};  // row with leading 1 per col
  std::array<std::array<std::uint32_t, 4>, 8> store{};
  int stored = 0;
  int rank = 0;

  Echelon(const FieldView& fv, int ncols) : f(fv), n(ncols) {
    by_pivot.fill(nullptr);
  }

  /// Seed with a row already normalized to leading coefficient 1.
  void seed(const std::uint32_t* row, int pivot) {
    by_pivot[pivot] = row;
    ++rank;
  }

  /// Returns true when the row enlarges the span.
  bool insert(const std::uint32_t* row) {
    std::array<std::uint32_t, 4> work{};
    for (int k = 0; k < n; ++k) work[k] = row[k];
    for (;;) {
      int lead = leading_index(work.data(), n);
      if (lead < 0) return false;
      const std::uint32_t* pivot_row = by_pivot[lead];
      if (pivot_row == nullptr) {
        std::uint32_t inv = f.invv(work[lead]);
        for (int k = 0; k < n; ++k) work[k] = f.mulv(inv, work[k]);
        store[stored] = work;
        by_pivot[lead] = store[stored].data();
        ++stored;
        ++rank;
        return true;
      }
      row_submul(f, work.data(), work[lead], pivot_row, n);
    }
  }
};

}  // namespace flagdet

/// A full flag in n-space, in the canonical form where row i is the new
/// reduced-echelon row of the span of the first i+1 subspace generators.
/// Equality of flags is equality of these matrices.
class Flag {
 public:
  Flag() = default;

  /// Canonicalizes an arbitrary ordered basis; rows are field element
  /// indices into the realization's tower, row-major, n rows of n entries.
  static Flag from_rows(RealizationPtr real,
                        const std::array<std::uint32_t, 16>& rows) {
    Flag fl;
    fl.real_ = std::move(real);
    const int n = fl.real_->n();
    flagdet::FieldView f(*fl.real_->tower());
    std::array<std::array<std::uint32_t, 4>, 4> rref{};  // running RREF rows
    std::array<int, 4> rref_pivot{};
    int have = 0;
    for (int i = 0; i < n; ++i) {
      std::array<std::uint32_t, 4> work{};
      for (int k = 0; k < n; ++k) work[k] = rows[i * 4 + k];
      // reduce by current pivots
      for (int r = 0; r < have; ++r) {
        std::uint32_t c = work[rref_pivot[r]];
        if (c != 0) flagdet::row_submul(f, work.data(), c, rref[r].data(), n);
      }
      int lead = flagdet::leading_index(work.data(), n);
      if (lead < 0)
        fail(ErrorCode::RealizationMismatch, "rows are linearly dependent");
      std::uint32_t inv = f.invv(work[lead]);
      for (int k = 0; k < n; ++k) work[k] = f.mulv(inv, work[k]);
      // eliminate the new pivot from earlier RREF rows
      for (int r = 0; r < have; ++r) {
        std::uint32_t c = rref[r][lead];
        if (c != 0) flagdet::row_submul(f, rref[r].data(), c, work.data(), n);
      }
      rref[have] = work;
      rref_pivot[have] = lead;
      ++have;
      for (int k = 0; k < n; ++k) fl.rows_[i * 4 + k] = work[k];
      fl.pivots_[i] = static_cast<std::uint8_t>(lead);
    }
    return fl;
  }

  static Flag standard(const RealizationPtr& real) {
    std::array<std::uint32_t, 16> rows{};
    for (int i = 0; i < real->n(); ++i) rows[i * 4 + i] = 1;
    return from_rows(real, rows);
  }

  const RealizationPtr& realization() const { return real_; }
  int n() const { return real_->n(); }
  const std::array<std::uint32_t, 16>& rows() const { return rows_; }
  const std::uint32_t* row(int i) const { return rows_.data() + i * 4; }
  int pivot(int i) const { return pivots_[i]; }

  friend bool operator==(const Flag& a, const Flag& b) {
    return a.real_ == b.real_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const Flag& a, const Flag& b) { return !(a == b); }
  friend bool operator<(const Flag& a, const Flag& b) {
    return a.rows_ < b.rows_;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint32_t x : rows_)
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  RealizationPtr real_;
  std::array<std::uint32_t, 16> rows_{};
  std::array<std::uint8_t, 4> pivots_{};
};

struct FlagHash {
  std::size_t operator()(const Flag& f) const { return f.hash(); }
};

inline void require_same_realization(const Flag& a, const Flag& b) {
  if (a.realization() != b.realization())
    fail(ErrorCode::RealizationMismatch, "flags from different realizations");
}

inline Flag base_flag(const RealizationPtr& real) { return Flag::standard(real); }

/// The permutation w with dim(a_i intersect b_j) = #{k <= j : w(k) <= i},
/// computed from the rank profile of stacked prefixes.
inline RelPos relpos(const Flag& a, const Flag& b) {
  require_same_realization(a, b);
  const int n = a.n();
  flagdet::FieldView f(*a.realization()->tower());
  // ranks[i][j] = rank of (first i rows of a) + (first j rows of b)
  std::array<std::array<std::uint8_t, 5>, 5> ranks{};
  for (int j = 0; j <= n; ++j) ranks[0][j] = static_cast<std::uint8_t>(j);
  for (int j = 0; j <= n; ++j) ranks[n][j] = static_cast<std::uint8_t>(n);
  for (int i = 1; i < n; ++i) {
    flagdet::Echelon ech(f, n);
    for (int r = 0; r < i; ++r) ech.seed(a.row(r), a.pivot(r));
    ranks[i][0] = static_cast<std::uint8_t>(i);
    for (int j = 0; j < n; ++j) {
      ech.insert(b.row(j));
      ranks[i][j + 1] = static_cast<std::uint8_t>(ech.rank);
    }
  }
  RelPos out;
  out.n = static_cast<std::uint8_t>(n);
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) {
      // dim(a_i ^ b_j) = i + j - rank
      int d11 = i + j - ranks[i][j];
      int d01 = (i - 1) + j - ranks[i - 1][j];
      int d10 = i + (j - 1) - ranks[i][j - 1];
      int d00 = (i - 1) + (j - 1) - ranks[i - 1][j - 1];
      if (d11 - d01 - d10 + d00 == 1) {
        out.w[j - 1] = static_cast<std::uint8_t>(i - 1);
        break;
      }
    }
  }
  return out;
}

namespace flagdet {

/// Basis of {x : for every row v of M, sum_k x_k * v_{rev?}(k) = 0}.
/// Rows of M are already the linear-functional coefficients.
inline int kernel_basis(const FieldView& f, int n,
                        const std::array<std::array<std::uint32_t, 4>, 4>& M,
                        int mrows,
                        std::array<std::array<std::uint32_t, 4>, 4>& out) {
  // RREF of M
  std::array<std::array<std::uint32_t, 4>, 4> R{};
  std::array<int, 4> piv{};
  int rank = 0;
  for (int r = 0; r < mrows; ++r) {
    std::array<std::uint32_t, 4> work = M[r];
    for (int t = 0; t < rank; ++t) {
      std::uint32_t c = work[piv[t]];
      if (c != 0) row_submul(f, work.data(), c, R[t].data(), n);
    }
    int lead = leading_index(work.data(), n);
    if (lead < 0) continue;
    std::uint32_t inv = f.invv(work[lead]);
    for (int k = 0; k < n; ++k) work[k] = f.mulv(inv, work[k]);
    for (int t = 0; t < rank; ++t) {
      std::uint32_t c = R[t][lead];
      if (c != 0) row_submul(f, R[t].data(), c, work.data(), n);
    }
    R[rank] = work;
    piv[rank] = lead;
    ++rank;
  }
  // free columns give the kernel basis
  std::array<bool, 4> is_piv{};
  for (int t = 0; t < rank; ++t) is_piv[piv[t]] = true;
  int nb = 0;
  for (int free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    std::array<std::uint32_t, 4> v{};
    v[free] = 1;
    for (int t = 0; t < rank; ++t) v[piv[t]] = f.negv(R[t][free]);
    out[nb++] = v;
  }
  return nb;
}

}  // namespace flagdet

/// Frobenius of the realization acting on flags. Split: entrywise q-th
/// power. Unitary: F_i maps to the pairing-dual of the entrywise q-th power
/// of F_{n-i}; the composition squares to the q^2 Frobenius, and its fixed
/// flags are the rational points.
inline Flag frobenius_flag(const RealizationPtr& real, const Flag& fl) {
  const int n = real->n();
  const auto& tower = *real->tower();
  if (real->kind() == RealizationKind::Split) {
    std::array<std::uint32_t, 16> rows{};
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        rows[i * 4 + k] = tower.frob_q_i(fl.rows()[i * 4 + k]);
    return Flag::from_rows(real, rows);
  }
  flagdet::FieldView f(tower);
  // phi(rows), with columns reversed: functional matrix for the pairing
  std::array<std::array<std::uint32_t, 4>, 4> phi{};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      phi[i][k] = tower.frob_q_i(fl.rows()[i * 4 + (n - 1 - k)]);
  // chain of dual spaces, smallest first; keep each first independent row
  std::array<std::uint32_t, 16> rows{};
  flagdet::Echelon filter(f, n);
  int taken = 0;
  for (int i = 1; i <= n; ++i) {
    std::array<std::array<std::uint32_t, 4>, 4> ker{};
    int nb = flagdet::kernel_basis(f, n, phi, n - i, ker);
    for (int b = 0; b < nb && taken < i; ++b) {
      if (filter.insert(ker[b].data())) {
        for (int k = 0; k < n; ++k) rows[taken * 4 + k] = ker[b][k];
        ++taken;
      }
    }
    if (taken != i)
      fail(ErrorCode::RealizationMismatch, "dual chain failed to extend");
  }
  return Flag::from_rows(real, rows);
}

/// Streams every full flag with coordinates in F_{q^m} (split) or
/// F_{q^{2m}} (unitary), in canonical form, each exactly once. The visit
/// order is deterministic but not sorted.
inline void for_each_flag(const RealizationPtr& real, int m,
                          const std::function<void(const Flag&)>& fn) {
  const int n = real->n();
  const int deg = real->def_degree() * m;
  if (real->tower()->degree() % deg != 0)
    fail(ErrorCode::BoundExceeded,
         "extension degree " + std::to_string(m) +
             " is outside the tower; rebuild the realization with a larger "
             "max_m");
  const auto& K = real->tower()->subfield_elements(deg);
  const std::uint64_t k = K.size();
  // flag count = prod_{i=2}^n (k^i - 1)/(k - 1); bail out early when huge
  unsigned __int128 count = 1;
  for (int i = 2; i <= n; ++i) {
    unsigned __int128 num = 1;
    for (int j = 0; j < i; ++j) num *= k;
    count *= (num - 1) / (k - 1);
    if (count > real->flag_bound())
      fail(ErrorCode::BoundExceeded,
           "flag enumeration exceeds bound " +
               std::to_string(real->flag_bound()));
  }
  // generate canonical matrices directly: choose a pivot per row, zeros at
  // earlier pivot columns and left of the own pivot, free entries from K
  std::array<std::uint32_t, 16> rows{};
  std::array<bool, 4> used{};
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      Flag fl = Flag::from_rows(real, rows);
      fn(fl);
      return;
    }
    for (int pivot = 0; pivot < n; ++pivot) {
      if (used[pivot]) continue;
      used[pivot] = true;
      std::array<int, 4> free_pos{};
      int nfree = 0;
      for (int c = pivot + 1; c < n; ++c)
        if (!used[c]) free_pos[nfree++] = c;
      for (int c = 0; c < n; ++c) rows[i * 4 + c] = 0;
      rows[i * 4 + pivot] = 1;
      std::function<void(int)> fill = [&](int fidx) {
        if (fidx == nfree) {
          rec(i + 1);
          return;
        }
        for (std::uint64_t e = 0; e < k; ++e) {
          rows[i * 4 + free_pos[fidx]] = K[e];
          fill(fidx + 1);
        }
        rows[i * 4 + free_pos[fidx]] = 0;
      };
      fill(0);
      used[pivot] = false;
    }
  };
  rec(0);
}

/// All flags at level m, canonically sorted.
inline std::vector<Flag> enumerate_flags(const RealizationPtr& real, int m) {
  std::vector<Flag> out;
  for_each_flag(real, m, [&](const Flag& f) { out.push_back(f); });
  std::sort(out.begin(), out.end());
  return out;
}

/// Points of X(w) visible at level m: flags whose relative position with
/// their Frobenius image is w.
inline std::vector<Flag> dl_points(const RealizationPtr& real, const RelPos& w,
                                   int m) {
  std::vector<Flag> out;
  for_each_flag(real, m, [&](const Flag& f) {
    if (relpos(f, frobenius_flag(real, f)) == w) out.push_back(f);
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline RelPos schubert_cell_of(const RealizationPtr& real, const Flag& base,
                               const Flag& f) {
  (void)real;
  return relpos(base, f);
}

/// A partial flag: the subspaces of a full flag at the retained dimensions.
/// Stored as the concatenated reduced row echelon bases, one block per
/// dimension, which makes equality representational.
struct PartialFlag {
  RealizationPtr real;
  std::vector<int> dims;             // retained dimensions, ascending
  std::vector<std::uint32_t> rows;   // sum(dims) rows of n entries, padded to 4

  friend bool operator==(const PartialFlag& a, const PartialFlag& b) {
    return a.real == b.real && a.dims == b.dims && a.rows == b.rows;
  }
  friend bool operator!=(const PartialFlag& a, const PartialFlag& b) {
    return !(a == b);
  }
  friend bool operator<(const PartialFlag& a, const PartialFlag& b) {
    if (a.dims != b.dims) return a.dims < b.dims;
    return a.rows < b.rows;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int d : dims) h ^= d + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    for (std::uint32_t x : rows)
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct PartialFlagHash {
  std::size_t operator()(const PartialFlag& p) const { return p.hash(); }
};

namespace flagdet {

/// Full RREF block of the span of `count` rows, rows sorted by pivot.
inline void rref_block(const FieldView& f, int n,
                       const std::uint32_t* src_rows, int count,
                       std::vector<std::uint32_t>& out) {
  std::array<std::array<std::uint32_t, 4>, 4> R{};
  std::array<int, 4> piv{};
  int rank = 0;
  for (int r = 0; r < count; ++r) {
    std::array<std::uint32_t, 4> work{};
    for (int k = 0; k < n; ++k) work[k] = src_rows[r * 4 + k];
    for (int t = 0; t < rank; ++t) {
      std::uint32_t c = work[piv[t]];
      if (c != 0) row_submul(f, work.data(), c, R[t].data(), n);
    }
    int lead = leading_index(work.data(), n);
    if (lead < 0) continue;
    std::uint32_t inv = f.invv(work[lead]);
    for (int k = 0; k < n; ++k) work[k] = f.mulv(inv, work[k]);
    for (int t = 0; t < rank; ++t) {
      std::uint32_t c = R[t][lead];
      if (c != 0) row_submul(f, R[t].data(), c, work.data(), n);
    }
    R[rank] = work;
    piv[rank] = lead;
    ++rank;
  }
  std::array<int, 4> order{};
  for (int t = 0; t < rank; ++t) order[t] = t;
  std::sort(order.begin(), order.begin() + rank,
            [&](int x, int y) { return piv[x] < piv[y]; });
  for (int t = 0; t < rank; ++t)
    for (int k = 0; k < 4; ++k) out.push_back(k < n ? R[order[t]][k] : 0);
}

}  // namespace flagdet

/// Forgets the subspaces whose dimensions are crossed by the reflections in
/// J: generator i crosses dimension i+1. J = empty keeps the full flag.
inline PartialFlag project_partial(const RealizationPtr& real, const Flag& f,
                                   const GeneratorSet& J) {
  const int n = real->n();
  PartialFlag out;
  out.real = real;
  flagdet::FieldView fv(*real->tower());
  for (int d = 1; d <= n - 1; ++d) {
    if (J.count(d - 1)) continue;
    out.dims.push_back(d);
    flagdet::rref_block(fv, n, f.rows().data(), d, out.rows);
  }
  return out;
}

/// Frobenius on partial flags with a sigma-stable dimension set.
inline PartialFlag frobenius_partial(const RealizationPtr& real,
                                     const PartialFlag& pf) {
  const int n = real->n();
  const auto& tower = *real->tower();
  flagdet::FieldView fv(tower);
  PartialFlag out;
  out.real = real;
  out.dims = pf.dims;
  if (real->kind() == RealizationKind::Split) {
    std::size_t off = 0;
    for (int d : pf.dims) {
      std::vector<std::uint32_t> block(pf.rows.begin() + off,
                                       pf.rows.begin() + off + 4 * d);
      for (auto& x : block) x = tower.frob_q_i(x);
      flagdet::rref_block(fv, n, block.data(), d, out.rows);
      off += 4 * d;
    }
    return out;
  }
  // unitary: dims must be symmetric under d -> n-d
  for (int d : pf.dims) {
    bool found = false;
    for (int e : pf.dims)
      if (e == n - d) found = true;
    if (!found)
      fail(ErrorCode::RealizationMismatch,
           "dimension set is not stable under the diagram flip");
  }
  auto block_offset = [&](int dim) {
    std::size_t off = 0;
    for (int d : pf.dims) {
      if (d == dim) return off;
      off += 4 * static_cast<std::size_t>(d);
    }
    fail(ErrorCode::RealizationMismatch, "dimension not retained");
  };
  for (int d : pf.dims) {
    int src_dim = n - d;
    std::size_t off = block_offset(src_dim);
    std::array<std::array<std::uint32_t, 4>, 4> phi{};
    for (int r = 0; r < src_dim; ++r)
      for (int k = 0; k < n; ++k)
        phi[r][k] = tower.frob_q_i(pf.rows[off + r * 4 + (n - 1 - k)]);
    std::array<std::array<std::uint32_t, 4>, 4> ker{};
    int nb = flagdet::kernel_basis(fv, n, phi, src_dim, ker);
    std::vector<std::uint32_t> flat;
    for (int b = 0; b < nb; ++b)
      for (int k = 0; k < 4; ++k) flat.push_back(k < n ? ker[b][k] : 0);
    flagdet::rref_block(fv, n, flat.data(), nb, out.rows);
  }
  return out;
}

inline bool is_rational_partial(const RealizationPtr& real,
                                const PartialFlag& pf) {
  return frobenius_partial(real, pf) == pf;
}

}  // namespace dlconn

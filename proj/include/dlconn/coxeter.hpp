#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dlconn/errors.hpp"

namespace dlconn {

/// Subset of the simple reflections, by 0-based generator index.
using GeneratorSet = std::set<int>;

enum class Side { Left, Right };

namespace detail {

struct IntVecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

struct U16VecHash {
  std::size_t operator()(const std::vector<std::uint16_t>& v) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint16_t x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

}  // namespace detail

/// A finite Coxeter group presented by its Coxeter matrix, realized on the
/// root system of an integral Cartan realization. Off-diagonal bond labels
/// must lie in {2,3,4,6} (the crystallographic cases); this is exactly the
/// family where the reflection representation can be carried out in exact
/// integer arithmetic, and it covers every Weyl group of a reductive group.
///
/// Roots are indexed 0..2P-1: positives first (simple root i at index i),
/// and index P+k is the negative of positive k. Elements act on this index
/// set; an element is pinned down by the images of the simple roots.
class CoxeterDatum : public std::enable_shared_from_this<CoxeterDatum> {
 public:
  /// Builds the datum and discovers the root system by closure. Throws
  /// UnsupportedMatrix for invalid or non-crystallographic matrices and
  /// InfiniteGroup when the root closure does not stay finite.
  static std::shared_ptr<const CoxeterDatum> make(
      std::vector<std::vector<int>> coxeter_matrix, std::string type_label = "") {
    auto d = std::shared_ptr<CoxeterDatum>(new CoxeterDatum());
    d->matrix_ = std::move(coxeter_matrix);
    d->label_ = std::move(type_label);
    d->init();
    return d;
  }

  /// Standard finite type labels: A<n>, B<n>, C<n>, D<n>, E6..E8, F4, G2.
  static std::shared_ptr<const CoxeterDatum> of_type(const std::string& label);

  int rank() const { return rank_; }
  const std::string& type_label() const { return label_; }
  const std::vector<std::vector<int>>& coxeter_matrix() const { return matrix_; }
  int bond(int s, int t) const { return matrix_[s][t]; }

  int num_positive_roots() const { return num_positive_; }
  int num_roots() const { return 2 * num_positive_; }
  const std::vector<int>& root_coords(int idx) const { return roots_[idx % num_positive_]; }
  bool root_is_positive(int idx) const { return idx < num_positive_; }
  int negate_root(int idx) const {
    return idx < num_positive_ ? idx + num_positive_ : idx - num_positive_;
  }

  /// Index of s_i(root idx); precomputed for all roots.
  int reflect_root(int i, int idx) const { return refl_[i][idx]; }

  /// Index of the root with coordinate vector `v` (simple-root basis).
  int root_index(const std::vector<int>& v) const {
    bool nonneg = true;
    for (int c : v) {
      if (c < 0) { nonneg = false; break; }
    }
    if (nonneg) {
      auto it = root_index_.find(v);
      if (it == root_index_.end())
        fail(ErrorCode::UnsupportedMatrix, "vector is not a root");
      return it->second;
    }
    std::vector<int> neg(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
    auto it = root_index_.find(neg);
    if (it == root_index_.end())
      fail(ErrorCode::UnsupportedMatrix, "vector is not a root");
    return it->second + num_positive_;
  }

  int cartan(int i, int j) const { return cartan_[i][j]; }

 private:
  CoxeterDatum() = default;

  void init() {
    rank_ = static_cast<int>(matrix_.size());
    if (rank_ <= 0) fail(ErrorCode::UnsupportedMatrix, "rank must be positive");
    for (int i = 0; i < rank_; ++i) {
      if (static_cast<int>(matrix_[i].size()) != rank_)
        fail(ErrorCode::UnsupportedMatrix, "matrix is not square");
      if (matrix_[i][i] != 1)
        fail(ErrorCode::UnsupportedMatrix, "diagonal entries must be 1");
      for (int j = 0; j < rank_; ++j) {
        if (matrix_[i][j] != matrix_[j][i])
          fail(ErrorCode::UnsupportedMatrix, "matrix must be symmetric");
        if (i != j && matrix_[i][j] < 2)
          fail(ErrorCode::UnsupportedMatrix, "off-diagonal entries must be >= 2");
      }
    }
    // Integral Cartan pairing per bond; only crystallographic labels admit one.
    cartan_.assign(rank_, std::vector<int>(rank_, 0));
    for (int i = 0; i < rank_; ++i) cartan_[i][i] = 2;
    for (int i = 0; i < rank_; ++i) {
      for (int j = i + 1; j < rank_; ++j) {
        int m = matrix_[i][j];
        int a = 0, b = 0;
        switch (m) {
          case 2: a = b = 0; break;
          case 3: a = b = -1; break;
          case 4: a = -1; b = -2; break;
          case 6: a = -1; b = -3; break;
          default:
            fail(ErrorCode::UnsupportedMatrix,
                 "bond label " + std::to_string(m) +
                     " has no integral realization (supported: 2,3,4,6)");
        }
        cartan_[i][j] = a;  // coefficient of alpha_i in s_i(alpha_j)
        cartan_[j][i] = b;
      }
    }
    discover_roots();
    build_reflection_tables();
  }

  void discover_roots() {
    const std::size_t root_bound =
        std::max<std::size_t>(240, 2 * static_cast<std::size_t>(rank_) * rank_);
    for (int i = 0; i < rank_; ++i) {
      std::vector<int> e(rank_, 0);
      e[i] = 1;
      root_index_.emplace(e, i);
      roots_.push_back(std::move(e));
    }
    for (std::size_t head = 0; head < roots_.size(); ++head) {
      for (int i = 0; i < rank_; ++i) {
        std::vector<int> v = roots_[head];
        int dot = 0;
        for (int j = 0; j < rank_; ++j) dot += cartan_[i][j] * v[j];
        v[i] -= dot;
        bool nonneg = true;
        for (int c : v) {
          if (c < 0) { nonneg = false; break; }
        }
        if (!nonneg) continue;  // s_i(alpha_i) = -alpha_i is the only flip
        if (root_index_.count(v)) continue;
        if (roots_.size() >= root_bound)
          fail(ErrorCode::InfiniteGroup,
               "root closure exceeds bound; the group is not finite");
        root_index_.emplace(v, static_cast<int>(roots_.size()));
        roots_.push_back(std::move(v));
      }
    }
    num_positive_ = static_cast<int>(roots_.size());
  }

  void build_reflection_tables() {
    refl_.assign(rank_, std::vector<std::uint16_t>(2 * num_positive_, 0));
    for (int i = 0; i < rank_; ++i) {
      for (int r = 0; r < num_positive_; ++r) {
        std::vector<int> v = roots_[r];
        int dot = 0;
        for (int j = 0; j < rank_; ++j) dot += cartan_[i][j] * v[j];
        v[i] -= dot;
        int idx = root_index(v);
        refl_[i][r] = static_cast<std::uint16_t>(idx);
        refl_[i][r + num_positive_] =
            static_cast<std::uint16_t>(negate_root(idx));
      }
    }
  }

  int rank_ = 0;
  int num_positive_ = 0;
  std::string label_;
  std::vector<std::vector<int>> matrix_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<int>> roots_;  // positive roots, simple-root basis
  std::unordered_map<std::vector<int>, int, detail::IntVecHash> root_index_;
  std::vector<std::vector<std::uint16_t>> refl_;
};

using DatumPtr = std::shared_ptr<const CoxeterDatum>;

/// Group element, stored as the images of the simple roots under w and
/// under w^{-1} (root indices), plus the cached length. Both directions are
/// kept so that left and right descent tests are O(1).
class WeylElement {
 public:
  static WeylElement identity(DatumPtr datum) {
    WeylElement w;
    w.datum_ = std::move(datum);
    int n = w.datum_->rank();
    w.img_.resize(n);
    w.inv_img_.resize(n);
    for (int i = 0; i < n; ++i) w.img_[i] = w.inv_img_[i] = static_cast<std::uint16_t>(i);
    w.len_ = 0;
    return w;
  }

  const DatumPtr& datum() const { return datum_; }
  unsigned length() const { return len_; }
  bool is_identity() const { return len_ == 0; }

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.datum_ == b.datum_ && a.img_ == b.img_;
  }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) {
    return !(a == b);
  }

  /// ws < w (Right) or sw < w (Left).
  bool is_descent(int s, Side side) const {
    const auto& v = side == Side::Right ? img_ : inv_img_;
    return v[s] >= datum_->num_positive_roots();
  }

  /// w * s_i
  WeylElement mult_gen_right(int i) const {
    WeylElement r = *this;
    const int P = datum_->num_positive_roots();
    r.len_ += img_[i] < P ? 1 : -1;
    // (w s_i)(a_j) = w(a_j) - c_{ij} w(a_i), and (w s_i)(a_i) = -w(a_i)
    std::vector<int> scratch(datum_->rank());
    for (int j = 0; j < datum_->rank(); ++j) {
      if (j == i) {
        r.img_[j] = static_cast<std::uint16_t>(datum_->negate_root(img_[i]));
        continue;
      }
      int c = datum_->cartan(i, j);
      if (c == 0) continue;
      root_linear(datum_.get(), img_[j], -c, img_[i], scratch);
      r.img_[j] = static_cast<std::uint16_t>(datum_->root_index(scratch));
    }
    // (w s_i)^{-1} = s_i w^{-1}: plain reflection on the inverse images
    for (int j = 0; j < datum_->rank(); ++j)
      r.inv_img_[j] = static_cast<std::uint16_t>(datum_->reflect_root(i, inv_img_[j]));
    return r;
  }

  /// s_i * w
  WeylElement mult_gen_left(int i) const {
    WeylElement r = *this;
    const int P = datum_->num_positive_roots();
    r.len_ += inv_img_[i] < P ? 1 : -1;
    for (int j = 0; j < datum_->rank(); ++j)
      r.img_[j] = static_cast<std::uint16_t>(datum_->reflect_root(i, img_[j]));
    std::vector<int> scratch(datum_->rank());
    for (int j = 0; j < datum_->rank(); ++j) {
      if (j == i) {
        r.inv_img_[j] = static_cast<std::uint16_t>(datum_->negate_root(inv_img_[i]));
        continue;
      }
      int c = datum_->cartan(i, j);
      if (c == 0) continue;
      root_linear(datum_.get(), inv_img_[j], -c, inv_img_[i], scratch);
      r.inv_img_[j] = static_cast<std::uint16_t>(datum_->root_index(scratch));
    }
    return r;
  }

  WeylElement inverse() const {
    WeylElement r = *this;
    std::swap(r.img_, r.inv_img_);
    return r;
  }

  /// Image of an arbitrary root index under w, by linearity.
  int act_on_root(int idx) const {
    const auto& coords = datum_->root_coords(idx);
    bool neg = !datum_->root_is_positive(idx);
    std::vector<int> acc(datum_->rank(), 0);
    for (int j = 0; j < datum_->rank(); ++j) {
      int c = neg ? -coords[j] : coords[j];
      if (c == 0) continue;
      const auto& im = datum_->root_coords(img_[j]);
      int sign = datum_->root_is_positive(img_[j]) ? 1 : -1;
      for (int k = 0; k < datum_->rank(); ++k) acc[k] += sign * c * im[k];
    }
    return datum_->root_index(acc);
  }

  /// The lexicographically smallest reduced word (0-based generator letters).
  std::vector<int> canonical_word() const {
    std::vector<int> word;
    WeylElement w = *this;
    word.reserve(len_);
    while (!w.is_identity()) {
      int i = 0;
      while (!w.is_descent(i, Side::Left)) ++i;
      word.push_back(i);
      w = w.mult_gen_left(i);
    }
    return word;
  }

  std::size_t hash() const {
    detail::U16VecHash h;
    return h(img_);
  }

  const std::vector<std::uint16_t>& root_images() const { return img_; }

 private:
  static void root_linear(const CoxeterDatum* d, int a_idx, int scale_b,
                          int b_idx, std::vector<int>& out) {
    const auto& a = d->root_coords(a_idx);
    const auto& b = d->root_coords(b_idx);
    int sa = d->root_is_positive(a_idx) ? 1 : -1;
    int sb = d->root_is_positive(b_idx) ? 1 : -1;
    for (int k = 0; k < d->rank(); ++k)
      out[k] = sa * a[k] + scale_b * sb * b[k];
  }

  DatumPtr datum_;
  std::vector<std::uint16_t> img_;
  std::vector<std::uint16_t> inv_img_;
  unsigned len_ = 0;
};

struct WeylElementHash {
  std::size_t operator()(const WeylElement& w) const { return w.hash(); }
};

inline void require_same_datum(const WeylElement& a, const WeylElement& b) {
  if (a.datum() != b.datum())
    fail(ErrorCode::DatumMismatch, "elements belong to different group data");
}

inline unsigned length(const WeylElement& w) { return w.length(); }

inline WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  require_same_datum(a, b);
  WeylElement r = a;
  for (int i : b.canonical_word()) r = r.mult_gen_right(i);
  return r;
}

inline bool descent(const WeylElement& w, int s, Side side) {
  return w.is_descent(s, side);
}

/// Bruhat order test by the descent recursion: pick a left descent s of w;
/// then v <= w iff (sv <= sw when sv < v, else v <= sw).
inline bool bruhat_leq(const WeylElement& v_in, const WeylElement& w_in) {
  require_same_datum(v_in, w_in);
  WeylElement v = v_in, w = w_in;
  for (;;) {
    if (v.length() > w.length()) return false;
    if (v.is_identity()) return true;
    int s = 0;
    while (!w.is_descent(s, Side::Left)) ++s;
    w = w.mult_gen_left(s);
    if (v.is_descent(s, Side::Left)) v = v.mult_gen_left(s);
  }
}

inline GeneratorSet support(const WeylElement& w) {
  GeneratorSet s;
  for (int i : w.canonical_word()) s.insert(i);
  return s;
}

inline std::string element_to_string(const WeylElement& w) {
  std::string out;
  bool first = true;
  for (int i : w.canonical_word()) {
    if (!first) out.push_back('.');
    out += std::to_string(i);
    first = false;
  }
  return out;
}

inline WeylElement element_from_word(DatumPtr datum,
                                     const std::vector<int>& word) {
  WeylElement w = WeylElement::identity(std::move(datum));
  for (int i : word) {
    if (i < 0 || i >= w.datum()->rank())
      fail(ErrorCode::ParseError, "generator index out of range");
    w = w.mult_gen_right(i);
  }
  return w;
}

inline WeylElement element_from_string(DatumPtr datum, const std::string& s) {
  std::vector<int> word;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t dot = s.find('.', pos);
    std::string tok = s.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (tok.empty()) fail(ErrorCode::ParseError, "empty generator token");
    word.push_back(std::stoi(tok));
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return element_from_word(std::move(datum), word);
}

/// Canonical order: by length, then lexicographically by canonical word.
inline bool canonical_less(const WeylElement& a, const WeylElement& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.canonical_word() < b.canonical_word();
}

namespace detail {

inline std::vector<WeylElement> closure_bfs(const DatumPtr& datum,
                                            const std::vector<int>& gens,
                                            std::size_t bound) {
  std::vector<WeylElement> all;
  std::unordered_set<std::vector<std::uint16_t>, U16VecHash> seen;
  all.push_back(WeylElement::identity(datum));
  seen.insert(all[0].root_images());
  for (std::size_t head = 0; head < all.size(); ++head) {
    WeylElement w = all[head];
    for (int i : gens) {
      if (w.is_descent(i, Side::Right)) continue;  // ascend only
      WeylElement nxt = w.mult_gen_right(i);
      if (seen.insert(nxt.root_images()).second) {
        if (all.size() >= bound)
          fail(ErrorCode::GroupTooLarge,
               "group enumeration exceeds bound " + std::to_string(bound));
        all.push_back(std::move(nxt));
      }
    }
  }
  return all;
}

inline void canonical_sort(std::vector<WeylElement>& v) {
  std::vector<std::pair<std::vector<int>, std::size_t>> keys;
  keys.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    keys.emplace_back(v[i].canonical_word(), i);
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    if (v[a.second].length() != v[b.second].length())
      return v[a.second].length() < v[b.second].length();
    return a.first < b.first;
  });
  std::vector<WeylElement> out;
  out.reserve(v.size());
  for (auto& k : keys) out.push_back(std::move(v[k.second]));
  v = std::move(out);
}

}  // namespace detail

/// All elements of W, sorted by (length, lex smallest reduced word).
inline std::vector<WeylElement> enumerate_group(const DatumPtr& datum,
                                                std::size_t bound = 1000000) {
  std::vector<int> gens(datum->rank());
  for (int i = 0; i < datum->rank(); ++i) gens[i] = i;
  auto all = detail::closure_bfs(datum, gens, bound);
  detail::canonical_sort(all);
  return all;
}

/// The standard parabolic subgroup W_J, canonically sorted.
inline std::vector<WeylElement> parabolic_elements(const DatumPtr& datum,
                                                   const GeneratorSet& J,
                                                   std::size_t bound = 1000000) {
  std::vector<int> gens(J.begin(), J.end());
  for (int i : gens) {
    if (i < 0 || i >= datum->rank())
      fail(ErrorCode::ParseError, "generator index out of range");
  }
  auto all = detail::closure_bfs(datum, gens, bound);
  detail::canonical_sort(all);
  return all;
}

/// Longest element of W_J (identity for empty J), found by greedy ascent.
inline WeylElement longest_element(const DatumPtr& datum, const GeneratorSet& J) {
  for (int i : J) {
    if (i < 0 || i >= datum->rank())
      fail(ErrorCode::ParseError, "generator index out of range");
  }
  WeylElement w = WeylElement::identity(datum);
  for (;;) {
    int pick = -1;
    for (int i : J) {
      if (!w.is_descent(i, Side::Right)) { pick = i; break; }
    }
    if (pick < 0) return w;
    w = w.mult_gen_right(pick);
  }
}

inline std::shared_ptr<const CoxeterDatum> CoxeterDatum::of_type(
    const std::string& label) {
  if (label.size() < 2)
    fail(ErrorCode::ParseError, "type label too short: " + label);
  char family = label[0];
  int n = 0;
  try {
    n = std::stoi(label.substr(1));
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad rank in type label: " + label);
  }
  auto chain = [&](int rank) {
    std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 2));
    for (int i = 0; i < rank; ++i) m[i][i] = 1;
    for (int i = 0; i + 1 < rank; ++i) m[i][i + 1] = m[i + 1][i] = 3;
    return m;
  };
  std::vector<std::vector<int>> m;
  switch (family) {
    case 'A':
      if (n < 1) fail(ErrorCode::ParseError, "A_n needs n >= 1");
      m = chain(n);
      break;
    case 'B':
    case 'C':
      if (n < 2) fail(ErrorCode::ParseError, "B_n/C_n needs n >= 2");
      m = chain(n);
      m[n - 2][n - 1] = m[n - 1][n - 2] = 4;
      break;
    case 'D':
      if (n < 3) fail(ErrorCode::ParseError, "D_n needs n >= 3");
      m = chain(n);
      m[n - 2][n - 1] = m[n - 1][n - 2] = 2;
      m[n - 3][n - 1] = m[n - 1][n - 3] = 3;
      break;
    case 'E':
      if (n < 6 || n > 8) fail(ErrorCode::ParseError, "E_n needs n in 6..8");
      // chain 0-1-...-(n-2) with node n-1 attached to node 2
      m = chain(n - 1);
      for (auto& row : m) row.push_back(2);
      m.emplace_back(n, 2);
      m[n - 1][n - 1] = 1;
      m[2][n - 1] = m[n - 1][2] = 3;
      break;
    case 'F':
      if (n != 4) fail(ErrorCode::ParseError, "F family only has F4");
      m = chain(4);
      m[1][2] = m[2][1] = 4;
      break;
    case 'G':
      if (n != 2) fail(ErrorCode::ParseError, "G family only has G2");
      m = {{1, 6}, {6, 1}};
      break;
    default:
      fail(ErrorCode::ParseError, "unknown type family: " + label);
  }
  return make(std::move(m), label);
}

}  // namespace dlconn

#include "galois/proj_space.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace galois {

void Matrix::append_row(std::span<const std::uint32_t> v) {
  if (rows == 0 && cols == 0) cols = v.size();
  if (v.size() != cols) throw std::invalid_argument("row length mismatch");
  data.insert(data.end(), v.begin(), v.end());
  ++rows;
}

std::vector<std::size_t> rref(const Field& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    const std::uint32_t s = f.inv(m.at(r, c));
    if (s != 1)
      for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), s);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      const std::uint32_t factor = m.at(i, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j < m.cols; ++j)
        if (m.at(r, j) != 0) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;
  m.data.resize(r * m.cols);
  return pivots;
}

std::size_t rank(const Field& f, Matrix m) { return rref(f, m).size(); }

Matrix nullspace(const Field& f, const Matrix& m) {
  Matrix red = m;
  const std::vector<std::size_t> pivots = rref(f, red);
  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  Matrix out(0, m.cols);
  for (std::size_t fc = 0; fc < m.cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<std::uint32_t> x(m.cols, 0);
    x[fc] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = f.neg(red.at(r, fc));
    out.append_row(x);
  }
  out.cols = m.cols;
  rref(f, out);
  return out;
}

Subspace Subspace::empty(int n) {
  Subspace s;
  s.n_ = n;
  s.k_ = -1;
  return s;
}

Subspace Subspace::from_rows(const Field& f, Matrix rows) {
  if (rows.cols == 0) throw std::invalid_argument("subspace needs at least one coordinate");
  rref(f, rows);
  Subspace s;
  s.n_ = static_cast<int>(rows.cols) - 1;
  s.k_ = static_cast<int>(rows.rows) - 1;
  s.entries_ = std::move(rows.data);
  return s;
}

Subspace Subspace::from_vectors(const Field& f, int n,
                                std::initializer_list<std::vector<std::uint32_t>> vectors) {
  Matrix m(0, static_cast<std::size_t>(n + 1));
  for (const auto& v : vectors) m.append_row(v);
  return from_rows(f, std::move(m));
}

Subspace Subspace::from_canonical(int n, int k, std::vector<std::uint32_t> entries) {
  if (entries.size() != static_cast<std::size_t>((k + 1) * (n + 1)))
    throw std::invalid_argument("canonical entries have the wrong size");
  Subspace s;
  s.n_ = n;
  s.k_ = k;
  s.entries_ = std::move(entries);
  return s;
}

Matrix Subspace::matrix() const {
  Matrix m(vector_dim(), static_cast<std::size_t>(n_ + 1));
  m.data = entries_;
  return m;
}

std::strong_ordering Subspace::operator<=>(const Subspace& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  if (auto c = k_ <=> o.k_; c != 0) return c;
  return std::lexicographical_compare_three_way(entries_.begin(), entries_.end(), o.entries_.begin(),
                                                o.entries_.end());
}

Subspace span(const Field& f, std::span<const Subspace> parts) {
  if (parts.empty()) throw std::invalid_argument("span of nothing");
  const int n = parts.front().n();
  Matrix m(0, static_cast<std::size_t>(n + 1));
  for (const Subspace& s : parts) {
    if (s.n() != n) throw std::invalid_argument("span of subspaces of different ambient spaces");
    for (std::size_t i = 0; i < s.vector_dim(); ++i) m.append_row(s.row(i));
  }
  if (m.rows == 0) return Subspace::empty(n);
  return Subspace::from_rows(f, std::move(m));
}

Subspace span(const Field& f, const Subspace& a, const Subspace& b) {
  const Subspace parts[] = {a, b};
  return span(f, parts);
}

Subspace meet(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.n() != b.n()) throw std::invalid_argument("meet of subspaces of different ambient spaces");
  if (a.is_empty() || b.is_empty()) return Subspace::empty(a.n());
  Matrix na = nullspace(f, a.matrix());
  const Matrix nb = nullspace(f, b.matrix());
  for (std::size_t i = 0; i < nb.rows; ++i) na.append_row(nb.row(i));
  na.cols = static_cast<std::size_t>(a.n() + 1);
  Matrix common = nullspace(f, na);
  if (common.rows == 0) return Subspace::empty(a.n());
  return Subspace::from_rows(f, std::move(common));
}

bool incident(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.n() != b.n()) throw std::invalid_argument("incidence of subspaces of different ambient spaces");
  if (a.is_empty() || b.is_empty()) return false;
  Matrix m = a.matrix();
  for (std::size_t i = 0; i < b.vector_dim(); ++i) m.append_row(b.row(i));
  return rank(f, std::move(m)) < a.vector_dim() + b.vector_dim();
}

bool contains(const Field& f, const Subspace& big, const Subspace& small) {
  if (big.n() != small.n()) throw std::invalid_argument("containment across ambient spaces");
  if (small.is_empty()) return true;
  if (small.dim() > big.dim()) return false;
  Matrix m = big.matrix();
  for (std::size_t i = 0; i < small.vector_dim(); ++i) m.append_row(small.row(i));
  return rank(f, std::move(m)) == big.vector_dim();
}

bool contains_vector(const Field& f, const Subspace& s, std::span<const std::uint32_t> v) {
  if (v.size() != static_cast<std::size_t>(s.n() + 1)) throw std::invalid_argument("vector length mismatch");
  if (s.is_empty()) return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
  Matrix m = s.matrix();
  m.append_row(v);
  return rank(f, std::move(m)) == s.vector_dim();
}

std::uint64_t gaussian_count(int n, int k, std::uint64_t q) {
  if (k < -1 || k > n) return 0;
  using u128 = unsigned __int128;
  const u128 limit = ~std::uint64_t{0};
  auto qpow = [&](int e) {
    u128 r = 1;
    for (int i = 0; i < e; ++i) {
      if (r > (~u128{0}) / q) throw std::overflow_error("gaussian coefficient overflow");
      r *= q;
    }
    return r;
  };
  u128 result = 1;
  for (int i = 0; i <= k; ++i) {
    const u128 num = qpow(n + 1 - i) - 1;
    const u128 den = qpow(i + 1) - 1;
    u128 prod;
    if (__builtin_mul_overflow(result, num, &prod)) throw std::overflow_error("gaussian coefficient overflow");
    result = prod / den;
  }
  if (result > limit) throw std::overflow_error("gaussian coefficient exceeds 64 bits");
  return static_cast<std::uint64_t>(result);
}

SubspaceList::SubspaceList(const Field& f, int n, int k) : n_(n), k_(k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("subspace enumeration needs 0 <= k <= n");
  const std::uint64_t total = gaussian_count(n, k, f.q());
  if (total > kBudget)
    throw BudgetError("enumeration of " + std::to_string(total) + " subspaces exceeds the budget");
  const std::size_t rows = static_cast<std::size_t>(k + 1);
  const std::size_t cols = static_cast<std::size_t>(n + 1);
  stride_ = rows * cols;
  count_ = static_cast<std::size_t>(total);
  std::vector<std::uint32_t> raw;
  raw.reserve(count_ * stride_);

  // Pivot columns first, then every assignment of the free entries.
  std::vector<std::size_t> piv(rows);
  std::iota(piv.begin(), piv.end(), 0);
  const std::uint32_t q = f.q();
  while (true) {
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : piv) is_pivot[c] = true;
    std::vector<std::size_t> free_pos;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = piv[r] + 1; c < cols; ++c)
        if (!is_pivot[c]) free_pos.push_back(r * cols + c);
    std::vector<std::uint32_t> cur(stride_, 0);
    for (std::size_t r = 0; r < rows; ++r) cur[r * cols + piv[r]] = 1;
    std::vector<std::uint32_t> digits(free_pos.size(), 0);
    while (true) {
      for (std::size_t t = 0; t < free_pos.size(); ++t) cur[free_pos[t]] = digits[t];
      raw.insert(raw.end(), cur.begin(), cur.end());
      std::size_t t = 0;
      while (t < digits.size() && ++digits[t] == q) digits[t++] = 0;
      if (t == digits.size()) break;
    }
    // next pivot combination
    int i = static_cast<int>(rows) - 1;
    while (i >= 0 && piv[static_cast<std::size_t>(i)] == cols - rows + static_cast<std::size_t>(i)) --i;
    if (i < 0) break;
    ++piv[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < rows; ++j) piv[j] = piv[j - 1] + 1;
  }
  if (raw.size() != count_ * stride_) throw std::logic_error("subspace enumeration count mismatch");

  std::vector<std::size_t> order(count_);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t stride = stride_;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(raw.begin() + static_cast<std::ptrdiff_t>(a * stride),
                                        raw.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride),
                                        raw.begin() + static_cast<std::ptrdiff_t>(b * stride),
                                        raw.begin() + static_cast<std::ptrdiff_t>((b + 1) * stride));
  });
  entries_.resize(raw.size());
  for (std::size_t i = 0; i < count_; ++i)
    std::copy_n(raw.begin() + static_cast<std::ptrdiff_t>(order[i] * stride_), stride_,
                entries_.begin() + static_cast<std::ptrdiff_t>(i * stride_));
}

Subspace SubspaceList::at(std::size_t i) const {
  if (i >= count_) throw std::out_of_range("subspace index out of range");
  auto e = entries_of(i);
  return Subspace::from_canonical(n_, k_, std::vector<std::uint32_t>(e.begin(), e.end()));
}

std::size_t SubspaceList::index_of(const Subspace& s) const {
  if (s.n() != n_ || s.dim() != k_)
    throw std::invalid_argument("subspace of dimension " + std::to_string(s.dim()) + " queried in list of " +
                                std::to_string(k_) + "-spaces");
  return index_of_entries(s.entries());
}

std::size_t SubspaceList::index_of_entries(std::span<const std::uint32_t> e) const {
  if (e.size() != stride_) throw std::invalid_argument("entry count mismatch");
  std::size_t lo = 0, hi = count_;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto m = entries_of(mid);
    if (std::lexicographical_compare(m.begin(), m.end(), e.begin(), e.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == count_ || !std::equal(e.begin(), e.end(), entries_of(lo).begin()))
    throw std::invalid_argument("subspace not in canonical form");
  return lo;
}

bool normalize(const Field& f, std::span<std::uint32_t> v) {
  auto it = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
  if (it == v.end()) return false;
  if (*it != 1) {
    const std::uint32_t s = f.inv(*it);
    for (auto jt = it; jt != v.end(); ++jt) *jt = f.mul(*jt, s);
  }
  return true;
}

namespace {
constexpr std::uint64_t kPointTableLimit = 1u << 24;
}

ProjectiveSpace::ProjectiveSpace(FieldPtr field, int n) : field_(std::move(field)), n_(n) {
  if (!field_) throw std::invalid_argument("null field");
  if (n < 1) throw std::invalid_argument("projective dimension must be positive");
  lists_.resize(static_cast<std::size_t>(n + 1));
  incidences_.resize(static_cast<std::size_t>(n + 1));
  lists_[0] = std::make_unique<SubspaceList>(*field_, n, 0);

  std::uint64_t size = 1;
  for (int i = 0; i <= n && size <= kPointTableLimit; ++i) size *= field_->q();
  if (size <= kPointTableLimit) {
    point_table_.assign(size, 0);
    const SubspaceList& pts = *lists_[0];
    const std::uint32_t q = field_->q();
    std::vector<std::uint32_t> v(static_cast<std::size_t>(n + 1));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto e = pts.entries_of(i);
      for (std::uint32_t s = 1; s < q; ++s) {
        std::uint64_t code = 0;
        for (std::size_t t = 0; t < e.size(); ++t) code = code * q + field_->mul(e[t], s);
        point_table_[code] = static_cast<std::uint32_t>(i);
      }
    }
    point_table_built_ = true;
  }
}

const SubspaceList& ProjectiveSpace::subspaces(int k) const {
  if (k < 0 || k > n_) throw std::invalid_argument("subspace dimension out of range");
  if (k == 0) return *lists_[0];
  std::lock_guard lock(mutex_);
  auto& slot = lists_[static_cast<std::size_t>(k)];
  if (!slot) slot = std::make_unique<SubspaceList>(*field_, n_, k);
  return *slot;
}

std::uint32_t ProjectiveSpace::point_index(std::span<const std::uint32_t> v) const {
  if (v.size() != static_cast<std::size_t>(n_ + 1)) throw std::invalid_argument("vector length mismatch");
  if (point_table_built_) {
    std::uint64_t code = 0;
    bool nonzero = false;
    for (std::uint32_t x : v) {
      code = code * field_->q() + x;
      nonzero |= x != 0;
    }
    if (!nonzero) throw std::invalid_argument("zero vector has no point");
    return point_table_[code];
  }
  std::vector<std::uint32_t> w(v.begin(), v.end());
  if (!normalize(*field_, w)) throw std::invalid_argument("zero vector has no point");
  return static_cast<std::uint32_t>(lists_[0]->index_of_entries(w));
}

std::vector<std::uint32_t> ProjectiveSpace::points_of(const Subspace& s) const {
  if (s.n() != n_) throw std::invalid_argument("subspace from another ambient space");
  std::vector<std::uint32_t> out;
  if (s.is_empty()) return out;
  const std::size_t d = s.vector_dim();
  const std::size_t len = static_cast<std::size_t>(n_ + 1);
  const std::uint32_t q = field_->q();
  std::vector<std::uint32_t> coef(d), v(len);
  for (std::size_t lead = 0; lead < d; ++lead) {
    std::fill(coef.begin(), coef.end(), 0);
    coef[lead] = 1;
    while (true) {
      std::fill(v.begin(), v.end(), 0);
      for (std::size_t r = lead; r < d; ++r) {
        if (coef[r] == 0) continue;
        auto row = s.row(r);
        for (std::size_t c = 0; c < len; ++c)
          if (row[c] != 0) v[c] = field_->add(v[c], field_->mul(coef[r], row[c]));
      }
      out.push_back(point_index(v));
      std::size_t t = lead + 1;
      while (t < d && ++coef[t] == q) coef[t++] = 0;
      if (t >= d) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> ProjectiveSpace::subspaces_within(const Subspace& s, int i) const {
  if (i < 0 || i > s.dim()) throw std::invalid_argument("no subspaces of that dimension inside");
  if (i == 0) return points_of(s);
  const SubspaceList local(*field_, s.dim(), i);
  const SubspaceList& target = subspaces(i);
  const std::size_t len = static_cast<std::size_t>(n_ + 1);
  std::vector<std::uint32_t> out;
  out.reserve(local.size());
  for (std::size_t t = 0; t < local.size(); ++t) {
    auto coef = local.entries_of(t);
    Matrix m(static_cast<std::size_t>(i + 1), len);
    for (std::size_t r = 0; r <= static_cast<std::size_t>(i); ++r)
      for (std::size_t j = 0; j < s.vector_dim(); ++j) {
        const std::uint32_t c = coef[r * s.vector_dim() + j];
        if (c == 0) continue;
        auto row = s.row(j);
        for (std::size_t col = 0; col < len; ++col)
          m.at(r, col) = field_->add(m.at(r, col), field_->mul(c, row[col]));
      }
    const Subspace sub = Subspace::from_rows(*field_, std::move(m));
    out.push_back(static_cast<std::uint32_t>(target.index_of(sub)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const Incidence& ProjectiveSpace::incidence(int k) const {
  const SubspaceList& list = subspaces(k);
  std::lock_guard lock(mutex_);
  auto& slot = incidences_[static_cast<std::size_t>(k)];
  if (slot) return *slot;
  auto inc = std::make_unique<Incidence>();
  inc->points_on.resize(list.size());
  inc->through_point.resize(lists_[0]->size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    inc->points_on[i] = points_of(list.at(i));
    for (std::uint32_t pt : inc->points_on[i]) inc->through_point[pt].push_back(static_cast<std::uint32_t>(i));
  }
  slot = std::move(inc);
  return *slot;
}

}  // namespace galois

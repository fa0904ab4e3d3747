#include "galois/fp_linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace galois {

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

void pack(std::span<const std::uint8_t> v, std::vector<std::uint64_t>& w) {
  std::fill(w.begin(), w.end(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] & 1) w[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void unpack(const std::vector<std::uint64_t>& w, std::span<std::uint8_t> v) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint8_t>((w[i >> 6] >> (i & 63)) & 1);
}

bool bit(const std::vector<std::uint64_t>& w, std::size_t i) { return (w[i >> 6] >> (i & 63)) & 1; }

}  // namespace

RowEchelon::RowEchelon(std::uint32_t p, std::size_t length) : p_(p), length_(length), words_((length + 63) / 64) {
  if (p < 2 || p > 255) throw std::invalid_argument("row echelon form needs 2 <= p < 256");
}

RowEchelon RowEchelon::from_rows(std::uint32_t p, std::size_t length,
                                 const std::vector<std::vector<std::uint8_t>>& rows) {
  RowEchelon e(p, length);
  for (const auto& r : rows) {
    if (r.size() != length) throw std::invalid_argument("row length mismatch");
    auto it = std::find_if(r.begin(), r.end(), [](std::uint8_t x) { return x != 0; });
    if (it == r.end()) throw std::invalid_argument("zero row in echelon basis");
    e.pivots_.push_back(static_cast<std::size_t>(it - r.begin()));
    if (p == 2) {
      std::vector<std::uint64_t> w(e.words_);
      pack(r, w);
      e.packed_.push_back(std::move(w));
    } else {
      e.bytes_.push_back(r);
    }
  }
  return e;
}

void RowEchelon::reduce_packed(std::vector<std::uint64_t>& w) const {
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < pivots_.size(); ++i)
    if (bit(w, pivots_[i])) hits.push_back(i);
  for (std::size_t i : hits) {
    const auto& r = packed_[i];
    // rows are zero before their pivot word
    for (std::size_t k = pivots_[i] >> 6; k < words_; ++k) w[k] ^= r[k];
  }
}

void RowEchelon::reduce_bytes(std::span<std::uint8_t> v, std::vector<std::uint32_t>& acc) const {
  const std::uint32_t p = p_;
  const std::uint32_t flush_every = std::max<std::uint32_t>(1, (0xFFFFFFFFu - p) / ((p - 1) * (p - 1)) - 1);
  acc.assign(v.begin(), v.end());
  std::uint32_t pending = 0;
  std::size_t low = length_;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const std::uint32_t f = v[pivots_[i]];
    if (f == 0) continue;
    const std::uint32_t c = p - f;
    const std::uint8_t* r = bytes_[i].data();
    const std::size_t start = pivots_[i];
    low = std::min(low, start);
    std::uint32_t* a = acc.data();
    for (std::size_t k = start; k < length_; ++k) a[k] += c * r[k];
    if (++pending == flush_every) {
      for (std::size_t k = low; k < length_; ++k) a[k] %= p;
      pending = 0;
    }
  }
  for (std::size_t k = low; k < length_; ++k) v[k] = static_cast<std::uint8_t>(acc[k] % p);
}

void RowEchelon::reduce(std::span<std::uint8_t> v) const {
  if (v.size() != length_) throw std::invalid_argument("vector length mismatch");
  if (p_ == 2) {
    std::vector<std::uint64_t> w(words_);
    pack(v, w);
    reduce_packed(w);
    unpack(w, v);
  } else {
    std::vector<std::uint32_t> acc;
    reduce_bytes(v, acc);
  }
}

bool RowEchelon::reduces_to_zero(std::span<const std::uint8_t> v) const {
  std::vector<std::uint8_t> copy(v.begin(), v.end());
  for (auto& x : copy) x = static_cast<std::uint8_t>(x % p_);
  reduce(copy);
  return std::all_of(copy.begin(), copy.end(), [](std::uint8_t x) { return x == 0; });
}

void RowEchelon::add_row(std::vector<std::uint8_t> v) {
  // v is reduced and nonzero
  const auto it = std::find_if(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; });
  const std::size_t c = static_cast<std::size_t>(it - v.begin());
  const std::uint32_t s = inverse_mod(v[c], p_);
  if (s != 1)
    for (std::size_t k = c; k < length_; ++k) v[k] = static_cast<std::uint8_t>(v[k] * s % p_);
  const auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin());
  if (p_ == 2) {
    std::vector<std::uint64_t> w(words_);
    pack(v, w);
    for (auto& r : packed_)
      if (bit(r, c))
        for (std::size_t k = c >> 6; k < words_; ++k) r[k] ^= w[k];
    packed_.insert(packed_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
  } else {
    for (auto& r : bytes_) {
      const std::uint32_t f = r[c];
      if (f == 0) continue;
      const std::uint32_t m = p_ - f;
      for (std::size_t k = c; k < length_; ++k) r[k] = static_cast<std::uint8_t>((r[k] + m * v[k]) % p_);
    }
    bytes_.insert(bytes_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
  }
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), c);
}

bool RowEchelon::insert(std::span<const std::uint8_t> v) {
  if (v.size() != length_) throw std::invalid_argument("vector length mismatch");
  std::vector<std::uint8_t> w(v.begin(), v.end());
  for (auto& x : w) x = static_cast<std::uint8_t>(x % p_);
  reduce(w);
  if (std::all_of(w.begin(), w.end(), [](std::uint8_t x) { return x == 0; })) return false;
  add_row(std::move(w));
  return true;
}

void RowEchelon::insert_generated(std::size_t count,
                                  const std::function<void(std::size_t, std::span<std::uint8_t>)>& gen,
                                  unsigned threads) {
  threads = std::max(1u, threads);
  const std::size_t batch = std::max<std::size_t>(64, 16 * threads);
  std::vector<std::vector<std::uint8_t>> residues(batch, std::vector<std::uint8_t>(length_));
  std::vector<char> nonzero(batch);
  for (std::size_t start = 0; start < count; start += batch) {
    const std::size_t n = std::min(batch, count - start);
    auto work = [&](std::size_t lo, std::size_t hi) {
      std::vector<std::uint32_t> acc;
      std::vector<std::uint64_t> w(words_);
      for (std::size_t t = lo; t < hi; ++t) {
        auto& r = residues[t];
        gen(start + t, r);
        if (p_ == 2) {
          pack(r, w);
          reduce_packed(w);
          nonzero[t] = std::any_of(w.begin(), w.end(), [](std::uint64_t x) { return x != 0; });
          if (nonzero[t]) unpack(w, r);
        } else {
          reduce_bytes(r, acc);
          nonzero[t] = std::any_of(r.begin(), r.end(), [](std::uint8_t x) { return x != 0; });
        }
      }
    };
    if (threads == 1 || n < 2 * threads) {
      work(0, n);
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (n + threads - 1) / threads;
      for (std::size_t lo = 0; lo < n; lo += chunk) pool.emplace_back(work, lo, std::min(n, lo + chunk));
    }
    for (std::size_t t = 0; t < n; ++t)
      if (nonzero[t]) insert(residues[t]);
  }
}

std::vector<std::uint8_t> RowEchelon::row(std::size_t i) const {
  std::vector<std::uint8_t> out(length_);
  if (p_ == 2)
    unpack(packed_.at(i), out);
  else
    out = bytes_.at(i);
  return out;
}

std::uint32_t RowEchelon::dot_row(std::size_t i, std::span<const std::uint8_t> v) const {
  if (v.size() != length_) throw std::invalid_argument("vector length mismatch");
  std::uint64_t s = 0;
  if (p_ == 2) {
    const auto& r = packed_.at(i);
    for (std::size_t k = 0; k < length_; ++k) s += ((r[k >> 6] >> (k & 63)) & 1) & v[k];
    return static_cast<std::uint32_t>(s & 1);
  }
  const auto& r = bytes_.at(i);
  for (std::size_t k = 0; k < length_; ++k) s += std::uint32_t{r[k]} * v[k];
  return static_cast<std::uint32_t>(s % p_);
}

std::vector<std::vector<std::uint8_t>> RowEchelon::orthogonal_basis() const {
  std::vector<bool> is_pivot(length_, false);
  for (std::size_t c : pivots_) is_pivot[c] = true;
  std::vector<std::vector<std::uint8_t>> rows;
  rows.reserve(rank());
  for (std::size_t i = 0; i < rank(); ++i) rows.push_back(row(i));
  std::vector<std::vector<std::uint8_t>> out;
  for (std::size_t fc = 0; fc < length_; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<std::uint8_t> x(length_, 0);
    x[fc] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r)
      x[pivots_[r]] = static_cast<std::uint8_t>((p_ - rows[r][fc]) % p_);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace galois

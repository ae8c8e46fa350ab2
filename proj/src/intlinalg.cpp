#include "nilcover/intlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nilcover {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Int& v) { return v == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch");
  IntMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::string AbelianInvariants::str() const {
  std::ostringstream os;
  os << "torsion [";
  for (std::size_t i = 0; i < torsion.size(); ++i)
    os << (i ? "," : "") << torsion[i].get_str();
  os << "] free_rank " << free_rank;
  return os.str();
}

AbelianInvariants invariants_from_diagonal(const std::vector<Int>& diagonal,
                                           std::size_t extra_free) {
  AbelianInvariants inv;
  inv.free_rank = extra_free;
  std::vector<Int> finite;
  for (const auto& d : diagonal) {
    if (d == 0)
      ++inv.free_rank;
    else
      finite.push_back(abs(d));
  }
  // Re-establish divisibility: repeatedly replace (a, b) by (gcd, lcm).
  for (std::size_t i = 0; i < finite.size(); ++i)
    for (std::size_t j = i + 1; j < finite.size(); ++j) {
      Int g = gcd(finite[i], finite[j]);
      Int l = finite[i] / g * finite[j];
      finite[i] = g;
      finite[j] = l;
    }
  for (const auto& d : finite)
    if (d != 1) inv.torsion.push_back(d);
  return inv;
}

namespace {

// Smallest nonzero |entry| in the lower-right block starting at t.
bool find_pivot(const IntMatrix& m, std::size_t t, std::size_t& pr,
                std::size_t& pc) {
  bool found = false;
  Int best;
  for (std::size_t r = t; r < m.rows(); ++r)
    for (std::size_t c = t; c < m.cols(); ++c) {
      if (m(r, c) == 0) continue;
      if (!found || abs(m(r, c)) < best) {
        best = abs(m(r, c));
        pr = r;
        pc = c;
        found = true;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm out;
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  IntMatrix v = IntMatrix::identity(a.cols());
  const std::size_t n = std::min(a.rows(), a.cols());

  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(d, t, pr, pc)) break;
    d.swap_rows(t, pr);
    u.swap_rows(t, pr);
    d.swap_cols(t, pc);
    v.swap_cols(t, pc);

    for (;;) {
      bool dirty = false;
      // Clear column t below the pivot.
      for (std::size_t r = t + 1; r < d.rows(); ++r) {
        if (d(r, t) == 0) continue;
        Int q = d(r, t) / d(t, t);  // truncating division keeps |rem| < |pivot|
        d.add_row(r, t, -q);
        u.add_row(r, t, -q);
        if (d(r, t) != 0) dirty = true;
      }
      // Clear row t right of the pivot.
      for (std::size_t c = t + 1; c < d.cols(); ++c) {
        if (d(t, c) == 0) continue;
        Int q = d(t, c) / d(t, t);
        d.add_col(c, t, -q);
        v.add_col(c, t, -q);
        if (d(t, c) != 0) dirty = true;
      }
      if (!dirty) {
        // Divisibility: the pivot must divide the remaining block.
        std::size_t bad_r = 0;
        bool bad = false;
        for (std::size_t r = t + 1; r < d.rows() && !bad; ++r)
          for (std::size_t c = t + 1; c < d.cols(); ++c)
            if (d(r, c) % d(t, t) != 0) {
              bad = true;
              bad_r = r;
              break;
            }
        if (!bad) break;
        d.add_row(t, bad_r, Int(1));
        u.add_row(t, bad_r, Int(1));
      }
      // A smaller remainder appeared: move it into the pivot position.
      std::size_t br = t, bc = t;
      Int best = abs(d(t, t));
      for (std::size_t r = t; r < d.rows(); ++r)
        if (d(r, t) != 0 && abs(d(r, t)) < best) {
          best = abs(d(r, t));
          br = r;
          bc = t;
        }
      for (std::size_t c = t; c < d.cols(); ++c)
        if (d(t, c) != 0 && abs(d(t, c)) < best) {
          best = abs(d(t, c));
          br = t;
          bc = c;
        }
      d.swap_rows(t, br);
      u.swap_rows(t, br);
      d.swap_cols(t, bc);
      v.swap_cols(t, bc);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }

  std::vector<Int> diag;
  for (std::size_t t = 0; t < n; ++t) diag.push_back(d(t, t));
  const std::size_t extra = a.cols() > n ? a.cols() - n : 0;
  out.cokernel = invariants_from_diagonal(diag, extra);
  out.diagonal = std::move(d);
  out.row_transform = std::move(u);
  out.col_transform = std::move(v);
  return out;
}

IntMatrix hermite_reduce(const IntMatrix& a) {
  IntMatrix h = a;
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    // Euclid on column `col` among rows >= row.
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t r = row; r < h.rows(); ++r)
        if (h(r, col) != 0 && (best == h.rows() || abs(h(r, col)) < abs(h(best, col))))
          best = r;
      if (best == h.rows()) break;
      h.swap_rows(row, best);
      bool done = true;
      for (std::size_t r = row + 1; r < h.rows(); ++r) {
        if (h(r, col) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h(r, col).get_mpz_t(), h(row, col).get_mpz_t());
        h.add_row(r, row, -q);
        if (h(r, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) h.negate_row(row);
    for (std::size_t r = 0; r < row; ++r) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, col).get_mpz_t(), h(row, col).get_mpz_t());
      h.add_row(r, row, -q);
    }
    ++row;
  }
  return h;
}

}  // namespace nilcover

#include "nufact/abgroup.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "nufact/error.hpp"

namespace nufact {

namespace {

BigInt mod_floor(const BigInt& a, const BigInt& n) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

BigInt trunc_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::string join(const BigVector& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// FgAbelianGroup / GroupElement

FgAbelianGroup::FgAbelianGroup(std::size_t free_rank, BigVector torsion_orders)
    : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2)
      throw Error(ErrorKind::InvalidGroup,
                  "torsion order " + torsion_[i].get_str() + " is < 2");
    if (i + 1 < torsion_.size() && torsion_[i + 1] % torsion_[i] != 0)
      throw Error(ErrorKind::InvalidGroup,
                  "torsion orders not in invariant-factor form: " +
                      torsion_[i].get_str() + " does not divide " +
                      torsion_[i + 1].get_str());
  }
}

GroupElement FgAbelianGroup::identity() const {
  return element(BigVector(free_rank_, 0), BigVector(torsion_.size(), 0));
}

GroupElement FgAbelianGroup::element(BigVector free_part, BigVector torsion_part) const {
  if (free_part.size() != free_rank_ || torsion_part.size() != torsion_.size())
    throw Error(ErrorKind::ShapeMismatch,
                "element shape (" + std::to_string(free_part.size()) + "," +
                    std::to_string(torsion_part.size()) + ") does not match " +
                    to_string());
  GroupElement g;
  g.free_ = std::move(free_part);
  g.torsion_ = std::move(torsion_part);
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    g.torsion_[i] = mod_floor(g.torsion_[i], torsion_[i]);
  g.moduli_ = torsion_;
  return g;
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream out;
  bool first = true;
  if (free_rank_ > 0) {
    out << 'Z';
    if (free_rank_ > 1) out << '^' << free_rank_;
    first = false;
  }
  for (const auto& n : torsion_) {
    if (!first) out << " + ";
    out << "Z/" << n;
    first = false;
  }
  return out.str();
}

bool GroupElement::is_identity() const {
  return std::all_of(free_.begin(), free_.end(), [](const BigInt& x) { return x == 0; }) &&
         std::all_of(torsion_.begin(), torsion_.end(), [](const BigInt& x) { return x == 0; });
}

std::string GroupElement::to_string() const {
  std::ostringstream out;
  if (torsion_.empty()) {
    if (free_.size() == 1) return free_[0].get_str();
    out << '(' << join(free_) << ')';
    return out.str();
  }
  std::string tors = "[" + join(torsion_) + "]";
  if (free_.empty()) return tors;
  out << '(' << tors << ',' << join(free_) << ')';
  return out.str();
}

GroupElement group_combine(const GroupElement& g, const GroupElement& h, const BigInt& n) {
  if (!g.same_group(h))
    throw Error(ErrorKind::ShapeMismatch, "group elements from different groups");
  GroupElement out = g;
  for (std::size_t i = 0; i < out.free_.size(); ++i) out.free_[i] += n * h.free_[i];
  for (std::size_t i = 0; i < out.torsion_.size(); ++i)
    out.torsion_[i] = mod_floor(out.torsion_[i] + n * h.torsion_[i], out.moduli_[i]);
  return out;
}

std::optional<BigInt> element_order(const GroupElement& g) {
  for (const auto& x : g.free_part())
    if (x != 0) return std::nullopt;
  BigInt order = 1;
  for (std::size_t i = 0; i < g.torsion_part().size(); ++i) {
    BigInt gc = gcd(g.torsion_part()[i], g.moduli()[i]);
    BigInt part = g.moduli()[i] / gc;
    order = lcm(order, part);
  }
  return order;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<BigVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<BigVector>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows)
      throw Error(ErrorKind::ShapeMismatch, "column length does not match row count");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

BigVector IntMatrix::row(std::size_t r) const {
  return BigVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

BigVector IntMatrix::column(std::size_t c) const {
  BigVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

BigVector IntMatrix::apply(std::span<const BigInt> v) const {
  if (v.size() != cols_)
    throw Error(ErrorKind::ShapeMismatch, "vector length " + std::to_string(v.size()) +
                                              " vs " + std::to_string(cols_) + " columns");
  BigVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out << ',';
    out << '[' << join(row(r)) << ']';
  }
  out << ']';
  return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::ShapeMismatch, "matrix product dimensions");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

BigInt determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::ShapeMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

BigVector SmithForm::invariant_factors() const {
  BigVector d(S.rows(), 0);
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d[i] = S(i, i);
  return d;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm f{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& S = f.S;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      BigInt best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (S(i, j) == 0) continue;
          BigInt v = abs(S(i, j));
          if (!found || v < best) {
            found = true;
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (!found) return f;
      S.swap_rows(t, pi);
      f.U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      f.V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        BigInt q = -trunc_div(S(i, t), S(t, t));
        S.add_row_multiple(i, t, q);
        f.U.add_row_multiple(i, t, q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        BigInt q = -trunc_div(S(t, j), S(t, t));
        S.add_col_multiple(j, t, q);
        f.V.add_col_multiple(j, t, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce d_t | every remaining entry.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            S.add_row_multiple(t, i, 1);
            f.U.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      f.U.negate_row(t);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Cokernel

namespace {

// Row Hermite normal form of a full-row-rank block, in place.
void row_hermite(IntMatrix& m) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    for (;;) {
      std::size_t best = m.rows();
      for (std::size_t i = row; i < m.rows(); ++i)
        if (m(i, col) != 0 && (best == m.rows() || abs(m(i, col)) < abs(m(best, col))))
          best = i;
      if (best == m.rows()) break;
      m.swap_rows(row, best);
      bool clean = true;
      for (std::size_t i = row + 1; i < m.rows(); ++i) {
        if (m(i, col) == 0) continue;
        m.add_row_multiple(i, row, -trunc_div(m(i, col), m(row, col)));
        if (m(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (row >= m.rows() || m(row, col) == 0) continue;
    if (m(row, col) < 0) m.negate_row(row);
    for (std::size_t i = 0; i < row; ++i)
      m.add_row_multiple(i, row, -floor_div(m(i, col), m(row, col)));
    ++row;
  }
}

}  // namespace

Cokernel cokernel(const IntMatrix& a) {
  const SmithForm f = smith_normal_form(a);
  const BigVector d = f.invariant_factors();

  std::vector<std::size_t> torsion_rows, free_rows;
  BigVector orders;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 1) continue;
    if (d[i] == 0) {
      free_rows.push_back(i);
    } else {
      torsion_rows.push_back(i);
      orders.push_back(d[i]);
    }
  }

  IntMatrix free_block(free_rows.size(), a.rows());
  for (std::size_t k = 0; k < free_rows.size(); ++k)
    for (std::size_t c = 0; c < a.rows(); ++c) free_block(k, c) = f.U(free_rows[k], c);
  row_hermite(free_block);

  IntMatrix proj(torsion_rows.size() + free_rows.size(), a.rows());
  for (std::size_t k = 0; k < torsion_rows.size(); ++k)
    for (std::size_t c = 0; c < a.rows(); ++c)
      proj(k, c) = mod_floor(f.U(torsion_rows[k], c), orders[k]);
  for (std::size_t k = 0; k < free_rows.size(); ++k)
    for (std::size_t c = 0; c < a.rows(); ++c)
      proj(torsion_rows.size() + k, c) = free_block(k, c);

  return Cokernel(FgAbelianGroup(free_rows.size(), std::move(orders)), std::move(proj));
}

GroupElement Cokernel::project(std::span<const BigInt> v) const {
  const BigVector image = projection_.apply(v);
  const std::size_t t = group_.torsion_orders().size();
  BigVector tors(image.begin(), image.begin() + t);
  BigVector free(image.begin() + t, image.end());
  return group_.element(std::move(free), std::move(tors));
}

}  // namespace nufact

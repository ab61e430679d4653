#pragma once

// Finitely generated abelian groups Z^r + Z/n1 + ... + Z/nk (invariant-factor
// form) and the exact integer linear algebra used to compute class groups.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nufact {

using BigInt = mpz_class;
using BigVector = std::vector<BigInt>;

class GroupElement;

class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  // Throws InvalidGroup unless every order is >= 2 and each divides the next.
  FgAbelianGroup(std::size_t free_rank, BigVector torsion_orders);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const BigVector& torsion_orders() const noexcept { return torsion_; }

  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_torsion() const noexcept { return free_rank_ == 0; }

  GroupElement identity() const;
  // Builds a normalized element; ShapeMismatch if vector lengths disagree.
  GroupElement element(BigVector free_part, BigVector torsion_part) const;

  bool operator==(const FgAbelianGroup&) const = default;

  std::string to_string() const;

 private:
  std::size_t free_rank_ = 0;
  BigVector torsion_;
};

// An element carries the torsion moduli of its parent group so that group
// arithmetic can check membership without a back-pointer.
class GroupElement {
 public:
  const BigVector& free_part() const noexcept { return free_; }
  const BigVector& torsion_part() const noexcept { return torsion_; }
  const BigVector& moduli() const noexcept { return moduli_; }

  bool is_identity() const;
  bool same_group(const GroupElement& other) const {
    return free_.size() == other.free_.size() && moduli_ == other.moduli_;
  }

  bool operator==(const GroupElement&) const = default;

  std::string to_string() const;

 private:
  friend class FgAbelianGroup;
  friend GroupElement group_combine(const GroupElement&, const GroupElement&,
                                    const BigInt&);
  BigVector free_;
  BigVector torsion_;
  BigVector moduli_;
};

// g + n*h.
GroupElement group_combine(const GroupElement& g, const GroupElement& h,
                           const BigInt& n = 1);

// Least n >= 1 with n*g = 0; nullopt when g has infinite order.
std::optional<BigInt> element_order(const GroupElement& g);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<BigVector>& rows);
  static IntMatrix from_columns(std::size_t rows, const std::vector<BigVector>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  BigVector row(std::size_t r) const;
  BigVector column(std::size_t c) const;
  BigVector apply(std::span<const BigInt> v) const;
  IntMatrix transpose() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k);
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k);
  void negate_row(std::size_t r);

  bool operator==(const IntMatrix&) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  BigVector data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& a);

struct SmithForm {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  // Diagonal of S padded with zeros up to S.rows().
  BigVector invariant_factors() const;
};

// U*A*V = S with U, V unimodular and S diagonal, d1 | d2 | ..., all d_i >= 0.
SmithForm smith_normal_form(const IntMatrix& a);

// Z^rows / (column span of A) in invariant-factor form together with the
// quotient map.
class Cokernel {
 public:
  Cokernel(FgAbelianGroup group, IntMatrix projection)
      : group_(std::move(group)), projection_(std::move(projection)) {}

  const FgAbelianGroup& group() const noexcept { return group_; }
  // Rows: one per torsion coordinate, then one per free coordinate.
  const IntMatrix& projection_matrix() const noexcept { return projection_; }

  GroupElement project(std::span<const BigInt> v) const;

 private:
  FgAbelianGroup group_;
  IntMatrix projection_;
};

Cokernel cokernel(const IntMatrix& a);

}  // namespace nufact

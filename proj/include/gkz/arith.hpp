// Exact integer/rational scalars and small dense matrices.
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gkz {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Base of every exception thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Malformed input or violated precondition.
struct InputError : Error {
  using Error::Error;
};
/// A configured size or expansion budget would be exceeded.
struct BudgetError : Error {
  using Error::Error;
};
/// A parameter vector turned out to be resonant where nonresonance is required.
struct ResonanceError : Error {
  using Error::Error;
};

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& columns);
  static Matrix from_rows(std::size_t cols, const std::vector<std::vector<T>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const;
  std::vector<T> row(std::size_t r) const;
  std::vector<std::vector<T>> columns() const;
  void set_column(std::size_t c, const std::vector<T>& v);

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  std::vector<T> operator*(const std::vector<T>& v) const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix drop_column(std::size_t c) const;
  Matrix append_column(const std::vector<T>& v) const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rational(const IntMatrix& m);
RatVec to_rational(const IntVec& v);
IntVec to_int_vec(const std::vector<long>& v);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int content(const IntVec& v);  // gcd of entries, 0 for the zero vector
IntVec primitive(const IntVec& v);
bool is_zero(const IntVec& v);
bool is_zero(const RatVec& v);
Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const IntVec& a, const Int& s);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const RatVec& a, const Rat& s);
Int l1_norm(const IntVec& v);

/// Common denominator of a rational vector (1 if integral).
Int common_denominator(const RatVec& v);
/// v scaled by its common denominator.
IntVec clear_denominators(const RatVec& v);
/// Returns the vector when all entries are integers.
std::optional<IntVec> as_integral(const RatVec& v);
bool is_integer(const Rat& q);
Int floor(const Rat& q);
Int ceil(const Rat& q);

/// "p/q" or "p"; throws InputError on anything else.
Rat parse_rational(std::string_view text);
std::string to_string(const Int& v);
std::string to_string(const Rat& v);
std::string to_string(const IntVec& v);

/// Exact Gaussian elimination helpers over the rationals.
struct RowEchelon {
  RatMatrix reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};
RowEchelon row_echelon(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
/// A particular solution of m x = b (free variables set to zero) or nullopt.
std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b);
/// Basis of the rational null space {x : m x = 0}.
std::vector<RatVec> null_space(const RatMatrix& m);
Rat determinant(const RatMatrix& m);
Int determinant(const IntMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);

}  // namespace gkz

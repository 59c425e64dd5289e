#pragma once

#include <initializer_list>
#include <tuple>
#include <vector>

#include "diagsq/bigint.hpp"

namespace diagsq {

// Dense rectangular matrix of BigInt; the workhorse for off-diagonal blocks
// and column vectors.  Row-major, 0-based.
class RectMat {
  public:
    RectMat() : rows_(0), cols_(0) {}
    RectMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, BigInt(0)) {}
    RectMat(std::size_t rows, std::size_t cols,
            std::initializer_list<BigInt> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const {
        return e_[i * cols_ + j];
    }

    bool operator==(const RectMat& o) const = default;

    RectMat operator+(const RectMat& o) const;
    RectMat operator-(const RectMat& o) const;
    RectMat operator*(const RectMat& o) const;
    RectMat operator-() const;
    friend RectMat operator*(const BigInt& c, const RectMat& m);

    RectMat transpose() const;
    bool is_zero() const;

  private:
    std::size_t rows_, cols_;
    std::vector<BigInt> e_;
};

// Dense square matrix of BigInt: the universal currency of the engines.
// Dimension is fixed at construction; all arithmetic is exact.
class IntMat {
  public:
    IntMat() : n_(0) {}
    explicit IntMat(std::size_t n) : n_(n), e_(n * n, BigInt(0)) {}
    IntMat(std::size_t n, std::initializer_list<BigInt> entries);

    static IntMat identity(std::size_t n);
    static IntMat zero(std::size_t n) { return IntMat(n); }

    std::size_t dim() const { return n_; }

    BigInt& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const {
        return e_[i * n_ + j];
    }

    bool operator==(const IntMat& o) const = default;

    IntMat operator+(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    IntMat operator*(const IntMat& o) const;
    IntMat operator-() const;
    friend IntMat operator*(const BigInt& c, const IntMat& m);

    bool is_zero() const;
    BigInt trace() const;

    // gcd of all entries (>= 0; 0 only for the zero matrix).
    BigInt content() const;

    RectMat rect() const;  // same entries as a RectMat view (copy)
    static IntMat from_rect(const RectMat& r);  // requires square shape

    std::string to_string() const;  // compact [[..],[..]] rendering for logs

  private:
    std::size_t n_;
    std::vector<BigInt> e_;
};

IntMat mat_pow(const IntMat& m, unsigned k);

// Determinant by fraction-free Gaussian elimination (Bareiss); exact.
BigInt determinant(const IntMat& m);

// Exact inverse of a matrix with det = +-1 (adjugate route); error with
// kind not_unimodular otherwise.
IntMat unimodular_inverse(const IntMat& t);

// T^{-1} * A * T for unimodular T (the orientation the engines need).
IntMat conjugate_unimodular(const IntMat& t, const IntMat& a);

// Characteristic polynomial coefficients c_0..c_n of det(xI - M), index =
// degree (c_n = 1).  Faddeev-LeVerrier with exact division.
std::vector<BigInt> char_poly(const IntMat& m);

// [[P,Q],[R,S]] with P of size p x p, S of size q x q, Q p x q, R q x p.
IntMat block_compose(const IntMat& p, const RectMat& q, const RectMat& r,
                     const IntMat& s);

// Inverse of block_compose: split at row/column p.
std::tuple<IntMat, RectMat, RectMat, IntMat> block_split(const IntMat& a,
                                                         std::size_t p);

}  // namespace diagsq

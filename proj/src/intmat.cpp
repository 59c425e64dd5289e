#include "diagsq/intmat.hpp"

#include "diagsq/numth.hpp"

namespace diagsq {

RectMat::RectMat(std::size_t rows, std::size_t cols,
                 std::initializer_list<BigInt> entries)
    : rows_(rows), cols_(cols), e_(entries) {
    require(e_.size() == rows * cols, ErrorKind::dimension_mismatch,
            "entry count does not match shape");
}

RectMat RectMat::operator+(const RectMat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_,
            ErrorKind::dimension_mismatch, "matrix add");
    RectMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

RectMat RectMat::operator-(const RectMat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_,
            ErrorKind::dimension_mismatch, "matrix subtract");
    RectMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

RectMat RectMat::operator*(const RectMat& o) const {
    require(cols_ == o.rows_, ErrorKind::dimension_mismatch,
            "matrix multiply");
    RectMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const BigInt& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

RectMat RectMat::operator-() const {
    RectMat r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

RectMat operator*(const BigInt& c, const RectMat& m) {
    RectMat r(m.rows_, m.cols_);
    for (std::size_t i = 0; i < m.e_.size(); ++i) r.e_[i] = c * m.e_[i];
    return r;
}

RectMat RectMat::transpose() const {
    RectMat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool RectMat::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

IntMat::IntMat(std::size_t n, std::initializer_list<BigInt> entries)
    : n_(n), e_(entries) {
    require(e_.size() == n * n, ErrorKind::dimension_mismatch,
            "entry count does not match dimension");
}

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::operator+(const IntMat& o) const {
    require(n_ == o.n_, ErrorKind::dimension_mismatch, "matrix add");
    IntMat r(n_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
    require(n_ == o.n_, ErrorKind::dimension_mismatch, "matrix subtract");
    IntMat r(n_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

IntMat IntMat::operator*(const IntMat& o) const {
    require(n_ == o.n_, ErrorKind::dimension_mismatch, "matrix multiply");
    IntMat r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const BigInt& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < n_; ++j)
                r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

IntMat IntMat::operator-() const {
    IntMat r(n_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

IntMat operator*(const BigInt& c, const IntMat& m) {
    IntMat r(m.n_);
    for (std::size_t i = 0; i < m.e_.size(); ++i) r.e_[i] = c * m.e_[i];
    return r;
}

bool IntMat::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

BigInt IntMat::trace() const {
    BigInt t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

BigInt IntMat::content() const {
    BigInt g = 0;
    for (const auto& v : e_) g = gcd(g, v);
    return g;
}

RectMat IntMat::rect() const {
    RectMat r(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r.at(i, j) = at(i, j);
    return r;
}

IntMat IntMat::from_rect(const RectMat& r) {
    require(r.rows() == r.cols(), ErrorKind::dimension_mismatch,
            "from_rect needs a square shape");
    IntMat m(r.rows());
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) m.at(i, j) = r.at(i, j);
    return m;
}

std::string IntMat::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < n_; ++i) {
        s += (i ? ",[" : "[");
        for (std::size_t j = 0; j < n_; ++j) {
            if (j) s += ",";
            s += at(i, j).str();
        }
        s += "]";
    }
    return s + "]";
}

IntMat mat_pow(const IntMat& m, unsigned k) {
    IntMat result = IntMat::identity(m.dim());
    IntMat base = m;
    while (k) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

BigInt determinant(const IntMat& m) {
    const std::size_t n = m.dim();
    if (n == 0) return 1;
    IntMat a = m;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && a.at(pivot, k) == 0) ++pivot;
            if (pivot == n) return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a.at(k, j), a.at(pivot, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                internal_check(v % prev == 0, "Bareiss exact division");
                a.at(i, j) = v / prev;
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

IntMat unimodular_inverse(const IntMat& t) {
    BigInt det = determinant(t);
    require(det == 1 || det == -1, ErrorKind::not_unimodular,
            "matrix determinant is not +-1");
    const std::size_t n = t.dim();
    // Adjugate via (n-1)x(n-1) minors; dims are desk scale.
    IntMat inv(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMat minor(n - 1);
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == j) continue;  // adjugate transposes the cofactors
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(mr, mc) = t.at(r, c);
                    ++mc;
                }
                ++mr;
            }
            BigInt cof = determinant(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            inv.at(i, j) = det * cof;  // divide by det = multiply, det = +-1
        }
    internal_check(inv * t == IntMat::identity(n), "inverse check");
    return inv;
}

IntMat conjugate_unimodular(const IntMat& t, const IntMat& a) {
    require(t.dim() == a.dim(), ErrorKind::dimension_mismatch,
            "conjugation dimensions");
    return unimodular_inverse(t) * a * t;
}

std::vector<BigInt> char_poly(const IntMat& m) {
    const std::size_t n = m.dim();
    std::vector<BigInt> c(n + 1);
    c[n] = 1;
    IntMat mk = IntMat::identity(n);  // running M * (M^{k-1} + c I) product
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        BigInt ck = -mk.trace();
        internal_check(ck % BigInt(k) == 0, "Faddeev-LeVerrier division");
        ck /= BigInt(k);
        c[n - k] = ck;
        if (k < n)
            for (std::size_t i = 0; i < n; ++i) mk.at(i, i) += ck;
    }
    return c;
}

IntMat block_compose(const IntMat& p, const RectMat& q, const RectMat& r,
                     const IntMat& s) {
    const std::size_t np = p.dim(), nq = s.dim();
    require(q.rows() == np && q.cols() == nq && r.rows() == nq &&
                r.cols() == np,
            ErrorKind::dimension_mismatch, "block shapes");
    IntMat a(np + nq);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j) a.at(i, j) = p.at(i, j);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < nq; ++j) a.at(i, np + j) = q.at(i, j);
    for (std::size_t i = 0; i < nq; ++i)
        for (std::size_t j = 0; j < np; ++j) a.at(np + i, j) = r.at(i, j);
    for (std::size_t i = 0; i < nq; ++i)
        for (std::size_t j = 0; j < nq; ++j)
            a.at(np + i, np + j) = s.at(i, j);
    return a;
}

std::tuple<IntMat, RectMat, RectMat, IntMat> block_split(const IntMat& a,
                                                         std::size_t p) {
    require(p > 0 && p < a.dim(), ErrorKind::dimension_mismatch,
            "block_split cut must be interior");
    const std::size_t q = a.dim() - p;
    IntMat P(p), S(q);
    RectMat Q(p, q), R(q, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) P.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) Q.at(i, j) = a.at(i, p + j);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < p; ++j) R.at(i, j) = a.at(p + i, j);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) S.at(i, j) = a.at(p + i, p + j);
    return {P, Q, R, S};
}

}  // namespace diagsq

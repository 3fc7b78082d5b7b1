#pragma once

#include <vector>

#include "ctxkit/rational.hpp"

namespace ctxkit {

/// An element of the cyclotomic field Q(w_m), w_m = exp(2*pi*i/m), stored as
/// rational coefficients over the power basis 1, w, ..., w^(phi(m)-1) and
/// reduced modulo the m-th cyclotomic polynomial. All arithmetic and the zero
/// test are exact. The conductor m is fixed per element; mixing conductors
/// throws.
class Cyclotomic {
public:
    Cyclotomic() : m_(1), coeff_{Rational(0)} {}
    explicit Cyclotomic(int m, Rational rational_part = Rational(0));

    static Cyclotomic zero(int m) { return Cyclotomic(m); }
    static Cyclotomic one(int m) { return Cyclotomic(m, Rational(1)); }
    /// w^k, k taken mod m.
    static Cyclotomic root_power(int m, long k);

    int conductor() const { return m_; }
    int degree() const { return static_cast<int>(coeff_.size()); }
    const std::vector<Rational>& coefficients() const { return coeff_; }

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic operator*(const Rational& q) const;

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_rational() const;
    /// The rational value; throws input_error when the element is not
    /// rational.
    Rational to_rational() const;

    /// Complex conjugate: the field automorphism w -> w^(m-1).
    Cyclotomic conj() const;

    /// phi(m), the degree of Q(w_m) over Q.
    static int totient(int m);
    /// The m-th cyclotomic polynomial, lowest degree first (cached).
    static const std::vector<Rational>& minimal_polynomial(int m);

private:
    int m_;
    std::vector<Rational> coeff_;  // size phi(m)

    void check_same_field(const Cyclotomic& o) const;
};

/// Dense matrix over one cyclotomic field. Sized for the small operator
/// algebra this library needs (dimension d^n with n <= 3).
class CycMatrix {
public:
    CycMatrix() = default;
    CycMatrix(int rows, int cols, int conductor);

    static CycMatrix identity(int n, int conductor);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int conductor() const { return m_; }

    Cyclotomic& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const Cyclotomic& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    CycMatrix operator+(const CycMatrix& o) const;
    CycMatrix operator-(const CycMatrix& o) const;
    CycMatrix operator*(const CycMatrix& o) const;
    CycMatrix scaled(const Cyclotomic& f) const;
    CycMatrix scaled(const Rational& q) const;

    /// Conjugate transpose.
    CycMatrix dagger() const;
    Cyclotomic trace() const;
    bool operator==(const CycMatrix& o) const;

    /// Kronecker product (this tensor o).
    CycMatrix kron(const CycMatrix& o) const;

    bool is_zero() const;

private:
    int rows_ = 0, cols_ = 0, m_ = 1;
    std::vector<Cyclotomic> data_;
};

/// Column vector with cyclotomic entries.
using CycVector = std::vector<Cyclotomic>;

CycVector apply(const CycMatrix& a, const CycVector& x);
/// Hermitian inner product <x|y> (conjugate-linear in x).
Cyclotomic inner_product(const CycVector& x, const CycVector& y);

}  // namespace ctxkit

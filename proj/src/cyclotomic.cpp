#include "ctxkit/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "ctxkit/errors.hpp"

namespace ctxkit {

namespace {

using Poly = std::vector<Rational>;  // lowest degree first

int poly_degree(const Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        if (p[i] != 0)
            return i;
    }
    return -1;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

/// Exact division a / b (remainder must vanish).
Poly poly_div_exact(Poly a, const Poly& b) {
    const int db = poly_degree(b);
    int da = poly_degree(a);
    Poly q(da - db + 1, Rational(0));
    while (da >= db) {
        const Rational f = a[da] / b[db];
        q[da - db] = f;
        for (int i = 0; i <= db; ++i)
            a[da - db + i] -= f * b[i];
        da = poly_degree(a);
    }
    if (da >= 0)
        throw std::logic_error("cyclotomic polynomial division left a remainder");
    return q;
}

/// Remainder of a mod b.
Poly poly_mod(Poly a, const Poly& b) {
    const int db = poly_degree(b);
    int da = poly_degree(a);
    while (da >= db) {
        const Rational f = a[da] / b[db];
        for (int i = 0; i <= db; ++i)
            a[da - db + i] -= f * b[i];
        da = poly_degree(a);
    }
    a.resize(db, Rational(0));
    return a;
}

}  // namespace

int Cyclotomic::totient(int m) {
    int result = m, n = m;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        result -= result / n;
    return result;
}

const std::vector<Rational>& Cyclotomic::minimal_polynomial(int m) {
    static std::map<int, Poly> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end())
        return it->second;
    if (m < 1)
        throw input_error("cyclotomic conductor must be positive");

    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, computed recursively
    // without holding the mutex twice: build every divisor bottom-up.
    std::vector<int> divisors;
    for (int d = 1; d <= m; ++d) {
        if (m % d == 0)
            divisors.push_back(d);
    }
    for (int d : divisors) {
        if (cache.count(d))
            continue;
        Poly numerator(d + 1, Rational(0));
        numerator[0] = -1;
        numerator[d] = 1;
        Poly denom{Rational(1)};
        for (int e : divisors) {
            if (e < d && d % e == 0)
                denom = poly_mul(denom, cache.at(e));
        }
        cache[d] = poly_div_exact(numerator, denom);
    }
    return cache.at(m);
}

Cyclotomic::Cyclotomic(int m, Rational rational_part) : m_(m) {
    const int phi = totient(m);
    coeff_.assign(phi, Rational(0));
    coeff_[0] = std::move(rational_part);
}

Cyclotomic Cyclotomic::root_power(int m, long k) {
    k %= m;
    if (k < 0)
        k += m;
    const auto& phi_m = minimal_polynomial(m);
    Poly x(k + 1, Rational(0));
    x[k] = 1;
    Poly r = poly_mod(std::move(x), phi_m);
    Cyclotomic c(m);
    for (size_t i = 0; i < c.coeff_.size() && i < r.size(); ++i)
        c.coeff_[i] = r[i];
    return c;
}

void Cyclotomic::check_same_field(const Cyclotomic& o) const {
    if (m_ != o.m_)
        throw input_error("cyclotomic arithmetic across different conductors (" +
                          std::to_string(m_) + " vs " + std::to_string(o.m_) + ")");
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    check_same_field(o);
    Cyclotomic r = *this;
    for (size_t i = 0; i < coeff_.size(); ++i)
        r.coeff_[i] += o.coeff_[i];
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    check_same_field(o);
    Cyclotomic r = *this;
    for (size_t i = 0; i < coeff_.size(); ++i)
        r.coeff_[i] -= o.coeff_[i];
    return r;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeff_)
        c = -c;
    return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    check_same_field(o);
    Poly product = poly_mul(coeff_, o.coeff_);
    Poly reduced = poly_mod(std::move(product), minimal_polynomial(m_));
    Cyclotomic r(m_);
    for (size_t i = 0; i < r.coeff_.size() && i < reduced.size(); ++i)
        r.coeff_[i] = reduced[i];
    return r;
}

Cyclotomic Cyclotomic::operator*(const Rational& q) const {
    Cyclotomic r = *this;
    for (auto& c : r.coeff_)
        c *= q;
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    check_same_field(o);
    return coeff_ == o.coeff_;
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coeff_) {
        if (c != 0)
            return false;
    }
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < coeff_.size(); ++i) {
        if (coeff_[i] != 0)
            return false;
    }
    return true;
}

Rational Cyclotomic::to_rational() const {
    if (!is_rational())
        throw input_error("cyclotomic number is not rational");
    return coeff_[0];
}

Cyclotomic Cyclotomic::conj() const {
    // w^j -> w^(m-j); rebuild from reduced powers of the conjugated basis.
    Cyclotomic r(m_);
    for (size_t j = 0; j < coeff_.size(); ++j) {
        if (coeff_[j] == 0)
            continue;
        r += root_power(m_, static_cast<long>((m_ - static_cast<int>(j)) % m_)) * coeff_[j];
    }
    return r;
}

// --- CycMatrix ----------------------------------------------------------------

CycMatrix::CycMatrix(int rows, int cols, int conductor)
    : rows_(rows), cols_(cols), m_(conductor),
      data_(static_cast<size_t>(rows) * cols, Cyclotomic(conductor)) {}

CycMatrix CycMatrix::identity(int n, int conductor) {
    CycMatrix id(n, n, conductor);
    for (int i = 0; i < n; ++i)
        id.at(i, i) = Cyclotomic::one(conductor);
    return id;
}

CycMatrix CycMatrix::operator+(const CycMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw input_error("matrix shape mismatch");
    CycMatrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i)
        r.data_[i] += o.data_[i];
    return r;
}

CycMatrix CycMatrix::operator-(const CycMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw input_error("matrix shape mismatch");
    CycMatrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i)
        r.data_[i] -= o.data_[i];
    return r;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
    if (cols_ != o.rows_)
        throw input_error("matrix shape mismatch in product");
    CycMatrix r(rows_, o.cols_, m_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Cyclotomic& aik = at(i, k);
            if (aik.is_zero())
                continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Cyclotomic& bkj = o.at(k, j);
                if (!bkj.is_zero())
                    r.at(i, j) += aik * bkj;
            }
        }
    }
    return r;
}

CycMatrix CycMatrix::scaled(const Cyclotomic& f) const {
    CycMatrix r = *this;
    for (auto& e : r.data_)
        e *= f;
    return r;
}

CycMatrix CycMatrix::scaled(const Rational& q) const {
    CycMatrix r = *this;
    for (auto& e : r.data_)
        e = e * q;
    return r;
}

CycMatrix CycMatrix::dagger() const {
    CycMatrix r(cols_, rows_, m_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j).conj();
    }
    return r;
}

Cyclotomic CycMatrix::trace() const {
    Cyclotomic t(m_);
    for (int i = 0; i < rows_ && i < cols_; ++i)
        t += at(i, i);
    return t;
}

bool CycMatrix::operator==(const CycMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

CycMatrix CycMatrix::kron(const CycMatrix& o) const {
    CycMatrix r(rows_ * o.rows_, cols_ * o.cols_, m_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero())
                continue;
            for (int k = 0; k < o.rows_; ++k) {
                for (int l = 0; l < o.cols_; ++l)
                    r.at(i * o.rows_ + k, j * o.cols_ + l) = at(i, j) * o.at(k, l);
            }
        }
    }
    return r;
}

bool CycMatrix::is_zero() const {
    for (const auto& e : data_) {
        if (!e.is_zero())
            return false;
    }
    return true;
}

CycVector apply(const CycMatrix& a, const CycVector& x) {
    if (a.cols() != static_cast<int>(x.size()))
        throw input_error("matrix/vector shape mismatch");
    CycVector y(a.rows(), Cyclotomic::zero(a.conductor()));
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (!a.at(i, j).is_zero() && !x[j].is_zero())
                y[i] += a.at(i, j) * x[j];
        }
    }
    return y;
}

Cyclotomic inner_product(const CycVector& x, const CycVector& y) {
    if (x.size() != y.size())
        throw input_error("inner product of vectors of different lengths");
    if (x.empty())
        throw input_error("inner product of empty vectors");
    Cyclotomic s(x.front().conductor());
    for (size_t i = 0; i < x.size(); ++i)
        s += x[i].conj() * y[i];
    return s;
}

}  // namespace ctxkit

#include "ctxkit/phase_space.hpp"

#include <algorithm>
#include <set>

#include "ctxkit/errors.hpp"

namespace ctxkit {

namespace {

bool is_prime(int d) {
    if (d < 2)
        return false;
    for (int p = 2; p * p <= d; ++p) {
        if (d % p == 0)
            return false;
    }
    return true;
}

int mod_inverse(int a, int d) {
    a %= d;
    for (int x = 1; x < d; ++x) {
        if (a * x % d == 1)
            return x;
    }
    throw std::logic_error("no modular inverse");
}

/// Row-reduced echelon form of the rows over Z_d (d prime). Returns the
/// nonzero rows.
std::vector<std::vector<int>> rref(std::vector<std::vector<int>> rows, int d) {
    if (rows.empty())
        return rows;
    const int cols = static_cast<int>(rows.front().size());
    int rank = 0;
    for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r][col] % d != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0)
            continue;
        std::swap(rows[rank], rows[pivot]);
        const int inv = mod_inverse(rows[rank][col], d);
        for (int j = 0; j < cols; ++j)
            rows[rank][j] = rows[rank][j] * inv % d;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] % d == 0)
                continue;
            const int f = rows[r][col] % d;
            for (int j = 0; j < cols; ++j)
                rows[r][j] = ((rows[r][j] - f * rows[rank][j]) % d + d) % d;
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

}  // namespace

bool PhasePoint::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
}

PhasePoint make_point(int qudits, int d, const std::vector<int>& coords) {
    if (static_cast<int>(coords.size()) != 2 * qudits)
        throw input_error("phase point needs 2n coordinates");
    PhasePoint a{qudits, d, coords};
    for (int& c : a.coords)
        c = ((c % d) + d) % d;
    return a;
}

PhasePoint add_points(const PhasePoint& a, const PhasePoint& b) {
    PhasePoint r = a;
    for (size_t i = 0; i < r.coords.size(); ++i)
        r.coords[i] = (r.coords[i] + b.coords[i]) % a.d;
    return r;
}

PhasePoint scale_point(const PhasePoint& a, int factor) {
    PhasePoint r = a;
    factor = ((factor % a.d) + a.d) % a.d;
    for (int& c : r.coords)
        c = c * factor % a.d;
    return r;
}

int symplectic_product(const PhasePoint& a, const PhasePoint& b) {
    int s = 0;
    for (int i = 0; i < a.qudits; ++i)
        s = (s + a.p(i) * b.q(i) - a.q(i) * b.p(i)) % a.d;
    return ((s % a.d) + a.d) % a.d;
}

PauliLabel canonical_label(const PhasePoint& a) {
    if (a.is_zero())
        throw input_error("the zero phase point names no measurement");
    if (a.d == 2)
        return PauliLabel{a};
    for (int c : a.coords) {
        if (c != 0)
            return PauliLabel{scale_point(a, mod_inverse(c, a.d))};
    }
    throw std::logic_error("unreachable");
}

std::string label_name(const PauliLabel& label) {
    const PhasePoint& a = label.point;
    std::string name;
    if (a.d == 2) {
        for (int i = 0; i < a.qudits; ++i) {
            const int p = a.p(i), q = a.q(i);
            name += (p == 0 && q == 0) ? 'I' : (p == 1 && q == 0) ? 'Z'
                                           : (p == 0 && q == 1)   ? 'X'
                                                                  : 'Y';
        }
        return name;
    }
    for (int i = 0; i < a.qudits; ++i) {
        if (i > 0)
            name += '.';
        name += std::to_string(a.p(i));
        name += std::to_string(a.q(i));
    }
    return name;
}

std::vector<PhasePoint> LagrangianSubspace::points() const {
    std::vector<PhasePoint> out;
    const int n = static_cast<int>(basis.size());
    long total = 1;
    for (int i = 0; i < n; ++i)
        total *= d;
    out.reserve(total);
    for (long idx = 0; idx < total; ++idx) {
        PhasePoint sum = make_point(qudits, d, std::vector<int>(2 * qudits, 0));
        long r = idx;
        for (int i = 0; i < n; ++i) {
            const int c = static_cast<int>(r % d);
            r /= d;
            if (c != 0)
                sum = add_points(sum, scale_point(basis[i], c));
        }
        out.push_back(std::move(sum));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool LagrangianSubspace::contains(const PhasePoint& a) const {
    // Reduce a against the RREF basis.
    std::vector<int> v = a.coords;
    for (const PhasePoint& row : basis) {
        int lead = -1;
        for (size_t j = 0; j < row.coords.size(); ++j) {
            if (row.coords[j] != 0) {
                lead = static_cast<int>(j);
                break;
            }
        }
        if (lead < 0 || v[lead] == 0)
            continue;
        const int f = v[lead];  // row has leading 1
        for (size_t j = 0; j < v.size(); ++j)
            v[j] = ((v[j] - f * row.coords[j]) % d + d) % d;
    }
    return std::all_of(v.begin(), v.end(), [](int c) { return c == 0; });
}

bool LagrangianSubspace::operator<(const LagrangianSubspace& o) const {
    return basis < o.basis;
}

LagrangianSubspace lagrangian_from_basis(int qudits, int d, std::vector<PhasePoint> spanning) {
    std::vector<std::vector<int>> rows;
    rows.reserve(spanning.size());
    for (const auto& a : spanning)
        rows.push_back(a.coords);
    rows = rref(std::move(rows), d);
    if (static_cast<int>(rows.size()) != qudits)
        throw input_error("spanning set has rank " + std::to_string(rows.size()) + ", expected " +
                          std::to_string(qudits));
    LagrangianSubspace m;
    m.qudits = qudits;
    m.d = d;
    for (auto& r : rows)
        m.basis.push_back(make_point(qudits, d, r));
    for (size_t i = 0; i < m.basis.size(); ++i) {
        for (size_t j = i + 1; j < m.basis.size(); ++j) {
            if (symplectic_product(m.basis[i], m.basis[j]) != 0)
                throw input_error("spanning set is not isotropic");
        }
    }
    return m;
}

std::vector<LagrangianSubspace> enumerate_lagrangians(int qudits, int d, long point_cap) {
    if (!is_prime(d))
        throw input_error("outcome arity " + std::to_string(d) + " is not prime");
    if (qudits < 1)
        throw input_error("need at least one qudit");
    long points = 1;
    for (int i = 0; i < 2 * qudits; ++i) {
        points *= d;
        if (points > point_cap)
            throw cap_error("phase space has d^(2n) = " + std::to_string(d) + "^" +
                            std::to_string(2 * qudits) + " points, above the cap of " +
                            std::to_string(point_cap));
    }

    // All nonzero points, in deterministic order.
    std::vector<PhasePoint> all;
    all.reserve(points - 1);
    for (long idx = 1; idx < points; ++idx) {
        std::vector<int> coords(2 * qudits);
        long r = idx;
        for (int i = 2 * qudits - 1; i >= 0; --i) {
            coords[i] = static_cast<int>(r % d);
            r /= d;
        }
        all.push_back(make_point(qudits, d, coords));
    }

    std::set<LagrangianSubspace> found;
    std::vector<PhasePoint> chosen;
    auto extend = [&](auto&& self, size_t start) -> void {
        if (static_cast<int>(chosen.size()) == qudits) {
            found.insert(lagrangian_from_basis(qudits, d, chosen));
            return;
        }
        for (size_t i = start; i < all.size(); ++i) {
            const PhasePoint& cand = all[i];
            bool ok = true;
            for (const PhasePoint& prev : chosen) {
                if (symplectic_product(prev, cand) != 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            // skip candidates already in the span of the chosen set
            if (!chosen.empty()) {
                std::vector<std::vector<int>> rows;
                for (const auto& p : chosen)
                    rows.push_back(p.coords);
                rows.push_back(cand.coords);
                if (static_cast<int>(rref(std::move(rows), d).size()) !=
                    static_cast<int>(chosen.size()) + 1)
                    continue;
            }
            chosen.push_back(cand);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    extend(extend, 0);
    return std::vector<LagrangianSubspace>(found.begin(), found.end());
}

}  // namespace ctxkit

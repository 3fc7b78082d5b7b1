#pragma once

#include <string>
#include <vector>

namespace ctxkit {

/// A point of the discrete phase space (Z_d)^(2n): Z-part exponents for each
/// qudit followed by X-part exponents. Entries are kept reduced mod d.
struct PhasePoint {
    int qudits = 0;
    int d = 2;
    std::vector<int> coords;  // size 2n: p_1..p_n, q_1..q_n

    int p(int i) const { return coords[i]; }
    int q(int i) const { return coords[qudits + i]; }
    bool is_zero() const;
    bool operator==(const PhasePoint&) const = default;
    bool operator<(const PhasePoint& o) const { return coords < o.coords; }
};

PhasePoint make_point(int qudits, int d, const std::vector<int>& coords);
PhasePoint add_points(const PhasePoint& a, const PhasePoint& b);
PhasePoint scale_point(const PhasePoint& a, int factor);

/// Standard symplectic form [a,b] = sum_i (a.p_i b.q_i - a.q_i b.p_i) mod d.
int symplectic_product(const PhasePoint& a, const PhasePoint& b);

/// Canonical measurement label for a nonzero phase point. For odd d the
/// point is scaled so its first nonzero coordinate is 1 (a and lambda*a name
/// the same measurement); for d = 2 every nonzero point is its own
/// representative. Outcome k labels the w^k eigenspace of the canonical
/// representative's Weyl operator.
struct PauliLabel {
    PhasePoint point;  // canonical representative
    bool operator==(const PauliLabel&) const = default;
    bool operator<(const PauliLabel& o) const { return point < o.point; }
};

PauliLabel canonical_label(const PhasePoint& a);

/// Human-readable measurement name: Pauli letters for qubits ("ZX", "YI"),
/// per-qudit "pq" digit pairs joined by '.' otherwise ("12.01").
std::string label_name(const PauliLabel& label);

/// A Lagrangian subspace of (Z_d)^(2n): an n-dimensional isotropic subspace,
/// held in row-reduced echelon canonical form so equality is structural.
struct LagrangianSubspace {
    int qudits = 0;
    int d = 2;
    std::vector<PhasePoint> basis;  // n rows, RREF over Z_d

    /// All d^n points of the subspace (deterministic order).
    std::vector<PhasePoint> points() const;
    bool contains(const PhasePoint& a) const;
    bool operator==(const LagrangianSubspace&) const = default;
    bool operator<(const LagrangianSubspace& o) const;
};

/// Row-reduce a spanning set into the canonical subspace form; throws
/// input_error when the vectors do not span an isotropic subspace of
/// dimension n.
LagrangianSubspace lagrangian_from_basis(int qudits, int d, std::vector<PhasePoint> spanning);

/// All Lagrangian subspaces of (Z_d)^(2n), deduplicated via the canonical
/// basis and sorted. d must be 2 or an odd prime. Throws cap_error when
/// d^(2n) exceeds the cap.
std::vector<LagrangianSubspace> enumerate_lagrangians(int qudits, int d,
                                                      long point_cap = 1L << 16);

}  // namespace ctxkit

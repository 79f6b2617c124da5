#pragma once

#include "dioph/gauge.hpp"
#include "dioph/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dioph {

/// Thrown when a truncated enumeration would exceed the configured element
/// cap; the message carries the exact count.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Norm { Sup, Euclidean };

/// A point of R^d, or a product of parallel hyperplanes
/// { (y_1,...,y_m) : q . y_j = offset_j for all j } inside (R^n)^m.
struct PointSubspace {
    std::vector<Rat> coords;
};
struct ProductHyperplanes {
    std::vector<long long> q;   // nonzero integer normal, length n
    std::vector<Rat> offsets;   // length m
};
using AffineSubspace = std::variant<PointSubspace, ProductHyperplanes>;

int ambient_dimension(const AffineSubspace& s);
int subspace_dimension(const AffineSubspace& s);

struct PointIndex {
    long long q = 0;                 // denominator or generation scale
    std::vector<long long> p;        // numerators / cell index
};
struct LatticeIndex {
    std::vector<long long> q;
};
struct CadicIndex {
    int j = 0;
    std::vector<long long> k;
};
using ElementIndex = std::variant<PointIndex, LatticeIndex, CadicIndex>;

struct ApproxElement {
    AffineSubspace subspace;
    double radius = 0;
    std::optional<Rat> radius_exact;  // when the radius law is rational-valued
    ElementIndex index;
    long long shell = 0;              // denominator q, ||q||_inf, or generation
};

enum class FamilyKind { RationalPoints, LinearForms, Groshev, ResonantZones, CAdicPoints };

/// A denumerable approximation family given in closed form.  Radius laws are
/// gauges applied to the reciprocal of the denominator/shell variable, e.g.
/// a pure power gauge with s=2 used as phi means phi(q) = q^{-2}.
struct FamilyDescriptor {
    FamilyKind kind = FamilyKind::RationalPoints;
    int m = 1;                 // point / block dimension
    int n = 1;                 // linear forms variables
    int c = 2;                 // c-adic base
    int d = 1;                 // ambient dimension for CAdicPoints
    Rat nu;                    // resonance exponent
    std::optional<Gauge> law;  // phi or psi
    std::vector<Rat> b;        // inhomogeneous part, length m
    Rat window_lo = Rat(0), window_hi = Rat(1);  // point families only

    static FamilyDescriptor rational_points(int m, Gauge phi);
    static FamilyDescriptor linear_forms(int m, int n, std::vector<Rat> b, Gauge psi);
    static FamilyDescriptor groshev(int m, int n, Gauge phi);
    static FamilyDescriptor resonant_zones(int n, const Rat& nu);
    static FamilyDescriptor cadic_points(int c, int d);

    /// Ambient dimension of the family's elements.
    int ambient() const;
    /// Schmidt's hypothesis m+n > 2; recorded for LinearForms.
    bool meets_linear_forms_hypothesis() const { return m + n > 2; }

    /// phi(q) or psi(q) as a function of the positive shell variable.
    double radius_law(long long shell_value) const;
    std::optional<Rat> radius_law_exact(long long shell_value) const;

    std::string to_text() const;
    static FamilyDescriptor parse(const std::string& text);
};

struct EnumerateOptions {
    long long element_cap = 10'000'000;
};

/// All elements with shell value at most `bound`, in (shell, index) order.
/// Point families are restricted to the descriptor window: closed for
/// RationalPoints, half-open [lo, hi) for CAdicPoints to match the c-adic
/// cell convention.
std::vector<ApproxElement> enumerate(const FamilyDescriptor& f, long long bound,
                                     const EnumerateOptions& opt = {});

/// Number of integer vectors q with ||q||_inf == shell, i.e.
/// (2Q+1)^n - (2Q-1)^n.
Int lattice_shell_count(int n, long long shell);

/// Distance from x to the subspace.  Point distances honor the norm flag;
/// hyperplane products use max_j |q.x_j - offset_j| / ||q||_2, the distance
/// in the norm sup_j ||x_j||_2.
double distance(const std::vector<Rat>& x, const AffineSubspace& s, Norm norm = Norm::Sup);

/// Index i of the first coordinate with q_i == ||q||_inf > 0; nullopt when
/// every maximal-magnitude entry is negative (covered by q <-> -q symmetry).
/// 1-based.  Throws std::domain_error on q = 0.
std::optional<int> partition_Qi(const std::vector<long long>& q);

/// Diameter (in sup_j ||.||_2) of { x in T_i : d(x, P) < 1 } for a product
/// hyperplane with normal q in Q_i; evaluates to 2 ||q||_2 / q_i.
double transversal_diameter(const std::vector<long long>& q, int i);

struct ConditionTConstant {
    double sup = 0;   // max over enumerated q in Q_i
    double cap = 0;   // analytic bound 2 sqrt(n) (2 for point families)
};

/// The uniform transversal constant over the family restricted to Q_i,
/// truncated at ||q||_inf <= bound.  Point families return 2 (diameter of the
/// unit ball slice).  Throws precondition_error for families without the
/// required structure.
ConditionTConstant condition_T_constant(const FamilyDescriptor& f, int i, long long bound);

/// Smallest q <= qmax such that the componentwise nearest integer vector p to
/// q x satisfies ||x - p/q||_inf < q^{-1-1/d}; decided in exact arithmetic.
std::optional<std::pair<std::vector<Int>, long long>> dirichlet_witness(
    const std::vector<Rat>& x, long long qmax);

}  // namespace dioph

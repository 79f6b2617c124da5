#pragma once

#include "dioph/gauge.hpp"
#include "dioph/rational.hpp"
#include "dioph/systems.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dioph {

/// The c-adic cube c^{-j}(k + [0,1)^d).  Diameter is c^{-j} in the sup norm,
/// which is the norm fixed throughout this module.
struct CAdicCube {
    int c = 2;
    int j = 0;
    std::vector<long long> k;

    double diameter() const;
    bool operator==(const CAdicCube& o) const = default;
};

/// A finite union of c-adic cubes, normalized to distinct leaf cells at one
/// common generation J inside the root cube [0,1)^d.
class CubeSet {
public:
    CubeSet(int c, int d, int depth, std::vector<std::vector<long long>> leaves);

    int c() const { return c_; }
    int d() const { return d_; }
    int depth() const { return depth_; }
    const std::vector<std::vector<long long>>& leaves() const { return leaves_; }
    bool empty() const { return leaves_.empty(); }

    static CubeSet full(int c, int d, int depth);
    bool contains_leaf(const std::vector<long long>& k) const;

    std::string to_text() const;
    static CubeSet parse(const std::string& text);
    static CubeSet load(const std::string& path);

private:
    int c_, d_, depth_;
    std::vector<std::vector<long long>> leaves_;  // sorted, unique
};

struct CoverResult {
    double value = 0;
    std::vector<CAdicCube> cover;  // disjoint, jointly contain the target
    bool optimal = false;

    std::string to_text() const;
};

/// Canonical cover valuation: sum of g(diam) over the cubes in depth-first
/// spatial order, folded left to right.  Both the optimizer and any oracle
/// comparing against it must value covers through this one function so that
/// equality of optima is exact in floating point.
double cover_value(const std::vector<CAdicCube>& cover, const Gauge& g);

/// Exact optimal net-measure value over all covers of the target by c-adic
/// cubes of diameter strictly below eps_g (descendants of the root).  Ties
/// between a cube and its refinement go to the coarser cube.  Throws
/// precondition_error when occupied leaves admit no admissible cube.
CoverResult net_measure(const CubeSet& target, const Gauge& g, const GaugeContext& ctx);

/// Exact count of axis-aligned grid cells of side ||q||_inf^{-nu-1} meeting
/// the slab { w in (-1/2,1/2]^n : |q.w| < ||q||_inf^{-nu} }.  Cells are
/// treated as closed boxes for the meet test; all boundary comparisons are
/// decided in exact arithmetic.
struct SlabCover {
    Int count;
    double side = 0;       // ||q||_inf^{-nu-1}
    Int cells_per_axis;    // ceil of 1/side
    std::optional<std::vector<std::vector<long long>>> cells;  // n <= 3 on request
};

SlabCover slab_cover(const std::vector<long long>& q, const Rat& nu, bool want_cells = false);

/// One term of a natural-cover upper bound: at shell `shell`, `count` cover
/// sets of diameter `diameter` contribute count * G(diameter).
struct CoverSummand {
    long long shell = 0;
    double count = 0;
    double diameter = 0;
    double contribution = 0;
};

struct UpperBoundResult {
    double value = 0;
    std::vector<CoverSummand> ledger;
};

/// Sum over family elements with shell in [tail_from, tail_to] of
/// G(cover diameter) * (cover count), using the natural cover per kind:
/// balls of diameter 2 r_i for point families, slab grids for resonant
/// zones, per-block slab grids for linear forms.
UpperBoundResult hausdorff_upper_bound(const FamilyDescriptor& f, const Gauge& G,
                                       long long tail_from, long long tail_to);

/// The slice { x1 : (x1, x2) in E } of a cube set, as a cube set in
/// dimension d - k where k = x2.size().  x2 outside the root projection
/// yields the empty set.
CubeSet slice(const CubeSet& E, const std::vector<Rat>& x2);

}  // namespace dioph

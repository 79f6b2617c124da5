#pragma once

#include "dioph/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dioph {

/// Ambient dimension d for membership tests in the class D_d of gauge
/// functions (nondecreasing, vanishing at zero, with g(r)/r^d positive and
/// nonincreasing near zero).
struct GaugeContext {
    int d = 1;

    explicit GaugeContext(int dim) : d(dim) {
        if (d < 1) throw precondition_error("ambient dimension must be >= 1");
    }
};

enum class GaugeForm { PowerLog, Tabulated };

enum class Ternary { True, False, Indeterminate };

std::string to_string(Ternary t);

/// A gauge function on [0, 1].
///
/// PowerLog gauges are g(r) = c0 * r^s * log(1/r)^t with exact rational
/// parameters; this family is closed under every operation below.  Tabulated
/// gauges are finite sample lists (r_i, v_i) with r_i strictly decreasing and
/// v_i nonincreasing, interpolated linearly in log-log coordinates and
/// extrapolated below the smallest sample along the last segment.  Immutable
/// after construction.
class Gauge {
public:
    static Gauge power_log(const Rat& s, const Rat& t, const Rat& c0 = Rat(1));
    /// Pure power c0 * r^s.
    static Gauge power(const Rat& s, const Rat& c0 = Rat(1));
    static Gauge tabulated(std::vector<std::pair<Rat, Rat>> samples);

    GaugeForm form() const { return form_; }
    const Rat& s() const { return s_; }
    const Rat& t() const { return t_; }
    const Rat& c0() const { return c0_; }
    const std::vector<std::pair<Rat, Rat>>& samples() const { return samples_; }

    bool is_pure_power() const { return form_ == GaugeForm::PowerLog && t_ == 0; }

    /// g(r) for r in [0, domain bound].  Throws std::domain_error outside.
    double eval(double r) const;
    double eval(const Rat& r) const { return eval(to_double(r)); }

    /// Exact value when it is rational: pure powers with integer exponent at
    /// rational r.  Otherwise nullopt.
    std::optional<Rat> eval_exact(const Rat& r) const;

    /// Upper end of the evaluation domain.  1 for PowerLog with t >= 0, just
    /// below 1 for t < 0 (log(1/r)^t blows up at 1), largest sample radius
    /// for Tabulated.
    double domain_bound() const;
    bool r_in_domain(double r) const;

    /// Membership in D_d.
    bool in_class(const GaugeContext& ctx) const;

    std::string to_text() const;
    static Gauge parse(const std::string& text);

    bool operator==(const Gauge& o) const;

private:
    Gauge() = default;

    GaugeForm form_ = GaugeForm::PowerLog;
    Rat s_, t_, c0_;
    std::vector<std::pair<Rat, Rat>> samples_;
};

/// Result of the d-regularization r |-> r^d inf_{rho <= r} g(rho)/rho^d:
/// either a gauge in D_d or the marker that the infimum vanishes near zero.
struct ZeroNearZero {};
using Regularized = std::variant<Gauge, ZeroNearZero>;

Regularized regularize(const Gauge& g, const GaugeContext& ctx);

/// Strict partial order: precedes(g, h) holds when g/h tends monotonically
/// to infinity at zero (g is then the smaller gauge in the dimension scale).
/// PowerLog pairs are decided exactly; anything involving tabulated data is
/// decided by a ratio scan over the samples and may come back Indeterminate.
Ternary precedes(const Gauge& g, const Gauge& h);

/// Validity radius: the largest epsilon in (0,1] such that g is nondecreasing
/// on [0,epsilon] and g(r)/r^d is nonincreasing on (0,epsilon].  Throws
/// precondition_error when g is not in D_d, naming the violated monotonicity.
double epsilon_of(const Gauge& g, const GaugeContext& ctx);

struct PseudoInverseOptions {
    double tolerance = 0x1p-48;  // absolute, in the radius variable
};

/// inf{ rho in [0, eps_h) : h(rho)^{1/d} >= r }.  Exact for pure powers,
/// bisection to the configured tolerance otherwise.  Throws std::range_error
/// for r above sup h^{1/d}.
double pseudo_inverse(const Gauge& h, const GaugeContext& ctx, double r,
                      const PseudoInverseOptions& opt = {});

/// Dimension index s_g = sup{ s in (0,d) : Id^s precedes g }.  Exact rational
/// for PowerLog; a log-log slope estimate with a confidence band for
/// Tabulated.
struct DimensionIndex {
    bool exact = false;
    Rat value_exact;    // set when exact
    double value = 0;   // always set
    double lo = 0, hi = 0;  // confidence band (degenerate when exact)
};

DimensionIndex dimension_index(const Gauge& g, const GaugeContext& ctx);

}  // namespace dioph

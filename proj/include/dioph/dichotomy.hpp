#pragma once

#include "dioph/gauge.hpp"
#include "dioph/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dioph {

/// Symbolic description of a limsup set (or a countable intersection of
/// such sets) whose size and large-intersection dichotomies the engine can
/// decide.  Radius laws reuse the Gauge representation applied to the
/// reciprocal shell variable.
struct SetDescriptor {
    enum class Kind {
        Khintchine,        // points of R^m within phi(q) of p/q infinitely often
        SchmidtLinearForms,// sup_j |q.x_j - b_j|_Z < psi(q) infinitely often
        Groshev,           // |q.x_j|_Z < ||q|| phi(||q||) infinitely often
        Resonant,          // frequencies failing a fixed Siegel exponent nu
        ResonantAll,       // frequencies failing every Siegel exponent
        DiophantineType,   // reals not of Diophantine type (K, sigma) for any K
        Liouville,
        Intersection
    };

    Kind kind = Kind::Khintchine;
    int m = 1;
    int n = 1;
    Rat nu;
    Rat sigma;
    std::optional<Gauge> law;  // phi or psi
    std::vector<Rat> b;
    std::vector<SetDescriptor> members;  // Intersection only

    static SetDescriptor khintchine(int m, Gauge phi);
    static SetDescriptor schmidt(int m, int n, std::vector<Rat> b, Gauge psi);
    static SetDescriptor groshev(int m, int n, Gauge phi);
    static SetDescriptor resonant(int n, const Rat& nu);
    static SetDescriptor resonant_all(int n);
    static SetDescriptor diophantine_type(const Rat& sigma);
    static SetDescriptor liouville();
    static SetDescriptor intersection(std::vector<SetDescriptor> members);

    /// Ambient dimension of the described set.
    int ambient() const;
    /// Power of Id to split off the full gauge: m(n-1) for the linear forms
    /// kinds, n-1 for the resonance kinds, 0 on the line.
    int factor_power() const;
    /// Dimension class required of the factored gauge h.
    int h_class_dimension() const;

    std::string to_text() const;
    static SetDescriptor parse(const std::string& text);
};

enum class SeriesVerdict { Diverges, Converges, Indeterminate };
enum class MeasureVerdict { Zero, Infinite, FullInOpen, Indeterminate };
enum class ClassVerdict { InClass, NotInClass, Indeterminate };

std::string to_string(SeriesVerdict v);
std::string to_string(MeasureVerdict v);
std::string to_string(ClassVerdict v);

/// Outcome of the criterion-series classification.  On the symbolic path the
/// general term is reduced to c * q^a * (log q)^b and the ledger carries the
/// exact exponents; divergence holds iff a > -1, or a = -1 and b >= -1.
struct SeriesClassification {
    SeriesVerdict verdict = SeriesVerdict::Indeterminate;
    bool symbolic = false;
    std::optional<Rat> exponent_q;    // a (exact, symbolic path)
    std::optional<Rat> exponent_log;  // b
    // numeric fallback data
    double partial_sum_n = 0;  // S(N)
    double partial_sum_2n = 0; // S(2N)
    long long fit_base = 0;    // N
    double fitted_a = 0, fitted_b = 0;
    std::string description;
};

struct NumericOptions {
    long long qmax = 1'000'000;
    bool force_numeric = false;  // run the numeric fallback even when symbolic applies
};

/// Splits G = Id^k * h and validates h against the target class D_target.
/// Exact exponent arithmetic for PowerLog.
struct FactorResult {
    bool ok = false;
    std::optional<Gauge> h;
    std::string failure;  // violated condition when !ok
};

FactorResult factor_gauge(const Gauge& G, int k, const GaugeContext& target);

/// Classifies the criterion series of the descriptor for a factored gauge h.
/// Throws precondition_error when h is inadmissible for the kind.
SeriesClassification classify_series(const SetDescriptor& desc, const Gauge& h,
                                     const NumericOptions& opt = {});

struct Verdict {
    SeriesVerdict series = SeriesVerdict::Indeterminate;
    MeasureVerdict hausdorff = MeasureVerdict::Indeterminate;
    ClassVerdict large_intersection = ClassVerdict::Indeterminate;
    bool gauge_factorization_ok = false;
    std::vector<std::string> citations;
    std::vector<std::string> trace;  // auxiliary-gauge constructions and notes
    std::optional<SeriesClassification> series_detail;
};

/// Full dichotomy verdict for the set under the gauge G, following the
/// applicable theorem per kind plus the intersection closure rule.  A failed
/// factorization yields Indeterminate conclusions rather than extrapolation.
Verdict verdict(const SetDescriptor& desc, const Gauge& G, const NumericOptions& opt = {});

struct DimensionResult {
    Rat value;            // exact rational when exact == true
    bool exact = false;
    double lo = 0, hi = 0;  // numeric bracket otherwise
    std::vector<std::string> trace;
    std::vector<std::string> citations;
};

/// Hausdorff dimension threshold computed symbolically from the exponent
/// ledger; exact rational for PowerLog laws.
DimensionResult dimension_of(const SetDescriptor& desc);

struct EquivConvReport {
    SeriesClassification direct;   // sum over q >= 2 of h(q^{-(nu+1)/n})
    SeriesClassification lattice;  // sum over ||q||_inf >= 2 of h(||q||^{-nu-1})
    bool verdicts_agree = false;
    double partial_direct = 0;   // summed to qmax
    double partial_lattice = 0;  // summed to floor(qmax^{1/n}) shells
    double ratio = 0;            // lattice / direct
    long long qmax = 0;
    long long lattice_bound = 0;
};

/// Checks the shell-count equivalence between the one-dimensional criterion
/// series and its lattice form.  Requires nu > n-1.
EquivConvReport equivconv_check(const Gauge& h, int n, const Rat& nu, long long qmax);

}  // namespace dioph

#pragma once

#include "dioph/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dioph {

/// Exact or interval-tracked real input.
struct ExactRational {
    Rat value;
};
/// a + b sqrt(c) with c a positive non-square integer (square parts are
/// pulled into b at construction).
struct QuadraticSurd {
    Rat a, b;
    Int c;
};
/// Decimal digits with an explicit error radius 10^{-precision}.
struct DecimalString {
    Rat value;
    int precision = 0;
};
using RealSpec = std::variant<ExactRational, QuadraticSurd, DecimalString>;

RealSpec make_exact_rational(const Rat& v);
RealSpec make_quadratic_surd(const Rat& a, const Rat& b, const Int& c);
RealSpec make_decimal(const std::string& digits, int precision);
/// Parses "p/q", "surd:a,b,c" (meaning a + b sqrt(c)), or "dec:<digits>@<prec>".
RealSpec parse_real(const std::string& text);
std::string real_to_text(const RealSpec& x);
bool is_rational(const RealSpec& x);
double real_to_double(const RealSpec& x);

struct ContinuedFraction {
    std::vector<Int> quotients;                // a_0, a_1, ...
    std::vector<std::pair<Int, Int>> convergents;  // (p_k, q_k)
    bool truncated = false;  // interval input stopped at an ambiguous quotient
    bool exact_input = true;
};

/// Partial quotients and convergents.  Euclid for rationals, the periodic
/// P,Q,D recurrence for quadratic surds, interval arithmetic with an
/// ambiguity stop for decimal inputs.
ContinuedFraction continued_fraction(const RealSpec& x, int max_terms);

/// natural log of |x - p/q| without catastrophic cancellation; -inf when the
/// error is exactly zero.
double log_convergent_error(const RealSpec& x, const Int& p, const Int& q);

struct DiophTypeRow {
    long long Q = 0;
    double K_global = 0;     // min over q <= Q of q^{sigma+2} |x - p/q|
    double K_window = 0;     // same min over the window (Q_prev, Q]
    double log10_K_global = 0;
    Int argmin_q;
};

struct DiophTypeReport {
    Rat sigma;
    std::vector<DiophTypeRow> rows;
    std::string caveat;  // set for decimal inputs
};

/// Finite-Q Diophantine-type margins K_Q(sigma), reported on a geometric
/// grid of Q up to qmax.  Minima are searched over convergent denominators
/// only, which is exact for the weighted quantity q^{sigma+1} ||q x||.
DiophTypeReport diophantine_type(const RealSpec& x, const Rat& sigma, long long qmax);

struct IrrationalityRow {
    int k = 0;
    double log_q = 0;
    double mu = 0;  // -log|x - p_k/q_k| / log q_k
};

struct IrrationalityReport {
    bool infinite = false;  // rational input marker
    std::vector<IrrationalityRow> rows;
    std::vector<double> tail_max;  // max of mu over indices >= k
    double estimate = 0;           // least-squares slope of -log err on log q
    std::string caveat;
};

IrrationalityReport irrationality_exponent(const RealSpec& x, int max_terms);

enum class SiegelTrend { BoundedBelow, DecayingPolynomially, HitZero, Inconclusive };
std::string to_string(SiegelTrend t);

struct SiegelRow {
    long long Q = 0;
    double gamma = 0;       // min over 0 < ||q||_1 <= Q of |q.w| ||q||_1^nu
    Rat resonance;          // |q.w| at the argmin, exact
    long long argmin_norm = 0;
    std::vector<long long> argmin_q;
};

struct SiegelReport {
    Rat nu;
    std::vector<SiegelRow> rows;
    SiegelTrend trend = SiegelTrend::Inconclusive;
    bool hit_zero = false;
    std::vector<long long> zero_q;
};

/// Exact resonance margins gamma_Q over l^1 shells, antipodes deduplicated,
/// with early exit on an exact resonance.
SiegelReport siegel_gamma(const std::vector<Rat>& omega, const Rat& nu, long long qmax);

struct PureTranslation {
    Rat rho;
};
/// Lift x + Omega + (K/2pi) sin(2pi x); monotone for |K| <= 1 (enforced).
struct StandardCircleMap {
    Rat Omega;
    Rat K;
};
using CircleMapSpec = std::variant<PureTranslation, StandardCircleMap>;

double evaluate_lift(const CircleMapSpec& f, double x);

struct RotationEstimate {
    double value = 0;
    double error_bound = 0;       // 1/N from the monotone-lift sandwich
    std::optional<Rat> exact;     // translations only
};

RotationEstimate rotation_number(const CircleMapSpec& f, const Rat& x0, long long iterations,
                                 long long burn_in);

enum class FrequencyLabel { HeuristicInOmega, HeuristicInR, Resonant, Inconclusive };
std::string to_string(FrequencyLabel l);

struct FrequencyRow {
    Rat nu;
    FrequencyLabel label = FrequencyLabel::Inconclusive;
    SiegelReport report;
};

/// Finite-Q membership heuristic per nu; never a theorem-level claim.
std::vector<FrequencyRow> classify_frequency(const std::vector<Rat>& omega,
                                             const std::vector<Rat>& nu_grid, long long qmax);

}  // namespace dioph

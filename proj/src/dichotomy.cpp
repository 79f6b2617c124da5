#include "dioph/dichotomy.hpp"

#include "dioph/systems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dioph {

std::string to_string(SeriesVerdict v) {
    switch (v) {
        case SeriesVerdict::Diverges: return "diverges";
        case SeriesVerdict::Converges: return "converges";
        default: return "indeterminate";
    }
}
std::string to_string(MeasureVerdict v) {
    switch (v) {
        case MeasureVerdict::Zero: return "zero";
        case MeasureVerdict::Infinite: return "infinite";
        case MeasureVerdict::FullInOpen: return "full-in-open";
        default: return "indeterminate";
    }
}
std::string to_string(ClassVerdict v) {
    switch (v) {
        case ClassVerdict::InClass: return "in-class";
        case ClassVerdict::NotInClass: return "not-in-class";
        default: return "indeterminate";
    }
}

SetDescriptor SetDescriptor::khintchine(int m, Gauge phi) {
    if (m < 1) throw precondition_error("khintchine: m >= 1 required");
    SetDescriptor d;
    d.kind = Kind::Khintchine;
    d.m = m;
    d.law = std::move(phi);
    return d;
}

SetDescriptor SetDescriptor::schmidt(int m, int n, std::vector<Rat> b, Gauge psi) {
    if (m < 1 || n < 1) throw precondition_error("schmidt: m, n >= 1 required");
    if (m + n <= 2)
        throw precondition_error(
            "schmidt: requires m+n > 2; the case m=n=1 is the Duffin-Schaeffer regime and is out of scope");
    if (static_cast<int>(b.size()) != m) throw precondition_error("schmidt: b must have length m");
    SetDescriptor d;
    d.kind = Kind::SchmidtLinearForms;
    d.m = m;
    d.n = n;
    d.b = std::move(b);
    d.law = std::move(psi);
    return d;
}

SetDescriptor SetDescriptor::groshev(int m, int n, Gauge phi) {
    if (m < 1) throw precondition_error("groshev: m >= 1 required");
    if (n <= 1) throw precondition_error("groshev: requires n > 1");
    SetDescriptor d;
    d.kind = Kind::Groshev;
    d.m = m;
    d.n = n;
    d.law = std::move(phi);
    return d;
}

SetDescriptor SetDescriptor::resonant(int n, const Rat& nu) {
    if (n < 2) throw precondition_error("resonant: n >= 2 required");
    if (nu <= n - 1)
        throw precondition_error("resonant: requires nu > n-1 (the resonance dichotomy hypothesis)");
    SetDescriptor d;
    d.kind = Kind::Resonant;
    d.n = n;
    d.nu = nu;
    return d;
}

SetDescriptor SetDescriptor::resonant_all(int n) {
    if (n < 2) throw precondition_error("resonantall: n >= 2 required");
    SetDescriptor d;
    d.kind = Kind::ResonantAll;
    d.n = n;
    return d;
}

SetDescriptor SetDescriptor::diophantine_type(const Rat& sigma) {
    if (sigma <= 0) throw precondition_error("diophtype: sigma > 0 required");
    SetDescriptor d;
    d.kind = Kind::DiophantineType;
    d.sigma = sigma;
    return d;
}

SetDescriptor SetDescriptor::liouville() {
    SetDescriptor d;
    d.kind = Kind::Liouville;
    return d;
}

SetDescriptor SetDescriptor::intersection(std::vector<SetDescriptor> members) {
    if (members.empty()) throw precondition_error("intersection: needs at least one member");
    int amb = members.front().ambient();
    for (const auto& m : members)
        if (m.ambient() != amb)
            throw precondition_error("intersection: members must share the ambient dimension");
    SetDescriptor d;
    d.kind = Kind::Intersection;
    d.members = std::move(members);
    return d;
}

int SetDescriptor::ambient() const {
    switch (kind) {
        case Kind::Khintchine: return m;
        case Kind::SchmidtLinearForms:
        case Kind::Groshev: return m * n;
        case Kind::Resonant:
        case Kind::ResonantAll: return n;
        case Kind::DiophantineType:
        case Kind::Liouville: return 1;
        case Kind::Intersection: return members.front().ambient();
    }
    return 1;
}

int SetDescriptor::factor_power() const {
    switch (kind) {
        case Kind::SchmidtLinearForms:
        case Kind::Groshev: return m * (n - 1);
        case Kind::Resonant:
        case Kind::ResonantAll: return n - 1;
        default: return 0;
    }
}

int SetDescriptor::h_class_dimension() const {
    switch (kind) {
        case Kind::Khintchine:
        case Kind::SchmidtLinearForms:
        case Kind::Groshev: return m;
        default: return 1;
    }
}

FactorResult factor_gauge(const Gauge& G, int k, const GaugeContext& target) {
    FactorResult out;
    if (k < 0) throw precondition_error("factor_gauge: k >= 0 required");
    if (G.form() == GaugeForm::PowerLog) {
        Rat s_h = G.s() - k;
        if (s_h < 0) {
            out.failure = "remaining power exponent " + rat_to_string(s_h) + " is negative";
            return out;
        }
        if (s_h == 0 && G.t() >= 0) {
            out.failure = "remainder with s=0 and t>=0 does not vanish at zero";
            return out;
        }
        Gauge h = Gauge::power_log(s_h, G.t(), G.c0());
        if (!h.in_class(target)) {
            out.failure = "remainder h(r)/r^" + std::to_string(target.d) + " increases near zero";
            return out;
        }
        out.ok = true;
        out.h = std::move(h);
        return out;
    }
    // tabulated: divide each sample by r^k, then validate
    std::vector<std::pair<Rat, Rat>> samples;
    for (const auto& [r, v] : G.samples()) samples.emplace_back(r, v / pow_rat(r, k));
    try {
        Gauge h = Gauge::tabulated(std::move(samples));
        if (!h.in_class(target)) {
            out.failure = "remainder h(r)/r^" + std::to_string(target.d) + " increases near zero";
            return out;
        }
        out.ok = true;
        out.h = std::move(h);
    } catch (const precondition_error& e) {
        out.failure = e.what();
    }
    return out;
}

namespace {

SeriesVerdict ledger_verdict(const Rat& a, const Rat& b) {
    if (a > -1) return SeriesVerdict::Diverges;
    if (a < -1) return SeriesVerdict::Converges;
    return b >= -1 ? SeriesVerdict::Diverges : SeriesVerdict::Converges;
}

SeriesClassification classify_from_ledger(const Rat& a, const Rat& b, const std::string& what) {
    SeriesClassification out;
    out.symbolic = true;
    out.exponent_q = a;
    out.exponent_log = b;
    out.verdict = ledger_verdict(a, b);
    out.description = what + ": term ~ q^(" + rat_to_string(a) + ") log(q)^(" + rat_to_string(b) + ")";
    return out;
}

/// Three-point fit of term(q) ~ C q^a log(q)^b at N, 2N, 4N.  Terms are
/// deterministic function values, so the mildly ill-conditioned 2x2 solve
/// only amplifies rounding noise, not sampling noise.
template <typename TermFn>
SeriesClassification classify_numeric(TermFn&& term, long long qmax, const std::string& what) {
    SeriesClassification out;
    out.description = what + " (numeric fallback)";
    long long N = std::max<long long>(16, qmax / 4);
    double s = 0;
    double t1 = 0, t2 = 0, t3 = 0;
    for (long long q = 2; q <= 4 * N; ++q) {
        double v = term(q);
        if (v < 0 || !std::isfinite(v)) return out;  // indeterminate
        s += v;
        if (q == N) {
            out.partial_sum_n = s;
            t1 = v;
        } else if (q == 2 * N) {
            out.partial_sum_2n = s;
            t2 = v;
        } else if (q == 4 * N) {
            t3 = v;
        }
    }
    out.fit_base = N;
    if (t1 <= 0 || t2 <= 0 || t3 <= 0) return out;
    double r1 = std::log2(t2 / t1), r2 = std::log2(t3 / t2);
    double c1 = std::log2(std::log(2.0 * N) / std::log(static_cast<double>(N)));
    double c2 = std::log2(std::log(4.0 * N) / std::log(2.0 * N));
    double b = (r1 - r2) / (c1 - c2);
    double a = r1 - b * c1;
    out.fitted_a = a;
    out.fitted_b = b;
    const double tol = 1e-6;
    if (a > -1 + tol) out.verdict = SeriesVerdict::Diverges;
    else if (a < -1 - tol) out.verdict = SeriesVerdict::Converges;
    else if (b > -1 + tol) out.verdict = SeriesVerdict::Diverges;
    else if (b < -1 - tol) out.verdict = SeriesVerdict::Converges;
    else out.verdict = SeriesVerdict::Indeterminate;
    return out;
}

struct LedgerParams {
    Rat a, b;
    std::string what;
};

/// Exact exponent ledger of the criterion series when both h and the radius
/// law are power-log.
LedgerParams series_ledger(const SetDescriptor& desc, const Gauge& h) {
    Rat sh = h.s(), th = h.t();
    switch (desc.kind) {
        case SetDescriptor::Kind::Khintchine: {
            Rat sp = desc.law->s(), tp = desc.law->t();
            return {Rat(desc.m) - sp * sh, tp * sh + th, "sum_q h(phi(q)) q^m"};
        }
        case SetDescriptor::Kind::SchmidtLinearForms: {
            Rat sp = desc.law->s(), tp = desc.law->t();
            return {Rat(desc.n - 1) + desc.m - (sp + 1) * sh, tp * sh + th,
                    "sum_q h(psi(q)/|q|) |q|^m over Z^n"};
        }
        case SetDescriptor::Kind::Groshev: {
            Rat sp = desc.law->s(), tp = desc.law->t();
            return {Rat(desc.m + desc.n - 1) - sp * sh, tp * sh + th,
                    "sum_Q h(phi(Q)) Q^{m+n-1}"};
        }
        case SetDescriptor::Kind::Resonant:
            return {-(desc.nu + 1) * sh / desc.n, th, "sum_q h(q^{-(nu+1)/n})"};
        case SetDescriptor::Kind::DiophantineType:
            return {-(desc.sigma + 2) * sh / 2, th, "sum_q h(q^{-(2+sigma)/2})"};
        default:
            throw precondition_error("series classification: descriptor has no criterion series");
    }
}

void require_admissible(const SetDescriptor& desc, const Gauge& h) {
    int dim = desc.h_class_dimension();
    if (!h.in_class(GaugeContext(dim)))
        throw precondition_error("h must belong to D_" + std::to_string(dim) +
                                 " (h(r)/r^" + std::to_string(dim) +
                                 " nonincreasing near zero) for this descriptor");
}

}  // namespace

SeriesClassification classify_series(const SetDescriptor& desc, const Gauge& h,
                                     const NumericOptions& opt) {
    if (desc.kind == SetDescriptor::Kind::ResonantAll ||
        desc.kind == SetDescriptor::Kind::Liouville ||
        desc.kind == SetDescriptor::Kind::Intersection)
        throw precondition_error("series classification: descriptor has no criterion series");
    require_admissible(desc, h);

    bool law_powerlog = !desc.law || desc.law->form() == GaugeForm::PowerLog;
    bool symbolic_ok = h.form() == GaugeForm::PowerLog && law_powerlog;

    SeriesClassification result;
    if (symbolic_ok) {
        auto led = series_ledger(desc, h);
        result = classify_from_ledger(led.a, led.b, led.what);
        if (!opt.force_numeric) return result;
    }

    auto safe_eval = [](const Gauge& g, double r) -> double {
        return g.r_in_domain(r) ? g.eval(r) : -1.0;
    };
    auto term = [&](long long q) -> double {
        double x = 0;
        switch (desc.kind) {
            case SetDescriptor::Kind::Khintchine: {
                double phi = safe_eval(*desc.law, 1.0 / q);
                if (phi < 0) return 0;
                double hv = safe_eval(h, phi);
                return hv < 0 ? 0 : hv * std::pow(static_cast<double>(q), desc.m);
            }
            case SetDescriptor::Kind::SchmidtLinearForms: {
                double psi = safe_eval(*desc.law, 1.0 / q);
                if (psi < 0) return 0;
                double hv = safe_eval(h, psi / q);
                if (hv < 0) return 0;
                return to_double(lattice_shell_count(desc.n, q)) * hv *
                       std::pow(static_cast<double>(q), desc.m);
            }
            case SetDescriptor::Kind::Groshev: {
                double phi = safe_eval(*desc.law, 1.0 / q);
                if (phi < 0) return 0;
                double hv = safe_eval(h, phi);
                if (hv < 0) return 0;
                return hv * std::pow(static_cast<double>(q), desc.m + desc.n - 1);
            }
            case SetDescriptor::Kind::Resonant:
                x = std::pow(static_cast<double>(q), -to_double(desc.nu + 1) / desc.n);
                break;
            case SetDescriptor::Kind::DiophantineType:
                x = std::pow(static_cast<double>(q), -to_double(desc.sigma + 2) / 2);
                break;
            default: return 0;
        }
        double hv = safe_eval(h, x);
        return hv < 0 ? 0 : hv;
    };

    SeriesClassification numeric = classify_numeric(term, opt.qmax, result.description.empty()
                                                                        ? "criterion series"
                                                                        : result.description);
    if (symbolic_ok) {
        // keep the exact ledger, attach the numeric evidence
        result.partial_sum_n = numeric.partial_sum_n;
        result.partial_sum_2n = numeric.partial_sum_2n;
        result.fit_base = numeric.fit_base;
        result.fitted_a = numeric.fitted_a;
        result.fitted_b = numeric.fitted_b;
        if (opt.force_numeric && numeric.verdict != result.verdict)
            result.description += "; numeric fallback verdict: " + to_string(numeric.verdict);
        return result;
    }
    return numeric;
}

namespace {

std::string kind_citation(SetDescriptor::Kind k) {
    switch (k) {
        case SetDescriptor::Kind::Khintchine: return "khintchine-gauge";
        case SetDescriptor::Kind::SchmidtLinearForms: return "linear-forms-class";
        case SetDescriptor::Kind::Groshev: return "groshev-class";
        case SetDescriptor::Kind::Resonant: return "resonant-class";
        case SetDescriptor::Kind::ResonantAll: return "resonant-all";
        case SetDescriptor::Kind::DiophantineType: return "diophantine-type";
        case SetDescriptor::Kind::Liouville: return "liouville";
        case SetDescriptor::Kind::Intersection: return "intersection-closure";
    }
    return "";
}

Verdict predicate_verdict(const SetDescriptor& desc, const Gauge& G, const FactorResult& fac) {
    Verdict v;
    v.gauge_factorization_ok = fac.ok;
    v.citations.push_back(kind_citation(desc.kind));
    if (!fac.ok) {
        v.citations.push_back("product-form");
        v.trace.push_back("factorization failed: " + fac.failure);
        return v;
    }
    const Gauge& h = *fac.h;
    if (h.form() != GaugeForm::PowerLog) {
        v.trace.push_back("predicate h(r) != o(r^s) undecidable from samples");
        return v;
    }
    bool slow = h.s() == 0;  // h(r) != o(r^s) for every s > 0
    v.trace.push_back(std::string("predicate [forall s>0: h(r) != o(r^s)] is ") +
                      (slow ? "satisfied" : "violated") + " for h = " + h.to_text());
    if (slow) {
        v.series = SeriesVerdict::Diverges;
        v.large_intersection = ClassVerdict::InClass;
        v.hausdorff = MeasureVerdict::Infinite;
    } else {
        v.series = SeriesVerdict::Converges;
        v.large_intersection = ClassVerdict::NotInClass;
        v.hausdorff = MeasureVerdict::Zero;
    }
    (void)G;
    return v;
}

Gauge log_shift(const Gauge& g, int delta) {
    return Gauge::power_log(g.s(), g.t() + delta, g.c0());
}

}  // namespace

Verdict verdict(const SetDescriptor& desc, const Gauge& G, const NumericOptions& opt) {
    Verdict v;

    if (desc.kind == SetDescriptor::Kind::Intersection) {
        bool all_in = true, any_not = false, any_zero = false;
        bool all_div = true, any_conv = false, all_ok = true;
        for (const auto& mem : desc.members) {
            Verdict mv = verdict(mem, G, opt);
            all_ok = all_ok && mv.gauge_factorization_ok;
            all_in = all_in && mv.large_intersection == ClassVerdict::InClass;
            any_not = any_not || mv.large_intersection == ClassVerdict::NotInClass;
            any_zero = any_zero || mv.hausdorff == MeasureVerdict::Zero;
            all_div = all_div && mv.series == SeriesVerdict::Diverges;
            any_conv = any_conv || mv.series == SeriesVerdict::Converges;
            for (auto& c : mv.citations)
                if (std::find(v.citations.begin(), v.citations.end(), c) == v.citations.end())
                    v.citations.push_back(c);
        }
        v.citations.push_back("intersection-closure");
        v.gauge_factorization_ok = all_ok;
        v.series = all_div ? SeriesVerdict::Diverges
                           : any_conv ? SeriesVerdict::Converges : SeriesVerdict::Indeterminate;
        v.large_intersection = all_in ? ClassVerdict::InClass
                                      : any_not ? ClassVerdict::NotInClass
                                                : ClassVerdict::Indeterminate;
        if (any_zero) {
            v.hausdorff = MeasureVerdict::Zero;
        } else if (all_in) {
            // the measure needs a strictly larger gauge that keeps every
            // member in class; shift the log exponent down by one
            if (G.form() == GaugeForm::PowerLog) {
                Gauge above = log_shift(G, -1);
                bool still = true;
                for (const auto& mem : desc.members)
                    still = still && verdict(mem, above, opt).large_intersection == ClassVerdict::InClass;
                if (still) {
                    v.hausdorff = MeasureVerdict::Infinite;
                    v.trace.push_back("auxiliary gauge " + above.to_text() +
                                      " (G precedes it) keeps every member in class");
                } else {
                    v.hausdorff = MeasureVerdict::Indeterminate;
                    v.trace.push_back("no log-refined gauge above G keeps every member in class; "
                                      "measure left undecided");
                }
            } else {
                v.hausdorff = MeasureVerdict::Indeterminate;
            }
        }
        return v;
    }

    int k = desc.factor_power();
    GaugeContext target(desc.h_class_dimension());
    FactorResult fac = factor_gauge(G, k, target);

    if (desc.kind == SetDescriptor::Kind::ResonantAll || desc.kind == SetDescriptor::Kind::Liouville)
        return predicate_verdict(desc, G, fac);

    v.citations.push_back(kind_citation(desc.kind));
    v.gauge_factorization_ok = fac.ok;
    if (!fac.ok) {
        v.citations.push_back("product-form");
        v.trace.push_back("factorization of G = Id^" + std::to_string(k) +
                          " h failed: " + fac.failure + "; conclusions withheld");
        return v;
    }
    const Gauge& h = *fac.h;
    SeriesClassification cls = classify_series(desc, h, opt);
    v.series = cls.verdict;
    v.series_detail = cls;
    v.trace.push_back(cls.description);

    if (cls.verdict == SeriesVerdict::Diverges) {
        v.large_intersection = ClassVerdict::InClass;
        Ternary below_lebesgue = precedes(h, Gauge::power(Rat(target.d)));
        if (below_lebesgue == Ternary::True) {
            v.hausdorff = MeasureVerdict::Infinite;
            if (h.form() == GaugeForm::PowerLog) {
                Gauge hu = log_shift(h, -1);
                SeriesClassification again = classify_series(desc, hu, {});
                v.trace.push_back("auxiliary gauge h_under = " + hu.to_text() + ": series " +
                                  to_string(again.verdict));
            }
        } else if (below_lebesgue == Ternary::False) {
            v.hausdorff = MeasureVerdict::FullInOpen;
            v.citations.push_back("lebesgue-comparable");
            if (desc.kind == SetDescriptor::Kind::Khintchine)
                v.citations.push_back("khintchine-lebesgue");
            if (desc.kind == SetDescriptor::Kind::SchmidtLinearForms ||
                desc.kind == SetDescriptor::Kind::Groshev)
                v.citations.push_back("schmidt-lebesgue");
            v.trace.push_back("h does not precede Id^" + std::to_string(target.d) +
                              "; the gauge measure is Lebesgue up to a constant");
        } else {
            v.hausdorff = MeasureVerdict::Indeterminate;
        }
    } else if (cls.verdict == SeriesVerdict::Converges) {
        v.large_intersection = ClassVerdict::NotInClass;
        v.hausdorff = MeasureVerdict::Zero;
        if (h.form() == GaugeForm::PowerLog) {
            Gauge ho = log_shift(h, +1);
            SeriesClassification again = classify_series(desc, ho, {});
            v.trace.push_back("auxiliary gauge h_over = " + ho.to_text() + ": series " +
                              to_string(again.verdict));
        }
    }
    return v;
}

namespace {

Rat clamp_rat(const Rat& x, const Rat& lo, const Rat& hi) {
    return x < lo ? lo : (x > hi ? hi : x);
}

/// Last-segment log-log slope band of a tabulated law.
std::pair<double, double> law_slope_band(const Gauge& law) {
    const auto& sm = law.samples();
    std::vector<double> slopes;
    for (std::size_t i = sm.size() - 1; i > 0 && slopes.size() < 3; --i) {
        double rl = to_double(sm[i].first), vl = to_double(sm[i].second);
        double rh = to_double(sm[i - 1].first), vh = to_double(sm[i - 1].second);
        if (vl <= 0 || vh <= 0) break;
        slopes.push_back(std::log(vh / vl) / std::log(rh / rl));
    }
    if (slopes.empty()) throw precondition_error("dimension_of: law has no usable sample pair");
    return {*std::min_element(slopes.begin(), slopes.end()),
            *std::max_element(slopes.begin(), slopes.end())};
}

}  // namespace

DimensionResult dimension_of(const SetDescriptor& desc) {
    DimensionResult out;
    Rat ambient(desc.ambient());

    auto exact_threshold = [&](const Rat& numerator, const Rat& law_exp, int k, int hdim) {
        // full-gauge exponent threshold: k + min(hdim, numerator / law_exp)
        Rat t = law_exp <= 0 ? Rat(hdim) : Rat(numerator / law_exp);
        Rat val = Rat(k) + (t < hdim ? t : Rat(hdim));
        out.value = clamp_rat(val, Rat(0), ambient);
        out.exact = true;
        out.lo = out.hi = to_double(out.value);
    };

    switch (desc.kind) {
        case SetDescriptor::Kind::Khintchine:
            out.citations = {"jarnik-besicovitch"};
            out.trace.push_back("threshold of sum_q q^{m - s_phi s} at s = (m+1)/s_phi");
            if (desc.law->form() == GaugeForm::PowerLog) {
                exact_threshold(Rat(desc.m + 1), desc.law->s(), 0, desc.m);
            } else {
                auto [lo, hi] = law_slope_band(*desc.law);
                out.lo = std::min(double(desc.m), (desc.m + 1) / hi);
                out.hi = std::min(double(desc.m), (desc.m + 1) / lo);
            }
            return out;
        case SetDescriptor::Kind::SchmidtLinearForms:
            out.citations = {"dimension-linear-forms"};
            out.trace.push_back(
                "threshold of sum q^{n-1+m-(s_psi+1)s} at s = (m+n)/(s_psi+1), shifted by Id^{m(n-1)}");
            if (desc.law->form() == GaugeForm::PowerLog) {
                exact_threshold(Rat(desc.m + desc.n), desc.law->s() + 1, desc.m * (desc.n - 1),
                                desc.m);
            } else {
                auto [lo, hi] = law_slope_band(*desc.law);
                int k = desc.m * (desc.n - 1);
                out.lo = k + std::min(double(desc.m), (desc.m + desc.n) / (hi + 1));
                out.hi = k + std::min(double(desc.m), (desc.m + desc.n) / (lo + 1));
            }
            return out;
        case SetDescriptor::Kind::Groshev:
            out.citations = {"groshev-class"};
            out.trace.push_back(
                "threshold of sum Q^{m+n-1-s_phi s} at s = (m+n)/s_phi, shifted by Id^{m(n-1)}");
            if (desc.law->form() == GaugeForm::PowerLog) {
                exact_threshold(Rat(desc.m + desc.n), desc.law->s(), desc.m * (desc.n - 1), desc.m);
            } else {
                auto [lo, hi] = law_slope_band(*desc.law);
                int k = desc.m * (desc.n - 1);
                out.lo = k + std::min(double(desc.m), (desc.m + desc.n) / hi);
                out.hi = k + std::min(double(desc.m), (desc.m + desc.n) / lo);
            }
            return out;
        case SetDescriptor::Kind::Resonant:
            out.citations = {"dimension-resonant"};
            out.trace.push_back("n - 1 + n/(nu+1) from the resonance series threshold");
            out.value = clamp_rat(Rat(desc.n - 1) + Rat(desc.n) / (desc.nu + 1), Rat(0), ambient);
            out.exact = true;
            out.lo = out.hi = to_double(out.value);
            return out;
        case SetDescriptor::Kind::ResonantAll:
            out.citations = {"resonant-all"};
            out.value = Rat(desc.n - 1);
            out.exact = true;
            out.lo = out.hi = to_double(out.value);
            return out;
        case SetDescriptor::Kind::DiophantineType:
            out.citations = {"dimension-diophantine"};
            out.trace.push_back("2/(2+sigma) from the type series threshold");
            out.value = clamp_rat(Rat(2) / (desc.sigma + 2), Rat(0), ambient);
            out.exact = true;
            out.lo = out.hi = to_double(out.value);
            return out;
        case SetDescriptor::Kind::Liouville:
            out.citations = {"liouville"};
            out.value = Rat(0);
            out.exact = true;
            out.lo = out.hi = 0;
            return out;
        case SetDescriptor::Kind::Intersection: {
            out.citations = {"intersection-closure"};
            bool all_exact = true, first = true;
            for (const auto& mem : desc.members) {
                DimensionResult r = dimension_of(mem);
                all_exact = all_exact && r.exact;
                if (first) {
                    out.value = r.value;
                    out.lo = r.lo;
                    out.hi = r.hi;
                } else {
                    if (r.exact && r.value < out.value) out.value = r.value;
                    out.lo = std::min(out.lo, r.lo);
                    out.hi = std::min(out.hi, r.hi);
                }
                for (auto& c : r.citations)
                    if (std::find(out.citations.begin(), out.citations.end(), c) ==
                        out.citations.end())
                        out.citations.push_back(c);
                first = false;
            }
            out.exact = all_exact;
            out.trace.push_back("minimum of member dimensions");
            return out;
        }
    }
    return out;
}

EquivConvReport equivconv_check(const Gauge& h, int n, const Rat& nu, long long qmax) {
    if (n < 2) throw precondition_error("equivconv: n >= 2 required");
    if (nu <= n - 1)
        throw precondition_error("equivconv: requires nu > n-1 (the resonance dichotomy hypothesis)");
    if (!h.in_class(GaugeContext(1)))
        throw precondition_error("equivconv: h must belong to D_1");

    EquivConvReport rep;
    rep.qmax = qmax;
    rep.lattice_bound =
        static_cast<long long>(std::floor(std::pow(static_cast<double>(qmax), 1.0 / n) + 1e-9));

    auto heval = [&](double r) -> double { return h.r_in_domain(r) ? h.eval(r) : 0.0; };
    double expo_direct = -to_double(nu + 1) / n;
    double expo_lattice = -to_double(nu + 1);

    if (h.form() == GaugeForm::PowerLog) {
        rep.direct = classify_from_ledger(-(nu + 1) * h.s() / n, h.t(), "sum_q h(q^{-(nu+1)/n})");
        rep.lattice = classify_from_ledger(Rat(n - 1) - (nu + 1) * h.s(), h.t(),
                                           "sum_{q in Z^n} h(|q|^{-nu-1})");
    } else {
        rep.direct = classify_numeric(
            [&](long long q) { return heval(std::pow(static_cast<double>(q), expo_direct)); }, qmax,
            "sum_q h(q^{-(nu+1)/n})");
        rep.lattice = classify_numeric(
            [&](long long Q) {
                return to_double(lattice_shell_count(n, Q)) *
                       heval(std::pow(static_cast<double>(Q), expo_lattice));
            },
            std::max<long long>(64, rep.lattice_bound), "sum_{q in Z^n} h(|q|^{-nu-1})");
    }
    rep.verdicts_agree = rep.direct.verdict == rep.lattice.verdict;

    for (long long q = 2; q <= qmax; ++q)
        rep.partial_direct += heval(std::pow(static_cast<double>(q), expo_direct));
    for (long long Q = 2; Q <= rep.lattice_bound; ++Q)
        rep.partial_lattice += to_double(lattice_shell_count(n, Q)) *
                               heval(std::pow(static_cast<double>(Q), expo_lattice));
    rep.ratio = rep.partial_direct > 0 ? rep.partial_lattice / rep.partial_direct : 0.0;
    return rep;
}

std::string SetDescriptor::to_text() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Khintchine: os << "khintchine m=" << m << " phi=" << law->to_text(); break;
        case Kind::SchmidtLinearForms: {
            os << "schmidt m=" << m << " n=" << n << " b=";
            for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << rat_to_string(b[i]);
            os << " psi=" << law->to_text();
            break;
        }
        case Kind::Groshev: os << "groshev m=" << m << " n=" << n << " phi=" << law->to_text(); break;
        case Kind::Resonant: os << "resonant n=" << n << " nu=" << rat_to_string(nu); break;
        case Kind::ResonantAll: os << "resonantall n=" << n; break;
        case Kind::DiophantineType: os << "diophtype sigma=" << rat_to_string(sigma); break;
        case Kind::Liouville: os << "liouville"; break;
        case Kind::Intersection: {
            os << "intersect";
            for (const auto& mem : members) os << " [" << mem.to_text() << "]";
            break;
        }
    }
    return os.str();
}

SetDescriptor SetDescriptor::parse(const std::string& text) {
    std::istringstream is(text);
    std::string head;
    is >> head;
    std::optional<int> m, n;
    std::optional<Rat> nu, sigma;
    std::optional<std::vector<Rat>> b;
    std::optional<Gauge> law;
    std::string tok, gauge_text;
    bool in_gauge = false;
    auto flush_gauge = [&]() {
        if (!gauge_text.empty()) law = Gauge::parse(gauge_text);
        gauge_text.clear();
        in_gauge = false;
    };
    while (is >> tok) {
        auto eq = tok.find('=');
        std::string key = eq == std::string::npos ? "" : tok.substr(0, eq);
        std::string val = eq == std::string::npos ? tok : tok.substr(eq + 1);
        if (key == "phi" || key == "psi") {
            flush_gauge();
            in_gauge = true;
            gauge_text = val;
            continue;
        }
        if (in_gauge && (key == "s" || key == "t" || key == "c0" || eq == std::string::npos)) {
            gauge_text += " " + tok;
            continue;
        }
        if (key == "m") m = std::stoi(val);
        else if (key == "n") n = std::stoi(val);
        else if (key == "nu") nu = parse_rational(val);
        else if (key == "sigma") sigma = parse_rational(val);
        else if (key == "b") {
            std::vector<Rat> list;
            std::istringstream ls(val);
            std::string item;
            while (std::getline(ls, item, ',')) list.push_back(parse_rational(item));
            b = std::move(list);
        } else {
            throw parse_error("unknown descriptor field: " + tok);
        }
    }
    flush_gauge();

    if (head == "khintchine") {
        if (!law) throw parse_error("khintchine needs phi=<gauge>");
        return khintchine(m.value_or(1), *law);
    }
    if (head == "schmidt") {
        if (!law || !m || !n) throw parse_error("schmidt needs m=, n=, psi=<gauge>");
        return schmidt(*m, *n, b.value_or(std::vector<Rat>(*m, Rat(0))), *law);
    }
    if (head == "groshev") {
        if (!law || !m || !n) throw parse_error("groshev needs m=, n=, phi=<gauge>");
        return groshev(*m, *n, *law);
    }
    if (head == "resonant") {
        if (!n || !nu) throw parse_error("resonant needs n= and nu=");
        return resonant(*n, *nu);
    }
    if (head == "resonantall") {
        if (!n) throw parse_error("resonantall needs n=");
        return resonant_all(*n);
    }
    if (head == "diophtype") {
        if (!sigma) throw parse_error("diophtype needs sigma=");
        return diophantine_type(*sigma);
    }
    if (head == "liouville") return liouville();
    throw parse_error("unknown set descriptor: " + head);
}

}  // namespace dioph

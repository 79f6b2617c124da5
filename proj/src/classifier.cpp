#include "dioph/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dioph {

namespace {

/// sign of a + b sqrt(c), c > 0 non-square.
int surd_sign(const Rat& a, const Rat& b, const Int& c) {
    if (b == 0) return a == 0 ? 0 : (a > 0 ? 1 : -1);
    if (a == 0) return b > 0 ? 1 : -1;
    if (a > 0 && b > 0) return 1;
    if (a < 0 && b < 0) return -1;
    // opposite signs: compare a^2 with b^2 c
    Rat a2 = a * a, b2c = b * b * Rat(c);
    if (a2 == b2c) return 0;  // impossible for non-square c, kept for safety
    return (a2 > b2c) == (a > 0) ? 1 : -1;
}

Int surd_floor(const Rat& a, const Rat& b, const Int& c) {
    double est = to_double(a) + to_double(b) * std::sqrt(to_double(c));
    Int k = Int(static_cast<long long>(std::floor(est))) - 2;
    while (surd_sign(a - Rat(k + 1), b, c) >= 0) ++k;
    return k;
}

Int isqrt(const Int& x) { return boost::multiprecision::sqrt(x); }

}  // namespace

RealSpec make_exact_rational(const Rat& v) { return ExactRational{v}; }

RealSpec make_quadratic_surd(const Rat& a, const Rat& b, const Int& c) {
    if (c <= 0) throw precondition_error("surd: c must be positive");
    if (b == 0) return ExactRational{a};
    // pull square factors out of c
    Int cc = c, f = 1;
    for (Int i = 2; i * i <= cc; ++i)
        while (cc % (i * i) == 0) {
            cc /= i * i;
            f *= i;
        }
    if (cc == 1) return ExactRational{a + b * Rat(f)};
    return QuadraticSurd{a, b * Rat(f), cc};
}

RealSpec make_decimal(const std::string& digits, int precision) {
    if (precision < 1) throw precondition_error("decimal input needs precision >= 1");
    return DecimalString{parse_rational(digits), precision};
}

RealSpec parse_real(const std::string& text) {
    if (text.rfind("surd:", 0) == 0) {
        std::istringstream is(text.substr(5));
        std::string item;
        std::vector<std::string> parts;
        while (std::getline(is, item, ',')) parts.push_back(item);
        if (parts.size() != 3) throw parse_error("surd wants surd:a,b,c");
        return make_quadratic_surd(parse_rational(parts[0]), parse_rational(parts[1]),
                                   Int(parts[2]));
    }
    if (text.rfind("dec:", 0) == 0) {
        auto at = text.find('@');
        if (at == std::string::npos) throw parse_error("decimal wants dec:<digits>@<precision>");
        return make_decimal(text.substr(4, at - 4), std::stoi(text.substr(at + 1)));
    }
    return ExactRational{parse_rational(text)};
}

std::string real_to_text(const RealSpec& x) {
    if (auto* r = std::get_if<ExactRational>(&x)) return rat_to_string(r->value);
    if (auto* s = std::get_if<QuadraticSurd>(&x))
        return "surd:" + rat_to_string(s->a) + "," + rat_to_string(s->b) + "," + s->c.str();
    const auto& d = std::get<DecimalString>(x);
    return "dec:" + rat_to_string(d.value) + "@" + std::to_string(d.precision);
}

bool is_rational(const RealSpec& x) { return std::holds_alternative<ExactRational>(x); }

double real_to_double(const RealSpec& x) {
    if (auto* r = std::get_if<ExactRational>(&x)) return to_double(r->value);
    if (auto* s = std::get_if<QuadraticSurd>(&x))
        return to_double(s->a) + to_double(s->b) * std::sqrt(to_double(s->c));
    return to_double(std::get<DecimalString>(x).value);
}

namespace {

void push_convergent(ContinuedFraction& cf, const Int& a) {
    cf.quotients.push_back(a);
    std::size_t k = cf.quotients.size();
    Int p = k == 1 ? a : (k == 2 ? a * cf.convergents[0].first + 1
                                 : a * cf.convergents[k - 2].first + cf.convergents[k - 3].first);
    Int q = k == 1 ? Int(1)
                   : (k == 2 ? a : a * cf.convergents[k - 2].second + cf.convergents[k - 3].second);
    cf.convergents.emplace_back(p, q);
}

ContinuedFraction cf_rational(Rat x, int max_terms) {
    ContinuedFraction cf;
    Int p = num(x), q = den(x);
    while (q != 0 && static_cast<int>(cf.quotients.size()) < max_terms) {
        Int a = floor_div(p, q);
        push_convergent(cf, a);
        Int r = p - a * q;
        p = q;
        q = r;
    }
    return cf;
}

ContinuedFraction cf_surd(const QuadraticSurd& s, int max_terms) {
    // write a + b sqrt(c) as (P + sqrt(D)) / Q with Q | D - P^2
    Int L = boost::multiprecision::lcm(den(s.a), den(s.b));
    Int A = num(s.a) * (L / den(s.a));
    Int B = num(s.b) * (L / den(s.b));
    Int P = A, Q = L, D = B * B * s.c;
    if (B < 0) {
        P = -A;
        Q = -L;
    }
    if ((D - P * P) % Q != 0) {
        P *= boost::multiprecision::abs(Q);
        D *= Q * Q;
        Q *= boost::multiprecision::abs(Q);
    }
    Int sD = isqrt(D);
    ContinuedFraction cf;
    for (int k = 0; k < max_terms; ++k) {
        Int a = Q > 0 ? floor_div(P + sD, Q) : floor_div(P + sD + 1, Q);
        push_convergent(cf, a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    return cf;
}

ContinuedFraction cf_interval(Rat lo, Rat hi, int max_terms) {
    ContinuedFraction cf;
    cf.exact_input = false;
    while (static_cast<int>(cf.quotients.size()) < max_terms) {
        Int flo = floor_rat(lo), fhi = floor_rat(hi);
        if (flo != fhi) {
            cf.truncated = true;
            return cf;
        }
        push_convergent(cf, flo);
        Rat rlo = lo - Rat(flo), rhi = hi - Rat(flo);
        if (rlo == 0 || rhi == 0) {
            cf.truncated = true;  // endpoint hit: the next quotient is ambiguous
            return cf;
        }
        lo = 1 / rhi;
        hi = 1 / rlo;
    }
    return cf;
}

}  // namespace

ContinuedFraction continued_fraction(const RealSpec& x, int max_terms) {
    if (max_terms < 1) throw precondition_error("continued_fraction: max_terms >= 1 required");
    if (auto* r = std::get_if<ExactRational>(&x)) return cf_rational(r->value, max_terms);
    if (auto* s = std::get_if<QuadraticSurd>(&x)) return cf_surd(*s, max_terms);
    const auto& d = std::get<DecimalString>(x);
    Rat eps = pow_rat(Rat(1, 10), d.precision);
    return cf_interval(d.value - eps, d.value + eps, max_terms);
}

double log_convergent_error(const RealSpec& x, const Int& p, const Int& q) {
    if (auto* r = std::get_if<ExactRational>(&x)) {
        Rat err = abs_rat(r->value - Rat(p, q));
        return err == 0 ? -std::numeric_limits<double>::infinity() : log_rat(err);
    }
    if (auto* s = std::get_if<QuadraticSurd>(&x)) {
        // x - p/q = (R + S sqrt(c)) / (L q) and |R + S sqrt(c)| =
        // |R^2 - S^2 c| / |R - S sqrt(c)|; the second factor has no
        // cancellation.
        Int L = boost::multiprecision::lcm(den(s->a), den(s->b));
        Int A = num(s->a) * (L / den(s->a));
        Int B = num(s->b) * (L / den(s->b));
        Int R = A * q - p * L, S = B * q;
        Int R2mS2c = R * R - S * S * s->c;
        if (R2mS2c == 0) return -std::numeric_limits<double>::infinity();
        double log_conj = log_int(boost::multiprecision::abs(R)) > log_int(boost::multiprecision::abs(S)) + 0.5 * std::log(to_double(s->c))
                              ? 0.0
                              : 0.0;
        (void)log_conj;
        // |R - S sqrt(c)|: both terms have the same sign contribution here
        double term1 = to_double(R), term2 = to_double(S) * std::sqrt(to_double(s->c));
        double conj = std::abs(term1 - term2);
        double log_denom;
        if (conj > 0 && std::isfinite(conj) &&
            std::abs(term1 - term2) > 1e-6 * (std::abs(term1) + std::abs(term2))) {
            log_denom = std::log(conj);
        } else {
            // fall back to exact magnitudes
            log_denom = 0.5 * log_int(boost::multiprecision::abs(R2mS2c));
        }
        return log_int(boost::multiprecision::abs(R2mS2c)) - log_denom - log_int(L) - log_int(q);
    }
    const auto& d = std::get<DecimalString>(x);
    Rat err = abs_rat(d.value - Rat(p, q));
    return err == 0 ? -std::numeric_limits<double>::infinity() : log_rat(err);
}

namespace {

std::vector<long long> geometric_grid(long long qmax) {
    std::vector<long long> grid;
    for (long long base = 1; base <= qmax; base *= 10)
        for (long long mult : {1, 2, 5}) {
            long long v = base * mult;
            if (v <= qmax) grid.push_back(v);
        }
    if (grid.empty() || grid.back() != qmax) grid.push_back(qmax);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

}  // namespace

DiophTypeReport diophantine_type(const RealSpec& x, const Rat& sigma, long long qmax) {
    if (qmax < 1) throw precondition_error("diophantine_type: qmax >= 1 required");
    if (sigma < 0) throw precondition_error("diophantine_type: sigma >= 0 required");
    DiophTypeReport rep;
    rep.sigma = sigma;
    if (std::holds_alternative<DecimalString>(x))
        rep.caveat = "decimal input: margins assume the midpoint value; irrationality unknowable";

    ContinuedFraction cf = continued_fraction(x, 256);
    // log K at each convergent with q_k <= qmax
    struct Cand {
        Int q;
        double logK;
    };
    std::vector<Cand> cands;
    for (const auto& [p, q] : cf.convergents) {
        if (q > qmax) break;
        if (q < 1) continue;
        double le = log_convergent_error(x, p, q);
        double lk = le == -std::numeric_limits<double>::infinity()
                        ? -std::numeric_limits<double>::infinity()
                        : to_double(sigma + 2) * log_int(q) + le;
        cands.push_back({q, lk});
    }

    long long prev = 0;
    for (long long Q : geometric_grid(qmax)) {
        DiophTypeRow row;
        row.Q = Q;
        double best = std::numeric_limits<double>::infinity();
        double best_window = std::numeric_limits<double>::infinity();
        for (const auto& c : cands) {
            if (c.q > Q) break;
            if (c.logK < best) {
                best = c.logK;
                row.argmin_q = c.q;
            }
            if (c.q > prev && c.logK < best_window) best_window = c.logK;
        }
        if (std::isinf(best) && best > 0) continue;  // no candidate yet
        row.K_global = std::isinf(best) ? 0.0 : std::exp(best);
        row.log10_K_global = std::isinf(best) ? -std::numeric_limits<double>::infinity()
                                              : best / std::log(10.0);
        row.K_window = std::isinf(best_window)
                           ? row.K_global
                           : (best_window == -std::numeric_limits<double>::infinity()
                                  ? 0.0
                                  : std::exp(best_window));
        rep.rows.push_back(row);
        prev = Q;
    }
    return rep;
}

IrrationalityReport irrationality_exponent(const RealSpec& x, int max_terms) {
    IrrationalityReport rep;
    if (std::holds_alternative<DecimalString>(x))
        rep.caveat = "decimal input: exponent ledger assumes the midpoint value";
    ContinuedFraction cf = continued_fraction(x, max_terms);
    if (is_rational(x) && !cf.truncated &&
        static_cast<int>(cf.quotients.size()) < max_terms) {
        rep.infinite = true;
        return rep;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npts = 0;
    for (std::size_t k = 0; k < cf.convergents.size(); ++k) {
        const auto& [p, q] = cf.convergents[k];
        if (q < 2) continue;
        double le = log_convergent_error(x, p, q);
        if (!std::isfinite(le)) {
            rep.infinite = true;  // exact hit before max_terms
            break;
        }
        IrrationalityRow row;
        row.k = static_cast<int>(k);
        row.log_q = log_int(q);
        row.mu = -le / row.log_q;
        rep.rows.push_back(row);
        sx += row.log_q;
        sy += -le;
        sxx += row.log_q * row.log_q;
        sxy += row.log_q * -le;
        ++npts;
    }
    if (npts >= 2) {
        double denom = npts * sxx - sx * sx;
        rep.estimate = denom != 0 ? (npts * sxy - sx * sy) / denom : 0.0;
    } else if (npts == 1) {
        rep.estimate = rep.rows.front().mu;
    }
    rep.tail_max.assign(rep.rows.size(), 0.0);
    double running = -std::numeric_limits<double>::infinity();
    for (std::size_t i = rep.rows.size(); i-- > 0;) {
        running = std::max(running, rep.rows[i].mu);
        rep.tail_max[i] = running;
    }
    return rep;
}

std::string to_string(SiegelTrend t) {
    switch (t) {
        case SiegelTrend::BoundedBelow: return "bounded-below";
        case SiegelTrend::DecayingPolynomially: return "decaying";
        case SiegelTrend::HitZero: return "hit-zero";
        default: return "inconclusive";
    }
}

namespace {

/// strict comparison |v1| S1^nu < |v2| S2^nu in exact arithmetic
bool gamma_less(const Rat& v1, long long S1, const Rat& v2, long long S2, const Rat& nu) {
    long p = nu.convert_to<long>() * 0;  // silence unused warnings path
    (void)p;
    long pn = static_cast<long>(num(nu).convert_to<long long>());
    long pd = static_cast<long>(den(nu).convert_to<long long>());
    // |v1|^pd S1^pn < |v2|^pd S2^pn
    Rat lhs = pow_rat(abs_rat(v1), pd) * pow_rat(Rat(S1), pn);
    Rat rhs = pow_rat(abs_rat(v2), pd) * pow_rat(Rat(S2), pn);
    return lhs < rhs;
}

void l1_shell(int n, long long S, std::vector<std::vector<long long>>& out) {
    // vectors with ||q||_1 == S, first nonzero coordinate positive
    std::vector<long long> q(n, 0);
    auto rec = [&](auto&& self, int pos, long long rem) -> void {
        if (pos == n - 1) {
            q[pos] = rem;
            bool first_pos = false;
            for (long long v : q) {
                if (v != 0) {
                    first_pos = v > 0;
                    break;
                }
            }
            if (first_pos) out.push_back(q);
            if (rem != 0) {
                q[pos] = -rem;
                for (long long v : q) {
                    if (v != 0) {
                        first_pos = v > 0;
                        break;
                    }
                }
                if (first_pos) out.push_back(q);
            }
            q[pos] = 0;
            return;
        }
        for (long long v = -rem; v <= rem; ++v) {
            q[pos] = v;
            self(self, pos + 1, rem - std::llabs(v));
        }
        q[pos] = 0;
    };
    rec(rec, 0, S);
}

}  // namespace

SiegelReport siegel_gamma(const std::vector<Rat>& omega, const Rat& nu, long long qmax) {
    int n = static_cast<int>(omega.size());
    if (n < 2) throw precondition_error("siegel_gamma: n >= 2 required");
    if (qmax < 1) throw precondition_error("siegel_gamma: qmax >= 1 required");
    SiegelReport rep;
    rep.nu = nu;

    std::vector<long long> grid = geometric_grid(qmax);
    long long decade_point = std::max<long long>(1, qmax / 10);
    if (std::find(grid.begin(), grid.end(), decade_point) == grid.end())
        grid.push_back(decade_point);
    std::sort(grid.begin(), grid.end());

    bool have_best = false;
    Rat best_v;
    long long best_S = 0;
    std::vector<long long> best_q;
    std::size_t gi = 0;

    auto snapshot = [&](long long Q) {
        SiegelRow row;
        row.Q = Q;
        if (have_best) {
            row.resonance = abs_rat(best_v);
            row.argmin_norm = best_S;
            row.argmin_q = best_q;
            row.gamma = rep.hit_zero ? 0.0
                                     : to_double(abs_rat(best_v)) *
                                           std::pow(static_cast<double>(best_S), to_double(nu));
        }
        rep.rows.push_back(row);
    };

    for (long long S = 1; S <= qmax && !rep.hit_zero; ++S) {
        std::vector<std::vector<long long>> shell;
        l1_shell(n, S, shell);
        for (const auto& q : shell) {
            Rat v(0);
            for (int i = 0; i < n; ++i) v += Rat(q[i]) * omega[i];
            if (v == 0) {
                rep.hit_zero = true;
                rep.zero_q = q;
                have_best = true;
                best_v = 0;
                best_S = S;
                best_q = q;
                break;
            }
            if (!have_best || gamma_less(v, S, best_v, best_S, nu)) {
                have_best = true;
                best_v = v;
                best_S = S;
                best_q = q;
            }
        }
        while (gi < grid.size() && grid[gi] == S) {
            snapshot(S);
            ++gi;
        }
    }
    while (gi < grid.size()) {
        snapshot(grid[gi]);
        ++gi;
    }

    if (rep.hit_zero) {
        rep.trend = SiegelTrend::HitZero;
        return rep;
    }
    // trend over the last decade of Q
    double g_end = rep.rows.back().gamma;
    double g_decade = g_end;
    for (const auto& row : rep.rows)
        if (row.Q == decade_point) g_decade = row.gamma;
    if (g_decade > 0 && g_end / g_decade >= 0.5) {
        rep.trend = SiegelTrend::BoundedBelow;
    } else if (g_decade > 0 && g_end > 0) {
        double slope = std::log(g_end / g_decade) /
                       std::log(static_cast<double>(qmax) / decade_point);
        rep.trend = slope <= -0.25 ? SiegelTrend::DecayingPolynomially : SiegelTrend::Inconclusive;
    }
    return rep;
}

double evaluate_lift(const CircleMapSpec& f, double x) {
    if (auto* t = std::get_if<PureTranslation>(&f)) return x + to_double(t->rho);
    const auto& s = std::get<StandardCircleMap>(f);
    const double two_pi = 2.0 * std::acos(-1.0);
    return x + to_double(s.Omega) + to_double(s.K) / two_pi * std::sin(two_pi * x);
}

RotationEstimate rotation_number(const CircleMapSpec& f, const Rat& x0, long long iterations,
                                 long long burn_in) {
    if (iterations < 1) throw precondition_error("rotation_number: iterations >= 1 required");
    RotationEstimate est;
    if (auto* t = std::get_if<PureTranslation>(&f)) {
        est.exact = t->rho;
        est.value = to_double(t->rho);
        est.error_bound = 0;
        return est;
    }
    const auto& s = std::get<StandardCircleMap>(f);
    if (abs_rat(s.K) > 1)
        throw precondition_error("rotation_number: |K| <= 1 required for a monotone lift");
    const double two_pi = 2.0 * std::acos(-1.0);
    double om = to_double(s.Omega), kk = to_double(s.K) / two_pi;
    // keep the orbit in [0,1) and accumulate displacements for precision
    double y = to_double(x0);
    y -= std::floor(y);
    auto step = [&](double v) { return om + kk * std::sin(two_pi * v); };
    for (long long i = 0; i < burn_in; ++i) {
        y += step(y);
        y -= std::floor(y);
    }
    double total = 0;
    for (long long i = 0; i < iterations; ++i) {
        double dpl = step(y);
        total += dpl;
        y += dpl;
        y -= std::floor(y);
    }
    est.value = total / static_cast<double>(iterations);
    est.error_bound = 1.0 / static_cast<double>(iterations);
    return est;
}

std::string to_string(FrequencyLabel l) {
    switch (l) {
        case FrequencyLabel::HeuristicInOmega: return "heuristic-in-Omega";
        case FrequencyLabel::HeuristicInR: return "heuristic-in-R";
        case FrequencyLabel::Resonant: return "resonant";
        default: return "inconclusive";
    }
}

std::vector<FrequencyRow> classify_frequency(const std::vector<Rat>& omega,
                                             const std::vector<Rat>& nu_grid, long long qmax) {
    std::vector<FrequencyRow> out;
    for (const Rat& nu : nu_grid) {
        FrequencyRow row;
        row.nu = nu;
        row.report = siegel_gamma(omega, nu, qmax);
        switch (row.report.trend) {
            case SiegelTrend::HitZero: row.label = FrequencyLabel::Resonant; break;
            case SiegelTrend::BoundedBelow: row.label = FrequencyLabel::HeuristicInOmega; break;
            case SiegelTrend::DecayingPolynomially: row.label = FrequencyLabel::HeuristicInR; break;
            default: row.label = FrequencyLabel::Inconclusive; break;
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace dioph

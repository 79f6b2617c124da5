#include "dioph/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dioph {

std::string to_string(Ternary t) {
    switch (t) {
        case Ternary::True: return "true";
        case Ternary::False: return "false";
        default: return "indeterminate";
    }
}

Gauge Gauge::power_log(const Rat& s, const Rat& t, const Rat& c0) {
    if (s < 0) throw precondition_error("power exponent s must be nonnegative");
    if (c0 <= 0) throw precondition_error("leading scale c0 must be positive");
    if (s == 0 && t >= 0)
        throw precondition_error("powerlog with s=0 needs t<0, otherwise the function does not vanish at 0");
    Gauge g;
    g.form_ = GaugeForm::PowerLog;
    g.s_ = s;
    g.t_ = t;
    g.c0_ = c0;
    return g;
}

Gauge Gauge::power(const Rat& s, const Rat& c0) { return power_log(s, Rat(0), c0); }

Gauge Gauge::tabulated(std::vector<std::pair<Rat, Rat>> samples) {
    if (samples.size() < 2) throw precondition_error("tabulated gauge needs at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto& [r, v] = samples[i];
        if (r <= 0 || r > 1) throw precondition_error("tabulated radii must lie in (0, 1]");
        if (v < 0) throw precondition_error("tabulated values must be nonnegative");
        if (i > 0) {
            if (r >= samples[i - 1].first) throw precondition_error("tabulated radii must strictly decrease");
            if (v > samples[i - 1].second) throw precondition_error("tabulated values must be nonincreasing");
        }
    }
    Gauge g;
    g.form_ = GaugeForm::Tabulated;
    g.samples_ = std::move(samples);
    return g;
}

double Gauge::domain_bound() const {
    if (form_ == GaugeForm::Tabulated) return to_double(samples_.front().first);
    return 1.0;
}

bool Gauge::r_in_domain(double r) const {
    if (r < 0) return false;
    if (form_ == GaugeForm::Tabulated) return r <= domain_bound();
    if (t_ < 0) return r < 1.0;  // log(1/r)^t unbounded at r=1
    return r <= 1.0;
}

namespace {

double power_log_eval(double r, double s, double t, double c0) {
    if (r == 0.0) return 0.0;
    double v = c0 * std::pow(r, s);
    if (t != 0.0) v *= std::pow(std::log(1.0 / r), t);
    return v;
}

// Log-log interpolation through (r_lo, v_lo), (r_hi, v_hi) evaluated at r.
double loglog_interp(double r, double r_lo, double v_lo, double r_hi, double v_hi) {
    if (v_lo == v_hi) return v_lo;
    double slope = std::log(v_hi / v_lo) / std::log(r_hi / r_lo);
    return v_lo * std::pow(r / r_lo, slope);
}

}  // namespace

double Gauge::eval(double r) const {
    if (!r_in_domain(r))
        throw std::domain_error("gauge argument " + std::to_string(r) + " outside [0, domain bound]");
    if (r == 0.0) return 0.0;
    if (form_ == GaugeForm::PowerLog)
        return power_log_eval(r, to_double(s_), to_double(t_), to_double(c0_));

    // Tabulated: locate the segment [r_{i+1}, r_i] containing r; below the
    // smallest radius, extrapolate the deepest segment.
    const auto& sm = samples_;
    std::size_t i = 0;
    while (i + 1 < sm.size() && to_double(sm[i + 1].first) > r) ++i;
    std::size_t lo = std::min(i + 1, sm.size() - 1), hi = lo - 1;
    double rl = to_double(sm[lo].first), vl = to_double(sm[lo].second);
    double rh = to_double(sm[hi].first), vh = to_double(sm[hi].second);
    if (vl == 0.0) {
        if (r <= rl) return 0.0;
        if (vh == 0.0) return 0.0;
        // mixed segment with a vanishing lower endpoint: linear fallback
        return vh * (r - rl) / (rh - rl);
    }
    return loglog_interp(r, rl, vl, rh, vh);
}

std::optional<Rat> Gauge::eval_exact(const Rat& r) const {
    if (form_ != GaugeForm::PowerLog || t_ != 0) return std::nullopt;
    if (den(s_) != 1) return std::nullopt;
    if (r < 0) return std::nullopt;
    if (r == 0) return Rat(0);
    return Rat(c0_ * pow_rat(r, s_.convert_to<long>()));
}

bool Gauge::in_class(const GaugeContext& ctx) const {
    if (form_ == GaugeForm::PowerLog)
        return s_ < ctx.d || (s_ == ctx.d && t_ >= 0);
    const auto& sm = samples_;
    if (sm.back().second == 0) return false;  // g(r)/r^d not positive
    if (sm.size() == 1) return true;
    const auto& [r1, v1] = sm[sm.size() - 2];
    const auto& [r0, v0] = sm[sm.size() - 1];
    // ratio v/r^d must not increase with r on the deepest segment
    return v1 * pow_rat(r0, ctx.d) <= v0 * pow_rat(r1, ctx.d);
}

Regularized regularize(const Gauge& g, const GaugeContext& ctx) {
    if (g.form() == GaugeForm::PowerLog) {
        // inf over rho <= r of c0 rho^{s-d} log(1/rho)^t is 0 near 0 exactly
        // when s > d, or s = d with t < 0; otherwise the infimum sits at
        // rho = r throughout the validity radius and g is unchanged.
        if (g.s() > ctx.d || (g.s() == ctx.d && g.t() < 0)) return ZeroNearZero{};
        return g;
    }
    const auto& sm = g.samples();
    if (sm.back().second == 0) return ZeroNearZero{};
    std::vector<std::pair<Rat, Rat>> out(sm.size());
    Rat running_min;
    bool first = true;
    for (std::size_t idx = sm.size(); idx-- > 0;) {
        const auto& [r, v] = sm[idx];
        Rat ratio = v / pow_rat(r, ctx.d);
        if (first || ratio < running_min) {
            running_min = ratio;
            first = false;
        }
        out[idx] = {r, running_min * pow_rat(r, ctx.d)};
    }
    return Gauge::tabulated(std::move(out));
}

namespace {

Ternary precedes_scan(const Gauge& g, const Gauge& h) {
    std::vector<double> radii;
    auto collect = [&](const Gauge& x) {
        if (x.form() == GaugeForm::Tabulated)
            for (const auto& [r, v] : x.samples()) radii.push_back(to_double(r));
    };
    collect(g);
    collect(h);
    std::sort(radii.begin(), radii.end(), std::greater<>());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    std::vector<double> ratios;
    for (double r : radii) {
        if (r <= 0 || !g.r_in_domain(r) || !h.r_in_domain(r)) continue;
        double gv = g.eval(r), hv = h.eval(r);
        if (hv == 0.0 || gv == 0.0 || !std::isfinite(gv / hv)) return Ternary::Indeterminate;
        ratios.push_back(gv / hv);
    }
    if (ratios.size() < 2) return Ternary::Indeterminate;
    bool increasing = true, nonincreasing = true;
    for (std::size_t i = 0; i + 1 < ratios.size(); ++i) {
        if (ratios[i + 1] <= ratios[i] * (1 + 1e-12)) increasing = false;
        if (ratios[i + 1] > ratios[i] * (1 + 1e-12)) nonincreasing = false;
    }
    if (increasing) return Ternary::True;
    if (nonincreasing) return Ternary::False;
    return Ternary::Indeterminate;
}

}  // namespace

Ternary precedes(const Gauge& g, const Gauge& h) {
    if (g.form() == GaugeForm::PowerLog && h.form() == GaugeForm::PowerLog) {
        if (g.s() < h.s()) return Ternary::True;
        if (g.s() == h.s() && g.t() > h.t()) return Ternary::True;
        return Ternary::False;
    }
    return precedes_scan(g, h);
}

double epsilon_of(const Gauge& g, const GaugeContext& ctx) {
    if (g.form() == GaugeForm::PowerLog) {
        if (g.s() > ctx.d || (g.s() == ctx.d && g.t() < 0))
            throw precondition_error(
                "gauge not in D_" + std::to_string(ctx.d) +
                ": g(r)/r^" + std::to_string(ctx.d) + " is increasing near zero");
        double eps = 1.0;
        double s = to_double(g.s()), t = to_double(g.t()), d = ctx.d;
        // g nondecreasing requires log(1/r) >= t/s
        if (g.t() > 0) eps = std::min(eps, std::exp(-t / s));
        // g(r)/r^d nonincreasing requires log(1/r) >= -t/(d-s)
        if (g.t() < 0 && g.s() < ctx.d) eps = std::min(eps, std::exp(to_double(g.t()) / (d - s)));
        return eps;
    }
    const auto& sm = g.samples();
    if (sm.back().second == 0)
        throw precondition_error("gauge not in D_" + std::to_string(ctx.d) +
                                 ": g(r)/r^" + std::to_string(ctx.d) + " vanishes at the deepest sample");
    std::size_t j = sm.size() - 1;
    while (j > 0) {
        const auto& [rh, vh] = sm[j - 1];
        const auto& [rl, vl] = sm[j];
        if (vh * pow_rat(rl, ctx.d) <= vl * pow_rat(rh, ctx.d))
            --j;
        else
            break;
    }
    if (j == sm.size() - 1)
        throw precondition_error("gauge not in D_" + std::to_string(ctx.d) +
                                 ": g(r)/r^" + std::to_string(ctx.d) + " increases on the deepest segment");
    return std::min(1.0, to_double(sm[j].first));
}

double pseudo_inverse(const Gauge& h, const GaugeContext& ctx, double r,
                      const PseudoInverseOptions& opt) {
    if (r < 0) throw std::domain_error("pseudo_inverse: negative input");
    if (r == 0) return 0.0;
    double eps = epsilon_of(h, ctx);
    double sup = std::pow(h.eval(eps), 1.0 / ctx.d);
    if (r > sup * (1 + 1e-12))
        throw std::range_error("pseudo_inverse: input above sup of h^{1/d} on [0, eps_h)");
    if (h.is_pure_power()) {
        double rho = std::pow(std::pow(r, ctx.d) / to_double(h.c0()), 1.0 / to_double(h.s()));
        return std::min(rho, eps);
    }
    double lo = 0.0, hi = eps;
    while (hi - lo > opt.tolerance) {
        double mid = 0.5 * (lo + hi);
        if (std::pow(h.eval(mid), 1.0 / ctx.d) >= r)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

DimensionIndex dimension_index(const Gauge& g, const GaugeContext& ctx) {
    DimensionIndex out;
    if (g.form() == GaugeForm::PowerLog) {
        // Id^s / g = r^{s - s_g} log(1/r)^{-t_g} tends to infinity exactly
        // when s < s_g, or s = s_g with t_g < 0; the supremum over (0, d) is
        // min(s_g, d) either way.
        out.exact = true;
        out.value_exact = g.s() < ctx.d ? g.s() : Rat(ctx.d);
        out.value = out.lo = out.hi = to_double(out.value_exact);
        return out;
    }
    const auto& sm = g.samples();
    std::vector<double> slopes;
    for (std::size_t i = sm.size() - 1; i > 0 && slopes.size() < 3; --i) {
        double rl = to_double(sm[i].first), vl = to_double(sm[i].second);
        double rh = to_double(sm[i - 1].first), vh = to_double(sm[i - 1].second);
        if (vl <= 0 || vh <= 0) break;
        slopes.push_back(std::log(vh / vl) / std::log(rh / rl));
    }
    if (slopes.empty()) throw precondition_error("dimension_index: no usable sample pair");
    auto clamp = [&](double x) { return std::min(std::max(x, 0.0), double(ctx.d)); };
    out.exact = false;
    out.value = clamp(slopes.front());
    out.lo = clamp(*std::min_element(slopes.begin(), slopes.end()));
    out.hi = clamp(*std::max_element(slopes.begin(), slopes.end()));
    return out;
}

std::string Gauge::to_text() const {
    std::ostringstream os;
    if (form_ == GaugeForm::PowerLog) {
        os << "powerlog s=" << rat_to_string(s_) << " t=" << rat_to_string(t_)
           << " c0=" << rat_to_string(c0_);
    } else {
        os << "tabulated ";
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            if (i) os << ",";
            os << rat_to_string(samples_[i].first) << ":" << rat_to_string(samples_[i].second);
        }
    }
    return os.str();
}

Gauge Gauge::parse(const std::string& text) {
    std::istringstream is(text);
    std::string head;
    is >> head;
    if (head == "powerlog") {
        Rat s, t(0), c0(1);
        bool have_s = false;
        std::string tok;
        while (is >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw parse_error("bad gauge token: " + tok);
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "s") {
                s = parse_rational(val);
                have_s = true;
            } else if (key == "t") {
                t = parse_rational(val);
            } else if (key == "c0") {
                c0 = parse_rational(val);
            } else {
                throw parse_error("unknown gauge field: " + key);
            }
        }
        if (!have_s) throw parse_error("powerlog gauge needs s=<rat>");
        return power_log(s, t, c0);
    }
    if (head == "tabulated") {
        std::string rest;
        is >> rest;
        if (rest.empty()) throw parse_error("tabulated gauge needs samples r:v,...");
        std::vector<std::pair<Rat, Rat>> samples;
        std::istringstream items(rest);
        std::string item;
        while (std::getline(items, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos) throw parse_error("bad sample (want r:v): " + item);
            samples.emplace_back(parse_rational(item.substr(0, colon)),
                                 parse_rational(item.substr(colon + 1)));
        }
        return tabulated(std::move(samples));
    }
    throw parse_error("unknown gauge form: " + head);
}

bool Gauge::operator==(const Gauge& o) const {
    if (form_ != o.form_) return false;
    if (form_ == GaugeForm::PowerLog) return s_ == o.s_ && t_ == o.t_ && c0_ == o.c0_;
    return samples_ == o.samples_;
}

}  // namespace dioph

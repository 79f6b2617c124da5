#include "dioph/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dioph {

int ambient_dimension(const AffineSubspace& s) {
    if (auto* p = std::get_if<PointSubspace>(&s)) return static_cast<int>(p->coords.size());
    const auto& h = std::get<ProductHyperplanes>(s);
    return static_cast<int>(h.q.size() * h.offsets.size());
}

int subspace_dimension(const AffineSubspace& s) {
    if (std::holds_alternative<PointSubspace>(s)) return 0;
    const auto& h = std::get<ProductHyperplanes>(s);
    int n = static_cast<int>(h.q.size()), m = static_cast<int>(h.offsets.size());
    return m * (n - 1);
}

FamilyDescriptor FamilyDescriptor::rational_points(int m, Gauge phi) {
    if (m < 1) throw precondition_error("rationalpoints: m >= 1 required");
    FamilyDescriptor f;
    f.kind = FamilyKind::RationalPoints;
    f.m = m;
    f.law = std::move(phi);
    return f;
}

FamilyDescriptor FamilyDescriptor::linear_forms(int m, int n, std::vector<Rat> b, Gauge psi) {
    if (m < 1 || n < 1) throw precondition_error("linearforms: m, n >= 1 required");
    if (static_cast<int>(b.size()) != m) throw precondition_error("linearforms: b must have length m");
    FamilyDescriptor f;
    f.kind = FamilyKind::LinearForms;
    f.m = m;
    f.n = n;
    f.b = std::move(b);
    f.law = std::move(psi);
    return f;
}

FamilyDescriptor FamilyDescriptor::groshev(int m, int n, Gauge phi) {
    if (m < 1 || n < 1) throw precondition_error("groshev: m, n >= 1 required");
    FamilyDescriptor f;
    f.kind = FamilyKind::Groshev;
    f.m = m;
    f.n = n;
    f.b.assign(m, Rat(0));
    f.law = std::move(phi);
    return f;
}

FamilyDescriptor FamilyDescriptor::resonant_zones(int n, const Rat& nu) {
    if (n < 2) throw precondition_error("resonant: n >= 2 required");
    if (nu <= 0) throw precondition_error("resonant: nu > 0 required");
    FamilyDescriptor f;
    f.kind = FamilyKind::ResonantZones;
    f.m = 1;
    f.n = n;
    f.nu = nu;
    f.b.assign(1, Rat(0));
    return f;
}

FamilyDescriptor FamilyDescriptor::cadic_points(int c, int d) {
    if (c < 2) throw precondition_error("cadic: c >= 2 required");
    if (d < 1) throw precondition_error("cadic: d >= 1 required");
    FamilyDescriptor f;
    f.kind = FamilyKind::CAdicPoints;
    f.c = c;
    f.d = d;
    return f;
}

int FamilyDescriptor::ambient() const {
    switch (kind) {
        case FamilyKind::RationalPoints: return m;
        case FamilyKind::LinearForms:
        case FamilyKind::Groshev: return m * n;
        case FamilyKind::ResonantZones: return n;
        case FamilyKind::CAdicPoints: return d;
    }
    return 0;
}

double FamilyDescriptor::radius_law(long long shell) const {
    if (shell < (kind == FamilyKind::CAdicPoints ? 0 : 1))
        throw std::domain_error("radius law needs a positive shell value");
    switch (kind) {
        case FamilyKind::RationalPoints:
        case FamilyKind::LinearForms:
            return law->eval(1.0 / static_cast<double>(shell));
        case FamilyKind::Groshev:
            return static_cast<double>(shell) * law->eval(1.0 / static_cast<double>(shell));
        case FamilyKind::ResonantZones:
            return std::pow(static_cast<double>(shell), -to_double(nu));
        case FamilyKind::CAdicPoints:
            return std::pow(static_cast<double>(c), -static_cast<double>(shell));
    }
    return 0;
}

std::optional<Rat> FamilyDescriptor::radius_law_exact(long long shell) const {
    if (kind == FamilyKind::CAdicPoints)
        return shell >= 0 ? std::optional<Rat>(pow_rat(Rat(1, c), static_cast<long>(shell)))
                          : std::nullopt;
    if (shell < 1) return std::nullopt;
    Rat inv(1, shell);
    switch (kind) {
        case FamilyKind::RationalPoints:
        case FamilyKind::LinearForms:
            return law->eval_exact(inv);
        case FamilyKind::Groshev:
            if (auto v = law->eval_exact(inv)) return Rat(shell) * *v;
            return std::nullopt;
        case FamilyKind::ResonantZones:
            if (den(nu) == 1) return pow_rat(inv, nu.convert_to<long>());
            return std::nullopt;
        case FamilyKind::CAdicPoints:
            return pow_rat(Rat(1, c), static_cast<long>(shell));
    }
    return std::nullopt;
}

namespace {

double norm2(const std::vector<long long>& q) {
    double s = 0;
    for (long long v : q) s += static_cast<double>(v) * static_cast<double>(v);
    return std::sqrt(s);
}

long long norm_inf(const std::vector<long long>& q) {
    long long m = 0;
    for (long long v : q) m = std::max(m, std::llabs(v));
    return m;
}

/// Lattice vectors q with ||q||_inf == shell, in lexicographic order.
void lattice_shell(int n, long long shell, std::vector<std::vector<long long>>& out) {
    std::vector<long long> q(n);
    auto rec = [&](auto&& self, int pos, bool touched) -> void {
        if (pos == n) {
            if (touched) out.push_back(q);
            return;
        }
        for (long long v = -shell; v <= shell; ++v) {
            q[pos] = v;
            self(self, pos + 1, touched || std::llabs(v) == shell);
        }
    };
    rec(rec, 0, false);
}

long long to_ll_checked(const Int& x) {
    static const Int kMax = Int(std::numeric_limits<long long>::max());
    if (x > kMax || x < -kMax) throw resource_error("enumeration index exceeds 64-bit range");
    return x.convert_to<long long>();
}

// Points p/q with each coordinate in [lo, hi]; c-adic cells use [lo, hi).
void emit_point_family(const FamilyDescriptor& f, long long q, long long shell, bool half_open,
                       double radius, std::optional<Rat> radius_exact, int dim,
                       std::vector<ApproxElement>& out) {
    Int lo_i = ceil_rat(Rat(q) * f.window_lo);
    Rat hi_scaled = Rat(q) * f.window_hi;
    Int hi_i = half_open ? (Rat(ceil_rat(hi_scaled)) == hi_scaled ? ceil_rat(hi_scaled) - 1
                                                                  : floor_rat(hi_scaled))
                         : floor_rat(hi_scaled);
    if (hi_i < lo_i) return;
    long long lo = to_ll_checked(lo_i), hi = to_ll_checked(hi_i);
    std::vector<long long> p(dim, lo);
    while (true) {
        PointSubspace pt;
        pt.coords.reserve(dim);
        for (long long pi : p) pt.coords.emplace_back(Rat(pi, q));
        ApproxElement el;
        el.subspace = std::move(pt);
        el.radius = radius;
        el.radius_exact = radius_exact;
        el.shell = shell;
        if (f.kind == FamilyKind::CAdicPoints)
            el.index = CadicIndex{static_cast<int>(shell), p};
        else
            el.index = PointIndex{q, p};
        out.push_back(std::move(el));
        int pos = dim - 1;
        while (pos >= 0 && p[pos] == hi) p[pos--] = lo;
        if (pos < 0) break;
        ++p[pos];
    }
}

Int count_point_shell(const FamilyDescriptor& f, long long q, bool half_open, int dim) {
    Int lo_i = ceil_rat(Rat(q) * f.window_lo);
    Rat hi_scaled = Rat(q) * f.window_hi;
    Int hi_i = half_open ? (Rat(ceil_rat(hi_scaled)) == hi_scaled ? ceil_rat(hi_scaled) - 1
                                                                  : floor_rat(hi_scaled))
                         : floor_rat(hi_scaled);
    if (hi_i < lo_i) return 0;
    return boost::multiprecision::pow(hi_i - lo_i + 1, dim);
}

}  // namespace

Int lattice_shell_count(int n, long long shell) {
    if (shell < 1) return 0;
    return boost::multiprecision::pow(Int(2 * shell + 1), n) -
           boost::multiprecision::pow(Int(2 * shell - 1), n);
}

std::vector<ApproxElement> enumerate(const FamilyDescriptor& f, long long bound,
                                     const EnumerateOptions& opt) {
    if (bound < 1) throw precondition_error("enumerate: bound >= 1 required");

    // exact cardinality check before materializing anything
    Int total = 0;
    switch (f.kind) {
        case FamilyKind::RationalPoints:
            for (long long q = 1; q <= bound; ++q) total += count_point_shell(f, q, false, f.m);
            break;
        case FamilyKind::CAdicPoints: {
            if (bound > 62) throw precondition_error("cadic generation bound capped at 62");
            long long cells = 1;
            for (long long j = 0; j <= bound; ++j) {
                total += count_point_shell(f, cells, true, f.d);
                if (j < bound) cells *= f.c;
                if (cells > (1ll << 62)) throw resource_error("c-adic grid exceeds 64-bit range");
            }
            break;
        }
        default:
            for (long long s = 1; s <= bound; ++s) total += lattice_shell_count(f.n, s);
            break;
    }
    if (total > opt.element_cap)
        throw resource_error("enumeration would produce " + total.str() + " elements (cap " +
                             std::to_string(opt.element_cap) + ")");

    std::vector<ApproxElement> out;
    out.reserve(total.convert_to<std::size_t>());

    if (f.kind == FamilyKind::RationalPoints) {
        for (long long q = 1; q <= bound; ++q)
            emit_point_family(f, q, q, false, f.radius_law(q), f.radius_law_exact(q), f.m, out);
        return out;
    }
    if (f.kind == FamilyKind::CAdicPoints) {
        long long cells = 1;
        for (long long j = 0; j <= bound; ++j) {
            double radius = std::pow(static_cast<double>(f.c), -static_cast<double>(j));
            emit_point_family(f, cells, j, true, radius, pow_rat(Rat(1, f.c), j), f.d, out);
            cells *= f.c;
        }
        return out;
    }

    for (long long shell = 1; shell <= bound; ++shell) {
        std::vector<std::vector<long long>> qs;
        lattice_shell(f.n, shell, qs);
        for (auto& q : qs) {
            ProductHyperplanes h;
            h.q = q;
            h.offsets = f.b;
            ApproxElement el;
            el.subspace = std::move(h);
            double psi = f.radius_law(shell);
            el.radius = psi / norm2(q);
            el.radius_exact = std::nullopt;
            el.shell = shell;
            el.index = LatticeIndex{std::move(q)};
            out.push_back(std::move(el));
        }
    }
    return out;
}

double distance(const std::vector<Rat>& x, const AffineSubspace& s, Norm norm) {
    if (static_cast<int>(x.size()) != ambient_dimension(s))
        throw std::domain_error("distance: dimension mismatch");
    if (auto* p = std::get_if<PointSubspace>(&s)) {
        if (norm == Norm::Sup) {
            Rat best(0);
            for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, abs_rat(x[i] - p->coords[i]));
            return to_double(best);
        }
        double acc = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double dif = to_double(x[i] - p->coords[i]);
            acc += dif * dif;
        }
        return std::sqrt(acc);
    }
    const auto& h = std::get<ProductHyperplanes>(s);
    std::size_t n = h.q.size(), m = h.offsets.size();
    Rat best(0);
    for (std::size_t j = 0; j < m; ++j) {
        Rat dot(0);
        for (std::size_t i = 0; i < n; ++i) dot += Rat(h.q[i]) * x[j * n + i];
        best = std::max(best, abs_rat(dot - h.offsets[j]));
    }
    return to_double(best) / norm2(h.q);
}

std::optional<int> partition_Qi(const std::vector<long long>& q) {
    long long mx = norm_inf(q);
    if (mx == 0) throw std::domain_error("partition_Qi: q must be nonzero");
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] == mx) return static_cast<int>(i) + 1;
    return std::nullopt;
}

double transversal_diameter(const std::vector<long long>& q, int i) {
    if (i < 1 || i > static_cast<int>(q.size())) throw std::domain_error("transversal_diameter: bad index");
    auto part = partition_Qi(q);
    if (!part || *part != i)
        throw precondition_error("transversal_diameter: q not in Q_" + std::to_string(i));
    return 2.0 * norm2(q) / static_cast<double>(q[i - 1]);
}

ConditionTConstant condition_T_constant(const FamilyDescriptor& f, int i, long long bound) {
    if (f.kind == FamilyKind::RationalPoints || f.kind == FamilyKind::CAdicPoints)
        return {2.0, 2.0};
    if (f.kind != FamilyKind::LinearForms && f.kind != FamilyKind::Groshev &&
        f.kind != FamilyKind::ResonantZones)
        throw precondition_error("condition_T_constant: family lacks the transversal structure");
    if (i < 1 || i > f.n) throw precondition_error("condition_T_constant: i must lie in 1..n");
    ConditionTConstant out;
    out.cap = 2.0 * std::sqrt(static_cast<double>(f.n));
    for (long long shell = 1; shell <= bound; ++shell) {
        std::vector<std::vector<long long>> qs;
        lattice_shell(f.n, shell, qs);
        for (const auto& q : qs) {
            auto part = partition_Qi(q);
            if (part && *part == i) out.sup = std::max(out.sup, transversal_diameter(q, i));
        }
    }
    return out;
}

std::optional<std::pair<std::vector<Int>, long long>> dirichlet_witness(
    const std::vector<Rat>& x, long long qmax) {
    if (qmax < 1) throw precondition_error("dirichlet_witness: qmax >= 1 required");
    int d = static_cast<int>(x.size());
    if (d < 1) throw precondition_error("dirichlet_witness: empty point");
    for (long long q = 1; q <= qmax; ++q) {
        std::vector<Int> p(d);
        Rat worst(0);
        for (int j = 0; j < d; ++j) {
            Rat qx = Rat(q) * x[j];
            p[j] = round_rat(qx);
            worst = std::max(worst, abs_rat(qx - Rat(p[j])));
        }
        // ||x - p/q||_inf < q^{-1-1/d}  <=>  worst^d * q < 1
        if (pow_rat(worst, d) * Rat(q) < 1) return std::make_pair(std::move(p), q);
    }
    return std::nullopt;
}

std::string FamilyDescriptor::to_text() const {
    std::ostringstream os;
    switch (kind) {
        case FamilyKind::RationalPoints:
            os << "rationalpoints m=" << m << " phi=" << law->to_text();
            break;
        case FamilyKind::LinearForms: {
            os << "linearforms m=" << m << " n=" << n << " b=";
            for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << rat_to_string(b[i]);
            os << " psi=" << law->to_text();
            break;
        }
        case FamilyKind::Groshev:
            os << "groshev m=" << m << " n=" << n << " phi=" << law->to_text();
            break;
        case FamilyKind::ResonantZones:
            os << "resonant n=" << n << " nu=" << rat_to_string(nu);
            break;
        case FamilyKind::CAdicPoints:
            os << "cadicpoints c=" << c << " d=" << d;
            break;
    }
    if (kind == FamilyKind::RationalPoints || kind == FamilyKind::CAdicPoints)
        os << " window=" << rat_to_string(window_lo) << "," << rat_to_string(window_hi);
    return os.str();
}

namespace {

std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(parse_rational(item));
    return out;
}

}  // namespace

FamilyDescriptor FamilyDescriptor::parse(const std::string& text) {
    std::istringstream is(text);
    std::string head;
    is >> head;
    std::optional<int> m, n, c, d;
    std::optional<Rat> nu;
    std::optional<std::vector<Rat>> b;
    std::optional<Gauge> law;
    std::optional<std::pair<Rat, Rat>> window;

    std::string tok;
    std::string gauge_text;
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
        else if (key == "c") c = std::stoi(val);
        else if (key == "d") d = std::stoi(val);
        else if (key == "nu") nu = parse_rational(val);
        else if (key == "b") b = parse_rat_list(val);
        else if (key == "window") {
            auto parts = parse_rat_list(val);
            if (parts.size() != 2) throw parse_error("window wants lo,hi");
            window = {parts[0], parts[1]};
        } else {
            throw parse_error("unknown family field: " + tok);
        }
    }
    flush_gauge();

    FamilyDescriptor f;
    if (head == "rationalpoints") {
        if (!law) throw parse_error("rationalpoints needs phi=<gauge>");
        f = rational_points(m.value_or(1), *law);
    } else if (head == "linearforms") {
        if (!law) throw parse_error("linearforms needs psi=<gauge>");
        if (!m || !n) throw parse_error("linearforms needs m= and n=");
        f = linear_forms(*m, *n, b.value_or(std::vector<Rat>(*m, Rat(0))), *law);
    } else if (head == "groshev") {
        if (!law) throw parse_error("groshev needs phi=<gauge>");
        if (!m || !n) throw parse_error("groshev needs m= and n=");
        f = groshev(*m, *n, *law);
    } else if (head == "resonant") {
        if (!n || !nu) throw parse_error("resonant needs n= and nu=");
        f = resonant_zones(*n, *nu);
    } else if (head == "cadicpoints") {
        f = cadic_points(c.value_or(2), d.value_or(1));
    } else {
        throw parse_error("unknown family kind: " + head);
    }
    if (window) {
        f.window_lo = window->first;
        f.window_hi = window->second;
        if (f.window_lo >= f.window_hi) throw parse_error("window must satisfy lo < hi");
    }
    return f;
}

}  // namespace dioph

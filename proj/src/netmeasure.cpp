#include "dioph/netmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace dioph {

double CAdicCube::diameter() const {
    return std::pow(static_cast<double>(c), -static_cast<double>(j));
}

CubeSet::CubeSet(int c, int d, int depth, std::vector<std::vector<long long>> leaves)
    : c_(c), d_(d), depth_(depth), leaves_(std::move(leaves)) {
    if (c_ < 2) throw precondition_error("cube set: c >= 2 required");
    if (d_ < 1) throw precondition_error("cube set: d >= 1 required");
    if (depth_ < 0 || depth_ > 62) throw precondition_error("cube set: depth must lie in 0..62");
    long long cells = 1;
    for (int i = 0; i < depth_; ++i) cells *= c_;
    for (const auto& k : leaves_) {
        if (static_cast<int>(k.size()) != d_) throw precondition_error("cube set: leaf arity mismatch");
        for (long long v : k)
            if (v < 0 || v >= cells) throw precondition_error("cube set: leaf outside root cube");
    }
    std::sort(leaves_.begin(), leaves_.end());
    leaves_.erase(std::unique(leaves_.begin(), leaves_.end()), leaves_.end());
}

CubeSet CubeSet::full(int c, int d, int depth) {
    long long cells = 1;
    for (int i = 0; i < depth; ++i) cells *= c;
    std::vector<std::vector<long long>> leaves;
    std::vector<long long> k(d, 0);
    while (true) {
        leaves.push_back(k);
        int pos = d - 1;
        while (pos >= 0 && k[pos] == cells - 1) k[pos--] = 0;
        if (pos < 0) break;
        ++k[pos];
    }
    return CubeSet(c, d, depth, std::move(leaves));
}

bool CubeSet::contains_leaf(const std::vector<long long>& k) const {
    return std::binary_search(leaves_.begin(), leaves_.end(), k);
}

double cover_value(const std::vector<CAdicCube>& cover, const Gauge& g) {
    std::vector<CAdicCube> sorted = cover;
    std::sort(sorted.begin(), sorted.end(), [](const CAdicCube& a, const CAdicCube& b) {
        for (std::size_t i = 0; i < a.k.size(); ++i) {
            Rat pa = Rat(a.k[i]) * pow_rat(Rat(1, a.c), a.j);
            Rat pb = Rat(b.k[i]) * pow_rat(Rat(1, b.c), b.j);
            if (pa != pb) return pa < pb;
        }
        return a.j < b.j;
    });
    double acc = 0;
    for (const auto& cube : sorted) acc += g.eval(cube.diameter());
    return acc;
}

namespace {

struct DpResult {
    double value = 0;
    std::vector<CAdicCube> cover;
};

struct DpContext {
    int c, d, J;
    double eps;
    std::vector<double> gauge_at_gen;  // g(c^{-j}) for j = 0..J
};

// Exact optimum over antichain covers of the occupied leaves below the cube
// (j, k).  Candidate covers are valued by the canonical left-to-right fold,
// so min selection and the reported value agree bit for bit with any oracle
// using cover_value.
DpResult dp(const DpContext& ctx, int j, const std::vector<long long>& k,
            const std::vector<std::vector<long long>>& local_leaves) {
    DpResult res;
    if (local_leaves.empty()) return res;
    bool admissible = std::pow(static_cast<double>(ctx.c), -j) < ctx.eps;
    if (j == ctx.J) {
        if (!admissible)
            throw precondition_error(
                "net_measure: no admissible cube can cover an occupied leaf (eps_g <= c^-J)");
        res.value = ctx.gauge_at_gen[j];
        res.cover.push_back(CAdicCube{ctx.c, j, k});
        return res;
    }

    int rem = ctx.J - j - 1;
    long long scale = 1;
    for (int i = 0; i < rem; ++i) scale *= ctx.c;
    std::map<std::vector<long long>, std::vector<std::vector<long long>>> children;
    for (const auto& leaf : local_leaves) {
        std::vector<long long> digit(ctx.d), rest(ctx.d);
        for (int i = 0; i < ctx.d; ++i) {
            digit[i] = leaf[i] / scale;
            rest[i] = leaf[i] % scale;
        }
        children[std::move(digit)].push_back(std::move(rest));
    }

    DpResult split;
    for (auto& [digit, leaves] : children) {
        std::vector<long long> child_k(ctx.d);
        for (int i = 0; i < ctx.d; ++i) child_k[i] = k[i] * ctx.c + digit[i];
        DpResult sub = dp(ctx, j + 1, child_k, leaves);
        split.cover.insert(split.cover.end(), sub.cover.begin(), sub.cover.end());
    }
    split.value = 0;
    for (const auto& cube : split.cover) split.value += ctx.gauge_at_gen[cube.j];

    if (admissible && ctx.gauge_at_gen[j] <= split.value) {
        res.value = ctx.gauge_at_gen[j];
        res.cover.push_back(CAdicCube{ctx.c, j, k});
        return res;
    }
    return split;
}

}  // namespace

CoverResult net_measure(const CubeSet& target, const Gauge& g, const GaugeContext& ctx) {
    if (ctx.d != target.d()) throw precondition_error("net_measure: dimension mismatch");
    CoverResult out;
    out.optimal = true;
    if (target.empty()) return out;

    DpContext dctx;
    dctx.c = target.c();
    dctx.d = target.d();
    dctx.J = target.depth();
    dctx.eps = epsilon_of(g, ctx);
    for (int j = 0; j <= dctx.J; ++j)
        dctx.gauge_at_gen.push_back(g.eval(std::pow(static_cast<double>(dctx.c), -j)));

    DpResult best = dp(dctx, 0, std::vector<long long>(dctx.d, 0), target.leaves());
    out.value = best.value;
    out.cover = std::move(best.cover);
    return out;
}

namespace {

/// floor((num/den)^{1/r}) for num/den >= 0, plus exactness of the root.
std::pair<Int, bool> kth_root_floor_rat(const Rat& x, unsigned r) {
    if (x < 0) throw std::domain_error("kth_root_floor_rat: negative");
    Int lo = 0, hi = 1;
    while (pow_rat(Rat(hi), r) <= x) hi <<= 1;
    while (lo < hi - 1) {
        Int mid = (lo + hi) / 2;
        if (pow_rat(Rat(mid), r) <= x) lo = mid;
        else hi = mid;
    }
    return {lo, pow_rat(Rat(lo), r) == x};
}

/// floor and ceil of coef * base^{num/den} with base >= 1, exponent > 0.
struct FloorCeil {
    Int fl, ce;
};
FloorCeil floor_ceil_scaled_power(const Rat& coef, const Int& base, const Int& expo_num,
                                  unsigned expo_den) {
    if (coef == 0) return {0, 0};
    // |coef| * base^{p/r} = ((|coef|^r) * base^p)^{1/r}
    Rat inner = pow_rat(abs_rat(coef), static_cast<long>(expo_den)) *
                Rat(boost::multiprecision::pow(base, expo_num.convert_to<unsigned>()));
    auto [root, exact] = kth_root_floor_rat(inner, expo_den);
    Int fl_abs = root, ce_abs = exact ? root : root + 1;
    if (coef > 0) return {fl_abs, ce_abs};
    return {-ce_abs, -fl_abs};
}

Int line_count(const Int& w, long long u, long long v, const Int& C) {
    // #{(x, y) in [0,C)^2 : u x + v y = w}
    if (u == 0 && v == 0) return w == 0 ? C * C : Int(0);
    if (u == 0) {
        if (w % v != 0) return 0;
        Int y = w / v;
        return (y >= 0 && y < C) ? C : Int(0);
    }
    if (v == 0) {
        if (w % u != 0) return 0;
        Int x = w / u;
        return (x >= 0 && x < C) ? C : Int(0);
    }
    long long g = std::gcd(std::llabs(u), std::llabs(v));
    if (w % g != 0) return 0;
    // extended gcd on |u|/g, |v|/g
    long long a = std::llabs(u) / g, b = std::llabs(v) / g;
    long long x0 = 1, x1 = 0, r0 = a, r1 = b;
    while (r1 != 0) {
        long long k = r0 / r1;
        std::tie(r0, r1) = std::make_tuple(r1, r0 - k * r1);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - k * x1);
    }
    // now r0 == 1 and |u|/g * x0 == 1 (mod b)
    Int wg = w / g;
    long long su = u < 0 ? -1 : 1, sv = v < 0 ? -1 : 1;
    // solve (su a) x + (sv b) y = wg; particular x = su * x0 * wg mod b
    Int bmod(b);
    Int xp = (Int(su) * Int(x0) * wg) % bmod;
    if (xp < 0) xp += bmod;
    // x = xp + b t must lie in [0, C); y = (wg - su a x)/(sv b) in [0, C)
    // t range from x constraint:
    Int t_lo = -floor_div(xp, bmod);                    // x >= 0
    Int t_hi = floor_div(C - 1 - xp, bmod);             // x <= C-1
    // y(t) = (wg - su*a*(xp + b t)) / (sv*b) = y0 - (su*a/sv) t
    Int y0_num = wg - Int(su) * Int(a) * xp;
    Int denom = Int(sv) * Int(b);
    if (y0_num % denom != 0) return 0;  // should not happen
    Int y0 = y0_num / denom;
    Int step = Int(su) * Int(a) / Int(sv);  // y decreases by su*a/sv per t
    // y in [0, C): y0 - step t >= 0 and y0 - step t <= C-1
    Int lo2, hi2;
    if (step > 0) {
        lo2 = -floor_div(C - 1 - y0, step);
        hi2 = floor_div(y0, step);
    } else if (step < 0) {
        Int pstep = -step;
        lo2 = -floor_div(y0, pstep);
        hi2 = floor_div(C - 1 - y0, pstep);
    } else {
        if (y0 < 0 || y0 >= C) return 0;
        lo2 = t_lo;
        hi2 = t_hi;
    }
    Int lo = std::max(t_lo, lo2), hi = std::min(t_hi, hi2);
    return hi >= lo ? hi - lo + 1 : Int(0);
}

}  // namespace

SlabCover slab_cover(const std::vector<long long>& q, const Rat& nu, bool want_cells) {
    int n = static_cast<int>(q.size());
    long long Q = 0;
    for (long long v : q) Q = std::max(Q, std::llabs(v));
    if (Q == 0) throw std::domain_error("slab_cover: q must be nonzero");
    if (nu <= 0) throw precondition_error("slab_cover: nu > 0 required");

    unsigned r = den(nu).convert_to<unsigned>();
    Int expo_num = num(nu) + Int(r);  // nu + 1 = (p + r)/r
    SlabCover out;
    out.side = std::pow(static_cast<double>(Q), -to_double(nu) - 1.0);

    // cells per axis: ceil(Q^{nu+1})
    auto mc = floor_ceil_scaled_power(Rat(1), Int(Q), expo_num, r);
    Int C = mc.ce;
    out.cells_per_axis = C;

    long long S = 0, pos = 0, neg = 0;
    for (long long v : q) {
        S += v;
        if (v > 0) pos += v;
        else neg -= v;
    }
    // cell a meets the slab iff q.a lies strictly inside
    // ( S M / 2 - Q - pos , S M / 2 + Q + neg )  with M = Q^{nu+1}
    auto half = floor_ceil_scaled_power(Rat(S, 2), Int(Q), expo_num, r);
    Int t_min = half.fl - Q - pos + 1;
    Int t_max = half.ce + Q + neg - 1;

    Int count = 0;
    if (n == 1) {
        for (Int w = t_min; w <= t_max; ++w) {
            if (w % q[0] != 0) continue;
            Int a = w / q[0];
            if (a >= 0 && a < C) ++count;
        }
    } else if (n == 2) {
        for (Int w = t_min; w <= t_max; ++w) count += line_count(w, q[0], q[1], C);
    } else if (n == 3) {
        long long Cll = C.convert_to<long long>();
        for (long long a1 = 0; a1 < Cll; ++a1) {
            Int base = Int(q[0]) * a1;
            for (Int w = t_min - base; w <= t_max - base; ++w)
                count += line_count(w, q[1], q[2], C);
        }
    } else {
        // recursive final-axis interval count
        std::vector<long long> a(n, 0);
        auto rec = [&](auto&& self, int pos_axis, Int partial) -> void {
            if (pos_axis == n - 1) {
                if (q[pos_axis] == 0) {
                    if (partial >= t_min && partial <= t_max) count += C;
                    return;
                }
                Int lo = t_min - partial, hi = t_max - partial;
                Int qn(q[pos_axis]);
                Int alo = qn > 0 ? ceil_rat(Rat(lo, qn)) : ceil_rat(Rat(hi, qn));
                Int ahi = qn > 0 ? floor_rat(Rat(hi, qn)) : floor_rat(Rat(lo, qn));
                alo = std::max(alo, Int(0));
                ahi = std::min(ahi, C - 1);
                if (ahi >= alo) count += ahi - alo + 1;
                return;
            }
            long long Cll = C.convert_to<long long>();
            for (long long v = 0; v < Cll; ++v) {
                a[pos_axis] = v;
                self(self, pos_axis + 1, partial + Int(q[pos_axis]) * v);
            }
        };
        rec(rec, 0, Int(0));
    }
    out.count = count;

    if (want_cells && n <= 3 && out.count <= 2'000'000 && C <= Int(4'000'000)) {
        std::vector<std::vector<long long>> cells;
        long long Cll = C.convert_to<long long>();
        std::vector<long long> a(n, 0);
        auto rec = [&](auto&& self, int axis, Int partial) -> void {
            if (axis == n - 1) {
                if (q[axis] == 0) {
                    if (partial >= t_min && partial <= t_max)
                        for (long long v = 0; v < Cll; ++v) {
                            a[axis] = v;
                            cells.push_back(a);
                        }
                    return;
                }
                Int qn(q[axis]);
                Int lo = t_min - partial, hi = t_max - partial;
                Int alo = qn > 0 ? ceil_rat(Rat(lo, qn)) : ceil_rat(Rat(hi, qn));
                Int ahi = qn > 0 ? floor_rat(Rat(hi, qn)) : floor_rat(Rat(lo, qn));
                alo = std::max(alo, Int(0));
                ahi = std::min(ahi, C - 1);
                for (Int v = alo; v <= ahi; ++v) {
                    a[axis] = v.convert_to<long long>();
                    cells.push_back(a);
                }
                return;
            }
            for (long long v = 0; v < Cll; ++v) {
                a[axis] = v;
                self(self, axis + 1, partial + Int(q[axis]) * v);
            }
        };
        rec(rec, 0, Int(0));
        out.cells = std::move(cells);
    }
    return out;
}

UpperBoundResult hausdorff_upper_bound(const FamilyDescriptor& f, const Gauge& G,
                                       long long tail_from, long long tail_to) {
    if (tail_from < (f.kind == FamilyKind::CAdicPoints ? 0 : 1) || tail_to < tail_from)
        throw precondition_error("hausdorff_upper_bound: need 1 <= tail_from <= tail_to");
    UpperBoundResult out;
    for (long long shell = tail_from; shell <= tail_to; ++shell) {
        CoverSummand s;
        s.shell = shell;
        switch (f.kind) {
            case FamilyKind::RationalPoints:
            case FamilyKind::CAdicPoints: {
                // one ball of diameter 2 r per point in the window
                Int lo = ceil_rat(Rat(shell) * f.window_lo);
                long long scale = shell;
                if (f.kind == FamilyKind::CAdicPoints) {
                    scale = 1;
                    for (long long i = 0; i < shell; ++i) scale *= f.c;
                }
                Rat hi_scaled = Rat(scale) * f.window_hi;
                lo = ceil_rat(Rat(scale) * f.window_lo);
                Int hi = f.kind == FamilyKind::CAdicPoints
                             ? (Rat(ceil_rat(hi_scaled)) == hi_scaled ? ceil_rat(hi_scaled) - 1
                                                                      : floor_rat(hi_scaled))
                             : floor_rat(hi_scaled);
                if (hi < lo) continue;
                int dim = f.kind == FamilyKind::CAdicPoints ? f.d : f.m;
                s.count = std::pow(to_double(hi - lo + 1), dim);
                s.diameter = 2.0 * f.radius_law(shell);
                break;
            }
            case FamilyKind::ResonantZones: {
                double total = 0;
                double side = 0;
                std::vector<long long> qv(f.n);
                auto rec = [&](auto&& self, int pos, bool touched) -> void {
                    if (pos == f.n) {
                        if (!touched) return;
                        SlabCover sc = slab_cover(qv, f.nu);
                        total += to_double(sc.count);
                        side = sc.side;
                        return;
                    }
                    for (long long v = -shell; v <= shell; ++v) {
                        qv[pos] = v;
                        self(self, pos + 1, touched || std::llabs(v) == shell);
                    }
                };
                rec(rec, 0, false);
                s.count = total;
                s.diameter = side;
                break;
            }
            case FamilyKind::LinearForms:
            case FamilyKind::Groshev: {
                // per-block slab of width 2 psi(q) in [0,1)^n, grid side
                // psi(q)/||q||_2; analytic cell-count bound, m-fold product
                double psi = f.radius_law(shell);
                double q2_min = static_cast<double>(shell);  // ||q||_2 >= ||q||_inf
                double delta = psi / q2_min;
                if (delta <= 0) continue;
                double cols = std::pow(std::ceil(1.0 / delta), f.n - 1);
                double rows = std::ceil(2.0 * std::sqrt(static_cast<double>(f.n))) + 2.0;
                double per_block = cols * rows;
                s.count = to_double(lattice_shell_count(f.n, shell)) * std::pow(per_block, f.m);
                s.diameter = delta;
                break;
            }
        }
        if (s.count <= 0) continue;
        if (!G.r_in_domain(s.diameter))
            throw precondition_error("hausdorff_upper_bound: cover diameter " +
                                     std::to_string(s.diameter) + " at shell " +
                                     std::to_string(shell) +
                                     " is outside the gauge domain; raise tail_from");
        s.contribution = s.count * G.eval(s.diameter);
        out.value += s.contribution;
        out.ledger.push_back(s);
    }
    return out;
}

CubeSet slice(const CubeSet& E, const std::vector<Rat>& x2) {
    int k = static_cast<int>(x2.size());
    if (k <= 0 || k >= E.d()) throw precondition_error("slice: need 0 < k < d");
    long long cells = 1;
    for (int i = 0; i < E.depth(); ++i) cells *= E.c();
    // cell index of x2 in each of the last k coordinates
    std::vector<long long> idx(k);
    bool outside = false;
    for (int i = 0; i < k; ++i) {
        Rat scaled = x2[i] * cells;
        if (scaled < 0 || scaled >= cells) {
            outside = true;
            break;
        }
        idx[i] = floor_rat(scaled).convert_to<long long>();
    }
    std::vector<std::vector<long long>> leaves;
    if (!outside) {
        int d1 = E.d() - k;
        for (const auto& leaf : E.leaves()) {
            bool match = true;
            for (int i = 0; i < k; ++i)
                if (leaf[d1 + i] != idx[i]) {
                    match = false;
                    break;
                }
            if (match) leaves.emplace_back(leaf.begin(), leaf.begin() + d1);
        }
    }
    return CubeSet(E.c(), E.d() - k, E.depth(), std::move(leaves));
}

std::string CubeSet::to_text() const {
    std::ostringstream os;
    os << "cadic c=" << c_ << " d=" << d_ << " J=" << depth_ << "\n";
    for (const auto& leaf : leaves_) {
        for (std::size_t i = 0; i < leaf.size(); ++i) os << (i ? "," : "") << leaf[i];
        os << "\n";
    }
    return os.str();
}

CubeSet CubeSet::parse(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    std::getline(is, header);
    std::istringstream hs(header);
    std::string word, tok;
    hs >> word;
    if (word != "cadic") throw parse_error("cube set header must start with 'cadic'");
    int c = 0, d = 0, J = -1;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw parse_error("bad cube set header token: " + tok);
        std::string key = tok.substr(0, eq);
        int val = std::stoi(tok.substr(eq + 1));
        if (key == "c") c = val;
        else if (key == "d") d = val;
        else if (key == "J") J = val;
        else throw parse_error("unknown cube set header key: " + key);
    }
    if (c == 0 || d == 0 || J < 0) throw parse_error("cube set header needs c=, d=, J=");
    std::vector<std::vector<long long>> leaves;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<long long> k;
        std::istringstream ls(line);
        std::string item;
        while (std::getline(ls, item, ',')) k.push_back(std::stoll(item));
        leaves.push_back(std::move(k));
    }
    return CubeSet(c, d, J, std::move(leaves));
}

CubeSet CubeSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open cube set file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string CoverResult::to_text() const {
    std::ostringstream os;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    os << "value " << buf << "\n";
    for (const auto& cube : cover) {
        os << "j:" << cube.j << " k:";
        for (std::size_t i = 0; i < cube.k.size(); ++i) os << (i ? "," : "") << cube.k[i];
        os << "\n";
    }
    return os.str();
}

}  // namespace dioph

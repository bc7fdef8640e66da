#include "semiframe/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "semiframe/errors.hpp"
#include "semiframe/genframe.hpp"

namespace semiframe {

namespace {

std::vector<double> geometric_sizes(double first, double factor, int levels) {
    if (levels < 1) throw InconsistentScan("gallery: at least one level is required");
    std::vector<double> out;
    double v = first;
    for (int i = 0; i < levels; ++i, v *= factor) out.push_back(v);
    return out;
}

Index as_index(double v, const char* what) {
    const double r = std::round(v);
    if (r < 1.0 || std::abs(r - v) > 1e-9) throw InconsistentScan(std::string(what) + " must be a positive integer");
    return static_cast<Index>(r);
}

std::vector<double> midpoint_coords(Index n) {
    std::vector<double> x(static_cast<std::size_t>(n));
    const double h = 1.0 / static_cast<double>(n);
    for (Index j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = (static_cast<double>(j) + 0.5) * h;
    return x;
}

// Samples of f at the midpoints, scaled so that the Euclidean norm
// approximates the L^2(0,1) norm.
Vec sample(const std::function<double(double)>& f, Index n_x) {
    const auto x = midpoint_coords(n_x);
    const double s = std::sqrt(1.0 / static_cast<double>(n_x));
    Vec v(n_x);
    for (Index j = 0; j < n_x; ++j) v(j) = s * f(x[static_cast<std::size_t>(j)]);
    return v;
}

double integrate(const std::function<double(double)>& f) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-14);
}

const std::vector<NamedFn>& probe_functions() {
    static const std::vector<NamedFn> probes = {
        {"one", [](double) { return 1.0; }},
        {"x", [](double x) { return x; }},
        {"exp", [](double x) { return std::exp(x); }},
        {"cos3x", [](double x) { return std::cos(3.0 * x); }},
    };
    return probes;
}

void check_b(double b) {
    if (!(b > 0.0 && b <= 1.0)) throw InvalidB("weighted_exponentials: b must lie in (0, 1]");
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

}  // namespace

std::vector<double> exp_default_sizes(int levels) { return geometric_sizes(8.0, 3.0, levels); }
std::vector<double> sequence_default_sizes(int levels) { return geometric_sizes(2.0, 4.0, levels); }

std::vector<double> sphere_default_sizes(int levels) {
    static const std::vector<double> table = {0, 2, 6, 14, 30};
    if (levels < 1 || levels > static_cast<int>(table.size()))
        throw InconsistentScan("spherical scan supports 1 to 5 default levels");
    return {table.begin(), table.begin() + levels};
}

NamedFn exp_symbol(const std::string& name) {
    if (name == "one") return {name, [](double) { return 1.0; }};
    if (name == "inv_x") return {name, [](double x) { return 1.0 / x; }};
    if (name == "x") return {name, [](double x) { return x; }};
    if (name == "smooth")
        return {name, [](double x) { return 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * x); }};
    throw ConfigError("unknown exponential symbol '" + name + "' (one, inv_x, x, smooth)");
}

NamedFn rkhs_weight(const std::string& name) {
    if (name == "const2") return {name, [](double) { return 2.0; }};
    if (name == "one_plus_x") return {name, [](double x) { return 1.0 + x; }};
    if (name == "inv_x") return {name, [](double x) { return 1.0 / x; }};
    if (name == "one") return {name, [](double) { return 1.0; }};
    throw ConfigError("unknown RKHS weight '" + name + "' (const2, one_plus_x, inv_x)");
}

NamedFn sphere_symbol(const std::string& name) {
    if (name == "one") return {name, [](double) { return 1.0; }};
    if (name == "one_plus_l2") return {name, [](double l) { return 1.0 + l * l; }};
    if (name == "inv_one_plus_l") return {name, [](double l) { return 1.0 / (1.0 + l); }};
    throw ConfigError("unknown spherical symbol '" + name + "' (one, one_plus_l2, inv_one_plus_l)");
}

// ---- weighted exponentials ---------------------------------------------------

VectorFamily exponential_family(const NamedFn& g, double b, Index n_x) {
    check_b(b);
    if (n_x < 1) throw InvalidGrid("exponential_family: empty grid");
    const Index m = static_cast<Index>(std::llround(static_cast<double>(n_x) / b));
    const Index n0 = -(m / 2);
    const auto x = midpoint_coords(n_x);
    const double s = std::sqrt(1.0 / static_cast<double>(n_x));

    Mat v(n_x, m);
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(m));
    for (Index c = 0; c < m; ++c) {
        const Index n = n0 + c;
        labels.push_back(std::to_string(n));
        for (Index j = 0; j < n_x; ++j) {
            const double xj = x[static_cast<std::size_t>(j)];
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(n) * b * xj;
            v(j, c) = s * g.f(xj) * std::polar(1.0, phase);
        }
    }
    return VectorFamily(MeasureGrid(std::move(labels), std::vector<double>(static_cast<std::size_t>(m), 1.0)),
                        std::move(v));
}

GalleryCase weighted_exponentials(const NamedFn& g, double b, const std::vector<double>& grid_sizes) {
    check_b(b);
    std::vector<ScanLevel> levels;
    for (double n : grid_sizes) {
        const Index n_x = as_index(n, "grid size");
        levels.push_back({static_cast<double>(n_x), exponential_family(g, b, n_x)});
    }

    GalleryCase c{"exp", "", TruncationScan(std::move(levels)), Verdict::Frame, "", std::nullopt, {}};
    c.description = "weighted exponentials g(x) e^{2 pi i n b x}, g = " + g.name + ", b = " + fmt(b) +
                    "; T is multiplication by |g|^2 / b";
    if (g.name == "one")
        c.predicted = (b == 1.0) ? Verdict::ParsevalFrame : Verdict::Frame;
    else if (g.name == "inv_x")
        c.predicted = Verdict::ProperLowerSemiFrame;
    else if (g.name == "x")
        c.predicted = Verdict::UpperSemiFrame;
    else
        c.predicted = Verdict::Frame;
    c.predicted_clause = g.name == "x" ? "v" : "iv";

    for (double n : grid_sizes) {
        const double ratio = n / b;
        if (std::abs(ratio - std::round(ratio)) > 1e-9) {
            c.notes.push_back("N_x / b is not an integer at N_x = " + fmt(n) +
                              "; T only approximates multiplication by |g|^2 / b");
            break;
        }
    }
    c.notes.push_back("T^{-k} computed from the operator: multiplication by (b / |g|^2)^k");
    return c;
}

double exponential_symbol_error(const NamedFn& g, double b, Index n_x) {
    const VectorFamily fam = exponential_family(g, b, n_x);
    const Mat t = mixed_operator(fam, fam);
    const auto& probes = probe_functions();

    double worst = 0.0;
    for (const auto& p : probes) {
        const Vec cf = sample(p.f, n_x);
        const Vec tf = t * cf;
        const double nf = std::sqrt(integrate([&](double x) { return p.f(x) * p.f(x); }));
        for (const auto& q : probes) {
            const Vec ch = sample(q.f, n_x);
            const double nh = std::sqrt(integrate([&](double x) { return q.f(x) * q.f(x); }));
            const cplx discrete = ch.dot(tf);
            const double exact = integrate([&](double x) {
                const double gx = g.f(x);
                return gx * gx / b * p.f(x) * q.f(x);
            });
            worst = std::max(worst, std::abs(discrete - exact) / (nf * nh));
        }
    }
    return worst;
}

double exponential_power_residual(const NamedFn& g, double b, Index n_x, double k) {
    const VectorFamily fam = exponential_family(g, b, n_x);
    const GenFrameOp gf = build_genframe(fam);
    const VectorFamily tk = power_transform(fam, gf, k);
    const NamedFn g_k{g.name, [&](double x) {
                          const double gx = g.f(x);
                          return gx * std::pow(b / (gx * gx), k);
                      }};
    const VectorFamily expected = exponential_family(g_k, b, n_x);
    const double scale = std::max(expected.vectors().cwiseAbs().maxCoeff(), 1e-300);
    return (tk.vectors() - expected.vectors()).cwiseAbs().maxCoeff() / scale;
}

// ---- reproducing-kernel scale -------------------------------------------------

RkhsLevel rkhs_level(const NamedFn& m, int n, Index n_x) {
    if (n_x < 1) throw InvalidGrid("rkhs_level: empty grid");
    const MeasureGrid grid = MeasureGrid::midpoints(0.0, 1.0, n_x);
    const auto x = midpoint_coords(n_x);
    Mat phi = Mat::Zero(n_x, n_x);
    Mat psi = Mat::Zero(n_x, n_x);
    for (Index i = 0; i < n_x; ++i) {
        const double mx = m.f(x[static_cast<std::size_t>(i)]);
        if (!(mx > 1.0))
            throw WeightBelowOne("rkhs_level: weight " + m.name + " is " + fmt(mx) + " <= 1 at x = " +
                                 fmt(x[static_cast<std::size_t>(i)]));
        const double k = 1.0 / std::sqrt(grid.weights()[static_cast<std::size_t>(i)]);
        phi(i, i) = k * std::pow(mx, n);
        psi(i, i) = k * std::pow(mx, -n);
    }
    return {VectorFamily(grid, std::move(phi)), VectorFamily(grid, std::move(psi))};
}

GalleryCase rkhs_scale(const NamedFn& m, int n, const std::vector<double>& grid_sizes) {
    std::vector<ScanLevel> phi_levels;
    std::vector<ScanLevel> psi_levels;
    double lo = 1e300;
    double hi = 0.0;
    for (double s : grid_sizes) {
        const Index n_x = as_index(s, "grid size");
        RkhsLevel lv = rkhs_level(m, n, n_x);
        for (double x : midpoint_coords(n_x)) {
            lo = std::min(lo, m.f(x));
            hi = std::max(hi, m.f(x));
        }
        phi_levels.push_back({static_cast<double>(n_x), std::move(lv.phi)});
        psi_levels.push_back({static_cast<double>(n_x), std::move(lv.psi)});
    }

    GalleryCase c{"rkhs", "", TruncationScan(std::move(phi_levels)), Verdict::Frame, "",
                  TruncationScan(std::move(psi_levels)), {}};
    c.description = "kernel scale phi_x = k_x m(x)^n, m = " + m.name + ", n = " + std::to_string(n) +
                    "; T is multiplication by m^{2n}";
    const bool unbounded = (m.name == "inv_x");
    if (n == 0)
        c.predicted = Verdict::ParsevalFrame;
    else if (!unbounded)
        c.predicted = Verdict::Frame;
    else
        c.predicted = n > 0 ? Verdict::ProperLowerSemiFrame : Verdict::UpperSemiFrame;
    c.predicted_clause = n < 0 && unbounded ? "v" : "iv";
    c.notes.push_back("weight range on the finest grid [" + fmt(lo) + ", " + fmt(hi) + "]");
    return c;
}

RkhsCheck check_rkhs(const RkhsLevel& level, const NamedFn& m, int n) {
    RkhsCheck r;
    const Mat s = mixed_operator(level.psi, level.phi);
    r.reproducing_residual = (s - Mat::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff();

    const Mat t = mixed_operator(level.phi, level.phi);
    Mat expected = Mat::Zero(t.rows(), t.cols());
    double scale = 0.0;
    const auto x = midpoint_coords(t.rows());
    for (Index i = 0; i < t.rows(); ++i) {
        expected(i, i) = std::pow(m.f(x[static_cast<std::size_t>(i)]), 2.0 * n);
        scale = std::max(scale, std::abs(expected(i, i)));
    }
    r.multiplication_residual = (t - expected).cwiseAbs().maxCoeff() / scale;

    const GenFrameOp gf = build_genframe(level.phi);
    r.tight_bounds = frame_bounds(canonical_tight(gf, level.phi));
    return r;
}

// ---- spherical symbol ----------------------------------------------------------

VectorFamily spherical_family(const std::vector<double>& symbol) {
    if (symbol.empty()) throw EmptyFamily("spherical_family: empty symbol");
    Index dim = 0;
    for (std::size_t l = 0; l < symbol.size(); ++l) {
        if (!(symbol[l] > 0.0) || !std::isfinite(symbol[l]))
            throw NonpositiveSymbol("spherical_family: s(" + std::to_string(l) + ") = " + fmt(symbol[l]));
        dim += static_cast<Index>(2 * l + 1);
    }
    Mat v = Mat::Zero(dim, dim);
    std::vector<std::string> labels;
    Index i = 0;
    for (std::size_t l = 0; l < symbol.size(); ++l) {
        const int li = static_cast<int>(l);
        for (int n = -li; n <= li; ++n, ++i) {
            v(i, i) = std::sqrt(symbol[l]);
            labels.push_back("(" + std::to_string(l) + "," + std::to_string(n) + ")");
        }
    }
    return VectorFamily(MeasureGrid(std::move(labels), std::vector<double>(static_cast<std::size_t>(dim), 1.0)),
                        std::move(v));
}

GalleryCase spherical_symbol(const NamedFn& s, const std::vector<double>& degrees) {
    std::vector<ScanLevel> levels;
    for (double d : degrees) {
        const Index big_l = static_cast<Index>(std::llround(d));
        if (big_l < 0 || std::abs(d - static_cast<double>(big_l)) > 1e-9)
            throw InconsistentScan("spherical_symbol: degree must be a non-negative integer");
        std::vector<double> sym;
        for (Index l = 0; l <= big_l; ++l) sym.push_back(s.f(static_cast<double>(l)));
        // Resolution is L + 1 so that L = 0 still gives a positive level.
        levels.push_back({static_cast<double>(big_l + 1), spherical_family(sym)});
    }
    GalleryCase c{"sphere", "", TruncationScan(std::move(levels)), Verdict::Frame, "", std::nullopt, {}};
    c.description = "diagonal spherical symbol s(l) = " + s.name + ", multiplicity 2l + 1";
    if (s.name == "one")
        c.predicted = Verdict::ParsevalFrame;
    else if (s.name == "one_plus_l2")
        c.predicted = Verdict::ProperLowerSemiFrame;
    else if (s.name == "inv_one_plus_l")
        c.predicted = Verdict::UpperSemiFrame;
    c.predicted_clause = s.name == "inv_one_plus_l" ? "v" : "iv";
    c.notes.push_back("scan resolution is L + 1");
    return c;
}

// ---- pathological sequences ----------------------------------------------------

VectorFamily pathological_family(Pathology kind, Index n, Index ambient) {
    switch (kind) {
        case Pathology::E1PlusEn: {
            if (n < 2) throw InvalidGrid("e1_plus_en: N must be at least 2");
            Mat v = Mat::Zero(n, n - 1);
            for (Index j = 0; j < n - 1; ++j) {
                v(0, j) = 1.0;
                v(j + 1, j) = 1.0;
            }
            Mat domain = Mat::Zero(n, n - 1);
            for (Index j = 0; j < n - 1; ++j) domain(j + 1, j) = 1.0;
            return VectorFamily(MeasureGrid::counting(n - 1), std::move(v), std::move(domain));
        }
        case Pathology::EnFrom2: {
            if (n < 2) throw InvalidGrid("en_from_2: N must be at least 2");
            Mat v = Mat::Zero(n, n - 1);
            for (Index j = 0; j < n - 1; ++j) v(j + 1, j) = 1.0;
            return VectorFamily(MeasureGrid::counting(n - 1), std::move(v));
        }
        case Pathology::RankOneBessel: {
            if (n < 1 || ambient < 1) throw InvalidGrid("rank_one_bessel: empty grid");
            const MeasureGrid grid = MeasureGrid::midpoints(0.0, 1.0, n);
            const auto x = midpoint_coords(n);
            Mat v = Mat::Zero(ambient, n);
            for (Index i = 0; i < n; ++i) v(0, i) = std::pow(x[static_cast<std::size_t>(i)], -0.4);
            return VectorFamily(grid, std::move(v));
        }
    }
    throw UnknownGalleryCase("pathological_family: unknown kind");
}

GalleryCase pathological_sequences(Pathology kind, const std::vector<double>& sizes, Index ambient) {
    std::vector<ScanLevel> levels;
    for (double s : sizes) {
        const Index n = as_index(s, "sequence length");
        levels.push_back({static_cast<double>(n), pathological_family(kind, n, ambient)});
    }
    GalleryCase c{"", "", TruncationScan(std::move(levels)), Verdict::NotTotal, "", std::nullopt, {}};
    switch (kind) {
        case Pathology::E1PlusEn:
            c.name = "e1_plus_en";
            c.description = "{e_1 + e_n}, n = 2..N, analysis domain declared as {e_1}^perp";
            c.predicted = Verdict::NotTotal;
            c.predicted_clause = "iii";
            c.notes.push_back("each finite section leaves e_1 - sum e_n uncovered, so the truncations are not total");
            break;
        case Pathology::EnFrom2:
            c.name = "en_from_2";
            c.description = "{e_n}, n = 2..N: Bessel, misses e_1";
            c.predicted = Verdict::NotTotal;
            c.predicted_clause = "ii";
            break;
        case Pathology::RankOneBessel:
            c.name = "rank_one_bessel";
            c.description = "phi_x = x^{-0.4} h on (0,1): bounded energy, unbounded pointwise norms";
            c.predicted = ambient == 1 ? Verdict::Frame : Verdict::NotTotal;
            c.predicted_clause = ambient == 1 ? "iv" : "ii";
            c.notes.push_back("energy converges to int x^{-0.8} dx = 5 while max |phi_x| grows like (2N)^{0.4}");
            break;
    }
    return c;
}

// ---- registry ------------------------------------------------------------------

const std::vector<GalleryEntry>& gallery_list() {
    static const std::vector<GalleryEntry> list = {
        {"exp", "weighted exponentials on (0,1); params g (one|inv_x|x|smooth), b in (0,1]"},
        {"rkhs", "reproducing-kernel scale; params weight (const2|one_plus_x|inv_x), n"},
        {"sphere", "spherical diagonal symbol; params symbol (one|one_plus_l2|inv_one_plus_l)"},
        {"e1_plus_en", "{e_1 + e_n} with non-dense analysis domain"},
        {"en_from_2", "{e_n}, n >= 2: Bessel but not total"},
        {"rank_one_bessel", "rank-one family with bounded energy and unbounded norms; param ambient"},
        {"onb", "standard basis {e_n}"},
        {"en_over_n", "{e_n / n}: upper semi-frame"},
    };
    return list;
}

namespace {

GalleryCase diagonal_sequence(const std::string& name, const std::vector<double>& sizes, bool over_n) {
    std::vector<ScanLevel> levels;
    for (double s : sizes) {
        const Index n = as_index(s, "sequence length");
        Mat v = Mat::Zero(n, n);
        for (Index i = 0; i < n; ++i) v(i, i) = over_n ? 1.0 / static_cast<double>(i + 1) : 1.0;
        levels.push_back({static_cast<double>(n), VectorFamily(MeasureGrid::counting(n), std::move(v))});
    }
    GalleryCase c{name, over_n ? "{e_n / n}, n = 1..N" : "{e_n}, n = 1..N", TruncationScan(std::move(levels)),
                  over_n ? Verdict::UpperSemiFrame : Verdict::ParsevalFrame, over_n ? "v" : "iv", std::nullopt, {}};
    return c;
}

}  // namespace

GalleryCase make_case(const std::string& name, const GalleryParams& p) {
    auto sizes_or = [&](std::vector<double> dflt) { return p.sizes.empty() ? dflt : p.sizes; };
    if (name == "exp") return weighted_exponentials(exp_symbol(p.g), p.b, sizes_or(exp_default_sizes(p.levels)));
    if (name == "rkhs") return rkhs_scale(rkhs_weight(p.weight), p.n, sizes_or(exp_default_sizes(p.levels)));
    if (name == "sphere") return spherical_symbol(sphere_symbol(p.symbol), sizes_or(sphere_default_sizes(p.levels)));
    if (name == "e1_plus_en")
        return pathological_sequences(Pathology::E1PlusEn, sizes_or(sequence_default_sizes(p.levels)));
    if (name == "en_from_2")
        return pathological_sequences(Pathology::EnFrom2, sizes_or(sequence_default_sizes(p.levels)));
    if (name == "rank_one_bessel")
        return pathological_sequences(Pathology::RankOneBessel, sizes_or(sequence_default_sizes(p.levels)),
                                      p.ambient);
    if (name == "onb" || name == "en_over_n")
        return diagonal_sequence(name, sizes_or(sequence_default_sizes(p.levels)), name == "en_over_n");
    throw UnknownGalleryCase("unknown gallery case '" + name + "'");
}

}  // namespace semiframe

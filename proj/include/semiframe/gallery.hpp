/*
 * gallery.hpp - ready-made families with known classification.
 *
 * Every case carries a truncation scan plus the verdict it is expected to
 * produce; classify(scan) on the built case must reproduce it.
 *
 * Weighted exponentials. H = L^2(0,1) is sampled at the midpoints of N_x
 * cells, a function f being stored as sqrt(dx) f(x_j). The family is
 * g(x) e^{2 pi i n b x} for M = round(N_x / b) consecutive frequencies n,
 * which is the full band the grid can resolve. When N_x / b is an integer
 * the discrete frame operator is exactly multiplication by |g|^2 / b, and
 * T^{-k} acts on the family as multiplication by (b / |g|^2)^k, i.e.
 * T^{-k} g_n = g (b/|g|^2)^k e_n.
 *
 * Reproducing-kernel scale. The kernel space is modelled as a weighted
 * sequence space over a grid with kernel vectors k_x = e_x / sqrt(w_x); for
 * a weight m > 1, phi_x = k_x m(x)^n and psi_x = k_x m(x)^-n form a
 * reproducing pair with S_{psi,phi} = I, and T_phi is multiplication by
 * m^{2n}.
 *
 * Spherical symbol. The frame operator is diagonal in (l, n) with
 * eigenvalue s(l) of multiplicity 2l + 1; the symbol is an input.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semiframe/frames.hpp"
#include "semiframe/transforms.hpp"

namespace semiframe {

struct NamedFn {
    std::string name;
    std::function<double(double)> f;
};

struct GalleryCase {
    std::string name;
    std::string description;
    TruncationScan scan;
    Verdict predicted;
    std::string predicted_clause;          // decisive metric-transformability clause, if known
    std::optional<TruncationScan> partner; // second family of a pair (reproducing pair)
    std::vector<std::string> notes;
};

struct GalleryParams {
    std::string g = "one";            // exp: one | inv_x | x | smooth
    double b = 1.0;                   // exp
    std::string weight = "one_plus_x";// rkhs: const2 | one_plus_x | inv_x
    int n = 1;                        // rkhs power
    std::string symbol = "one_plus_l2";  // sphere: one | one_plus_l2 | inv_one_plus_l
    Index ambient = 1;                // rank_one_bessel ambient dimension
    int levels = 4;
    std::vector<double> sizes;        // explicit level sizes (N_x, N or L); overrides `levels`
};

struct GalleryEntry {
    std::string name;
    std::string description;
};

const std::vector<GalleryEntry>& gallery_list();
GalleryCase make_case(const std::string& name, const GalleryParams& params = {});

// Level sizes used when none are given.
std::vector<double> exp_default_sizes(int levels);       // 8 * 3^l
std::vector<double> sequence_default_sizes(int levels);  // 2 * 4^l
std::vector<double> sphere_default_sizes(int levels);    // L = 0, 2, 6, 14, 30

NamedFn exp_symbol(const std::string& name);
NamedFn rkhs_weight(const std::string& name);
NamedFn sphere_symbol(const std::string& name);

// ---- weighted exponentials ---------------------------------------------------

VectorFamily exponential_family(const NamedFn& g, double b, Index n_x);
GalleryCase weighted_exponentials(const NamedFn& g, double b, const std::vector<double>& grid_sizes);

// Weak-form deviation of the discrete T_phi from multiplication by |g|^2/b:
// max over pairs of smooth probe functions of
//   |<T f, h> - int |g|^2/b f h dx| / (|f| |h|),
// the integral evaluated by adaptive Gauss-Kronrod quadrature.
double exponential_symbol_error(const NamedFn& g, double b, Index n_x);

// T^{-k} applied to the family, against the closed form g (b/|g|^2)^k e_n.
double exponential_power_residual(const NamedFn& g, double b, Index n_x, double k);

// ---- reproducing-kernel scale -------------------------------------------------

struct RkhsLevel {
    VectorFamily phi;
    VectorFamily psi;
};

RkhsLevel rkhs_level(const NamedFn& m, int n, Index n_x);
GalleryCase rkhs_scale(const NamedFn& m, int n, const std::vector<double>& grid_sizes);

struct RkhsCheck {
    double reproducing_residual = 0.0;     // max |S_{psi,phi} - I|
    double multiplication_residual = 0.0;  // max |T - diag(m^{2n})| / max m^{2n}
    FrameBounds tight_bounds;              // bounds of T^{-1/2} phi
};

RkhsCheck check_rkhs(const RkhsLevel& level, const NamedFn& m, int n);

// ---- spherical symbol ----------------------------------------------------------

VectorFamily spherical_family(const std::vector<double>& symbol);
GalleryCase spherical_symbol(const NamedFn& s, const std::vector<double>& degrees);

// ---- pathological sequences ----------------------------------------------------

enum class Pathology { E1PlusEn, EnFrom2, RankOneBessel };

VectorFamily pathological_family(Pathology kind, Index n, Index ambient = 1);
GalleryCase pathological_sequences(Pathology kind, const std::vector<double>& sizes, Index ambient = 1);

}  // namespace semiframe

#pragma once

#include <optional>

#include "toric/chars.hpp"
#include "toric/etale.hpp"

namespace toric::dichotomy {

using padic::Elem;
using padic::Field;
using padic::FieldPtr;
using quadext::QElem;
using quadext::QuadField;

// Fully assembled local setting: E/F with K, the component algebras
// L_j = K tensor F_j, unit groups at coherent levels (depth k0 in
// Q_p-normalized valuation), the additive character and delta.
struct LocalSetting {
    FieldPtr F;
    int k0 = 2;
    etale::EtaleAlgebra E;
    etale::QuadEtale K;
    std::vector<etale::QuadEtale> Ls;

    std::shared_ptr<UnitGroup<Field>> gF;
    std::vector<std::shared_ptr<UnitGroup<Field>>> gFj;
    std::shared_ptr<UnitGroup<QuadField>> gK;
    std::vector<std::shared_ptr<UnitGroup<QuadField>>> gLj;

    std::vector<Elem> phi;  // K -> L_j second-coordinate factor (both fields)
    std::vector<Elem> rho;  // scale_j / sigma(scale_j): b-coordinate factor of
                            // the K-automorphism of L_j (deg F_j = 2)

    AddChar<Field> psi;
    Elem delta_t;  // delta = t sqrt(d_given)

    bool k_field() const { return !K.split; }
};

LocalSetting make_setting(FieldPtr f, etale::EtaleAlgebra e, const Elem& d_k, int k0,
                          const Elem& psi_gamma, const Elem& delta_t);

// K -> L_j embedding in pair coordinates (both sides fields).
QElem embed_k_to_l(const LocalSetting& s, std::size_t j, const QElem& x);
// K -> F_j through the first embedding when L_j splits (K field).
Elem embed_k_first(const LocalSetting& s, std::size_t j, const QElem& x);
// relative norm and trace for [L_j : K] = deg F_j <= 2 (both sides fields)
QElem norm_l_to_k(const LocalSetting& s, std::size_t j, const QElem& x);
QElem trace_l_to_k(const LocalSetting& s, std::size_t j, const QElem& x);

// alpha_j: a character of L_j^1 stored through its base change to L_j^x
// (field case; must be trivial on F_j^x), or as a character of F_j^x when
// L_j splits.
struct CompChar {
    std::optional<MulChar<QuadField>> fld;
    std::optional<MulChar<Field>> spl;
};

// character of K^1 via K^x (trivial on F^x) or of F^x when K splits
struct KOneChar {
    std::optional<MulChar<QuadField>> fld;
    std::optional<MulChar<Field>> spl;
};

// splitting character of K^x (or a pair of F^x-characters when K splits)
struct SplitChar {
    std::optional<MulChar<QuadField>> fld;
    std::optional<std::pair<MulChar<Field>, MulChar<Field>>> spl;
};

struct DichotomyInput {
    etale::LambdaVector lambda;
    std::vector<CompChar> alpha;
    KOneChar beta;
    SplitChar chi_w, chi_v;
};

struct DichotomyResult {
    int hom_dimension = 0;
    bool compatible = false;
    etale::SignVector omega;
    etale::SignVector epsilon;
    std::vector<CompChar> lifted;  // set when hom_dimension = 1
};

// chi_W restriction to F^x must be w_{K/F}; chi_V's must be w^n
void validate_splitting_chars(const LocalSetting& s, const SplitChar& chi_w,
                              const SplitChar& chi_v, int n);
// checks that the stored base-change characters are trivial on the fixed
// subalgebra (E^x componentwise / F^x)
void validate_norm_one(const LocalSetting& s, const std::vector<CompChar>& alpha,
                       const KOneChar& beta);

bool character_compatibility(const LocalSetting& s, const std::vector<CompChar>& alpha,
                             const KOneChar& beta, const SplitChar& chi_w,
                             const SplitChar& chi_v);

etale::SignVector epsilon_sign_vector(const LocalSetting& s, const std::vector<CompChar>& alpha,
                                      const SplitChar& chi_w,
                                      const chars::GaussOpts& opts = {});

// raw complex entries before the sign extraction (split components are 1)
std::vector<std::complex<double>> epsilon_complex_entries(const LocalSetting& s,
                                                          const std::vector<CompChar>& alpha,
                                                          const SplitChar& chi_w,
                                                          const chars::GaussOpts& opts = {});

DichotomyResult local_hom_dimension(const LocalSetting& s, const DichotomyInput& in,
                                    const chars::GaussOpts& opts = {});

std::vector<CompChar> theta_lift_character(const LocalSetting& s,
                                           const std::vector<CompChar>& alpha,
                                           const SplitChar& chi_w, const SplitChar& chi_v);

struct SumCheckRow {
    etale::HermitianClass v;
    etale::LambdaVector lambda;
    etale::SignVector omega, epsilon;
    int dim = 0;
};

struct SumCheckResult {
    int total = 0;
    std::vector<SumCheckRow> rows;
    std::optional<std::size_t> support;  // row index when total = 1
};

SumCheckResult sum_check(const LocalSetting& s, const std::vector<CompChar>& alpha,
                         const KOneChar& beta, const SplitChar& chi_w, const SplitChar& chi_v,
                         const chars::GaussOpts& opts = {});

// convenience: build chi_W = mu with mu|_{F^x} = w_{K/F} deterministically,
// and chi_V = mu^n
SplitChar canonical_mu(const LocalSetting& s);
SplitChar split_char_power(const LocalSetting& s, const SplitChar& c, int n);

// restriction of the compatibility right-hand side to K^1, as gen-values on
// the K-side group (used by tests)
std::vector<Rot> compat_rhs_values(const LocalSetting& s, const std::vector<CompChar>& alpha,
                                   const SplitChar& chi_w, const SplitChar& chi_v);

}  // namespace toric::dichotomy

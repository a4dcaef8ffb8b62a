#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "toric/hilbert.hpp"
#include "toric/quadext.hpp"

namespace toric::etale {

// Quadratic etale algebra over a p-adic field M: either the field M(sqrt d)
// or the split algebra M x M.  `scale` relates the given d to the reduced
// representative used in the pair coordinates: sqrt(d_given) = scale *
// sqrt(d_reduced) in the field case, and sqrt(d_given) = sqrt_split in M in
// the split case.
struct QuadEtale {
    padic::FieldPtr over;
    bool split = false;
    std::shared_ptr<quadext::QuadField> fld;  // field case
    padic::Elem d_given;
    padic::Elem scale;       // field case
    padic::Elem sqrt_split;  // split case
};

QuadEtale quad_etale_structure(padic::FieldPtr m, const padic::Elem& d);

// w_{L/M}(x): +1 iff x is a norm from the quadratic etale algebra L/M.
int norm_class_indicator(const padic::Field& m, const padic::Elem& x, const QuadEtale& l);

// Etale algebra E = prod F_j over the rational base F = Q_p.  Components are
// two-step towers over Q_p; the base must be Q_p itself so that relative
// traces and norms coincide with the absolute ones.
struct EtaleAlgebra {
    padic::FieldPtr base;  // degree 1 over Q_p
    std::vector<padic::FieldPtr> comps;
    int degree = 0;
};

EtaleAlgebra make_etale(padic::FieldPtr base, std::vector<padic::FieldPtr> comps);

struct LambdaVector {
    std::vector<padic::Elem> comps;
};

// Sign vector in {+-1}^m with split components forced to +1.
struct SignVector {
    std::vector<int> signs;
    std::vector<bool> split_mask;

    bool operator==(const SignVector& o) const { return signs == o.signs; }
};

// det and disc of the trace form of E/F as field elements (exact values on
// the power bases, not just classes).
padic::Elem det_etale(const EtaleAlgebra& e);
padic::Elem disc_etale_elem(const EtaleAlgebra& e);
SquareClassResult disc_etale(const EtaleAlgebra& e);

// disc V_{E,lambda} = N_{E/F}(lambda) disc_F(E); sign = w_{K/F} of it when K
// is a field (the class in F^x / N(K^x)).
struct DiscResult {
    padic::Elem disc;   // exact representative
    int sign;           // +1/-1 when K is a field; +1 when split
};
DiscResult disc_hermitian_lambda(const EtaleAlgebra& e, const LambdaVector& lambda,
                                 const QuadEtale& k);

// Independent route for tests: determinant of the Gram matrix
// tr(lambda_j e_a e_b) assembled over the full power basis.
padic::Elem disc_hermitian_gram(const EtaleAlgebra& e, const LambdaVector& lambda);

// omega_{L/E}(lambda) componentwise.
SignVector omega_vector(const EtaleAlgebra& e, const LambdaVector& lambda,
                        const std::vector<QuadEtale>& ljs);

// per-component quadratic etale structures L_j = K tensor F_j
std::vector<QuadEtale> component_quads(const EtaleAlgebra& e, const QuadEtale& k);

// ---------------------------------------------------------------------------
// Hermitian classes and admissible-embedding classes
// ---------------------------------------------------------------------------

struct HermitianClass {
    enum class Kind { NonArchField, SplitK, Arch };
    Kind kind;
    int n = 0;
    int disc_sign = +1;  // NonArchField
    int r = 0, s = 0;    // Arch signature
};

std::vector<HermitianClass> classify_hermitian_spaces(int n, bool k_is_field);
std::vector<HermitianClass> classify_hermitian_spaces_arch(int n);

// Representatives of {lambda in E^x / N_{L/E}(L^x) : V_{E,lambda} iso V}.
std::vector<LambdaVector> embedding_classes(const EtaleAlgebra& e, const QuadEtale& k,
                                            const std::vector<QuadEtale>& ljs,
                                            const HermitianClass& v);
// All norm-class representatives (split components contribute the class [1])
std::vector<LambdaVector> norm_class_representatives(const EtaleAlgebra& e,
                                                     const std::vector<QuadEtale>& ljs);

// ---------------------------------------------------------------------------
// Archimedean layer (symbolic sign arithmetic over base R)
// ---------------------------------------------------------------------------

// E over R with a real components (L_j = C) and c complex components (split).
struct ArchEtale {
    int r_comps = 0;
    int c_comps = 0;
};

struct ArchLambda {
    std::vector<int> signs;  // one sign per real component
};

std::vector<ArchLambda> embedding_classes_arch(const ArchEtale& e, const HermitianClass& v);

// ---------------------------------------------------------------------------
// q_F(b) self-test expression
// ---------------------------------------------------------------------------

// Evaluates (j(1+b d) - j(1-b d)) / (j(1+b d) + j(1-b d) + 2) in K with
// j(x) = x / conj(x) and d the trace-zero element, and returns it; the
// closed form equals b d.
quadext::QElem q_delta_expression(const quadext::QuadField& k, const padic::Elem& b,
                                  const quadext::QElem& delta);

}  // namespace toric::etale

#pragma once

#include <complex>
#include <map>
#include <optional>

#include "toric/dichotomy.hpp"

namespace toric::globalq {

// Exact rational number (reduced, positive denominator).
struct Rat {
    Int num = 0;
    Int den = 1;

    Rat() = default;
    Rat(Int n, Int d = 1) : num(std::move(n)), den(std::move(d)) { reduce(); }
    void reduce();
    bool is_zero() const { return num == 0; }
    Rat operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
    Rat inverse() const { return Rat(den, num); }
    int sign() const { return num == 0 ? 0 : (num > 0 ? 1 : -1); }
    std::string str() const;
};

// places of Q: 0 denotes the infinite place, otherwise the prime
using Place = Int;
inline const Place kInfinity = 0;

enum class PlaceKind { Split, Inert, Ramified, Complex };

PlaceKind place_decomposition(const Place& v, long d);

// (a, b)_v over Q, all places; odd p goes through the p-adic core, p = 2
// through the classical closed form on valuations and mod-8 data, infinity
// through signs.
int hilbert_symbol_rational(const Rat& a, const Rat& b, const Place& v);
long vp_rat(const Rat& a, const Int& p);

// product over all places (the support is finite; asserted +1 per component
// by the reciprocity check)
int hilbert_product(const Rat& a, const Rat& b);

struct LambdaSearchResult {
    std::vector<Rat> lambda;
};

// Hasse-principle search: per component, a map place -> sign; the product of
// the requested signs must be +1 (ParityObstruction otherwise).  Returns a
// lambda with the requested symbols and +1 at every unspecified place.
std::vector<Rat> find_lambda(const std::vector<std::map<Place, int>>& targets, long d,
                             long search_bound = 200);

// ---------------------------------------------------------------------------
// K = Q(sqrt d), d < 0, d = 1 mod 4, h(K) = 1: exact O_K = Z[w] arithmetic,
// w = (1 + sqrt d)/2.
// ---------------------------------------------------------------------------
struct KElem {
    Int a, b;  // a + b w
};

class ImagQuad {
  public:
    explicit ImagQuad(long d);

    long d() const { return d_; }
    const Int& wc() const { return c_; }  // w^2 = w + c, c = (d-1)/4

    KElem add(const KElem& x, const KElem& y) const { return {x.a + y.a, x.b + y.b}; }
    KElem sub(const KElem& x, const KElem& y) const { return {x.a - y.a, x.b - y.b}; }
    KElem mul(const KElem& x, const KElem& y) const;
    KElem conj(const KElem& x) const { return {x.a + x.b, -x.b}; }
    Int norm(const KElem& x) const;
    Int trace(const KElem& x) const { return 2 * x.a + x.b; }
    std::complex<double> embed(const KElem& x) const;  // w -> (1 + i sqrt|d|)/2

    const std::vector<KElem>& units() const { return units_; }
    // elements of norm n up to units (canonical associate), empty when none
    std::vector<KElem> elements_of_norm(const Int& n) const;

  private:
    long d_;
    Int c_;
    std::vector<KElem> units_;
};

// Residue ring O_K/(mu): HNF-reduced representation with dense indexing.
class ResidueOK {
  public:
    ResidueOK(const ImagQuad& k, const KElem& mu);

    const ImagQuad& field() const { return *k_; }
    const KElem& modulus() const { return mu_; }
    Int size() const { return n_; }  // |O/m| = |N(mu)|

    KElem reduce(const KElem& x) const;
    std::int64_t index(const KElem& x) const;  // of the reduced representative
    KElem from_index(std::int64_t i) const;
    bool is_unit(const KElem& x) const;
    Int unit_count() const;  // |(O/m)^x|

  private:
    const ImagQuad* k_;
    KElem mu_;
    Int n_;
    Int h00_, h01_, h11_;  // row HNF of the ideal lattice on (1, w)
    std::vector<std::pair<Int, Int>> prime_factors_;  // rational p | N(mu) with kind data
};

// Finite-order-finite-part Hecke character of K: modulus generator, value
// table on (O/m)^x, archimedean exponent w (odd for conjugate-symplectic
// characters).  chi((alpha)) = table(alpha) * (alpha/|alpha|)^w.
class HeckeChar {
  public:
    HeckeChar(std::shared_ptr<const ImagQuad> k, KElem modulus,
              const std::vector<std::pair<KElem, Rot>>& generator_values, long arch_w);

    const ImagQuad& field() const { return *k_; }
    const ResidueOK& ring() const { return *ring_; }
    long arch_w() const { return w_; }
    const KElem& modulus() const { return ring_->modulus(); }

    Rot finite_value(const KElem& x) const;  // table value; x must be a unit mod m
    std::complex<double> ideal_value(const KElem& gen) const;  // chi((gen)), gen coprime to m

    // conductor-divisor exponents and the primitive character data
    bool is_primitive() const { return primitive_; }
    // conjugate-symplectic validation: chi(conj a) = chi(a)^{-1} on ideals,
    // w odd, chi((l)) = Kronecker(d, l) for rational primes l up to a bound
    void validate_conjugate_symplectic(long prime_bound = 60) const;

    HeckeChar restrict_to(const KElem& new_modulus) const;
    HeckeChar conj_char() const;     // chi o sigma
    HeckeChar times(const HeckeChar& o) const;  // same modulus required
    HeckeChar inverse() const;
    bool equal(const HeckeChar& o) const;
    // same character viewed modulo a multiple of the modulus
    HeckeChar extend(const KElem& new_modulus) const;
    // conductor descent: the primitive character inducing this one
    HeckeChar primitive_char() const;
    bool unit_at(const KElem& x) const { return ring_->is_unit(x); }

  private:
    std::shared_ptr<const ImagQuad> k_;
    std::shared_ptr<ResidueOK> ring_;
    std::vector<Rot> table_;  // indexed by residue index; only unit slots valid
    std::vector<std::uint8_t> unit_mask_;
    long w_;
    bool primitive_ = true;

    HeckeChar(std::shared_ptr<const ImagQuad> k, std::shared_ptr<ResidueOK> ring,
              std::vector<Rot> table, long w);
    void build_table(const std::vector<std::pair<KElem, Rot>>& gens);
    friend class GlobalSetup;
};

// local context at a finite odd place: the Q_p field, the quadratic local
// algebra (non-split case) and the Hensel-lifted roots of w (split case)
struct LocalPlaceCtx {
    Place p;
    PlaceKind kind;
    padic::FieldPtr qp;
    etale::QuadEtale kq;
    Int root1 = 0, root2 = 0;
    int prec = 0;
};

LocalPlaceCtx make_place_ctx(const ImagQuad& k, const Place& p, int prec);

struct SplitLocal {
    MulChar<padic::Field> part1, part2;
};

// localizations; unit values are exact rotations, uniformizer values carry
// the archimedean phase of the reciprocity solve as a numeric factor
SplitLocal localize_split(const HeckeChar& chi, const LocalPlaceCtx& ctx,
                          std::shared_ptr<const UnitGroup<padic::Field>> gqp);

// embeddings of O_K into the local models
padic::Elem embed_split(const padic::Field& qp, const KElem& x, const Int& root);
quadext::QElem embed_quad(const etale::QuadEtale& kq, const KElem& x);
MulChar<quadext::QuadField> localize_nonsplit(
    const HeckeChar& chi, const LocalPlaceCtx& ctx,
    std::shared_ptr<const UnitGroup<quadext::QuadField>> gkp);

// ---------------------------------------------------------------------------
// Global setup and the decision procedure
// ---------------------------------------------------------------------------
struct GlobalSetup {
    std::shared_ptr<const ImagQuad> k;
    int n = 1;                               // E = Q^n
    std::shared_ptr<HeckeChar> mu;           // conjugate-symplectic
    std::vector<std::shared_ptr<HeckeChar>> alpha;  // one per component
    std::shared_ptr<HeckeChar> beta;
    Rat delta_t;                             // delta = t sqrt(d)
};

struct PlaceReport {
    Place v;
    PlaceKind kind;
    std::vector<int> omega, epsilon;
    bool satisfied = true;
};

struct DecisionReport {
    bool compat = false;
    bool places_ok = false;
    bool lvalue_ok = false;
    bool verdict = false;
    std::vector<PlaceReport> places;
    std::optional<std::complex<double>> l_value;
};

// condition (1): beta = alpha restricted, i.e. prod_j alpha_j / beta is
// sigma-invariant with archimedean exponent 0 (exact check on tables)
bool global_compatibility(const GlobalSetup& s);

std::vector<Place> bad_places(const GlobalSetup& s, const std::vector<Rat>& lambda);

PlaceReport place_report(const GlobalSetup& s, const std::vector<Rat>& lambda, const Place& v,
                         const chars::GaussOpts& opts = {});

DecisionReport global_decision(const GlobalSetup& s, const std::vector<Rat>& lambda,
                               std::optional<std::complex<double>> l_value,
                               bool enable_lvalue = false, double tolerance = 1e-8,
                               const chars::GaussOpts& opts = {});

// numerical central value via the approximate functional equation (the
// feature-gated evaluator); `cutoff_ratio` rechecks with a second smoothing
// cutoff and requires agreement within `agree_tol`.
std::complex<double> l_value_half(const HeckeChar& chi, double agree_tol = 1e-6);

// self-dual root number of chi (product of the local epsilon factors)
std::complex<double> global_root_number(const HeckeChar& chi);

}  // namespace toric::globalq

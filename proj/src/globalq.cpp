#include "toric/globalq.hpp"

#include <algorithm>

namespace toric::globalq {

// ----- rationals -----

void Rat::reduce() {
    if (den == 0) throw err("Internal", "rational with zero denominator");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    Int g = boost::multiprecision::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Rat::str() const { return den == 1 ? num.str() : num.str() + "/" + den.str(); }

long vp_rat(const Rat& a, const Int& p) {
    if (a.num == 0) throw err("Internal", "valuation of zero");
    long v = 0;
    Int n = a.num < 0 ? -a.num : a.num;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    Int d = a.den;
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

namespace {

Int odd_part_mod(const Rat& a, const Int& p, const Int& mod) {
    // unit part of a at p, as a residue mod `mod` (mod coprime to the unit's
    // denominator)
    Int n = a.num, d = a.den;
    while (n % p == 0) n /= p;
    while (d % p == 0) d /= p;
    return mod_floor(n * inv_mod(mod_floor(d, mod), mod), mod);
}

int legendre(const Int& a, const Int& p) {
    Int t = pow_mod(mod_floor(a, p), (p - 1) / 2, p);
    if (t == 0) throw err("Internal", "legendre of a multiple of p");
    return t == 1 ? 1 : -1;
}

}  // namespace

PlaceKind place_decomposition(const Place& v, long d) {
    if (v == kInfinity) return PlaceKind::Complex;  // d < 0
    Int dd = d;
    if (v == 2) {
        // d odd (d = 1 mod 4): split iff d = 1 mod 8
        return mod_floor(dd, 8) == 1 ? PlaceKind::Split : PlaceKind::Inert;
    }
    if (mod_floor(dd, v) == 0) return PlaceKind::Ramified;
    return legendre(dd, v) == 1 ? PlaceKind::Split : PlaceKind::Inert;
}

int hilbert_symbol_rational(const Rat& a, const Rat& b, const Place& v) {
    if (a.is_zero() || b.is_zero()) throw err("Internal", "Hilbert symbol of zero");
    if (v == kInfinity) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
    if (v == 2) {
        long al = vp_rat(a, 2), bl = vp_rat(b, 2);
        Int u = odd_part_mod(a, 2, 8), w = odd_part_mod(b, 2, 8);
        auto eps = [](const Int& x) { return static_cast<long>((x - 1) / 2) % 2; };
        auto om = [](const Int& x) { return static_cast<long>((x * x - 1) / 8) % 2; };
        long e = eps(u) * eps(w) + al * om(w) + bl * om(u);
        return e % 2 == 0 ? 1 : -1;
    }
    // odd p through the p-adic core
    static std::map<Int, padic::FieldPtr> cache;
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, padic::Field::make_qp(v, 8)).first;
    const padic::Field& f = *it->second;
    return hilbert_symbol(f, f.from_rational(a.num, a.den), f.from_rational(b.num, b.den));
}

int hilbert_product(const Rat& a, const Rat& b) {
    std::vector<Place> support = {kInfinity, 2};
    auto add_odd = [&](Int n) {
        if (n < 0) n = -n;
        while (n % 2 == 0 && n > 0) n /= 2;
        for (Int p = 3; p * p <= n; p += 2)
            if (n % p == 0) {
                support.push_back(p);
                while (n % p == 0) n /= p;
            }
        if (n > 2) support.push_back(n);
    };
    add_odd(a.num);
    add_odd(a.den);
    add_odd(b.num);
    add_odd(b.den);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    int prod = 1;
    for (const Place& v : support) prod *= hilbert_symbol_rational(a, b, v);
    return prod;
}

std::vector<Rat> find_lambda(const std::vector<std::map<Place, int>>& targets, long d,
                             long search_bound) {
    Rat dr{Int(d), Int(1)};
    std::vector<Rat> out;
    for (const auto& comp : targets) {
        int parity = 1;
        for (const auto& [v, s] : comp) parity *= s;
        if (parity == -1)
            throw err("ParityObstruction",
                      "requested signs have product -1; no global element exists");
        // candidate square-free products of small primes (and the sign)
        std::vector<Int> primes;
        for (Int p = 2; p <= search_bound && primes.size() < 22; ++p)
            if (is_prime(p)) primes.push_back(p);
        auto matches = [&](const Rat& lam) {
            // targets at the specified places, +1 at every other place of the
            // joint support
            std::vector<Place> support = {kInfinity, 2};
            auto add = [&](Int n) {
                if (n < 0) n = -n;
                while (n % 2 == 0 && n > 0) n /= 2;
                for (Int p = 3; p * p <= n; p += 2)
                    if (n % p == 0) {
                        support.push_back(p);
                        while (n % p == 0) n /= p;
                    }
                if (n > 2) support.push_back(n);
            };
            add(lam.num);
            add(Int(d));
            for (const auto& [v, s] : comp) if (v != kInfinity) support.push_back(v);
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()), support.end());
            for (const Place& v : support) {
                int sym = hilbert_symbol_rational(lam, dr, v);
                auto it = comp.find(v);
                int want = it == comp.end() ? 1 : it->second;
                if (sym != want) return false;
            }
            return true;
        };
        bool found = false;
        Rat best;
        for (int nf = 0; nf <= 3 && !found; ++nf) {
            // all products of nf distinct primes, both signs
            std::vector<std::size_t> idx(nf);
            std::function<void(std::size_t, std::size_t, Int)> rec = [&](std::size_t pos,
                                                                         std::size_t start,
                                                                         Int acc) {
                if (found) return;
                if (pos == static_cast<std::size_t>(nf)) {
                    for (int sg : {1, -1}) {
                        Rat lam{acc * sg, Int(1)};
                        if (matches(lam)) {
                            best = lam;
                            found = true;
                            return;
                        }
                    }
                    return;
                }
                for (std::size_t i = start; i < primes.size(); ++i) {
                    rec(pos + 1, i + 1, acc * primes[i]);
                    if (found) return;
                }
            };
            rec(0, 0, Int(1));
        }
        if (!found)
            throw err("SearchExhausted", "no lambda within the search bound; enlarge it");
        out.push_back(best);
    }
    return out;
}

// ----- O_K arithmetic -----

ImagQuad::ImagQuad(long d) : d_(d) {
    static const long table[] = {-3, -7, -11, -19, -43, -67, -163};
    bool ok = false;
    for (long t : table) ok = ok || t == d;
    if (!ok)
        throw err("SchemaError",
                  "d must be a squarefree negative integer = 1 mod 4 with class number one");
    c_ = Int((d - 1) / 4);
    units_ = {{1, 0}, {-1, 0}};
    if (d == -3) {
        // Z[w] with w = (1+sqrt-3)/2 of norm 1: six units
        units_.push_back({0, 1});
        units_.push_back({0, -1});
        units_.push_back({1, -1});
        units_.push_back({-1, 1});
    }
}

KElem ImagQuad::mul(const KElem& x, const KElem& y) const {
    // (a + bw)(a' + b'w) = aa' + bb' c + (ab' + a'b + bb') w
    return {x.a * y.a + x.b * y.b * c_, x.a * y.b + x.b * y.a + x.b * y.b};
}

Int ImagQuad::norm(const KElem& x) const { return x.a * x.a + x.a * x.b - x.b * x.b * c_; }

std::complex<double> ImagQuad::embed(const KElem& x) const {
    double sq = std::sqrt(static_cast<double>(-d_));
    return {static_cast<double>(x.a) + 0.5 * static_cast<double>(x.b),
            0.5 * sq * static_cast<double>(x.b)};
}

std::vector<KElem> ImagQuad::elements_of_norm(const Int& n) const {
    std::vector<KElem> out;
    if (n <= 0) return out;
    // N(a + bw) = (a + b/2)^2 + b^2 |d|/4
    long bmax = static_cast<long>(std::sqrt(4.0 * static_cast<double>(n) /
                                            static_cast<double>(-d_))) +
                1;
    for (long b = -bmax; b <= bmax; ++b) {
        // a^2 + ab + (b^2 (1-d)/4 - n) = 0
        Int bb = b;
        Int cc = bb * bb * (Int(1) - Int(d_)) / 4 - n;
        Int disc = bb * bb - 4 * cc;
        if (disc < 0) continue;
        Int r = boost::multiprecision::sqrt(disc);
        if (r * r != disc) continue;
        Int a1 = (-bb + r) / 2, a2 = (-bb - r) / 2;
        for (const Int& a : {a1, a2}) {
            KElem x{a, bb};
            if (norm(x) == n) out.push_back(x);
        }
    }
    // dedupe associates, keeping the lexicographically smallest
    std::vector<KElem> canon;
    auto key = [](const KElem& x) { return std::make_pair(x.a, x.b); };
    for (const KElem& x : out) {
        KElem bst = x;
        for (const KElem& u : units_) {
            KElem y = mul(x, u);
            if (key(y) < key(bst)) bst = y;
        }
        bool seen = false;
        for (const KElem& c2 : canon) seen = seen || (c2.a == bst.a && c2.b == bst.b);
        if (!seen) canon.push_back(bst);
    }
    std::sort(canon.begin(), canon.end(),
              [&](const KElem& x, const KElem& y) { return key(x) < key(y); });
    return canon;
}

// ----- residue ring O/(mu) -----

ResidueOK::ResidueOK(const ImagQuad& k, const KElem& mu) : k_(&k), mu_(mu) {
    n_ = k.norm(mu);
    if (n_ < 0) n_ = -n_;
    if (n_ == 0) throw err("SchemaError", "zero modulus");
    if (n_ > 2000000) throw err("Unsupported", "modulus too large for desk scale");
    // lattice rows (coordinates on 1, w): mu = (a, b), mu w = (b c, a + b)
    Int a = mu.a, b = mu.b;
    Int r1x = a, r1y = b;
    Int r2x = b * k.wc(), r2y = a + b;
    // row HNF: bring to [[h00, 0],[h01', h11]]-free form with y eliminated
    // via Euclid on the second coordinates
    while (r2y != 0) {
        Int q = r1y / r2y;
        Int nx = r1x - q * r2x, ny = r1y - q * r2y;
        r1x = r2x;
        r1y = r2y;
        r2x = nx;
        r2y = ny;
    }
    // now r2y = 0: rows (r1x, r1y), (r2x, 0)
    h11_ = r1y < 0 ? -r1y : r1y;
    if (r1y < 0) {
        r1x = -r1x;
        r1y = -r1y;
    }
    h00_ = r2x < 0 ? -r2x : r2x;
    if (h00_ == 0 || h11_ == 0) throw err("Internal", "degenerate modulus lattice");
    h01_ = mod_floor(r1x, h00_);
    if (h00_ * h11_ != n_) throw err("Internal", "HNF determinant mismatch");
    // prime membership tests for units
    Int nn = n_;
    for (Int p = 2; p * p <= nn; ++p)
        if (nn % p == 0) {
            prime_factors_.push_back({p, 0});
            while (nn % p == 0) nn /= p;
        }
    if (nn > 1) prime_factors_.push_back({nn, 0});
}

KElem ResidueOK::reduce(const KElem& x) const {
    Int y = mod_floor(x.b, h11_);
    Int t = (x.b - y) / h11_;
    Int xx = x.a - t * h01_;
    return {mod_floor(xx, h00_), y};
}

std::int64_t ResidueOK::index(const KElem& x) const {
    KElem r = reduce(x);
    return static_cast<std::int64_t>(r.a + h00_ * r.b);
}

KElem ResidueOK::from_index(std::int64_t i) const {
    Int ii = i;
    return {mod_floor(ii, h00_), ii / h00_};
}

bool ResidueOK::is_unit(const KElem& x) const {
    // x is a unit mod mu iff for every prime P dividing (mu), x is not in P
    for (const auto& [p, unused] : prime_factors_) {
        (void)unused;
        Int dd = k_->d();
        // roots of t^2 - t - c mod p classify the primes above p
        std::vector<Int> roots;
        for (Int r = 0; r < p; ++r)
            if (mod_floor(r * r - r - k_->wc(), p) == 0) roots.push_back(r);
        if (roots.empty()) {
            // inert: P = (p); P | (mu) iff p | mu
            if (mod_floor(mu_.a, p) == 0 && mod_floor(mu_.b, p) == 0)
                if (mod_floor(x.a, p) == 0 && mod_floor(x.b, p) == 0) return false;
            if (!(mod_floor(mu_.a, p) == 0 && mod_floor(mu_.b, p) == 0)) {
                // p | N(mu) but p inert means p^2 | N(mu) through (p) | (mu);
                // if (p) does not divide (mu) nothing to test
                continue;
            }
            continue;
        }
        for (const Int& r : roots) {
            // P = (p, w - r): x in P iff x.a + x.b r = 0 mod p
            bool mu_in = mod_floor(mu_.a + mu_.b * r, p) == 0;
            if (!mu_in) continue;
            if (mod_floor(x.a + x.b * r, p) == 0) return false;
        }
    }
    return true;
}

Int ResidueOK::unit_count() const {
    Int cnt = 0;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_); ++i)
        if (is_unit(from_index(i))) ++cnt;
    return cnt;
}

// ----- Hecke characters -----

HeckeChar::HeckeChar(std::shared_ptr<const ImagQuad> k, KElem modulus,
                     const std::vector<std::pair<KElem, Rot>>& generator_values, long arch_w)
    : k_(std::move(k)), w_(arch_w) {
    ring_ = std::make_shared<ResidueOK>(*k_, modulus);
    if (mod_floor(ring_->size(), 2) == 0)
        throw err("EvenPlaceRamifiedCharacter", "the modulus must have odd norm");
    build_table(generator_values);
    // unit invariance: chi_m(u) (u/|u|)^w = 1 for units of O_K
    for (const KElem& u : k_->units()) {
        Rot fv = finite_value(u);
        std::complex<double> ph = std::pow(k_->embed(u), static_cast<double>(w_));
        std::complex<double> total = fv.is_zero() ? ph : CVal{fv, ph}.cx();
        if (std::abs(total - std::complex<double>(1.0, 0.0)) > 1e-9)
            throw err("SchemaError", "character is not well defined on principal ideals");
    }
    // primitivity scan (descend is the caller's concern; we only record it)
    primitive_ = true;
}

HeckeChar::HeckeChar(std::shared_ptr<const ImagQuad> k, std::shared_ptr<ResidueOK> ring,
                     std::vector<Rot> table, long w)
    : k_(std::move(k)), ring_(std::move(ring)), table_(std::move(table)), w_(w) {}

void HeckeChar::build_table(const std::vector<std::pair<KElem, Rot>>& gens) {
    std::int64_t n = static_cast<std::int64_t>(ring_->size());
    table_.assign(static_cast<std::size_t>(n), Rot(-1, 1));  // -1/1 = sentinel? use den marker
    // use a parallel "known" mask instead of sentinels
    std::vector<std::uint8_t> known(static_cast<std::size_t>(n), 0);
    for (const auto& [g, r] : gens)
        if (!ring_->is_unit(g)) throw err("SchemaError", "character generator is not a unit");
    KElem one{1, 0};
    std::vector<std::int64_t> queue;
    std::int64_t i1 = ring_->index(one);
    table_[static_cast<std::size_t>(i1)] = Rot();
    known[static_cast<std::size_t>(i1)] = 1;
    queue.push_back(i1);
    while (!queue.empty()) {
        std::int64_t i = queue.back();
        queue.pop_back();
        KElem x = ring_->from_index(i);
        Rot rx = table_[static_cast<std::size_t>(i)];
        for (const auto& [g, rg] : gens) {
            KElem y = ring_->reduce(k_->mul(x, g));
            std::int64_t iy = ring_->index(y);
            Rot ry = rx + rg;
            if (!known[static_cast<std::size_t>(iy)]) {
                known[static_cast<std::size_t>(iy)] = 1;
                table_[static_cast<std::size_t>(iy)] = ry;
                queue.push_back(iy);
            } else if (!(table_[static_cast<std::size_t>(iy)] == ry)) {
                throw err("SchemaError", "character values are inconsistent on the generators");
            }
        }
    }
    Int covered = 0;
    for (std::int64_t i = 0; i < n; ++i)
        if (known[static_cast<std::size_t>(i)]) ++covered;
    if (covered != ring_->unit_count())
        throw err("SchemaError", "generators do not generate the unit group of the modulus");
    // blank the non-unit slots
    for (std::int64_t i = 0; i < n; ++i)
        if (!known[static_cast<std::size_t>(i)]) table_[static_cast<std::size_t>(i)] = Rot();
    unit_mask_ = std::move(known);
}

Rot HeckeChar::finite_value(const KElem& x) const {
    std::int64_t i = ring_->index(x);
    if (!unit_mask_[static_cast<std::size_t>(i)])
        throw err("Internal", "finite value at a non-unit");
    return table_[static_cast<std::size_t>(i)];
}

std::complex<double> HeckeChar::ideal_value(const KElem& gen) const {
    Rot fv = finite_value(gen);
    std::complex<double> z = k_->embed(gen);
    std::complex<double> ph = std::pow(z / std::abs(z), static_cast<double>(w_));
    return CVal{fv, ph}.cx();
}

void HeckeChar::validate_conjugate_symplectic(long prime_bound) const {
    if (w_ % 2 == 0)
        throw err("NotSelfDual", "conjugate-symplectic characters have odd archimedean exponent");
    // chi((l)) = Kronecker(d, l) for rational primes l coprime to the modulus
    for (Int l = 3; l <= prime_bound; ++l) {
        if (!is_prime(l)) continue;
        if (mod_floor(ring_->size(), l) == 0) continue;
        if (mod_floor(Int(k_->d()), l) == 0) continue;
        std::complex<double> val = ideal_value({l, 0});
        int kron = legendre(Int(k_->d()), l);
        if (std::abs(val - std::complex<double>(kron, 0.0)) > 1e-9)
            throw err("NotSelfDual", "restriction to the rationals is not the quadratic character");
    }
    // conjugate-duality on small split primes
    for (Int l = 3; l <= prime_bound; ++l) {
        if (!is_prime(l) || mod_floor(ring_->size(), l) == 0) continue;
        if (place_decomposition(l, k_->d()) != PlaceKind::Split) continue;
        auto gens = k_->elements_of_norm(l);
        if (gens.empty()) continue;
        std::complex<double> v1 = ideal_value(gens[0]);
        std::complex<double> v2 = ideal_value(k_->conj(gens[0]));
        if (std::abs(v1 * v2 - std::complex<double>(1.0, 0.0)) > 1e-9)
            throw err("NotSelfDual", "character is not conjugate-dual on split primes");
    }
}

HeckeChar HeckeChar::conj_char() const {
    HeckeChar out(*this);
    std::int64_t n = static_cast<std::int64_t>(ring_->size());
    // table of chi o sigma at the conjugated modulus: for our moduli we keep
    // the same ring and read values at conj(x); the conjugate modulus
    // generates the same ideal for sigma-stable moduli, otherwise the table
    // is only used through sigma-stable comparisons
    std::vector<Rot> t(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < n; ++i) {
        KElem x = ring_->from_index(i);
        KElem cx = k_->conj(x);
        if (unit_mask_[static_cast<std::size_t>(i)] && ring_->is_unit(cx)) {
            t[static_cast<std::size_t>(i)] = finite_value(cx);
            mask[static_cast<std::size_t>(i)] = 1;
        }
    }
    out.table_ = std::move(t);
    out.unit_mask_ = std::move(mask);
    out.w_ = -w_;
    return out;
}

HeckeChar HeckeChar::times(const HeckeChar& o) const {
    if (ring_->index(o.ring_->modulus()) != ring_->index(ring_->modulus()) ||
        o.ring_->size() != ring_->size())
        throw err("Internal", "character product needs a common modulus");
    HeckeChar out(*this);
    for (std::size_t i = 0; i < table_.size(); ++i)
        if (unit_mask_[i] && o.unit_mask_[i]) out.table_[i] = table_[i] + o.table_[i];
    out.w_ = w_ + o.w_;
    return out;
}

HeckeChar HeckeChar::inverse() const {
    HeckeChar out(*this);
    for (std::size_t i = 0; i < table_.size(); ++i)
        if (unit_mask_[i]) out.table_[i] = -table_[i];
    out.w_ = -w_;
    return out;
}

bool HeckeChar::equal(const HeckeChar& o) const {
    if (w_ != o.w_ || table_.size() != o.table_.size()) return false;
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (unit_mask_[i] != o.unit_mask_[i]) return false;
        if (unit_mask_[i] && !(table_[i] == o.table_[i])) return false;
    }
    return true;
}

}  // namespace toric::globalq

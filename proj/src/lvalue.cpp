#include <cmath>

#include "toric/globalq.hpp"

namespace toric::globalq {

using padic::Field;
using quadext::QuadField;

namespace {

double upper_gamma_int(long k, double x) {
    // Gamma(k, x) for integer k >= 1
    double term = std::exp(-x);
    double sum = term;  // i = 0
    double xp = 1.0;
    double fact = 1.0;
    for (long i = 1; i < k; ++i) {
        xp *= x;
        fact *= static_cast<double>(i);
        sum += std::exp(-x) * xp / fact;
    }
    double g = 1.0;
    for (long i = 2; i < k; ++i) g *= static_cast<double>(i);
    return g * sum;
}

double gamma_int(long k) {
    double g = 1.0;
    for (long i = 2; i < k; ++i) g *= static_cast<double>(i);
    return g;
}

}  // namespace

std::complex<double> global_root_number(const HeckeChar& chi) {
    if (!chi.is_primitive())
        throw err("NotSelfDual", "root number requires the primitive character");
    const ImagQuad& K = chi.field();
    long w = chi.arch_w();
    // archimedean factor for the local component (z/|z|)^{-w} against the
    // standard global additive character
    long n_loc = -w;
    std::complex<double> eps = std::pow(std::complex<double>(0.0, -1.0),
                                        static_cast<double>(n_loc));
    if (n_loc < 0 && ((n_loc % 2) + 2) % 2 == 1) eps = -eps;
    // finite places dividing the conductor
    Int nf = chi.ring().size();
    std::vector<Int> ps;
    {
        Int nn = nf;
        for (Int p = 2; p * p <= nn; ++p)
            if (nn % p == 0) {
                ps.push_back(p);
                while (nn % p == 0) nn /= p;
            }
        if (nn > 1) ps.push_back(nn);
    }
    chars::GaussOpts opts;
    opts.parallel = true;
    for (const Int& p : ps) {
        PlaceKind kind = place_decomposition(p, K.d());
        // conductor exponent at the primes above p bounds the level needed
        long e_need = 1;
        {
            Int nn = chi.ring().size();
            while (nn % p == 0) {
                nn /= p;
                ++e_need;
            }
        }
        e_need = std::max<long>(e_need, 2);
        int prec = static_cast<int>(8 * e_need + 8);
        LocalPlaceCtx ctx = make_place_ctx(K, p, prec);
        if (kind == PlaceKind::Split) {
            auto gqp = std::make_shared<UnitGroup<Field>>(*ctx.qp, static_cast<int>(e_need));
            SplitLocal loc = localize_split(chi, ctx, gqp);
            AddChar<Field> psi = AddChar<Field>::standard(*ctx.qp);
            for (const auto& part : {loc.part1, loc.part2})
                if (part.conductor() > 0 || std::abs(part.pi_extra - 1.0) > 1e-14 ||
                    !part.pi_rot.is_zero())
                    eps *= chars::tate_epsilon(*ctx.qp, part, psi, opts);
        } else {
            const QuadField& kp = *ctx.kq.fld;
            auto gkp = std::make_shared<UnitGroup<QuadField>>(
                kp, static_cast<int>(e_need) * kp.abs_e());
            MulChar<QuadField> part = localize_nonsplit(chi, ctx, gkp);
            AddChar<QuadField> psi = AddChar<QuadField>::standard(kp);
            eps *= chars::tate_epsilon(kp, part, psi, opts);
        }
    }
    return eps;
}

std::complex<double> l_value_half(const HeckeChar& chi_in, double agree_tol) {
    HeckeChar chi = chi_in.is_primitive() ? chi_in : chi_in.primitive_char();
    chi.validate_conjugate_symplectic();
    const ImagQuad& K = chi.field();
    long w = chi.arch_w() < 0 ? -chi.arch_w() : chi.arch_w();
    long s0 = (w + 1) / 2;  // integer for odd w
    if ((w % 2 + 2) % 2 != 1) throw err("NotSelfDual", "archimedean exponent must be odd");
    double nf = static_cast<double>(chi.ring().size());
    double q = std::sqrt(static_cast<double>(-K.d()) * nf) / (2.0 * 3.14159265358979323846);

    std::complex<double> eps = global_root_number(chi);
    if (std::abs(eps.imag()) > 1e-6 || std::abs(std::abs(eps.real()) - 1.0) > 1e-6)
        throw err("NotSelfDual", "root number is not a sign");

    auto eval = [&](double x) {
        long nmax = static_cast<long>(q * std::max(x, 1.0 / x) * (45.0 + 12.0 * s0)) + 20;
        std::complex<double> s1(0.0, 0.0), s2(0.0, 0.0);
        for (long n = 1; n <= nmax; ++n) {
            // a_n: sum of chi over ideals of norm n (canonical generators)
            std::complex<double> an(0.0, 0.0);
            bool any = false;
            for (const KElem& g : K.elements_of_norm(Int(n))) {
                if (!chi.unit_at(g)) continue;
                an += chi.ideal_value(g);
                any = true;
            }
            if (!any) continue;
            double rsq = 1.0 / std::sqrt(static_cast<double>(n));
            s1 += an * rsq * upper_gamma_int(s0, static_cast<double>(n) / (q * x));
            s2 += std::conj(an) * rsq * upper_gamma_int(s0, static_cast<double>(n) * x / q);
        }
        return (s1 + eps.real() * s2) / gamma_int(s0);
    };
    std::complex<double> v1 = eval(1.0);
    std::complex<double> v2 = eval(1.3);
    if (std::abs(v1 - v2) > agree_tol)
        throw err("ConvergenceFailure", "smoothing cutoffs disagree");
    return v1;
}

}  // namespace toric::globalq

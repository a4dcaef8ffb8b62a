#include "toric/chars.hpp"

namespace toric::chars {

int archimedean_epsilon(long n, int delta_sign) {
    if (delta_sign != 1 && delta_sign != -1)
        throw err("NonDualInput", "delta sign must be +-1");
    // eps(1/2, (z/|z|)^n, psi_delta) with psi(x) = e^{-2 pi i x}: equals
    // sign(delta)^n for n >= 0 and picks up chi(-1) = (-1)^n under n -> -n
    // (zeta-integral computation with Gaussian test functions; the pairing
    // eps(chi) eps(chi^{-1}) = chi(-1) fixes the negative exponents)
    int e = (n % 2 == 0) ? 1 : delta_sign;
    if (n < 0 && ((n % 2) + 2) % 2 == 1) e = -e;
    return e;
}

}  // namespace toric::chars

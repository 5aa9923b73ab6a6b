#pragma once

#include <complex>
#include <vector>

namespace qdl {

using cplx = std::complex<double>;

// Dense polynomial with complex coefficients, ascending order: c[k] * z^k.
using Poly = std::vector<cplx>;

Poly trim(Poly p, double eps = 1e-13);
int degree(const Poly& p);
cplx eval(const Poly& p, cplx z);
Poly derivative(const Poly& p);
Poly multiply(const Poly& a, const Poly& b);
Poly add(const Poly& a, const Poly& b);
Poly scale(const Poly& p, cplx c);

// Monic polynomial with the given roots.
Poly from_roots(const std::vector<cplx>& roots);

// All complex roots by Aberth-Ehrlich simultaneous iteration.
std::vector<cplx> roots(const Poly& p);

// Least-squares/Vandermonde fit of a degree-n polynomial through the given
// samples (exact when samples.size() == n + 1).
Poly interpolate(const std::vector<cplx>& points,
                 const std::vector<cplx>& values, int deg);

}  // namespace qdl

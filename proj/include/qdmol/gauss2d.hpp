#pragma once

#include <complex>
#include <vector>

namespace qdmol {

using cdouble = std::complex<double>;

// One term of the closed family
//   coef * x^px * y^py * exp(-ax (x-cx)^2 - ay (y-cy)^2) * exp(i (kx x + ky y))
// which is stable under products, derivatives and multiplication by
// polynomials, and integrates over the plane in closed form.  All basis
// functions, their one-body Hamiltonian images and their pair densities
// live in this family.
struct GaussTerm {
    cdouble coef{1.0, 0.0};
    int px = 0, py = 0;
    double ax = 0.0, ay = 0.0;
    double cx = 0.0, cy = 0.0;
    double kx = 0.0, ky = 0.0;
};

using GaussSum = std::vector<GaussTerm>;

GaussTerm product(const GaussTerm& f, const GaussTerm& g);
GaussSum product(const GaussSum& f, const GaussSum& g);

GaussSum conjugate(const GaussSum& f);

cdouble eval(const GaussTerm& t, double x, double y);
cdouble eval(const GaussSum& f, double x, double y);

// moments M_j(a,k) = int t^j exp(-a t^2 + i k t) dt over the real line
cdouble gauss_moment(int j, double a, double k);

// int t^p exp(-a (t-c)^2 + i k t) dt
cdouble gauss_integral_1d(int p, double a, double c, double k);

cdouble integrate(const GaussTerm& t);
cdouble integrate(const GaussSum& f);

// <f|g> = int conj(f) g
cdouble inner(const GaussSum& f, const GaussSum& g);

GaussSum ddx(const GaussSum& f);
GaussSum ddy(const GaussSum& f);

GaussSum scaled(const GaussSum& f, cdouble s);
GaussSum operator+(const GaussSum& f, const GaussSum& g);

// f multiplied by x^dpx y^dpy
GaussSum times_monomial(const GaussSum& f, int dpx, int dpy);

// collapse terms that share powers, exponents, centers and wave vectors
void merge_terms(GaussSum& f, double drop_below = 0.0);

} // namespace qdmol

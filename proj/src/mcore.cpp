#include "solsurf/mcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solsurf/error.hpp"

namespace solsurf {

Mat2C Mat2C::inverse() const
{
    const cplx d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

double Mat2C::max_norm() const
{
    return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

bool Mat2C::is_hermitian_exact() const
{
    return a11.imag() == 0.0 && a22.imag() == 0.0 && a21 == std::conj(a12);
}

Mat2C& Mat2C::operator+=(const Mat2C& o)
{
    a11 += o.a11;
    a12 += o.a12;
    a21 += o.a21;
    a22 += o.a22;
    return *this;
}

Mat2C& Mat2C::operator-=(const Mat2C& o)
{
    a11 -= o.a11;
    a12 -= o.a12;
    a21 -= o.a21;
    a22 -= o.a22;
    return *this;
}

Mat2C& Mat2C::operator*=(cplx s)
{
    a11 *= s;
    a12 *= s;
    a21 *= s;
    a22 *= s;
    return *this;
}

Mat2C operator+(Mat2C a, const Mat2C& b) { return a += b; }
Mat2C operator-(Mat2C a, const Mat2C& b) { return a -= b; }
Mat2C operator-(const Mat2C& a) { return {-a.a11, -a.a12, -a.a21, -a.a22}; }
Mat2C operator*(cplx s, Mat2C a) { return a *= s; }
Mat2C operator*(Mat2C a, cplx s) { return a *= s; }
Mat2C operator/(Mat2C a, cplx s) { return a *= (1.0 / s); }

Mat2C operator*(const Mat2C& a, const Mat2C& b)
{
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

Mat2C commutator(const Mat2C& a, const Mat2C& b) { return a * b - b * a; }

Mat2C sigma1() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2C sigma2() { return {0.0, cplx(0, -1), cplx(0, 1), 0.0}; }
Mat2C sigma3() { return {1.0, 0.0, 0.0, -1.0}; }

double LorentzVec::operator[](int i) const
{
    switch (i) {
    case 0: return x0;
    case 1: return x1;
    case 2: return x2;
    default: return x3;
    }
}

double& LorentzVec::operator[](int i)
{
    switch (i) {
    case 0: return x0;
    case 1: return x1;
    case 2: return x2;
    default: return x3;
    }
}

LorentzVec operator+(const LorentzVec& a, const LorentzVec& b)
{
    return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
}

LorentzVec operator-(const LorentzVec& a, const LorentzVec& b)
{
    return {a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
}

LorentzVec operator*(double s, const LorentzVec& a) { return {s * a.x0, s * a.x1, s * a.x2, s * a.x3}; }

Mat2C hermitian_from_lorentz(const LorentzVec& x)
{
    return {cplx(x.x0 + x.x3, 0.0), cplx(x.x1, -x.x2), cplx(x.x1, x.x2), cplx(x.x0 - x.x3, 0.0)};
}

LorentzVec lorentz_from_hermitian(const Mat2C& m, double hermiticity_tol)
{
    const Mat2C anti = 0.5 * (m - m.adjoint());
    const double defect = anti.max_norm();
    if (defect > hermiticity_tol)
        throw Error(ErrorKind::NotHermitian,
                    "anti-Hermitian part " + std::to_string(defect) + " exceeds tolerance");
    const Mat2C h = 0.5 * (m + m.adjoint());
    LorentzVec x;
    x.x0 = 0.5 * (h.a11.real() + h.a22.real());
    x.x3 = 0.5 * (h.a11.real() - h.a22.real());
    x.x1 = h.a21.real();
    x.x2 = h.a21.imag();
    return x;
}

double lorentz_inner(const LorentzVec& x, const LorentzVec& y)
{
    return x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3 - x.x0 * y.x0;
}

LorentzVec rho_action(const Mat2C& a, const LorentzVec& x, double tol)
{
    const double drift = std::abs(a.det() - 1.0);
    if (!(drift < tol))
        throw Error(ErrorKind::NotUnimodular, "|det a - 1| = " + std::to_string(drift));
    const Mat2C image = a.adjoint() * hermitian_from_lorentz(x) * a;
    // a^+ H a is Hermitian up to rounding; scale the check with its magnitude.
    return lorentz_from_hermitian(image, tol * std::max(1.0, image.max_norm()));
}

}  // namespace solsurf

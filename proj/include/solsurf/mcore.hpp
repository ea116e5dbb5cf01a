#pragma once

#include <complex>

namespace solsurf {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

/// 2x2 complex matrix, row-major entries.
struct Mat2C {
    cplx a11{}, a12{}, a21{}, a22{};

    static constexpr Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2C zero() { return {}; }
    static constexpr Mat2C diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

    cplx det() const { return a11 * a22 - a12 * a21; }
    cplx trace() const { return a11 + a22; }
    Mat2C adjoint() const { return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)}; }
    Mat2C transpose() const { return {a11, a21, a12, a22}; }
    Mat2C inverse() const;

    /// Largest entry modulus.
    double max_norm() const;
    bool is_hermitian_exact() const;

    Mat2C& operator+=(const Mat2C& o);
    Mat2C& operator-=(const Mat2C& o);
    Mat2C& operator*=(cplx s);

    friend bool operator==(const Mat2C&, const Mat2C&) = default;
};

Mat2C operator+(Mat2C a, const Mat2C& b);
Mat2C operator-(Mat2C a, const Mat2C& b);
Mat2C operator-(const Mat2C& a);
Mat2C operator*(const Mat2C& a, const Mat2C& b);
Mat2C operator*(cplx s, Mat2C a);
Mat2C operator*(Mat2C a, cplx s);
Mat2C operator/(Mat2C a, cplx s);
Mat2C commutator(const Mat2C& a, const Mat2C& b);

/// Pauli matrices.
Mat2C sigma1();
Mat2C sigma2();
Mat2C sigma3();

/// Point of Lorentz space R^{3,1}; X0 is the timelike component.
struct LorentzVec {
    double x0 = 0, x1 = 0, x2 = 0, x3 = 0;

    double operator[](int i) const;
    double& operator[](int i);

    friend bool operator==(const LorentzVec&, const LorentzVec&) = default;
};

LorentzVec operator+(const LorentzVec& a, const LorentzVec& b);
LorentzVec operator-(const LorentzVec& a, const LorentzVec& b);
LorentzVec operator*(double s, const LorentzVec& a);

/// X0 I + X1 s1 + X2 s2 + X3 s3.
Mat2C hermitian_from_lorentz(const LorentzVec& x);

/// Inverse of hermitian_from_lorentz. The input is symmetrized as (M + M^+)/2
/// first; throws NotHermitian if the anti-Hermitian part exceeds the tolerance
/// (entrywise max modulus).
LorentzVec lorentz_from_hermitian(const Mat2C& m, double hermiticity_tol = kDefaultTol);

/// (X|Y) = X1Y1 + X2Y2 + X3Y3 - X0Y0.
double lorentz_inner(const LorentzVec& x, const LorentzVec& y);

/// rho(a)X with (rho(a)X)^s = a^+ X^s a. Throws NotUnimodular if |det a - 1| >= tol.
LorentzVec rho_action(const Mat2C& a, const LorentzVec& x, double tol = kDefaultTol);

}  // namespace solsurf

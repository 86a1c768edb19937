#pragma once

#include "quadpencil/numkit.hpp"

namespace qp {

// An element [[a, b], [c, d]] of SL(2, C). Acts on finite roots by
// tau -> (a tau + b) / (c tau + d).
class SL2Element {
public:
    SL2Element() = default;
    // Throws NotUnimodular unless |ad - bc - 1| <= tol.
    SL2Element(Complex a, Complex b, Complex c, Complex d, double tol = kTol);

    static SL2Element identity() { return {}; }
    // Rescales an invertible matrix to determinant one (principal square root).
    static SL2Element normalized(Complex a, Complex b, Complex c, Complex d);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }
    Complex det() const { return a_ * d_ - b_ * c_; }

    // Mobius image; returns an infinite value when c tau + d vanishes.
    Complex apply(Complex tau) const;
    SL2Element inverse() const { return SL2Element(d_, -b_, -c_, a_, 1e-6); }
    SL2Element operator*(const SL2Element& rhs) const;

private:
    Complex a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
};

} // namespace qp

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "quadpencil/numkit.hpp"
#include "quadpencil/pencil.hpp"
#include "quadpencil/sl2.hpp"
#include "quadpencil/variety.hpp"

namespace qp {

// Canonical representative of the SL2 orbit of a stable binary form.
struct ModuliInvariant {
    int n = 0;
    std::vector<Complex> canon; // n - 3 values; empty for n <= 3
    bool trivial() const { return n <= 3; }
};

// Largest chordal distance between corresponding entries; 1 if the degrees differ.
double invariant_distance(const ModuliInvariant& a, const ModuliInvariant& b);

BinaryForm sl2_act(const SL2Element& g, const BinaryForm& psi);

ModuliInvariant canonical_invariant(const BinaryForm& psi);
ModuliInvariant canonical_invariant(const std::vector<Complex>& roots);

std::optional<SL2Element> same_class(const BinaryForm& psi1, const BinaryForm& psi2, double tol = kDistinct);

ModuliInvariant mu(const DiagonalIntersection& X, const SurfacePoint& x);

// The Mobius map taking z[k] to w[k] for k = 0, 1, 2 (finite, distinct points).
SL2Element mobius_from_triples(const std::array<Complex, 3>& z, const std::array<Complex, 3>& w);

// True when some non-identity Mobius map permutes the given finite root set.
bool has_root_symmetry(const std::vector<Complex>& roots, double tol = kDistinct);

} // namespace qp

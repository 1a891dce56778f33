#pragma once

// Spectral representation of a compact operator A between two separable
// Hilbert spaces. Everything is expressed in coordinates: an element of the
// domain is (kernel block, coefficients on the singular directions), an
// element of the codomain is coefficients on the image directions. The
// orthogonal complement of the range is not modelled, so codomain elements
// carry no kernel block.

#include <cstddef>
#include <vector>

#include "fhp/sequence.hpp"

namespace fhp {

enum class Space { Domain, Codomain };

struct HilbertElement {
  Space space = Space::Domain;
  std::vector<double> kernel;  // coordinates on Ker(A); empty for codomain elements
  std::vector<double> span;    // coordinates on the singular directions

  static HilbertElement domain(std::vector<double> kernel, std::vector<double> span);
  static HilbertElement codomain(std::vector<double> span);
  static HilbertElement zero(Space s, std::size_t kernel_dim, std::size_t n);

  double norm() const;
  bool operator==(const HilbertElement&) const = default;
};

// Inner product; both elements must live in the same space with matching
// block sizes.
double inner(const HilbertElement& a, const HilbertElement& b);

HilbertElement operator+(const HilbertElement& a, const HilbertElement& b);
HilbertElement operator-(const HilbertElement& a, const HilbertElement& b);
HilbertElement operator*(double c, const HilbertElement& a);

// Truncated singular system of A: strictly positive nonincreasing singular
// values plus an explicit finite-dimensional kernel block.
struct SingularSystem {
  std::size_t truncation = 0;
  std::size_t kernel_dim = 0;
  SequenceFamily family;       // generator of the singular values
  std::vector<double> values;  // realized prefix, length = truncation

  static SingularSystem from_family(const SequenceFamily& f, std::size_t truncation,
                                    std::size_t kernel_dim);
  static SingularSystem from_values(std::vector<double> values, std::size_t kernel_dim);
};

// Operator that is diagonal in the singular coordinates. For domain-side
// operators kernel_diag gives the action on the kernel block per direction;
// codomain-side operators have no kernel block.
struct DiagonalOperator {
  Space space = Space::Domain;
  std::vector<double> diag;
  std::vector<double> kernel_diag;

  static DiagonalOperator domain_op(std::vector<double> diag, std::vector<double> kernel_diag);
  static DiagonalOperator codomain_op(std::vector<double> diag);
  static DiagonalOperator identity(Space s, std::size_t n, std::size_t kernel_dim);

  HilbertElement apply(const HilbertElement& h) const;
  double operator_norm() const;
  bool positive_semidefinite() const;

  // Entrywise inverse; every diagonal entry must be nonzero.
  DiagonalOperator inverse() const;
};

// A h: kernel block is annihilated, singular coordinate k is scaled by the
// k-th singular value.
HilbertElement apply_forward(const SingularSystem& sys, const HilbertElement& h);

// A* g.
HilbertElement apply_adjoint(const SingularSystem& sys, const HilbertElement& g);

// Minimum-norm preimage of v under A, shifted by the prescribed kernel
// component: the unique solution of A y = v with the given kernel block.
HilbertElement solve_min_norm(const SingularSystem& sys, const HilbertElement& v,
                              std::vector<double> kernel_component);

// Orthogonal projection onto the closure of span{singular directions}
// (equivalently A* (A A*)^-1 A): zeroes the kernel block.
HilbertElement project_span(const SingularSystem& sys, const HilbertElement& h);

// Complementary projection onto Ker(A).
HilbertElement project_kernel(const SingularSystem& sys, const HilbertElement& h);

}  // namespace fhp

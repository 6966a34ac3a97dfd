#pragma once

#include "admb/field.hpp"

namespace admb {

// Fourier differentiation and projection. Every operator here is diagonal in
// k (or a 3x3 block per k), so they commute with each other and with
// truncation.

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

/// Per mode v <- v - k (k.v) / |k|^2.
VectorField leray_project(const VectorField& v);

/// Zeroes every coefficient with |k| > cutoff (integer index units).
ScalarField truncate(const ScalarField& f, int cutoff);
VectorField truncate(const VectorField& v, int cutoff);

/// (f, g) = sum over the full lattice of f_k conj(g_k); real for real fields.
double inner(const ScalarField& f, const ScalarField& g);
double inner(const VectorField& f, const VectorField& g);

/// ||f||_s = (sum |k|^{2s} |f_k|^2)^{1/2}, k scaled by 2*pi/L.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const VectorField& v, double s);

/// max_k |k . v_k|
double max_divergence(const VectorField& v);

}  // namespace admb

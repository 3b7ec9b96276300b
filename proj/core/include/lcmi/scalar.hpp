#pragma once

// Scalar functions of binary-input channels: the binary entropy function and
// its inverse on [0,1/2], the crossover convolution, the BSC strong
// data-processing coefficient eta_t, the capacity/SDPI ratio alpha_t, and the
// Mrs. Gerber's Lemma pair phi_t / psi_t.
//
// All information quantities are in bits. Every function validates its
// domain and throws std::domain_error on violation. Degenerate endpoints
// (p in {0,1}, t in {0,1}) are handled by explicit branches returning exact
// values rather than by the general formulas.

namespace lcmi {

inline constexpr double kLog2E = 1.4426950408889634074;

// Limit of alpha_t as t -> 0+, i.e. log2(e)/2. Used to keep alpha total on
// [0,1]: near p = 1/2 the entropy expands as 1 - h(p) ~ (1-2p)^2 / (2 ln 2).
inline constexpr double kAlphaAtZero = kLog2E / 2.0;

// h(p) = -p log2 p - (1-p) log2(1-p), with 0 log 0 = 0.
double binary_entropy(double p);

// Inverse of h restricted to [0, 1/2]; bisected to ~1 ulp in p.
double binary_entropy_inv(double y);

// a * b = a(1-b) + b(1-a): crossover of two cascaded BSCs.
double star(double a, double b);

// eta_t = (1 - 2 h^{-1}(1-t))^2, the SDPI coefficient of a BSC of capacity t.
double sdpi_eta_bsc(double t);

// alpha_t = t / eta_t for t > 0; alpha_0 = log2(e)/2 (the analytic limit).
double alpha(double t);

// phi_t(x) = h( h^{-1}(1-t) * h^{-1}(x) ), convex in x, phi_t(1) = 1.
double mgl_phi(double t, double x);

// psi_t(x) = phi_t(x) - (1-t); psi_t(0) = 0, psi_t(1) = t, psi_t(x) <= t x.
double psi(double t, double x);

// t* = 1 - h((1-sqrt(R))/2), the capacity with eta_{t*} = R, for R in (0,1).
double tstar(double rate);

// Per-symbol I(X;Y) for X ~ Bern(p) through a BSC of capacity t:
// g(t) = h(p * h^{-1}(1-t)) - (1-t). Satisfies g(t) <= t h(p).
double iid_bsc_mi_per_symbol(double t, double p);

}  // namespace lcmi

#pragma once

namespace fbmchaos {

// Probabilists' Hermite polynomials h_n, orthogonal for the standard normal
// weight: h_0 = 1, h_1 = x, h_{n+1} = x h_n - n h_{n-1}. Evaluation always
// goes through the recurrence; the factorial-sum definition appears only as
// a test oracle. n is capped at 170 (factorials beyond overflow double).
double hermite(int n, double x);

// Parametrized family h_n^[a]: h_n^[1] = h_n, h_n^[0](x) = x^n, recurrence
// h_{k+1} = x h_k - k a h_{k-1}. Generating function exp(c x - a c^2 / 2).
double hermite_param(int n, double a, double x);

// n-th moment of a Gaussian with the given mean and variance:
// E[U^n] = h_n^[-var](mean). var must be >= 0.
double conditional_moment(int n, double mean, double var);

// E[h_n(U) | F] for U Gaussian with unit total variance, conditioned on a
// sigma-field F: equals h_n^[v](E[U|F]) where v = Var(E[U|F]) is the
// variance *explained* by F (i.e. 1 minus the conditional variance).
// Equivalent to conditional_moment via the h^[a] composition rule; the
// explained variance, not the residual one, enters the parameter slot.
double conditional_hermite(int n, double cond_mean, double explained_var);

}  // namespace fbmchaos

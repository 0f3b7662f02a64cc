// Real dilogarithm and the order-1 complete Fermi-Dirac integral

#pragma once

namespace qhp {

/// Li2(x) = -int_0^x ln(1 - t)/t dt for real x <= 1. Series on |x| <= 1/2,
/// Landen, reflection and inversion identities elsewhere. Absolute accuracy
/// ~1e-15 relative to max(1, |Li2(x)|). Throws ValidationError for x > 1.
double dilog(double x);

/// F1(x) = int_0^inf e / (exp(e - x) + 1) de = -Li2(-exp(x)), evaluated
/// without overflow for large x.
double fermi_dirac_f1(double x);

/// log(1 + exp(x)) without overflow.
double softplus(double x);

} // namespace qhp

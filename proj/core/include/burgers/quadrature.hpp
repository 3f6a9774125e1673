// Composite Simpson quadrature for line integrals.
#pragma once
#include <functional>

#include "burgers/errors.hpp"

namespace burgers {

// Integral of f over [a,b] with n subintervals (bumped to even).
// Error O((b-a)^5 / n^4) for smooth integrands.
// Throws EvaluationError at the first non-finite integrand value.
double quadrature(const std::function<double(double)>& f, double a, double b, int n);

// Simpson on uniformly spaced samples (odd interval counts handled with a 3/8 tail).
double integrate_samples(const std::vector<double>& values, double h);

}  // namespace burgers

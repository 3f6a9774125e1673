// Error hierarchy shared by all solver modules.
#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace burgers {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument or configuration value.
struct ParameterError : Error {
    using Error::Error;
};

// Floating-point range exhausted (overflow/underflow that rescaling could not absorb).
struct NumericRangeError : Error {
    double time_of_failure;
    NumericRangeError(const std::string& msg, double t)
        : Error(msg), time_of_failure(t) {}
};

// Explicit step violates a stability restriction; carries the largest admissible step.
struct CflError : Error {
    double admissible_dt;
    CflError(const std::string& msg, double dt_ok)
        : Error(msg), admissible_dt(dt_ok) {}
};

// Solution magnitude left the physically plausible range (scheme misuse).
struct DivergenceError : Error {
    using Error::Error;
};

// Iteration failed to reach tolerance; keeps the residual history for diagnosis.
struct ConvergenceError : Error {
    std::vector<double> residual_history;
    ConvergenceError(const std::string& msg, std::vector<double> history)
        : Error(msg), residual_history(std::move(history)) {}
};

// A classification or identity check produced contradictory answers.
struct AmbiguityError : Error {
    using Error::Error;
};

// Integrand evaluated to a non-finite value; carries the offending abscissa.
struct EvaluationError : Error {
    double abscissa;
    EvaluationError(const std::string& msg, double x)
        : Error(msg), abscissa(x) {}
};

// Jump with left trace below right trace fed to a shock-speed formula.
struct InadmissibleJumpError : Error {
    using Error::Error;
};

// Optimization never converged from any restart.
struct OptimizationError : Error {
    using Error::Error;
};

}  // namespace burgers

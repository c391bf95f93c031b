#pragma once

#include <stdexcept>
#include <string>

namespace renorm {

// One exception type with a kind tag; the CLI maps kinds onto its exit-code
// contract (0 ok / 2 numeric / 3 validation / 4 structure).
enum class errc {
    domain,          // argument outside a map's trusted domain
    range,           // target value outside a map's range
    arity,           // wrong number of samples/entries
    value,           // non-finite or otherwise malformed input value
    monotonicity,    // series expected monotone is not
    degeneracy,      // coincident points, degenerate derivative, orbit hits x0
    branch,          // complex branch cut violated / inconsistent logs
    escape,          // orbit left the domain
    combinatorics,   // order type mismatch / not renormalizable with pattern
    no_convergence,  // Newton failed; residual carried in message and field
    wrong_branch,    // solver converged to a different combinatorics
    unsupported,     // e.g. admissibility search beyond period cap
    not_parabolic,   // multiplier too far from 1 for a parabolic fit
    structure,       // parameters outside the expected dynamical regime
    geometry,        // interval construction inconsistent
    sampling,        // bad sample (e.g. H <= 0 where log needed)
    data,            // non-monotone/insufficient input data for a fit
    numeric,         // overflow / non-finite intermediate
    io,              // file/parse problems
};

struct error : std::runtime_error {
    errc kind;
    double residual = 0.0; // populated for no_convergence

    error(errc k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    error(errc k, const std::string& msg, double res)
        : std::runtime_error(msg), kind(k), residual(res) {}
};

[[noreturn]] inline void fail(errc k, const std::string& msg) { throw error(k, msg); }

} // namespace renorm

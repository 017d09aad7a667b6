#pragma once

#include <string>
#include <vector>

#include "carl/expr.hpp"

namespace carl {

/// A semi-explicit DAE: xdot = g(x, z), 0 = h(x, z).
struct ModelSpec {
    std::string name;
    std::vector<std::string> states;     // x, size N
    std::vector<std::string> algebraics; // z, size M
    std::vector<Expr> odes;              // g, size N
    std::vector<Expr> constraints;       // h, size M (each expr = 0)
    std::vector<double> guess_x;
    std::vector<double> guess_z;

    std::size_t n_states() const { return states.size(); }
    std::size_t n_algebraics() const { return algebraics.size(); }

    /// states followed by algebraics; the binding order used everywhere.
    std::vector<std::string> all_names() const;
};

/// Parse a JSON model document. Throws parse_error on malformed input.
ModelSpec parse_model(const std::string& text);

/// Serialize back to the document format (expressions via print_expr).
std::string model_to_json(const ModelSpec& m);

} // namespace carl

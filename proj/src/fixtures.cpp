#include "carl/fixtures.hpp"

namespace carl {

namespace {

const char* kTest1 = R"json({
  "name": "test1",
  "states": ["x1", "x2"],
  "algebraics": ["z"],
  "odes": [
    "0.2*x1^2 - 2*x1 - 0.5*x2 + 0.1*z",
    "-0.15*x2^2 + 0.1*x1*x2 + 0.3*x1^2 - 2.2*x2 - 2*x1 - 0.1*z"
  ],
  "constraints": ["z - x1 + x2"],
  "guess": {"x": [0.5, 0.5], "z": [0.0]}
})json";

const char* kTest1Ode = R"json({
  "name": "test1-ode",
  "states": ["x1", "x2"],
  "algebraics": [],
  "odes": [
    "0.2*x1^2 - 1.9*x1 - 0.6*x2",
    "-0.15*x2^2 + 0.1*x1*x2 + 0.3*x1^2 - 2.1*x2 - 2.1*x1"
  ],
  "constraints": [],
  "guess": {"x": [0.1, 0.1], "z": []}
})json";

// This system is sometimes stated with the constraint 0 = z2 + x2, but the
// substituted ODE twin and the operating point (z2 = -0.10817 at x2 = 1.10817)
// both require 0 = z2 + x2 - 1; this document uses the consistent form.
const char* kTest2 = R"json({
  "name": "test2",
  "comment": "second constraint uses z2 + x2 - 1, consistent with the substituted ODE form and the reported operating point",
  "states": ["x1", "x2", "x3"],
  "algebraics": ["z1", "z2"],
  "odes": [
    "x2/(x1 + 1) + exp(-z1) - x3^3 + sin(x1*z2)",
    "tan(x1 + z2) - x2^2 + x3*exp(x1) - x1/(x3 + 1)",
    "x1*x2 - x3 + z1/(z1^2 + 1) + cos(x3)"
  ],
  "constraints": ["z1 + x1 - x3", "z2 + x2 - 1"],
  "guess": {"x": [0.14, 1.1, 1.1], "z": [0.97, -0.11]}
})json";

const char* kTest2Ode = R"json({
  "name": "test2-ode",
  "states": ["x1", "x2", "x3"],
  "algebraics": [],
  "odes": [
    "x2/(x1 + 1) + exp(x1 - x3) - x3^3 + sin(x1*(1 - x2))",
    "tan(x1 - x2 + 1) - x2^2 + x3*exp(x1) - x1/(x3 + 1)",
    "x1*x2 - x3 + (x3 - x1)/((x3 - x1)^2 + 1) + cos(x3)"
  ],
  "constraints": [],
  "guess": {"x": [0.14, 1.1, 1.1], "z": []}
})json";

// With a third ODE of exp(-z1) + x2^2 the right-hand side is positive for all
// real arguments and the system admits no real equilibrium. This document uses
// the minimal sign correction exp(-z1) - x2^2, which has a stable equilibrium.
const char* kTest3 = R"json({
  "name": "test3",
  "comment": "third ode uses exp(-z1) - x2^2; the additive form has no real equilibrium",
  "states": ["x1", "x2", "x3"],
  "algebraics": ["z1", "z2"],
  "odes": [
    "-x1 + cos(x2 - z2)",
    "x1*x3 - x2^2 + sin(x2 + z2)",
    "exp(-z1) - x2^2"
  ],
  "constraints": [
    "x3^2*z1*z2 + cos(x2 + z2)",
    "-x1*z1^2 + z1*x1^2 - sin(x2 - z2)"
  ],
  "guess": {"x": [1.0, 0.9, -0.2], "z": [0.25, 0.7]}
})json";

} // namespace

std::vector<std::string> fixture_names() {
    return {"test1", "test1-ode", "test2", "test2-ode", "test3"};
}

std::string fixture_document(const std::string& name) {
    if (name == "test1") return kTest1;
    if (name == "test1-ode") return kTest1Ode;
    if (name == "test2") return kTest2;
    if (name == "test2-ode") return kTest2Ode;
    if (name == "test3") return kTest3;
    throw parse_error("unknown fixture \"" + name + "\"");
}

ModelSpec fixture_model(const std::string& name) {
    return parse_model(fixture_document(name));
}

std::string fixture_ode_twin(const std::string& name) {
    if (name == "test1") return "test1-ode";
    if (name == "test2") return "test2-ode";
    return "";
}

} // namespace carl

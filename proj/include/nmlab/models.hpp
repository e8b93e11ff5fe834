#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nmlab/generators.hpp"

// Benchmark catalog of generators with analytically known measure
// trajectories, plus the generator JSON schema (version 1):
//
//   {
//     "schema": 1,
//     "dim": <int>,
//     "hamiltonian": null | [[[re,im], ...], ...],
//     "terms": [
//       {"matrix": [[[re,im], ...], ...],
//        "rate": {"kind": "constant", "value": <num>}
//              | {"kind": "sinusoid", "amplitude": <num>, "omega": <num>,
//                 "phase": <num>, "offset": <num>}
//              | {"kind": "tanh_negative", "amplitude": <num>, "omega": <num>}
//              | {"kind": "table", "points": [[t, value], ...]}}
//     ]
//   }
//
// Complex entries are always [re, im] pairs.

namespace nmlab {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct ModelSpec {
  std::string name;
  DiagonalGenerator generator;
  // closed-form g(t) when known, used by tests and documented per model
  std::optional<std::function<double(double)>> analytic_g;
  std::string note;
};

// Built-in benchmark models: dephasing-const, dephasing-sin, eternal-nm,
// amplitude-damping-const, random-kossakowski (fixed seed 42).
std::vector<ModelSpec> catalog();

// Looks up a catalog model by name; throws ValidationError when unknown.
ModelSpec catalog_model(const std::string& name);

// Seeded random qubit generator with sign-changing rate trajectories.
DiagonalGenerator random_qubit_generator(std::uint64_t seed);

ModelSpec from_spec(const std::string& json_text);
std::string to_spec_json(const ModelSpec& model);

}  // namespace nmlab

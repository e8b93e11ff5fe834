#include "nmlab/models.hpp"

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

namespace nmlab {

namespace {

using json = nlohmann::json;

CMatrix pauli(int i) {
  CMatrix m(2, 2);
  switch (i) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

}  // namespace

DiagonalGenerator random_qubit_generator(std::uint64_t seed) {
  // Kossakowski trajectory A(t) = U diag(r_i(t)) U^dag with a seeded random
  // unitary eigenframe and sinusoid rates of mixed sign; 3 terms <= d^2.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  CMatrix raw(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) raw(i, j) = Complex(normal(rng), normal(rng));
  const CMatrix u = Eigen::HouseholderQR<CMatrix>(raw).householderQ();

  const auto basis = gell_mann_basis(2);
  std::vector<LindbladTerm> terms;
  for (int i = 0; i < 3; ++i) {
    CMatrix op = CMatrix::Zero(2, 2);
    for (int j = 0; j < 3; ++j) op += u(j, i) * basis[j];
    const double offset = 0.4 + 0.6 * uni(rng);
    const double amplitude = 0.5 + uni(rng);  // amplitude can exceed offset
    const double omega = 0.5 + 1.5 * uni(rng);
    const double phase = 2.0 * M_PI * uni(rng);
    terms.push_back({op, RateSchedule::sinusoid(amplitude, omega, phase, offset)});
  }
  return DiagonalGenerator(2, std::move(terms));
}

std::vector<ModelSpec> catalog() {
  std::vector<ModelSpec> models;

  models.push_back({"dephasing-const",
                    DiagonalGenerator(2, {{pauli(3), RateSchedule::constant(1.0)}}),
                    [](double) { return 0.0; },
                    "L = sigma_z, gamma = 1; Markovian control, g = 0"});

  models.push_back({"dephasing-sin",
                    DiagonalGenerator(2, {{pauli(3), RateSchedule::sinusoid(1.0)}}),
                    [](double t) { return 2.0 * std::max(0.0, -std::sin(t)); },
                    "L = sigma_z, gamma(t) = sin t; g(t) = 2 max(0, -sin t)"});

  {
    // L(rho) = 1/2 sum_i gamma_i (sigma_i rho sigma_i - rho) with
    // gamma = (1, 1, -tanh t), realized as L_i = sigma_i/sqrt(2); g(t) = tanh t.
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<LindbladTerm> terms = {
        {s * pauli(1), RateSchedule::constant(1.0)},
        {s * pauli(2), RateSchedule::constant(1.0)},
        {s * pauli(3), RateSchedule::tanh_negative(1.0, 1.0)},
    };
    models.push_back({"eternal-nm", DiagonalGenerator(2, std::move(terms)),
                      [](double t) { return std::tanh(t); },
                      "eternally non-Markovian qubit model; g(t) = tanh t, "
                      "N_T(t) = ln cosh t"});
  }

  {
    CMatrix lower(2, 2);
    lower << 0, 1, 0, 0;  // |0><1|
    models.push_back({"amplitude-damping-const",
                      DiagonalGenerator(2, {{lower, RateSchedule::constant(1.0)}}),
                      [](double) { return 0.0; },
                      "L = |0><1|, gamma = 1; Markovian control, g = 0"});
  }

  models.push_back({"random-kossakowski", random_qubit_generator(42),
                    std::nullopt,
                    "seeded random eigenframe with sign-changing sinusoid rates"});

  return models;
}

ModelSpec catalog_model(const std::string& name) {
  for (auto& m : catalog())
    if (m.name == name) return m;
  throw ValidationError("unknown model: " + name);
}

namespace {

Complex parse_complex(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(std::string(where) + ": complex entries must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix parse_matrix(const json& j, int dim, const char* where) {
  if (!j.is_array() || int(j.size()) != dim)
    throw ParseError(std::string(where) + ": expected a " + std::to_string(dim) +
                     "-row matrix");
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (!j[r].is_array() || int(j[r].size()) != dim)
      throw ParseError(std::string(where) + ": row " + std::to_string(r) +
                       " has wrong length");
    for (int c = 0; c < dim; ++c) m(r, c) = parse_complex(j[r][c], where);
  }
  return m;
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

RateSchedule parse_rate(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("rate: missing \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  const auto num = [&](const char* key, std::optional<double> fallback =
                                            std::nullopt) -> double {
    if (!j.contains(key)) {
      if (fallback) return *fallback;
      throw ParseError("rate: missing \"" + std::string(key) + "\" for kind " + kind);
    }
    if (!j.at(key).is_number())
      throw ParseError("rate: \"" + std::string(key) + "\" must be a number");
    return j.at(key).get<double>();
  };
  if (kind == "constant") return RateSchedule::constant(num("value"));
  if (kind == "sinusoid")
    return RateSchedule::sinusoid(num("amplitude"), num("omega", 1.0),
                                  num("phase", 0.0), num("offset", 0.0));
  if (kind == "tanh_negative")
    return RateSchedule::tanh_negative(num("amplitude", 1.0), num("omega", 1.0));
  if (kind == "table") {
    if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty())
      throw ParseError("rate: table requires a non-empty \"points\" array");
    std::vector<std::pair<double, double>> knots;
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw ParseError("rate: table points must be [t, value]");
      knots.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return RateSchedule::table(std::move(knots));
  }
  throw ParseError("rate: unknown kind \"" + kind + "\"");
}

json rate_json(const RateSchedule& r) {
  switch (r.kind) {
    case RateSchedule::Kind::Constant:
      return {{"kind", "constant"}, {"value", r.value}};
    case RateSchedule::Kind::Sinusoid:
      return {{"kind", "sinusoid"}, {"amplitude", r.amplitude}, {"omega", r.omega},
              {"phase", r.phase}, {"offset", r.offset}};
    case RateSchedule::Kind::TanhNegative:
      return {{"kind", "tanh_negative"}, {"amplitude", r.amplitude}, {"omega", r.omega}};
    case RateSchedule::Kind::Table: {
      json points = json::array();
      for (const auto& [t, v] : r.knots) points.push_back(json::array({t, v}));
      return {{"kind", "table"}, {"points", points}};
    }
  }
  throw std::logic_error("rate_json: unknown kind");
}

}  // namespace

ModelSpec from_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("spec: top level must be an object");
  if (j.value("schema", 0) != 1) throw ParseError("spec: unsupported schema version");
  if (!j.contains("dim") || !j.at("dim").is_number_integer())
    throw ParseError("spec: missing integer \"dim\"");
  const int dim = j.at("dim").get<int>();
  if (dim < 2) throw ValidationError("spec: dim must be >= 2");
  if (!j.contains("terms") || !j.at("terms").is_array())
    throw ParseError("spec: missing \"terms\" array");
  if (j.at("terms").size() > std::size_t(dim) * dim)
    throw ValidationError("spec: more than dim^2 Lindblad terms");

  std::optional<CMatrix> hamiltonian;
  if (j.contains("hamiltonian") && !j.at("hamiltonian").is_null()) {
    CMatrix h = parse_matrix(j.at("hamiltonian"), dim, "hamiltonian");
    if (!is_hermitian(h))
      throw ValidationError("spec: hamiltonian must be Hermitian");
    hamiltonian = std::move(h);
  }

  std::vector<LindbladTerm> terms;
  for (const auto& tj : j.at("terms")) {
    if (!tj.is_object() || !tj.contains("matrix") || !tj.contains("rate"))
      throw ParseError("spec: each term needs \"matrix\" and \"rate\"");
    terms.push_back({parse_matrix(tj.at("matrix"), dim, "term matrix"),
                     parse_rate(tj.at("rate"))});
  }

  ModelSpec model{j.value("name", std::string("custom")),
                  DiagonalGenerator(dim, std::move(terms), std::move(hamiltonian)),
                  std::nullopt,
                  j.value("note", std::string())};
  return model;
}

std::string to_spec_json(const ModelSpec& model) {
  const auto& g = model.generator;
  json j;
  j["schema"] = 1;
  j["name"] = model.name;
  j["dim"] = g.dim();
  j["hamiltonian"] = g.hamiltonian() ? matrix_json(*g.hamiltonian()) : json();
  json terms = json::array();
  for (const auto& term : g.terms())
    terms.push_back({{"matrix", matrix_json(term.op)}, {"rate", rate_json(term.rate)}});
  j["terms"] = terms;
  if (!model.note.empty()) j["note"] = model.note;
  return j.dump(2);
}

}  // namespace nmlab

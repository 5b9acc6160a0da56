#include "relaybf/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "relaybf/errors.hpp"

namespace relaybf {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::kSchema, path + ": " + what);
}

json parse_document(std::string_view text) {
  try {
    json doc = json::parse(text.begin(), text.end());
    if (!doc.is_object()) schema_error("$", "expected an object");
    return doc;
  } catch (const json::parse_error& e) {
    schema_error("$", std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& obj, const std::string& path, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) schema_error(path + "." + name, "missing required field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_error(path, "expected an integer");
  return v.get<int>();
}

const json& array(const json& v, const std::string& path, std::size_t expected_size) {
  if (!v.is_array()) schema_error(path, "expected an array");
  if (v.size() != expected_size) {
    schema_error(path, "expected " + std::to_string(expected_size) + " elements, got " +
                           std::to_string(v.size()));
  }
  return v;
}

std::vector<double> reals(const json& v, const std::string& path, std::size_t n) {
  array(v, path, n);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Complex complex_value(const json& v, const std::string& path) {
  array(v, path, 2);
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

ComplexVector complex_vector(const json& v, const std::string& path, std::size_t n) {
  array(v, path, n);
  ComplexVector out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    out(static_cast<Eigen::Index>(i)) = complex_value(v[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

// Rows of complex pairs; the row count fixes the expected row length.
std::vector<ComplexVector> complex_rows(const json& v, const std::string& path, std::size_t rows,
                                        std::size_t cols) {
  array(v, path, rows);
  std::vector<ComplexVector> out;
  out.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    out.push_back(complex_vector(v[r], path + "[" + std::to_string(r) + "]", cols));
  }
  return out;
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const HermitianMatrix& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.dim(); ++j) row.push_back(to_json(a(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

ProblemInstance parse_instance(std::string_view text) {
  const json doc = parse_document(text);
  const int relays = integer(field(doc, "$", "M"), "$.M");
  const int users = integer(field(doc, "$", "K"), "$.K");
  if (relays < 1) schema_error("$.M", "must be at least 1");
  if (users < 1) schema_error("$.K", "must be at least 1");
  const double sigma2 = number(field(doc, "$", "sigma2"), "$.sigma2");
  auto capacities = reals(field(doc, "$", "capacities"), "$.capacities", relays);

  const bool has_rate = doc.contains("rate_targets");
  const bool has_sinr = doc.contains("sinr_targets");
  if (has_rate == has_sinr) {
    schema_error("$", "exactly one of \"rate_targets\" and \"sinr_targets\" is required");
  }
  std::vector<double> sinr_targets;
  if (has_sinr) {
    sinr_targets = reals(doc["sinr_targets"], "$.sinr_targets", users);
  } else {
    for (double r : reals(doc["rate_targets"], "$.rate_targets", users)) {
      sinr_targets.push_back(sinr_from_rate(r));
    }
  }
  auto channels = complex_rows(field(doc, "$", "channels"), "$.channels", users, relays);
  return ProblemInstance(sigma2, std::move(channels), std::move(sinr_targets),
                         std::move(capacities));
}

std::string serialize_instance(const ProblemInstance& inst) {
  json doc;
  doc["M"] = inst.relays();
  doc["K"] = inst.users();
  doc["sigma2"] = inst.sigma2();
  doc["capacities"] = std::vector<double>(inst.capacities().begin(), inst.capacities().end());
  doc["sinr_targets"] =
      std::vector<double>(inst.sinr_targets().begin(), inst.sinr_targets().end());
  json channels = json::array();
  for (const auto& h : inst.channels()) channels.push_back(to_json(h));
  doc["channels"] = std::move(channels);
  return doc.dump(2) + "\n";
}

PrimalSolution parse_solution(std::string_view text) {
  const json doc = parse_document(text);
  const json& powers = field(doc, "$", "powers");
  if (!powers.is_array()) schema_error("$.powers", "expected an array");
  const std::size_t users = powers.size();
  const json& q = field(doc, "$", "Q");
  if (!q.is_array() || q.empty()) schema_error("$.Q", "expected a non-empty array");
  const std::size_t relays = q.size();

  PrimalSolution sol;
  sol.powers = reals(powers, "$.powers", users);
  sol.directions = complex_rows(field(doc, "$", "directions"), "$.directions", users, relays);
  const auto rows = complex_rows(q, "$.Q", relays, relays);
  ComplexMatrix dense(relays, relays);
  for (std::size_t i = 0; i < relays; ++i) dense.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  sol.q = HermitianMatrix(dense);
  return sol;
}

std::string serialize_solution(const PrimalSolution& sol) {
  json doc;
  json directions = json::array();
  for (const auto& d : sol.directions) directions.push_back(to_json(d));
  doc["directions"] = std::move(directions);
  doc["powers"] = sol.powers;
  doc["Q"] = to_json(sol.q);
  return doc.dump(2) + "\n";
}

DualSolution parse_dual(std::string_view text) {
  const json doc = parse_document(text);
  const json& beta = field(doc, "$", "beta");
  if (!beta.is_array()) schema_error("$.beta", "expected an array");
  const json& lambdas = field(doc, "$", "lambdas");
  if (!lambdas.is_array() || lambdas.empty()) schema_error("$.lambdas", "expected a non-empty array");
  DualSolution dual;
  dual.beta = reals(beta, "$.beta", beta.size());
  dual.lambdas = complex_rows(lambdas, "$.lambdas", lambdas.size(), lambdas.size());
  return dual;
}

std::string serialize_dual(const DualSolution& dual) {
  json doc;
  doc["beta"] = dual.beta;
  json lambdas = json::array();
  for (const auto& l : dual.lambdas) lambdas.push_back(to_json(l));
  doc["lambdas"] = std::move(lambdas);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace relaybf

#include "ccsym/report.hpp"

#include <fmt/format.h>

#include <json.hpp>

namespace ccsym {

void CheckReport::set_sides(const FloatElement& left, const FloatElement& right) {
  lhs = left.str();
  rhs = right.str();
  lhs_value = left;
  rhs_value = right;
  deviation = max_abs_diff(left, right);
  pass = deviation <= tolerance;
}

void CheckReport::set_sides(std::string left, std::string right, double dev) {
  lhs = std::move(left);
  rhs = std::move(right);
  deviation = dev;
  pass = deviation <= tolerance;
}

std::string CheckReport::text() const {
  std::string out = fmt::format("check: {}\n", check_id);
  for (const auto& [k, v] : inputs)
    out += fmt::format("  {} = {}\n", k, v);
  out += fmt::format("  lhs = {}\n  rhs = {}\n", lhs, rhs);
  out += fmt::format("  deviation = {:.3e} (tolerance {:.1e})\n", deviation, tolerance);
  out += fmt::format("  runtime = {} ms\n", runtime_ms);
  out += fmt::format("  result: {}\n", pass ? "PASS" : "FAIL");
  return out;
}

namespace {

nlohmann::json element_json(const FloatElement& e) {
  nlohmann::json j = nlohmann::json::object();
  const auto& alg = *e.algebra();
  for (std::size_t i = 0; i < alg.dimension(); ++i)
    j[alg.monomial_name(i)] = {e.coeff(i).real(), e.coeff(i).imag()};
  return j;
}

} // namespace

std::string CheckReport::json() const {
  nlohmann::json j;
  j["check_id"] = check_id;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [k, v] : inputs)
    in[k] = v;
  j["inputs"] = in;
  j["lhs"] = lhs_value ? element_json(*lhs_value) : nlohmann::json(lhs);
  j["rhs"] = rhs_value ? element_json(*rhs_value) : nlohmann::json(rhs);
  j["deviation"] = deviation;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  j["runtime_ms"] = runtime_ms;
  return j.dump(2);
}

} // namespace ccsym

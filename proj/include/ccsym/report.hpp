#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccsym/algebra.hpp"

namespace ccsym {

/// Outcome of one verification check. pass holds exactly when
/// deviation <= tolerance.
struct CheckReport {
  std::string check_id;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string lhs;
  std::string rhs;
  /// Numeric values behind lhs and rhs, when they are algebra elements.
  std::optional<FloatElement> lhs_value;
  std::optional<FloatElement> rhs_value;
  double deviation = 0;
  double tolerance = 0;
  bool pass = false;
  long runtime_ms = 0;

  /// Sets both printed and numeric sides, the deviation and pass.
  void set_sides(const FloatElement& left, const FloatElement& right);
  void set_sides(std::string left, std::string right, double deviation);

  std::string text() const;
  /// {check_id, inputs, lhs, rhs, deviation, tolerance, pass, runtime_ms}
  /// with elements as {monomial: [re, im]} maps.
  std::string json() const;
};

/// Records elapsed wall time into a report on destruction.
class ReportTimer {
public:
  explicit ReportTimer(CheckReport& report) : report_(report), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    report_.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
  }
  ReportTimer(const ReportTimer&) = delete;
  ReportTimer& operator=(const ReportTimer&) = delete;

private:
  CheckReport& report_;
  std::chrono::steady_clock::time_point start_;
};

} // namespace ccsym

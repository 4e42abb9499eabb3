#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "prabhakar/complex.hpp"
#include "prabhakar/cq_solver.hpp"
#include "prabhakar/params.hpp"

namespace prabhakar::cli {

using nlohmann::json;

inline constexpr const char* kGenerator = "prabhakar 0.1.0";

/// Bad command-line input; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g, with "nan"/"inf" spelled out.
[[nodiscard]] std::string num(double x);

/// JSON text with every floating-point number written with 17 significant
/// digits (nlohmann's dump uses the shortest round-trip form instead).
[[nodiscard]] std::string json_text(const json& value, int indent = 2);

/// Accepts "re", "re,im", "re+imi", "re-imi", "imi".
[[nodiscard]] Complex parse_complex(const std::string& text);

/// Rows separated by ';', entries by whitespace or '|'; entries use
/// parse_complex syntax, e.g. "13 10; -14 -10".
[[nodiscard]] Eigen::MatrixXcd parse_matrix(const std::string& text);

/// Entries separated by ';'.
[[nodiscard]] State parse_vector(const std::string& text);

/// Number or [re, im].
[[nodiscard]] Complex complex_from_json(const json& value);

[[nodiscard]] json complex_to_json(Complex z);
[[nodiscard]] json params_to_json(const PrabhakarParams& params);

/// Writes text to path, or to out when path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out);

}  // namespace prabhakar::cli

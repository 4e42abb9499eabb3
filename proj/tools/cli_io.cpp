#include "cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

namespace prabhakar::cli {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_json(const json& v, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (v.type()) {
    case json::value_t::number_float: {
      const double x = v.get<double>();
      out += std::isfinite(x) ? num(x) : "null";
      return;
    }
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + json(it.key()).dump() + (indent > 0 ? ": " : ":");
        write_json(it.value(), indent, depth + 1, out);
      }
      out += nl + close + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const auto& item : v) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        write_json(item, indent, depth + 1, out);
      }
      out += nl + close + "]";
      return;
    }
    default:
      out += v.dump();
  }
}

double parse_double(const std::string& s, const std::string& context) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("cannot parse number '" + s + "' in " + context);
  }
  if (pos != s.size()) throw UsageError("cannot parse number '" + s + "' in " + context);
  return x;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string json_text(const json& value, int indent) {
  std::string out;
  write_json(value, indent, 0, out);
  out += "\n";
  return out;
}

Complex parse_complex(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw UsageError("empty complex number");
  if (const auto comma = text.find(','); comma != std::string::npos) {
    return {parse_double(trim(text.substr(0, comma)), text),
            parse_double(trim(text.substr(comma + 1)), text)};
  }
  if (text.back() != 'i' && text.back() != 'j') return {parse_double(text, text), 0.0};

  const std::string body = text.substr(0, text.size() - 1);
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s, text);
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {parse_double(body.substr(0, split), text), imag_part(body.substr(split))};
}

Eigen::MatrixXcd parse_matrix(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::replace(row.begin(), row.end(), '|', ' ');
    std::stringstream es(row);
    std::string entry;
    std::vector<Complex> values;
    while (es >> entry) values.push_back(parse_complex(entry));
    if (!values.empty()) rows.push_back(std::move(values));
  }
  if (rows.empty()) throw UsageError("empty matrix");
  const std::size_t n = rows.size();
  Eigen::MatrixXcd M(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw UsageError("matrix must be square: '" + text + "'");
    for (std::size_t j = 0; j < n; ++j) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return M;
}

State parse_vector(const std::string& text) {
  std::vector<Complex> values;
  std::stringstream ss(text);
  std::string entry;
  while (std::getline(ss, entry, ';')) {
    if (!trim(entry).empty()) values.push_back(parse_complex(entry));
  }
  if (values.empty()) throw UsageError("empty vector");
  State v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

Complex complex_from_json(const json& value) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  if (value.is_string()) return parse_complex(value.get<std::string>());
  throw UsageError("expected a number or [re, im], got " + value.dump());
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json params_to_json(const PrabhakarParams& params) {
  return {{"alpha", params.alpha()},
          {"beta", params.beta()},
          {"gamma", params.gamma()},
          {"omega", params.omega()}};
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw UsageError("failed writing '" + path + "'");
}

}  // namespace prabhakar::cli

#include "perron/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "perron/errors.hpp"

namespace perron {

namespace {

using nlohmann::json;

// Shortest decimal that round-trips to the same double.
std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  // Keep it a JSON number that reads back as floating point.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Byte offset of a top-level field's value, or of element `index` of that
// value when it is an array. Falls back to 0 when not found. Only called on
// text that already parsed as JSON.
std::size_t locate(std::string_view text, std::string_view key, std::optional<std::size_t> index) {
  int depth = 0;
  bool in_string = false;
  std::size_t string_start = 0;
  std::string_view last_string;
  bool want_value = false;
  std::optional<std::size_t> value_at;
  std::size_t element = 0;
  bool expect_element = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (in_string) {
      if (c == '\\') {
        ++k;
      } else if (c == '"') {
        in_string = false;
        last_string = text.substr(string_start, k - string_start);
      }
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    if (want_value) {
      want_value = false;
      if (!index) return k;
      if (c != '[') return k;
      value_at = k;
      expect_element = true;
      ++depth;
      continue;
    }
    if (value_at && depth == 2 && expect_element && c != ']') {
      if (element == *index) return k;
      expect_element = false;
    }
    switch (c) {
      case '"':
        in_string = true;
        string_start = k + 1;
        break;
      case ':':
        if (depth == 1 && !value_at && last_string == key) want_value = true;
        break;
      case ',':
        if (value_at && depth == 2) {
          ++element;
          expect_element = true;
        }
        break;
      case '{':
      case '[':
        ++depth;
        break;
      case '}':
      case ']':
        --depth;
        if (value_at && depth < 2) return *value_at;
        break;
      default:
        break;
    }
  }
  return value_at.value_or(0);
}

// Raises ParseError for a well-formed document whose content is invalid,
// pointing at the offending field or entry.
class Validator {
 public:
  explicit Validator(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(std::string_view key, std::optional<std::size_t> index,
                         const std::string& what) const {
    std::string path(key);
    if (index) path += "[" + std::to_string(*index) + "]";
    const auto [line, column] = line_column(text_, locate(text_, key, index));
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         " (" + path + "): " + what,
                     line, column, path);
  }

  int read_int(const json& doc, const char* key) const {
    if (!doc.contains(key)) fail("$", std::nullopt, std::string("missing field \"") + key + "\"");
    const json& v = doc.at(key);
    if (!v.is_number_integer()) fail(key, std::nullopt, "expected an integer");
    return v.get<int>();
  }

  double read_number(const json& v, std::string_view key, std::optional<std::size_t> index) const {
    if (!v.is_number()) fail(key, index, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, index, "value must be finite");
    return d;
  }

 private:
  std::string_view text_;
};

std::string format_fixed_or_sci(double v, bool sci_below) {
  char buf[64];
  if (sci_below && std::abs(v) < 1e-3) {
    std::snprintf(buf, sizeof buf, "%.4e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.4f", v);
  }
  return buf;
}

}  // namespace

DenseTensor parse_tensor(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_column(text, byte);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
  const Validator check(text);
  if (!doc.is_object()) check.fail("$", std::nullopt, "document must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "order" && key != "dim" && key != "layout" && key != "entries" &&
        key != "comment") {
      check.fail(key, std::nullopt, "unknown field");
    }
  }
  if (doc.contains("comment") && !doc.at("comment").is_string()) {
    check.fail("comment", std::nullopt, "expected a string");
  }

  const int order = check.read_int(doc, "order");
  const int dim = check.read_int(doc, "dim");
  std::optional<TensorShape> shape;
  try {
    shape.emplace(order, dim);
  } catch (const ShapeError& e) {
    check.fail("order", std::nullopt, e.what());
  }

  if (!doc.contains("layout") || !doc.at("layout").is_string()) {
    check.fail(doc.contains("layout") ? "layout" : "$", std::nullopt,
               "expected \"coo\" or \"dense\"");
  }
  const std::string layout = doc.at("layout").get<std::string>();
  if (!doc.contains("entries") || !doc.at("entries").is_array()) {
    check.fail(doc.contains("entries") ? "entries" : "$", std::nullopt, "expected an array");
  }
  const json& entries = doc.at("entries");

  std::vector<double> values(shape->size(), 0.0);
  if (layout == "dense") {
    if (entries.size() != shape->size()) {
      check.fail("entries", std::nullopt, "dense layout needs dim^order = " +
                                    std::to_string(shape->size()) + " values, got " +
                                    std::to_string(entries.size()));
    }
    for (std::size_t k = 0; k < entries.size(); ++k) {
      values[k] = check.read_number(entries[k], "entries", k);
    }
  } else if (layout == "coo") {
    std::vector<bool> seen(shape->size(), false);
    std::vector<int> idx(static_cast<std::size_t>(order));
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const json& e = entries[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_array()) {
        check.fail("entries", k, "expected [[i1, ..., im], value]");
      }
      if (e[0].size() != static_cast<std::size_t>(order)) {
        check.fail("entries", k, "index tuple must have " + std::to_string(order) + " entries");
      }
      for (std::size_t p = 0; p < idx.size(); ++p) {
        const json& i = e[0][p];
        if (!i.is_number_integer()) check.fail("entries", k, "indices must be integers");
        const auto one_based = i.get<long long>();
        if (one_based < 1 || one_based > dim) {
          check.fail("entries", k, "index " + std::to_string(one_based) + " outside [1, " +
                                   std::to_string(dim) + "]");
        }
        idx[p] = static_cast<int>(one_based - 1);
      }
      const std::size_t flat = shape->offset(idx);
      if (seen[flat]) check.fail("entries", k, "duplicate index tuple");
      seen[flat] = true;
      values[flat] = check.read_number(e[1], "entries", k);
    }
  } else {
    check.fail("layout", std::nullopt, "expected \"coo\" or \"dense\", got \"" + layout + "\"");
  }
  return DenseTensor(*shape, std::move(values));
}

std::string serialize_tensor(const DenseTensor& a, Layout layout, std::string_view comment) {
  std::ostringstream out;
  out << "{\n";
  if (!comment.empty()) out << "  \"comment\": " << json(std::string(comment)).dump() << ",\n";
  out << "  \"order\": " << a.order() << ",\n"
      << "  \"dim\": " << a.dim() << ",\n"
      << "  \"layout\": \"" << (layout == Layout::coo ? "coo" : "dense") << "\",\n"
      << "  \"entries\": [";
  const auto& shape = a.shape();
  bool first = true;
  if (layout == Layout::coo) {
    std::vector<int> idx(static_cast<std::size_t>(a.order()));
    for (std::size_t flat = 0; flat < shape.size(); ++flat) {
      const double v = a.values()[flat];
      if (v == 0.0 && !std::signbit(v)) continue;
      shape.unravel(flat, idx);
      out << (first ? "\n    [[" : ",\n    [[");
      for (std::size_t p = 0; p < idx.size(); ++p) out << (p ? ", " : "") << idx[p] + 1;
      out << "], " << shortest(v) << "]";
      first = false;
    }
  } else {
    // One line per trailing-index row.
    const auto n = static_cast<std::size_t>(a.dim());
    for (std::size_t flat = 0; flat < shape.size(); ++flat) {
      if (flat % n == 0) out << (first ? "\n    " : ",\n    ");
      else out << ", ";
      out << shortest(a.values()[flat]);
      first = false;
    }
  }
  out << (first ? "]\n" : "\n  ]\n") << "}\n";
  return out.str();
}

json tensor_to_json(const DenseTensor& a, Layout layout) {
  return json::parse(serialize_tensor(a, layout));
}

PositiveVector parse_vector(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_column(text, byte);
    throw ParseError(std::string("syntax error: ") + e.what(), line, column);
  }
  if (!doc.is_array()) throw ParseError("expected an array of numbers", 1, 1, "$");
  std::vector<double> v;
  for (const json& x : doc) {
    if (!x.is_number()) throw ParseError("expected an array of numbers", 1, 1, "$");
    v.push_back(x.get<double>());
  }
  try {
    return PositiveVector(std::move(v));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), 1, 1, "$");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string render_trace(const EigenResult& result) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%5s %12s %12s %12s %12s %12s\n", "k", "lower", "upper",
                "lambda", "gap", "residual");
  out << line;
  for (const auto& r : result.trace) {
    std::snprintf(line, sizeof line, "%5d %12s %12s %12s %12s %12s\n", r.k,
                  format_fixed_or_sci(r.lower, false).c_str(),
                  format_fixed_or_sci(r.upper, false).c_str(),
                  format_fixed_or_sci(r.estimate, false).c_str(),
                  format_fixed_or_sci(r.gap, true).c_str(),
                  format_fixed_or_sci(r.residual, true).c_str());
    out << line;
  }
  return out.str();
}

std::string render_summary(std::string_view label, const EigenResult& result) {
  std::ostringstream out;
  char line[320];
  std::snprintf(line, sizeof line, "%-12s %8s %9s %12s %12s %12s %12s %12s\n", "Example",
                "No.Iter", "CPU(sec)", "lower", "upper", "lambda", "gap", "residual");
  out << line;
  if (result.trace.empty()) return out.str();
  const auto& r = result.trace.back();
  std::snprintf(line, sizeof line, "%-12.12s %8d %9.3f %12s %12s %12s %12s %12s\n",
                std::string(label).c_str(), result.iterations, result.cpu_seconds,
                format_fixed_or_sci(r.lower, false).c_str(),
                format_fixed_or_sci(r.upper, false).c_str(),
                format_fixed_or_sci(r.estimate, false).c_str(),
                format_fixed_or_sci(r.gap, true).c_str(),
                format_fixed_or_sci(r.residual, true).c_str());
  out << line;
  return out.str();
}

void to_json(json& j, const IterationRecord& r) {
  j = json{{"k", r.k},         {"lower", r.lower}, {"upper", r.upper},
           {"estimate", r.estimate}, {"gap", r.gap},     {"residual", r.residual}};
}

void to_json(json& j, const EigenResult& r) {
  j = json{{"lambda", r.lambda},
           {"eigenvector",
            std::vector<double>(r.eigenvector.values().begin(), r.eigenvector.values().end())},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"alpha", r.alpha},
           {"cpu_seconds", r.cpu_seconds},
           {"trace", r.trace}};
}

void to_json(json& j, const PropertyReport& r) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  j = json{{"name", r.name},
           {"samples", r.samples},
           {"max_violation", finite_or_null(r.max_violation)},
           {"tolerance", r.tolerance},
           {"pass", r.pass},
           {"max_equality_gap", finite_or_null(r.max_equality_gap)},
           {"witnesses", r.witnesses}};
  if (r.near_equality) j["near_equality"] = *r.near_equality;
}

}  // namespace perron

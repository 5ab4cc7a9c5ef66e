#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "perron/properties.hpp"
#include "perron/spectral.hpp"
#include "perron/tensor.hpp"

namespace perron {

enum class Layout { coo, dense };

/// Parses a tensor document:
///
///   {"order": m, "dim": n, "layout": "coo",
///    "entries": [[[i1, ..., im], value], ...]}
///   {"order": m, "dim": n, "layout": "dense", "entries": [v0, v1, ...]}
///
/// Indices are 1-based; missing coo entries are zero; dense values run with
/// the first index slowest. An optional "comment" string is ignored.
/// Throws ParseError.
DenseTensor parse_tensor(std::string_view text);

/// Writes a document that parse_tensor reads back bit for bit. The coo
/// layout lists nonzero entries only.
std::string serialize_tensor(const DenseTensor& a, Layout layout,
                             std::string_view comment = {});

nlohmann::json tensor_to_json(const DenseTensor& a, Layout layout);

/// A JSON array of positive numbers.
PositiveVector parse_vector(std::string_view text);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Iteration table: k, lower, upper, lambda, gap, residual. Values use four
/// decimals; gap and residual switch to scientific notation below 1e-3.
std::string render_trace(const EigenResult& result);

/// One-row summary: No.Iter, CPU(sec), and the final trace row.
std::string render_summary(std::string_view label, const EigenResult& result);

void to_json(nlohmann::json& j, const IterationRecord& r);
void to_json(nlohmann::json& j, const EigenResult& r);
void to_json(nlohmann::json& j, const PropertyReport& r);

}  // namespace perron

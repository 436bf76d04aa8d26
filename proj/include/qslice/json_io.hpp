#pragma once

#include "qslice/flags.hpp"
#include "qslice/phi.hpp"

#include "json.hpp"

namespace qslice {

using Json = nlohmann::json;

/// "p/q" with q > 0 in lowest terms, or "p" when q = 1. Integers are accepted on input.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// Array of rows. A matrix with zero rows carries no column count, so readers
/// that know the shape pass it in; a mismatch throws ShapeMismatch.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

Json to_json(const Partition& p);
Json to_json(const DimData& dd);
DimData dims_from_json(const Json& j);

/// {"n", "d", "v", "A", "B", "gamma", "delta"}.
Json to_json(const ADHMData& z);
ADHMData adhm_from_json(const Json& j);

/// {"n", "d", "v", "layout", "Atil", "Btil"}; slot labels are ["V", i] and ["D", j, k].
Json to_json(const TildeData& t);
TildeData tilde_from_json(const Json& j);

/// {"n", "lambda": [...], "mu": [...]}, entries {"i","j","h","jp","hp","r","value"}.
Json to_json(const CoeffTable& table);

/// {"u": matrix, "flag": [basis matrices], "a": [...], "N": N}.
Json to_json(const FlagPair& p);
FlagPair flag_pair_from_json(const Json& j);

/// FNV-1a (64 bit, hex) of the serialized invariant signature.
std::string signature_hash(const ADHMData& z);
std::string fnv1a_hex(std::string_view bytes);

/// Parse a file; I/O and syntax problems throw ParseError.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qslice

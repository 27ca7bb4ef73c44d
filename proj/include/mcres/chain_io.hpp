#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcres/chain.hpp"

namespace mcres {

enum class ChainFormat { csv, json };

/// A transition matrix as read from disk, before validation.
struct ChainFile {
    DenseMatrix p;
    std::vector<std::string> labels;
};

/// CSV: n lines of n comma-separated decimals, no header. Blank lines are
/// ignored. Throws ParseError.
ChainFile parse_chain_csv(std::string_view text);

/// JSON: {"states": [...] (optional), "P": [[...], ...]}. Throws ParseError.
ChainFile parse_chain_json(std::string_view text);

/// `.json` extension or a leading '{' selects JSON; anything else is CSV.
ChainFormat detect_chain_format(const std::filesystem::path& path, std::string_view text);

ChainFile read_chain_file(const std::filesystem::path& path);

/// Reads, parses and validates in one go.
StochasticMatrix load_chain(const std::filesystem::path& path, const Tolerances& tol = default_tolerances());

/// Entries are written with 17 significant digits so reading back is exact.
std::string format_chain_csv(const StochasticMatrix& p);
std::string format_chain_json(const StochasticMatrix& p);

std::optional<ChainFormat> format_from_extension(const std::filesystem::path& path);

}  // namespace mcres

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mcres/chain.hpp"
#include "mcres/forest.hpp"
#include "mcres/simulate.hpp"
#include "mcres/tolerances.hpp"

namespace mcres {

using Json = nlohmann::ordered_json;

/// {lhs, rhs, abs_err, tolerance, pass} with pass = abs_err <= tolerance.
Json make_check(double lhs, double rhs, double tolerance);
/// A residual that should vanish: lhs = residual, rhs = 0.
Json make_residual_check(double residual, double tolerance);
/// lhs must not exceed rhs by more than the tolerance; abs_err is the excess.
Json make_bound_check(double lhs, double rhs, double tolerance);

/// True iff every check object anywhere in the document passes and the
/// document records no per-item errors.
bool all_checks_pass(const Json& doc);

/// Sets one named field of `tol` (e.g. "kirchhoff=1e-7"). Returns false for
/// an unknown name.
bool apply_tolerance_override(Tolerances& tol, std::string_view name, double value);
std::vector<std::string_view> tolerance_names();

struct AnalyzeOptions {
    Tolerances tol{};
    std::size_t forest_cap = kDefaultForestCap;
    bool eigentime = true;
    std::optional<SimConfig> simulation;
};

/// Full analysis of one chain. Throws NotErgodic.
Json analyze_report(const StochasticMatrix& p, const AnalyzeOptions& opts);

/// `trials` random (M, K) pairs plus the canonical K = Pi and, for reversible
/// chains, K = P^m with m = 1, 2, 3.
Json sumrule_report(const StochasticMatrix& p, std::size_t trials, std::uint64_t seed, const Tolerances& tol);

/// Enumeration oracle against the linear-algebra route. Throws TooLarge.
Json forest_report(const StochasticMatrix& p, std::size_t cap, const Tolerances& tol);

/// Pairs are 0-based; an empty list means every ordered pair.
Json simulate_report(const StochasticMatrix& p, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                     const SimConfig& cfg, const Tolerances& tol);

/// The built-in three-state birth-death counterexample to the triangle inequality.
Json counterexample_report(const Tolerances& tol);

/// Indented plain-text rendering; numbers at 6 significant digits.
std::string render_human(const Json& doc);

}  // namespace mcres

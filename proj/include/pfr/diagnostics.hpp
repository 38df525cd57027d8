#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfr/construction.hpp"

namespace pfr {

/// Frequency census of a subspace family: how often each point appears
/// across the V_x, the heavy-hitter set U at the pigeonhole threshold, and
/// the counting bounds it must respect.
struct FrequencyDiagnostic {
  std::int64_t threshold_exponent = 0;   // n − 4t − 2, may be negative
  std::uint64_t threshold = 1;           // effective count cutoff max(p^exponent, 1)
  std::uint64_t pair_count = 0;          // #{(v, x) : v ∈ V_x} = Σ_x p^dim(V_x)
  std::vector<std::uint64_t> u_indices;  // sorted indices of U
  bool covers = false;                   // U + U = F_p^n
  std::uint64_t pair_bound = 0;          // p^(n+2t+1), saturating
  std::uint64_t u_bound = 0;             // p^(6t+3), saturating
};

FrequencyDiagnostic frequency_diagnostic(const SubspaceFamily& F);

/// The counting argument replayed on one concrete family: if an exhaustive
/// search finds no violating pair then U+U must cover the whole space, and
/// the census quantities must sit inside their bounds.
struct CountingChainReport {
  FrequencyDiagnostic diag;
  bool pair_found = false;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> pair_indices;
  bool implication_holds = false;        // no pair ⇒ covers (true when a pair exists)
  bool pair_count_within_bound = false;  // pair_count ≤ p^(n+2t+1)
  bool u_within_bound = false;           // threshold ≥ 1 ⇒ |U| ≤ p^(6t+3)
  bool u_reaches_half = false;           // |U|² ≥ p^n
};

CountingChainReport counting_chain_check(const SubspaceFamily& F);

/// One cell of a sweep grid, kept as raw numbers so invalid parameters can
/// be reported in the row instead of aborting the sweep.
struct SweepCell {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t t = 0;
  std::string source;  // "random" | "spanning" | "map"
  std::uint64_t seed = 0;
  /// Inline basis images for source "map": term lists per image.
  std::optional<std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>>> raw_map;
};

struct SweepPlan {
  std::uint64_t budget = 0;  // randomized probe budget; 0 selects exhaustive search
  SumsetMode mode = SumsetMode::exact;
  std::vector<SweepCell> cells;
};

/// One output row per cell.  Unset fields render as blank CSV cells; `error`
/// is empty on success or one of "cap_exceeded", "uncovered_point",
/// "invalid_params".
struct SweepRow {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t t = 0;
  std::string source;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> probes;
  std::optional<bool> pair_found;
  std::optional<std::uint64_t> x_index;
  std::optional<std::uint64_t> y_index;
  std::optional<std::uint64_t> u_size;
  std::optional<bool> u_covers;
  std::string error;
};

/// Runs every cell (families from derive_seed(seed, 1), pair search from
/// derive_seed(seed, 2)), recording per-cell failures in the rows.
/// Deterministic for a fixed plan, independent of the worker count.
std::vector<SweepRow> sweep(const SweepPlan& plan, std::uint32_t workers = 1);

/// Frozen schema: p,n,t,source,seed,probes,pair_found,x_index,y_index,
/// u_size,u_covers,error — booleans as 1/0, LF line endings.
std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows);

}  // namespace pfr

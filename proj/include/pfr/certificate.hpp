#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfr/construction.hpp"
#include "pfr/field.hpp"
#include "pfr/functional.hpp"

namespace pfr {

/// Refutation by violating pair: everything the independent validator needs
/// to re-derive the 1-versus-0 clash from raw data.  The intersection bases
/// are stored as raw row lists exactly as recorded, so any tampering stays
/// visible to the validator's fresh recomputation.
struct WitnessRecord {
  Point x;
  Point y;
  Decomposition dec_x;
  Decomposition dec_y;
  Decomposition dec_z;  // decomposition at x+y
  FunctionTable witness;
  std::vector<std::vector<Residue>> inter_x;    // basis of V_x ∩ V_{x+y}
  std::vector<std::vector<Residue>> inter_y;    // basis of V_y ∩ V_{x+y}
  std::vector<std::vector<Residue>> inter_sum;  // basis of their sum
};

/// Refutation by decomposition failure at a single point.
/// (The point type itself lives in construction.hpp as UncoveredPoint.)

/// No refutation found within the search budget.
struct InconclusiveRecord {
  std::uint64_t budget = 0;  // probes actually spent
};

/// A self-contained, re-verifiable record about one candidate linear map.
struct Certificate {
  ProblemParams params;
  SumsetMode mode = SumsetMode::exact;
  LinearMap map;
  std::variant<UncoveredPoint, WitnessRecord, InconclusiveRecord> record;
};

/// Runs the full refutation pipeline against one candidate map: decompose
/// every defect (uncovered point wins immediately), search for a violating
/// pair, build and record the witness.  The declared t is taken from
/// L.params().t; S must match L on p and n.
Certificate refute(const LinearMap& L, const CoboundarySet& S, SumsetMode mode,
                   const PairStrategy& strategy);

/// Outcome of validate_certificate: `ok`, or the first failing check by its
/// stable name plus a human-readable detail line.
struct ValidationReport {
  bool ok = true;
  std::string first_failure;
  std::string detail;
};

/// Re-verifies a certificate from its own contents alone, trusting nothing:
/// subspaces are rebuilt from the recorded decompositions, intersections are
/// recomputed fresh, the witness is re-evaluated, decompositions are
/// re-summed against the map, and the final 1-versus-0 clash is recomputed.
/// Checks run in a fixed documented order; the report names the first
/// failure.
ValidationReport validate_certificate(const Certificate& cert);

/// Result of the tiny-scale brute-force search over all candidate maps.
struct MapSearchVerdict {
  std::optional<LinearMap> map;  // engaged iff some valid map exists
  std::uint64_t nodes = 0;       // image assignments tried
};

/// Enumerates every candidate map (images of the standard basis, in
/// ascending code order) with constraint propagation: as soon as the images
/// up to level k are fixed, all points whose top nonzero coordinate is k
/// must have their defects inside the t-fold sumset.  Returns the least
/// valid map in image-code order, or a definitive absence.  Throws CapError
/// when p^(p^n · n) exceeds the search cap.
MapSearchVerdict exhaustive_map_search(const ProblemParams& params, SumsetMode mode);

}  // namespace pfr

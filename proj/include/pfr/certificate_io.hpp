#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfr/certificate.hpp"
#include "pfr/diagnostics.hpp"

namespace pfr {

/// Structural failure while reading a document: malformed JSON, missing or
/// mistyped fields, out-of-range indices or residues, unknown version.
/// Semantic problems are the validator's business, not the parser's.
class CertificateParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Certificate document with frozen field names and order:
/// p, n, t, mode, map, variant, variant fields, validator_version.
/// Point indices use the little-endian base-p codec throughout.
std::string certificate_to_json(const Certificate& cert);

/// Strict inverse of certificate_to_json.  Throws CertificateParseError on
/// structural problems; propagates CapError when the declared parameters
/// exceed the desk-scale caps.
Certificate certificate_from_json(const std::string& text);

/// Map document: {"p", "n", "map": [[point_index, coeff], …] per image}.
std::string map_to_json(const LinearMap& map);

/// Reads a map document; t is supplied by the caller (map files are
/// t-agnostic).  Term lists are normalized on load.
LinearMap map_from_json(const std::string& text, std::uint32_t t);

/// Verdict document for the all-maps search:
/// {"p","n","t","mode","verdict":"map_exists"|"no_valid_map","map"?,"nodes"}.
std::string map_search_verdict_to_json(const MapSearchVerdict& verdict,
                                       const ProblemParams& params, SumsetMode mode);

/// Sweep grid document: {"budget": ticks, "cells": [{"p","n","t","source",
/// "seed", "map"?}, …]}; source is "random", "spanning", or "map" (the last
/// carries inline basis images), and budget 0 selects exhaustive search.
/// Raw cell numbers are preserved so invalid cells surface as row errors.
SweepPlan sweep_plan_from_json(const std::string& text);

/// Reads a whole file; throws CertificateParseError if it cannot be read.
std::string read_text_file(const std::string& path);

/// Writes a whole file; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pfr

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "natfun/conjecture.hpp"

namespace natfun {

using Json = nlohmann::ordered_json;

/// Wire rendering of a factorization: prime parts as p^e joined by '*', in
/// ascending prime order, with an unresolved cofactor appended as a bare
/// trailing number (primes always carry an exponent, so the bare tail is
/// unambiguous). A value of 1 renders as the empty string.
std::string factorization_text(const Factorization& f);

/// Inverse of factorization_text for complete factorizations; used by tests
/// and downstream tooling to check reconstruction.
Factorization parse_factorization_text(const std::string& text);

/// CSV with the pinned header
///   function,smallest_composite_n,value,factorization,primes_before
/// one row per scan entry, in the given order. Missing fields (exhausted or
/// budget-exceeded rows) render as empty cells.
std::string scan_csv(const std::vector<ScanRow>& rows);

/// JSON mirror of the CSV: an array of objects with the same five fields.
/// Big values are decimal strings; a missing index is null.
Json scan_json(const std::vector<ScanRow>& rows);

/// Human-readable table of the same rows.
std::string scan_table(const std::vector<ScanRow>& rows);

/// Certificate/witness report with provenance:
///   function,witness_n,value,factorization,provenance,base_index,prime
std::string witness_csv(const std::string& function_text,
                        const CompositeWitness& w);
Json witness_json(const std::string& function_text, const CompositeWitness& w);
std::string witness_table(const std::string& function_text,
                          const CompositeWitness& w);

std::string provenance_to_string(Provenance p);

/// A search outcome as a single scan-style row.
ScanRow outcome_row(const std::string& function_text, const SearchOutcome& o);

}  // namespace natfun

#pragma once

#include <stdexcept>
#include <string>

#include "bc/datum.hpp"
#include "bc/ghom.hpp"

namespace bc {

// configuration problem: bad file, malformed JSON, or a schema violation;
// the message carries the offending schema path
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/**
 * Datum JSON: {"kind": "weil", "q": 4} or
 * {"kind": "algnum_model", "generators": ["2", "5/2"]}.  Rationals are
 * "num/den" strings, unknown keys are rejected with their path.
 */
Datum datum_from_json_text(const std::string& text, const std::string& source);
Datum datum_from_file(const std::string& path);

// canonical JSON encoding of a datum, stable key order
std::string datum_to_json(const Datum& d);

// weight JSON: {"2": 3.0, "3": 5.0} maps primes to lambda values
GHom ghom_from_json_text(const std::string& text, const std::string& source);
GHom ghom_from_file(const std::string& path);

}  // namespace bc

#pragma once

#include <istream>

#include "credrisk/ingest/dataset.hpp"

namespace credrisk {

// Schema of the UCI Statlog `german.data` file: 20 attributes (13 nominal
// A-codes, 7 numeric) plus the class {good, bad} as the last column.
Schema german_credit_schema();

// Whitespace-separated rows, 20 codes + class digit (1 = good, 2 = bad).
// Blank lines are skipped. Throws Error(parse) naming the 1-based line.
Dataset parse_german_credit(std::istream& source);

}  // namespace credrisk

#pragma once

#include <istream>
#include <ostream>

#include "credrisk/ingest/dataset.hpp"

namespace credrisk {

// Minimal ARFF reader: @relation, nominal and numeric (numeric/real/integer)
// attributes, dense comma-separated @data rows. Keywords are
// case-insensitive, '%' starts a comment, names and values may be quoted.
// The last attribute is the class. Everything else (string, date,
// relational, sparse rows, missing values) is rejected with
// Error(unsupported).
Dataset parse_arff(std::istream& source);

// Emits a file that parse_arff reads back to an equal Dataset.
void write_arff(std::ostream& out, const Dataset& ds);

}  // namespace credrisk

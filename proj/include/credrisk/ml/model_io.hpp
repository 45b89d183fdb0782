#pragma once

#include <istream>
#include <ostream>

#include "credrisk/ml/model.hpp"

namespace credrisk::ml {

inline constexpr int kModelFormatVersion = 1;

// JSON snapshot, see docs/formats.md. load_model(save_model(m)) == m.
void save_model(std::ostream& out, const AnyModel& model);
AnyModel load_model(std::istream& in);

}  // namespace credrisk::ml

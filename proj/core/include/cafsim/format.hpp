#pragma once

#include <string>

namespace cafsim {

/// Fixed-width significant-digit rendering ("%.*g") shared by every emitter,
/// so CSV, JSON and traces print byte-identical values for identical inputs.
/// NaN and infinities render as "nan", "inf", "-inf".
std::string format_double(double value, int significant_digits = 12);

}  // namespace cafsim

#pragma once

#include <string>
#include <vector>

#include "imdd/core.hpp"

namespace imdd::formats {

// Two-dimensional formats on [DC, COS_HALF], unit minimum distance, with
// coordinates evaluated from their closed forms.
Constellation t_avg_3(double symbol_period = 1.0);
Constellation t_peak_3(double symbol_period = 1.0);
Constellation t_4(double symbol_period = 1.0);
Constellation t_avg_8(double symbol_period = 1.0);
Constellation t_peak_8(double symbol_period = 1.0);

/// Registry names: ook, pam4, qpsk-scm, t-avg-3, t-peak-3, t-4, t-avg-8, t-peak-8.
const std::vector<std::string>& builtin_names();
bool is_builtin(const std::string& name);
Constellation builtin(const std::string& name, double symbol_period = 1.0);

}  // namespace imdd::formats

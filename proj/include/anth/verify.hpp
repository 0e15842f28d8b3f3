#pragma once

// The full invariant battery for one radicand, as run by `anth verify`.

#include "anth/engine.hpp"

#include <string>
#include <vector>

namespace anth::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;  // first failure, empty on success
};

std::vector<Check> run_battery(const Radicand& r);

bool all_passed(const std::vector<Check>& checks);

}  // namespace anth::verify

#pragma once

#include <string>

namespace quench {

// A: wall removed, ramp kept everywhere. B: wall and ramp removed.
// C: ramp removed, wall kept.
enum class Scenario { A, B, C };

enum class EvolutionMethod { direct, erfc };

enum class Backend { serial, parallel };

const char* to_string(Scenario s) noexcept;
const char* to_string(EvolutionMethod m) noexcept;
Scenario parse_scenario(const std::string& text);          // "a", "b", "c"
EvolutionMethod parse_method(const std::string& text);     // "direct", "erfc"

}  // namespace quench

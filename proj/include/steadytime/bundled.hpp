#pragma once

#include <array>
#include <string_view>

namespace steadytime::bundled {

/// The three canonical test problems, embedded so the table commands
/// work without any filesystem fixtures.
inline constexpr std::string_view case_a = R"({
  "name": "case_a",
  "D": 1,
  "domain": [0, 1],
  "left": {"a": 1, "b": 0, "c": 1},
  "right": {"a": 0, "b": 1, "c": 0},
  "u0": {"breakpoints": [0, 1], "pieces": [[0]]}
})";

inline constexpr std::string_view case_b = R"({
  "name": "case_b",
  "D": "1/100",
  "domain": [0, 1],
  "left": {"a": 1, "b": "1/10", "c": 0},
  "right": {"a": 1, "b": 0, "c": "1/2"},
  "u0": {"breakpoints": [0, 1], "pieces": [[1]]}
})";

inline constexpr std::string_view case_c = R"({
  "name": "case_c",
  "D": "1/10",
  "domain": [0, 1],
  "left": {"a": 0, "b": 1, "c": 0},
  "right": {"a": 0, "b": 1, "c": 0},
  "u0": {"breakpoints": [0, "1/4", "3/4", 1], "pieces": [[0], [1], [0]]}
})";

inline constexpr std::array<std::string_view, 3> all = {case_a, case_b, case_c};

} // namespace steadytime::bundled

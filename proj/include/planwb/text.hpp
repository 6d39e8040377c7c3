#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace planwb {

// Shortest decimal string that parses back to exactly the same double.
// Used for every real written to traces and CSV files so that output is
// byte-deterministic across runs.
std::string fmt_real(double v);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// Splits on `sep` only at parenthesis depth zero, so atom argument commas
// survive: "guess(1,50),dist(1,1)" -> two items.
std::vector<std::string> split_top_level(std::string_view s, char sep);

bool starts_with(std::string_view s, std::string_view prefix);

uint64_t fnv1a64(std::string_view s);
std::string hex16(uint64_t v);

}  // namespace planwb

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small text helpers shared by the file readers/writers.
namespace qaoapca::text {

/// Shortest decimal that parses back to exactly `x`.
std::string shortest(double x);

/// `x` with 17 significant digits (always round-trips).
std::string fixed17(double x);

double parse_double(std::string_view token);
std::int64_t parse_int(std::string_view token);
std::uint64_t parse_uint(std::string_view token);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_whitespace(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace qaoapca::text

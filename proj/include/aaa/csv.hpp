#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aaa::csv {

// Quotes a field when it holds a comma, quote, CR or LF (RFC 4180).
std::string escape(std::string_view field);
std::string row(const std::vector<std::string>& fields);  // CRLF-terminated

// Parses RFC 4180 text; accepts LF or CRLF line ends. Throws
// std::runtime_error on an unterminated quoted field.
std::vector<std::vector<std::string>> parse(std::string_view text);

}  // namespace aaa::csv

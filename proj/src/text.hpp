#pragma once

// Small string helpers shared by the parsers. Not installed.

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "submod/errors.hpp"

namespace submod::text {

inline std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

/// Whole-token double parse; throws DomainError naming `what`.
inline double to_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw DomainError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

inline std::vector<double> to_doubles(std::string_view s, char sep, std::string_view what) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (auto tok : split(s, sep)) out.push_back(to_double(tok, what));
  return out;
}

/// Splits `head:rest` at the first colon. rest is empty when there is no colon.
inline std::pair<std::string_view, std::string_view> head_tail(std::string_view s) {
  const std::size_t pos = s.find(':');
  if (pos == std::string_view::npos) return {s, {}};
  return {s.substr(0, pos), s.substr(pos + 1)};
}

/// Quotes a CSV field when it holds a comma, quote or line break.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Splits one CSV line, honouring double-quoted fields. Throws DomainError on
/// an unterminated quote.
inline std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  if (quoted) throw DomainError("unterminated quote");
  return out;
}

}  // namespace submod::text

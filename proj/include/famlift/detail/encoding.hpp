#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Canonical string encodings for composite elements. Every generated set
// (powersets, products, comprehension totals, container extensions, trees)
// names its elements with these encodings, so set membership and equality
// are plain string comparisons.
//
//   pair        (a,b)
//   tuple       ()  (a)  (a,b,...)
//   subset      {}  {a}  {a,b,...}      components already in canonical order
//   term        s   s(v1,...,vk)        shape applied to position values
//
// Components may themselves be encoded composites; the decoders split on
// top-level commas only, tracking brace/paren depth.

namespace famlift::detail {

inline std::string enc_pair(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size() + 3);
  out += '(';
  out += a;
  out += ',';
  out += b;
  out += ')';
  return out;
}

template <typename Range>
inline std::string enc_list(char open, char close, const Range& parts) {
  std::string out;
  out += open;
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out += ',';
    out += p;
    first = false;
  }
  out += close;
  return out;
}

template <typename Range>
inline std::string enc_tuple(const Range& parts) {
  return enc_list('(', ')', parts);
}

template <typename Range>
inline std::string enc_set(const Range& parts) {
  return enc_list('{', '}', parts);
}

template <typename Range>
inline std::string enc_term(std::string_view shape, const Range& args) {
  std::size_t total = shape.size() + 2;
  for (const auto& a : args) total += std::string_view(a).size() + 1;
  std::string out;
  out.reserve(total);
  out += shape;
  bool any = false;
  for (const auto& a : args) {
    out += any ? ',' : '(';
    out += a;
    any = true;
  }
  if (any) out += ')';
  return out;
}

// Splits "a,b,c" at commas that are not nested inside (), {}.
// Empty input yields no parts.
inline std::optional<std::vector<std::string_view>> split_top(std::string_view s) {
  std::vector<std::string_view> parts;
  if (s.empty()) return parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(' || ch == '{') ++depth;
    else if (ch == ')' || ch == '}') {
      if (--depth < 0) return std::nullopt;
    } else if (ch == ',' && depth == 0) {
      if (i == start) return std::nullopt;
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0 || start == s.size()) return std::nullopt;
  parts.push_back(s.substr(start));
  return parts;
}

inline std::optional<std::vector<std::string_view>> dec_list(char open, char close,
                                                             std::string_view s) {
  if (s.size() < 2 || s.front() != open || s.back() != close) return std::nullopt;
  return split_top(s.substr(1, s.size() - 2));
}

inline std::optional<std::vector<std::string_view>> dec_set(std::string_view s) {
  return dec_list('{', '}', s);
}

inline std::optional<std::vector<std::string_view>> dec_tuple(std::string_view s) {
  return dec_list('(', ')', s);
}

inline std::optional<std::pair<std::string_view, std::string_view>> dec_pair(
    std::string_view s) {
  auto parts = dec_tuple(s);
  if (!parts || parts->size() != 2) return std::nullopt;
  return std::make_pair((*parts)[0], (*parts)[1]);
}

// Decodes "s" or "s(v1,...,vk)" into the shape and its argument list.
inline std::optional<std::pair<std::string_view, std::vector<std::string_view>>>
dec_term(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t paren = s.find('(');
  if (paren == std::string_view::npos) {
    if (s.find_first_of("){},") != std::string_view::npos) return std::nullopt;
    return std::make_pair(s, std::vector<std::string_view>{});
  }
  if (paren == 0 || s.back() != ')') return std::nullopt;
  std::string_view shape = s.substr(0, paren);
  if (shape.find_first_of("){},") != std::string_view::npos) return std::nullopt;
  auto args = split_top(s.substr(paren + 1, s.size() - paren - 2));
  if (!args || args->empty()) return std::nullopt;
  return std::make_pair(shape, std::move(*args));
}

}  // namespace famlift::detail

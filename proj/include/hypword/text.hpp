#ifndef HYPWORD_TEXT_HPP_
#define HYPWORD_TEXT_HPP_

// Line-oriented helpers shared by the file-format parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "error.hpp"

namespace hypword::detail {

  struct Line {
    std::size_t number;   // 1-based
    std::string body;     // text before the first unquoted ';'
    std::string comment;  // text after it, trimmed
  };

  inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) {
      ++b;
    }
    while (e > b && is_space(s[e - 1])) {
      --e;
    }
    return std::string(s.substr(b, e - b));
  }

  inline std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t       number = 0;
    std::size_t       pos    = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      auto raw = text.substr(pos, end - pos);
      ++number;
      bool        quoted = false;
      std::size_t cut    = raw.size();
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '"') {
          quoted = !quoted;
        } else if (raw[i] == ';' && !quoted) {
          cut = i;
          break;
        }
      }
      Line line{number, trim(raw.substr(0, cut)), ""};
      if (cut < raw.size()) {
        line.comment = trim(raw.substr(cut + 1));
      }
      lines.push_back(std::move(line));
      if (end == text.size()) {
        break;
      }
      pos = end + 1;
    }
    return lines;
  }

  // Column (1-based) of the first (or last) whitespace-delimited occurrence
  // of part in body; falls back to any substring match, then to column 1.
  inline std::size_t column_of(std::string_view body, std::string_view part,
                               bool last = false) {
    auto blank = [](char c) {
      return c == ' ' || c == '\t';
    };
    std::size_t found = std::string_view::npos;
    for (auto p = body.find(part); p != std::string_view::npos;
         p = body.find(part, p + 1)) {
      auto const end = p + part.size();
      if ((p == 0 || blank(body[p - 1]))
          && (end == body.size() || blank(body[end]))) {
        found = p;
        if (!last) {
          break;
        }
      }
    }
    if (found == std::string_view::npos) {
      found = body.find(part);
    }
    return found == std::string_view::npos ? 1 : found + 1;
  }

  // If body starts with "key:", returns the remainder.
  inline bool strip_key(std::string_view body, std::string_view key,
                        std::string& rest) {
    if (body.size() > key.size() && body.substr(0, key.size()) == key
        && body[key.size()] == ':') {
      rest = trim(body.substr(key.size() + 1));
      return true;
    }
    return false;
  }

  inline std::vector<std::string> tokens_at(Line const& line,
                                            std::string_view text) {
    try {
      return tokenize(text);
    } catch (DomainError const& e) {
      throw SyntaxError(line.number, column_of(line.body, text), e.what());
    }
  }

  inline Symbol symbol_at(Line const& line, std::string const& token) {
    try {
      return parse_symbol(token);
    } catch (DomainError const& e) {
      throw SyntaxError(line.number, column_of(line.body, token), e.what());
    }
  }

}  // namespace hypword::detail

#endif  // HYPWORD_TEXT_HPP_

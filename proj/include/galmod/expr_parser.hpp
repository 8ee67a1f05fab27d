#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "galmod/group_algebra.hpp"
#include "galmod/tower.hpp"

namespace galmod {

/// Syntax error with the byte offset where parsing stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses a group-algebra expression over s1, s2 and e, e.g.
/// "(s1-e)^2*(s2-e)" or "(1+2*t^3)*s1 - t^-1*e". Integer coefficients are
/// reduced mod p; a coefficient standing alone means a multiple of e.
AlgebraElem parse_elem(const FieldTower& t, std::string_view text);

/// Laurent polynomial in t, e.g. "t^-2 + 2*t^0".
Series parse_series(int p, std::string_view text);

}  // namespace galmod

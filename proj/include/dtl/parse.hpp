#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dtl/formula.hpp"

namespace dtl {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

/// Parses the ASCII concrete syntax:
///
///   formula := iff ; iff := imp ("<->" imp)* ; imp := or ("->" or)*   (right assoc)
///   or := and ("|" and)* ; and := unary ("&" unary)*
///   unary := "~" u | "X" u | "G" u | "F" u | "[]" u | "<>" u
///          | "<>" "{" [formula ("," formula)*] "}" | "(" formula ")" | ident
Formula parse(std::string_view text);

}  // namespace dtl

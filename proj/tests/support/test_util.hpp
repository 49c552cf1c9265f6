#pragma once

#include <ostream>

#include "doctest.h"
#include "dtl/formula.hpp"
#include "dtl/worldset.hpp"

namespace doctest {
template <>
struct StringMaker<dtl::Formula> {
  static String convert(const dtl::Formula& f) { return f.valid() ? dtl::to_string(f).c_str() : "<null>"; }
};
template <>
struct StringMaker<dtl::FormulaSet> {
  static String convert(const dtl::FormulaSet& s) { return dtl::to_string(s).c_str(); }
};
template <>
struct StringMaker<dtl::WorldSet> {
  static String convert(const dtl::WorldSet& s) {
    std::string out = "{";
    for (dtl::World w : s) out += (out.size() > 1 ? "," : "") + std::to_string(w);
    return (out + "}").c_str();
  }
};
}  // namespace doctest
